#include "pseq/correlation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <thread>

#include <json.hpp>

namespace pseq {
namespace {

void run_chunked(std::int64_t count, int threads,
                 const std::function<void(std::int64_t, std::int64_t, int)>& fn) {
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    std::int64_t chunk = (count + threads - 1) / threads;
    if (threads == 1 || count < 2 || chunk == 0) {
        fn(0, count, 0);
        return;
    }
    std::vector<std::thread> pool;
    int widx = 0;
    for (std::int64_t lo = 0; lo < count; lo += chunk, ++widx)
        pool.emplace_back(fn, lo, std::min(lo + chunk, count), widx);
    for (auto& t : pool) t.join();
}

// T(a, b) with precomputed discrete logs; la/lb = -1 encodes a zero argument.
CyclotomicInteger kernel_eval_logs(std::int64_t la, std::int64_t lb, const FieldCtx& ctx) {
    const auto period = ctx.q() - 1;
    const auto N = ctx.N();
    const auto p = ctx.p();
    const auto& tr = ctx.trace_exp_table();
    std::vector<std::int64_t> counts(static_cast<std::size_t>(p), 0);

    if (la >= 0 && lb >= 0) {
        std::int64_t e1 = la, e2 = lb;
        for (std::int64_t k = 0; k < N; ++k) {
            std::uint32_t t = tr[static_cast<std::size_t>(e1)] + tr[static_cast<std::size_t>(e2)];
            ++counts[t >= static_cast<std::uint32_t>(p) ? t - p : t];
            e1 += 2;
            if (e1 >= period) e1 -= period;
            e2 += 4;
            if (e2 >= period) e2 -= period;
        }
    } else {
        // single-term cases: exponent advances by 2 (linear) or 4 (square)
        std::int64_t e = la >= 0 ? la : lb;
        std::int64_t step = la >= 0 ? 2 : 4;
        for (std::int64_t k = 0; k < N; ++k) {
            ++counts[tr[static_cast<std::size_t>(e)]];
            e += step;
            if (e >= period) e -= period;
        }
    }
    return CyclotomicInteger::from_counts(std::move(counts));
}

struct KernelGrid {
    std::vector<std::int32_t> id;           // (a * q + b) -> value id
    std::vector<CyclotomicInteger> values;  // id -> canonical value
    std::vector<double> magnitudes;         // id -> |value|
};

KernelGrid build_kernel_grid(const FamilySpec& spec) {
    const auto& ctx = spec.ctx();
    const auto q = ctx.q();
    KernelGrid grid;
    grid.id.assign(static_cast<std::size_t>(q * q), -1);
    std::map<CyclotomicInteger, std::int32_t> seen;
    for (std::int64_t a = 0; a < q; ++a)
        for (std::int64_t b = 0; b < q; ++b) {
            if (a == 0 && b == 0) continue;
            ParamPair pair{ctx.from_packed(static_cast<std::uint32_t>(a)),
                           ctx.from_packed(static_cast<std::uint32_t>(b))};
            auto v = kernel_for_family(pair, spec.d(), ctx);
            auto [it, inserted] = seen.emplace(v, static_cast<std::int32_t>(grid.values.size()));
            if (inserted) {
                grid.values.push_back(v);
                grid.magnitudes.push_back(v.magnitude());
            }
            grid.id[static_cast<std::size_t>(a * q + b)] = it->second;
        }
    return grid;
}

}  // namespace

double bound_value(std::int64_t N) {
    return 3.0 / std::sqrt(2.0) * std::sqrt(static_cast<double>(N) + 0.5) + 0.5;
}

double subcase_bound_value(std::int64_t q) {
    return (std::sqrt(static_cast<double>(q)) + 1.0) / 2.0;
}

CyclotomicInteger naive_correlation(const PSequence& s1, const PSequence& s2, std::int64_t tau) {
    if (s1.period() != s2.period() || s1.p != s2.p)
        throw Error(Errc::PeriodMismatch, "sequences of different period");
    const auto N = s1.period();
    if (tau < 0 || tau >= N) throw std::invalid_argument("tau out of range");
    const int p = s1.p;
    std::vector<std::int64_t> counts(static_cast<std::size_t>(p), 0);
    for (std::int64_t t = 0; t < N; ++t) {
        std::int64_t d = static_cast<std::int64_t>(s1.symbols[static_cast<std::size_t>(t)]) -
                         s2.symbols[static_cast<std::size_t>((t + tau) % N)];
        if (d < 0) d += p;
        ++counts[static_cast<std::size_t>(d)];
    }
    return CyclotomicInteger::from_counts(std::move(counts));
}

ParamPair param_reduce(const FamilyIndex& idx1, const FamilyIndex& idx2, std::int64_t tau,
                       const FamilySpec& spec) {
    const auto& ctx = spec.ctx();
    const auto N = ctx.N();
    for (const auto& idx : {idx1, idx2})
        if (idx.i < 0 || idx.i > 1 || idx.j < 0 || idx.j > 1 || idx.l < 0 || idx.l >= N)
            throw Error(Errc::IndexOutOfRange, "family index out of range");
    if (tau < 0 || tau >= N) throw std::invalid_argument("tau out of range");
    if (tau == 0 && idx1 == idx2)
        throw Error(Errc::TrivialCase, "trivial autocorrelation has no kernel parameters");

    const auto period = ctx.q() - 1;
    const auto d = spec.d();
    auto a = ctx.sub(ctx.from_dlog(idx1.i), ctx.from_dlog((2 * tau + idx2.i) % period));
    auto b = ctx.sub(ctx.from_dlog((d * idx1.l + idx1.j) % period),
                     ctx.from_dlog((d * (tau + idx2.l) + idx2.j) % period));
    return {ctx.mul(spec.beta(), a), ctx.mul(spec.beta(), b)};
}

CyclotomicInteger kernel_eval(const ParamPair& pair, const FieldCtx& ctx) {
    if (pair.a.is_zero() && pair.b.is_zero())
        throw Error(Errc::TrivialPair, "T(0, 0) is the excluded trivial case");
    return kernel_eval_logs(pair.a.is_zero() ? -1 : ctx.dlog(pair.a),
                            pair.b.is_zero() ? -1 : ctx.dlog(pair.b), ctx);
}

CyclotomicInteger kernel_for_family(const ParamPair& pair, std::int64_t d, const FieldCtx& ctx) {
    if (d == 4) return kernel_eval(pair, ctx);
    if (d == ctx.N() + 1) return kernel_eval({pair.b, pair.a}, ctx);
    throw Error(Errc::UnsupportedD, "d must be 4 or N+1");
}

ReachableParams reachable_params(const FamilySpec& spec) {
    const auto& ctx = spec.ctx();
    const auto q = ctx.q();
    const auto N = ctx.N();
    const auto period = q - 1;

    // a = beta (alpha^{i1} - alpha^{2 tau + i2}) over the whole index space
    std::vector<bool> seen(static_cast<std::size_t>(q), false);
    for (int i1 = 0; i1 <= 1; ++i1)
        for (int i2 = 0; i2 <= 1; ++i2)
            for (std::int64_t tau = 0; tau < N; ++tau) {
                auto a = ctx.mul(spec.beta(), ctx.sub(ctx.from_dlog(i1),
                                                      ctx.from_dlog((2 * tau + i2) % period)));
                seen[a.packed()] = true;
            }

    ReachableParams out;
    bool has_square = false, has_nonsquare = false;
    for (std::int64_t v = 0; v < q; ++v) {
        if (!seen[static_cast<std::size_t>(v)]) continue;
        out.a_values.push_back(static_cast<std::uint32_t>(v));
        if (v == 0) continue;
        (ctx.eta(ctx.from_packed(static_cast<std::uint32_t>(v))) == 1 ? has_square
                                                                      : has_nonsquare) = true;
    }

    // a = 0 pairs carry b over F_q^*; the b orbit under c^2-scaling is a
    // QR coset, so one square and one nonsquare representative remain.
    out.classes.push_back({{ctx.zero(), ctx.one()}, 0, N});
    out.classes.push_back({{ctx.zero(), ctx.alpha()}, 0, N});

    // For a != 0 the d-decimation phases sweep b over all of F_q, and scaling
    // normalizes a to a fixed square (1) or nonsquare (alpha) representative.
    if (has_square)
        for (std::int64_t b = 0; b < q; ++b)
            out.classes.push_back(
                {{ctx.one(), ctx.from_packed(static_cast<std::uint32_t>(b))}, +1, N});
    if (has_nonsquare)
        for (std::int64_t b = 0; b < q; ++b)
            out.classes.push_back(
                {{ctx.alpha(), ctx.from_packed(static_cast<std::uint32_t>(b))}, -1, N});
    return out;
}

SpectrumResult compute_spectrum(const FamilySpec& spec, const SpectrumOptions& opts) {
    const auto& ctx = spec.ctx();
    auto reach = reachable_params(spec);
    const auto count = static_cast<std::int64_t>(reach.classes.size());

    int workers = opts.threads <= 0 ? static_cast<int>(std::thread::hardware_concurrency())
                                    : opts.threads;
    if (workers < 1) workers = 1;
    std::vector<std::set<CyclotomicInteger>> sets(static_cast<std::size_t>(workers),
                                                  std::set<CyclotomicInteger>{});
    std::vector<double> maxes(static_cast<std::size_t>(workers), 0.0);
    std::vector<double> b0_maxes(static_cast<std::size_t>(workers), 0.0);

    run_chunked(count, workers, [&](std::int64_t lo, std::int64_t hi, int w) {
        auto& vals = sets[static_cast<std::size_t>(w)];
        for (std::int64_t c = lo; c < hi; ++c) {
            const auto& cls = reach.classes[static_cast<std::size_t>(c)];
            auto v = kernel_for_family(cls.rep, spec.d(), ctx);
            double m = v.magnitude();
            maxes[static_cast<std::size_t>(w)] = std::max(maxes[static_cast<std::size_t>(w)], m);
            if (cls.rep.b.is_zero())
                b0_maxes[static_cast<std::size_t>(w)] =
                    std::max(b0_maxes[static_cast<std::size_t>(w)], m);
            vals.insert(std::move(v));
        }
    });

    SpectrumResult out;
    for (auto& s : sets) out.values.merge(s);
    double c_max = *std::max_element(maxes.begin(), maxes.end());
    double b0_max = *std::max_element(b0_maxes.begin(), b0_maxes.end());

    auto& r = out.report;
    r.p = ctx.p();
    r.n = ctx.n();
    r.d = spec.d();
    r.N = ctx.N();
    r.c_max = c_max;
    r.c_max_over_sqrt_n = round_half_up4(c_max / std::sqrt(static_cast<double>(ctx.N())));
    r.distinct_count = static_cast<std::int64_t>(out.values.size());
    r.bound = bound_value(ctx.N());
    r.pass = c_max <= r.bound + 1e-9;
    r.subcase_b0_max = b0_max;
    r.subcase_b0_bound = subcase_bound_value(ctx.q());
    r.subcase_b0_pass = b0_max <= r.subcase_b0_bound + 1e-9;
    r.modulus = ctx.modulus();
    r.alpha = ctx.alpha().coeffs();
    r.beta = spec.beta().coeffs();

    if (opts.validate_naive) {
        if (ctx.q() > 2187)
            throw std::invalid_argument("naive cross-validation is limited to q <= 2187");
        auto naive = naive_sweep(spec, true, opts.threads);
        r.naive_agrees = naive.mismatches == 0 && naive.values == out.values &&
                         std::abs(naive.c_max - c_max) <= 1e-9;
    }
    return out;
}

SpectrumReport family_spectrum(const FamilySpec& spec, const SpectrumOptions& opts) {
    return compute_spectrum(spec, opts).report;
}

std::set<CyclotomicInteger> unreduced_value_set(const FamilySpec& spec, int threads) {
    const auto& ctx = spec.ctx();
    const auto q = ctx.q();
    int workers = threads <= 0 ? static_cast<int>(std::thread::hardware_concurrency()) : threads;
    if (workers < 1) workers = 1;
    std::vector<std::set<CyclotomicInteger>> sets(static_cast<std::size_t>(workers));

    run_chunked(q, workers, [&](std::int64_t lo, std::int64_t hi, int w) {
        auto& vals = sets[static_cast<std::size_t>(w)];
        for (std::int64_t a = lo; a < hi; ++a)
            for (std::int64_t b = 0; b < q; ++b) {
                if (a == 0 && b == 0) continue;
                ParamPair pair{ctx.from_packed(static_cast<std::uint32_t>(a)),
                               ctx.from_packed(static_cast<std::uint32_t>(b))};
                vals.insert(kernel_for_family(pair, spec.d(), ctx));
            }
    });
    std::set<CyclotomicInteger> out;
    for (auto& s : sets) out.merge(s);
    return out;
}

NaiveSweepResult naive_sweep(const FamilySpec& spec, bool compare_kernel, int threads) {
    const auto& ctx = spec.ctx();
    const auto q = ctx.q();
    const auto N = ctx.N();
    const int p = ctx.p();
    const auto members = collect_family(spec);
    const auto count = static_cast<std::int64_t>(members.size());

    KernelGrid grid;
    if (compare_kernel) grid = build_kernel_grid(spec);

    int workers = threads <= 0 ? static_cast<int>(std::thread::hardware_concurrency()) : threads;
    if (workers < 1) workers = 1;

    struct Local {
        std::set<std::int32_t> ids;
        std::set<CyclotomicInteger> values;
        double c_max = 0.0;
        std::uint64_t correlations = 0;
        std::uint64_t mismatches = 0;
    };
    std::vector<Local> locals(static_cast<std::size_t>(workers));

    // reduction table for (s1 - s2 + p) in [0, 2p)
    std::vector<std::uint32_t> red(static_cast<std::size_t>(2 * p));
    for (int v = 0; v < 2 * p; ++v) red[static_cast<std::size_t>(v)] = static_cast<std::uint32_t>(v % p);

    run_chunked(count, workers, [&](std::int64_t lo, std::int64_t hi, int w) {
        auto& local = locals[static_cast<std::size_t>(w)];
        std::vector<std::uint32_t> neg2(static_cast<std::size_t>(2 * N));
        std::vector<std::int64_t> counts(static_cast<std::size_t>(p));
        for (std::int64_t m1 = lo; m1 < hi; ++m1) {
            const auto idx1 = family_index_at(spec, m1);
            const auto& s1 = members[static_cast<std::size_t>(m1)].symbols;
            for (std::int64_t m2 = 0; m2 < count; ++m2) {
                const auto idx2 = family_index_at(spec, m2);
                const auto& s2 = members[static_cast<std::size_t>(m2)].symbols;
                for (std::int64_t t = 0; t < N; ++t) {
                    std::uint32_t nv = static_cast<std::uint32_t>(p) - s2[static_cast<std::size_t>(t)];
                    neg2[static_cast<std::size_t>(t)] = nv;
                    neg2[static_cast<std::size_t>(t + N)] = nv;
                }
                for (std::int64_t tau = 0; tau < N; ++tau) {
                    if (tau == 0 && m1 == m2) continue;  // trivial autocorrelation
                    std::fill(counts.begin(), counts.end(), 0);
                    const std::uint32_t* shifted = neg2.data() + tau;
                    for (std::int64_t t = 0; t < N; ++t)
                        ++counts[red[static_cast<std::size_t>(
                            s1[static_cast<std::size_t>(t)] + shifted[t])]];
                    ++local.correlations;

                    if (compare_kernel) {
                        auto pair = param_reduce(idx1, idx2, tau, spec);
                        auto id = grid.id[static_cast<std::size_t>(
                            static_cast<std::int64_t>(pair.a.packed()) * q + pair.b.packed())];
                        const auto& expect = grid.values[static_cast<std::size_t>(id)].counts();
                        auto mn = *std::min_element(counts.begin(), counts.end());
                        bool match = true;
                        for (int k = 0; k < p; ++k)
                            if (counts[static_cast<std::size_t>(k)] - mn !=
                                expect[static_cast<std::size_t>(k)]) {
                                match = false;
                                break;
                            }
                        if (match) {
                            local.ids.insert(id);
                            local.c_max =
                                std::max(local.c_max, grid.magnitudes[static_cast<std::size_t>(id)]);
                        } else {
                            ++local.mismatches;
                            auto v = CyclotomicInteger::from_counts(counts);
                            local.c_max = std::max(local.c_max, v.magnitude());
                            local.values.insert(std::move(v));
                        }
                    } else {
                        auto v = CyclotomicInteger::from_counts(counts);
                        local.c_max = std::max(local.c_max, v.magnitude());
                        local.values.insert(std::move(v));
                    }
                }
            }
        }
    });

    NaiveSweepResult out;
    for (auto& local : locals) {
        out.values.merge(local.values);
        for (auto id : local.ids) out.values.insert(grid.values[static_cast<std::size_t>(id)]);
        out.c_max = std::max(out.c_max, local.c_max);
        out.correlations += local.correlations;
        out.mismatches += local.mismatches;
    }
    return out;
}

double round_half_up4(double x) {
    double sign = x < 0 ? -1.0 : 1.0;
    return sign * std::floor(std::abs(x) * 10000.0 + 0.5) / 10000.0;
}

std::string format_fixed4(double x) {
    double ax = std::abs(x);
    auto scaled = static_cast<long long>(std::floor(ax * 10000.0 + 0.5));
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s%lld.%04lld", x < 0 ? "-" : "", scaled / 10000,
                  scaled % 10000);
    return buf;
}

std::string spectrum_report_to_json(const SpectrumReport& r) {
    nlohmann::ordered_json j;
    j["p"] = r.p;
    j["n"] = r.n;
    j["d"] = r.d;
    j["N"] = r.N;
    j["c_max"] = r.c_max;
    j["c_max_over_sqrt_n"] = r.c_max_over_sqrt_n;
    j["distinct_count"] = r.distinct_count;
    j["bound"] = r.bound;
    j["pass"] = r.pass;
    j["subcase_b0_max"] = r.subcase_b0_max;
    j["subcase_b0_bound"] = r.subcase_b0_bound;
    j["subcase_b0_pass"] = r.subcase_b0_pass;
    j["field"] = nlohmann::ordered_json{
        {"modulus", r.modulus}, {"alpha", r.alpha}, {"beta", r.beta}};
    if (r.naive_agrees) j["naive_agrees"] = *r.naive_agrees;
    return j.dump();
}

}  // namespace pseq
