#include "pseq/sequences.hpp"

#include <atomic>
#include <numeric>
#include <thread>

#include <json.hpp>

namespace pseq {
namespace {

void run_chunked(std::int64_t count, int threads, const std::function<void(std::int64_t, std::int64_t)>& fn) {
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    if (threads == 1 || count < 2) {
        fn(0, count);
        return;
    }
    std::vector<std::thread> pool;
    std::int64_t chunk = (count + threads - 1) / threads;
    for (std::int64_t lo = 0; lo < count; lo += chunk)
        pool.emplace_back(fn, lo, std::min(lo + chunk, count));
    for (auto& t : pool) t.join();
}

}  // namespace

PSequence m_sequence(const FieldCtx& ctx, FieldElement beta) {
    if (beta.is_zero()) throw Error(Errc::ZeroBeta, "m-sequence requires beta != 0");
    const auto q = ctx.q();
    const auto lb = ctx.dlog(beta);
    const auto& tr = ctx.trace_exp_table();
    PSequence out;
    out.p = ctx.p();
    out.symbols.resize(static_cast<std::size_t>(q - 1));
    for (std::int64_t t = 0; t < q - 1; ++t)
        out.symbols[static_cast<std::size_t>(t)] = tr[static_cast<std::size_t>((lb + t) % (q - 1))];
    return out;
}

PSequence decimate(const PSequence& seq, std::int64_t d, std::int64_t new_period) {
    if (d < 1 || new_period < 1 || (d * new_period) % seq.period() != 0)
        throw Error(Errc::BadPeriod, "d * new_period must be a multiple of the source period");
    PSequence out;
    out.p = seq.p;
    out.symbols.resize(static_cast<std::size_t>(new_period));
    for (std::int64_t t = 0; t < new_period; ++t)
        out.symbols[static_cast<std::size_t>(t)] =
            seq.symbols[static_cast<std::size_t>(d * t % seq.period())];
    return out;
}

FamilySpec::FamilySpec(const FieldCtx& ctx, std::int64_t d, FieldElement beta)
    : ctx_(&ctx), d_(d), beta_(beta) {
    if (d != 4 && d != ctx.N() + 1)
        throw Error(Errc::UnsupportedD, "d must be 4 or N+1");
    if (beta.is_zero()) throw Error(Errc::ZeroBeta, "beta must be nonzero");
    if (&beta.field() != &ctx) throw Error(Errc::MixedFields, "beta from a different field");
    // both decimations have period N: gcd(q-1, 2) = gcd(q-1, d) = 2
    if (std::gcd(ctx.q() - 1, d) != 2)
        throw Error(Errc::UnsupportedD, "gcd(q-1, d) != 2");
    m_ = m_sequence(ctx, beta);
}

FamilySpec::FamilySpec(const FieldCtx& ctx, std::int64_t d) : FamilySpec(ctx, d, ctx.one()) {}

PSequence family_member(const FamilySpec& spec, const FamilyIndex& idx) {
    const auto& ctx = spec.ctx();
    const auto N = ctx.N();
    if (idx.i < 0 || idx.i > 1 || idx.j < 0 || idx.j > 1 || idx.l < 0 || idx.l >= N)
        throw Error(Errc::IndexOutOfRange, "family index out of range");
    const auto period = ctx.q() - 1;
    const auto& m = spec.m_seq().symbols;
    PSequence out;
    out.p = ctx.p();
    out.symbols.resize(static_cast<std::size_t>(N));
    for (std::int64_t t = 0; t < N; ++t) {
        auto u = m[static_cast<std::size_t>((2 * t + idx.i) % period)];
        auto v = m[static_cast<std::size_t>((spec.d() * (t + idx.l) + idx.j) % period)];
        std::uint32_t s = u + v;
        out.symbols[static_cast<std::size_t>(t)] =
            s >= static_cast<std::uint32_t>(ctx.p()) ? s - static_cast<std::uint32_t>(ctx.p()) : s;
    }
    return out;
}

FamilyIndex family_index_at(const FamilySpec& spec, std::int64_t pos) {
    const auto N = spec.ctx().N();
    if (pos < 0 || pos >= 4 * N) throw Error(Errc::IndexOutOfRange, "member position out of range");
    FamilyIndex idx;
    idx.i = static_cast<int>(pos / (2 * N));
    idx.j = static_cast<int>(pos / N % 2);
    idx.l = pos % N;
    return idx;
}

FamilyRange::iterator::value_type FamilyRange::iterator::operator*() const {
    auto idx = family_index_at(*spec_, pos_);
    return {idx, family_member(*spec_, idx)};
}

std::vector<PSequence> collect_family(const FamilySpec& spec) {
    std::vector<PSequence> out;
    out.reserve(static_cast<std::size_t>(spec.family_size()));
    for (const auto& [idx, seq] : family_enumerate(spec)) out.push_back(seq);
    return out;
}

bool all_cyclically_inequivalent(const std::vector<PSequence>& members, int threads) {
    const auto count = static_cast<std::int64_t>(members.size());
    if (count < 2) return true;
    const auto N = members[0].period();
    std::atomic<bool> duplicate{false};

    run_chunked(count, threads, [&](std::int64_t lo, std::int64_t hi) {
        std::vector<std::uint32_t> doubled(static_cast<std::size_t>(2 * N));
        for (std::int64_t i = lo; i < hi && !duplicate.load(std::memory_order_relaxed); ++i) {
            const auto& u = members[static_cast<std::size_t>(i)].symbols;
            std::copy(u.begin(), u.end(), doubled.begin());
            std::copy(u.begin(), u.end(), doubled.begin() + N);
            for (std::int64_t k = i + 1; k < count; ++k) {
                const auto& v = members[static_cast<std::size_t>(k)].symbols;
                if (v.size() != u.size()) continue;
                for (std::int64_t tau = 0; tau < N; ++tau) {
                    const std::uint32_t* shifted = doubled.data() + tau;
                    std::int64_t t = 0;
                    while (t < N && v[static_cast<std::size_t>(t)] == shifted[t]) ++t;
                    if (t == N) {
                        duplicate.store(true, std::memory_order_relaxed);
                        return;
                    }
                }
            }
        }
    });
    return !duplicate.load();
}

bool cyclic_inequivalence_check(const FamilySpec& spec, int threads) {
    return all_cyclically_inequivalent(collect_family(spec), threads);
}

void write_family_dump(std::ostream& os, const FamilySpec& spec) {
    nlohmann::ordered_json header;
    header["p"] = spec.ctx().p();
    header["n"] = spec.ctx().n();
    header["d"] = spec.d();
    header["beta"] = spec.beta().coeffs();
    header["modulus"] = spec.ctx().modulus();
    os << header.dump() << '\n';
    for (const auto& [idx, seq] : family_enumerate(spec)) {
        os << idx.i << ',' << idx.j << ',' << idx.l << ':';
        for (std::size_t t = 0; t < seq.symbols.size(); ++t) {
            if (t) os << ' ';
            os << static_cast<int>(seq.symbols[t]);
        }
        os << '\n';
    }
}

}  // namespace pseq
