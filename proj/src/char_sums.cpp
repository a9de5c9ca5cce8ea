#include "pseq/char_sums.hpp"

#include <cmath>
#include <numeric>
#include <vector>

namespace pseq {
namespace {

constexpr double kWeilSlack = 1e-6;

std::vector<std::complex<double>> unit_roots(std::int64_t m) {
    std::vector<std::complex<double>> roots(static_cast<std::size_t>(m));
    for (std::int64_t k = 0; k < m; ++k) {
        double a = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(m);
        roots[static_cast<std::size_t>(k)] = {std::cos(a), std::sin(a)};
    }
    return roots;
}

// Horner evaluation returning the packed value.
std::uint32_t eval_packed(const FieldPoly& f, FieldElement x, const FieldCtx& ctx) {
    FieldElement acc = ctx.zero();
    for (int i = f.degree(); i >= 0; --i)
        acc = ctx.add(ctx.mul(acc, x), f.coeffs[static_cast<std::size_t>(i)]);
    return acc.packed();
}

}  // namespace

int AdditiveCharacter::exponent_at(FieldElement x) const {
    const FieldCtx& ctx = beta.field();
    return ctx.trace(ctx.mul(beta, x));
}

std::int64_t MultiplicativeCharacter::order(const FieldCtx& ctx) const noexcept {
    std::int64_t jn = (j % (ctx.q() - 1) + ctx.q() - 1) % (ctx.q() - 1);
    return (ctx.q() - 1) / std::gcd(jn, ctx.q() - 1);
}

std::int64_t MultiplicativeCharacter::exponent_at(FieldElement x) const {
    const FieldCtx& ctx = x.field();
    std::int64_t jn = (j % (ctx.q() - 1) + ctx.q() - 1) % (ctx.q() - 1);
    return jn * ctx.dlog(x) % (ctx.q() - 1);
}

GaussSum gauss_sum(const AdditiveCharacter& psi, const MultiplicativeCharacter& chi,
                   const FieldCtx& ctx) {
    const auto q = ctx.q();
    const auto& tr = ctx.trace_exp_table();
    const std::int64_t lb = psi.is_trivial() ? -1 : ctx.dlog(psi.beta);

    const auto roots_p = unit_roots(ctx.p());
    const auto roots_m = unit_roots(q - 1);

    const bool exact_chi = chi.is_trivial() || chi.is_eta(ctx);
    std::vector<std::int64_t> counts(static_cast<std::size_t>(ctx.p()), 0);
    std::complex<double> acc{0.0, 0.0};

    const std::int64_t jn = (chi.j % (q - 1) + q - 1) % (q - 1);
    for (std::int64_t e = 0; e < q - 1; ++e) {  // x = alpha^e, chi(0) = 0 drops x = 0
        int add_exp = lb < 0 ? 0 : static_cast<int>(tr[static_cast<std::size_t>((lb + e) % (q - 1))]);
        std::int64_t mul_exp = jn * e % (q - 1);
        acc += roots_p[static_cast<std::size_t>(add_exp)] * roots_m[static_cast<std::size_t>(mul_exp)];
        if (exact_chi) {
            std::int64_t sign = chi.is_trivial() ? 1 : ((e & 1) ? -1 : 1);
            counts[static_cast<std::size_t>(add_exp)] += sign;
        }
    }

    GaussSum out;
    out.value = acc;
    if (exact_chi) out.exact = CyclotomicInteger::from_counts(std::move(counts));
    return out;
}

HybridSum hybrid_sum(const FieldPoly& g, const FieldPoly& f, const MultiplicativeCharacter& chi,
                     const AdditiveCharacter& psi, const FieldCtx& ctx) {
    if (psi.is_trivial()) throw std::invalid_argument("hybrid_sum requires a nontrivial psi");
    const auto q = ctx.q();
    const auto roots_p = unit_roots(ctx.p());
    const auto roots_m = unit_roots(q - 1);

    const bool exact_chi = chi.is_trivial() || chi.is_eta(ctx);
    std::vector<std::int64_t> counts(static_cast<std::size_t>(ctx.p()), 0);
    std::complex<double> acc{0.0, 0.0};

    for (std::int64_t v = 0; v < q; ++v) {
        auto x = ctx.from_packed(static_cast<std::uint32_t>(v));
        auto gx = ctx.from_packed(eval_packed(g, x, ctx));
        if (gx.is_zero()) continue;  // chi(0) = 0
        int add_exp = psi.exponent_at(ctx.from_packed(eval_packed(f, x, ctx)));
        std::int64_t mul_exp = chi.exponent_at(gx);
        acc += roots_p[static_cast<std::size_t>(add_exp)] * roots_m[static_cast<std::size_t>(mul_exp)];
        if (exact_chi) {
            std::int64_t sign = chi.is_trivial() ? 1 : ((ctx.dlog(gx) & 1) ? -1 : 1);
            counts[static_cast<std::size_t>(add_exp)] += sign;
        }
    }

    HybridSum out;
    out.value = acc;
    if (exact_chi) out.exact = CyclotomicInteger::from_counts(std::move(counts));
    return out;
}

CyclotomicInteger additive_char_sum(const FieldPoly& f, const AdditiveCharacter& psi,
                                    const FieldCtx& ctx) {
    std::vector<std::int64_t> counts(static_cast<std::size_t>(ctx.p()), 0);
    for (std::int64_t v = 0; v < ctx.q(); ++v) {
        auto x = ctx.from_packed(static_cast<std::uint32_t>(v));
        ++counts[static_cast<std::size_t>(
            psi.exponent_at(ctx.from_packed(eval_packed(f, x, ctx))))];
    }
    return CyclotomicInteger::from_counts(std::move(counts));
}

WeilCheck check_hybrid_weil(const FieldPoly& g, const FieldPoly& f,
                            const MultiplicativeCharacter& chi, const FieldCtx& ctx) {
    if (chi.is_trivial())
        throw std::invalid_argument("hybrid Weil check requires a nontrivial chi");
    const std::int64_t M = chi.order(ctx);

    // Certify s (distinct roots in the closure) and g != c * h^M.
    int s;
    const int dg = g.degree();
    if (dg == 1 && !g.coeffs[1].is_zero()) {
        s = 1;  // a degree-1 polynomial is never c * h^M for M >= 2
    } else if (dg >= 1 && !g.coeffs[static_cast<std::size_t>(dg)].is_zero()) {
        bool monomial = true;
        for (int i = 0; i < dg; ++i)
            if (!g.coeffs[static_cast<std::size_t>(i)].is_zero()) monomial = false;
        if (!monomial)
            throw Error(Errc::DegenerateG, "cannot certify g for the hybrid Weil bound");
        if (dg % M == 0)
            throw Error(Errc::DegenerateG, "g is an M-th power times a constant");
        s = 1;  // c x^m has the single root 0
    } else {
        throw Error(Errc::DegenerateG, "cannot certify g for the hybrid Weil bound");
    }

    auto sum = hybrid_sum(g, f, chi, AdditiveCharacter{ctx.one()}, ctx);
    const int e = f.is_zero() ? 0 : f.degree();
    WeilCheck out;
    out.magnitude = sum.exact ? sum.exact->magnitude() : sum.magnitude();
    out.bound = static_cast<double>(e + s - 1) * std::sqrt(static_cast<double>(ctx.q()));
    out.pass = out.magnitude <= out.bound + kWeilSlack;
    return out;
}

WeilCheck check_additive_weil(const FieldPoly& f, const FieldCtx& ctx) {
    const int e = f.is_zero() ? 0 : f.degree();
    if (e < 1 || e % ctx.p() == 0)
        throw Error(Errc::DegreeDivisibleByP, "degree must be >= 1 and coprime to p");
    auto sum = additive_char_sum(f, AdditiveCharacter{ctx.one()}, ctx);
    WeilCheck out;
    out.magnitude = sum.magnitude();
    out.bound = static_cast<double>(e - 1) * std::sqrt(static_cast<double>(ctx.q()));
    out.pass = out.magnitude <= out.bound + kWeilSlack;
    return out;
}

}  // namespace pseq
