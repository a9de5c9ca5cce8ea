#pragma once

#include <complex>
#include <cstdint>
#include <optional>

#include "pseq/cyclotomic.hpp"
#include "pseq/field.hpp"

namespace pseq {

/// psi_beta(x) = w^{Tr(beta * x)} with w = exp(2*pi*i/p). beta = 0 gives the
/// trivial character.
struct AdditiveCharacter {
    FieldElement beta;

    bool is_trivial() const noexcept { return beta.is_zero(); }
    /// Exponent Tr(beta * x) in [0, p-1].
    int exponent_at(FieldElement x) const;
};

/// chi_j(alpha^k) = exp(2*pi*i*j*k/(q-1)), chi(0) = 0. j = 0 is trivial,
/// j = (q-1)/2 is the quadratic character eta.
struct MultiplicativeCharacter {
    std::int64_t j = 0;

    bool is_trivial() const noexcept { return j == 0; }
    bool is_eta(const FieldCtx& ctx) const noexcept { return j == ctx.N(); }
    std::int64_t order(const FieldCtx& ctx) const noexcept;
    /// Exponent j * dlog(x) mod (q-1); x must be nonzero.
    std::int64_t exponent_at(FieldElement x) const;

    static MultiplicativeCharacter trivial() { return {0}; }
    static MultiplicativeCharacter eta_of(const FieldCtx& ctx) { return {ctx.N()}; }
};

/// Full character sum G(psi, chi) = sum over F_q of psi(x)chi(x), with the
/// chi(0) = 0 convention. `exact` is populated whenever chi takes values in
/// {0, 1, -1} (trivial chi or eta), in which case the sum is an exact
/// cyclotomic integer over the p-th roots of unity; `value` is always the
/// floating-point evaluation (error well under 1e-9 at the supported sizes).
struct GaussSum {
    std::complex<double> value;
    std::optional<CyclotomicInteger> exact;

    double magnitude() const { return std::abs(value); }
};

GaussSum gauss_sum(const AdditiveCharacter& psi, const MultiplicativeCharacter& chi,
                   const FieldCtx& ctx);

/// sum over F_q of chi(g(x)) psi(f(x)) by direct evaluation, O(q * deg).
struct HybridSum {
    std::complex<double> value;
    std::optional<CyclotomicInteger> exact;

    double magnitude() const { return std::abs(value); }
};

HybridSum hybrid_sum(const FieldPoly& g, const FieldPoly& f, const MultiplicativeCharacter& chi,
                     const AdditiveCharacter& psi, const FieldCtx& ctx);

/// sum over all of F_q of psi_beta(f(x)) as an exact cyclotomic integer.
CyclotomicInteger additive_char_sum(const FieldPoly& f, const AdditiveCharacter& psi,
                                    const FieldCtx& ctx);

struct WeilCheck {
    double magnitude = 0.0;
    double bound = 0.0;
    bool pass = false;
};

/// Verifies |sum chi(g(x)) psi_1(f(x))| <= (e + s - 1) sqrt(q) for e = deg f
/// and s = number of distinct roots of g. Only shapes of g whose s and
/// non-degeneracy (g != c * h^M for M = ord(chi)) can be certified here are
/// accepted: degree-1 polynomials, and monomials c x^m with M not dividing m.
/// Anything else throws Errc::DegenerateG.
WeilCheck check_hybrid_weil(const FieldPoly& g, const FieldPoly& f,
                            const MultiplicativeCharacter& chi, const FieldCtx& ctx);

/// Verifies |sum psi_1(f(x))| <= (deg f - 1) sqrt(q); requires deg f >= 1
/// with p not dividing deg f (Errc::DegreeDivisibleByP otherwise).
WeilCheck check_additive_weil(const FieldPoly& f, const FieldCtx& ctx);

}  // namespace pseq
