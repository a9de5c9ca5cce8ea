#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pseq/errors.hpp"

namespace pseq {

class FieldCtx;

/// Element of GF(p^n) in the polynomial basis, packed in radix p: the
/// coefficient of x^i is digit i of `packed`. Elements remember their owning
/// field; mixing elements from different FieldCtx instances throws
/// Errc::MixedFields.
class FieldElement {
public:
    std::uint32_t packed() const noexcept { return packed_; }
    const FieldCtx& field() const noexcept { return *field_; }
    bool is_zero() const noexcept { return packed_ == 0; }

    /// Coefficient vector [a0..a_{n-1}], constant term first.
    std::vector<int> coeffs() const;

    friend bool operator==(const FieldElement& a, const FieldElement& b) noexcept {
        return a.field_ == b.field_ && a.packed_ == b.packed_;
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) noexcept {
        return !(a == b);
    }

private:
    friend class FieldCtx;
    FieldElement(const FieldCtx* field, std::uint32_t packed) : field_(field), packed_(packed) {}

    const FieldCtx* field_;
    std::uint32_t packed_;
};

/// Polynomial over GF(p^n), coefficients constant-term first. Trailing zero
/// coefficients are ignored by degree().
struct FieldPoly {
    std::vector<FieldElement> coeffs;

    int degree() const noexcept;  // zero polynomial reports degree 0
    bool is_zero() const noexcept;
};

/// A concrete realization of GF(p^n) for an odd prime p = 3 (mod 4) and odd
/// n, with full discrete-log / antilog tables and precomputed traces.
///
/// Construction is deterministic: if no modulus is supplied, the
/// lexicographically first irreducible monic polynomial is used (coefficient
/// lists [c0..c_{n-1}] compared constant term first), and the primitive
/// element is the lexicographically smallest one under the same ordering of
/// [a0..a_{n-1}]. Instances are immutable after construction and safe to
/// share across threads.
class FieldCtx {
public:
    /// Table-backed representation: fields above this size are rejected with
    /// Errc::ScaleTooLarge.
    static constexpr std::int64_t kMaxQ = 1'000'000;

    int p() const noexcept { return p_; }
    int n() const noexcept { return n_; }
    std::int64_t q() const noexcept { return q_; }
    /// N = (q - 1) / 2, the half period. Odd for every valid field here.
    std::int64_t N() const noexcept { return half_; }

    /// Modulus polynomial [c0..cn], monic, constant term first.
    const std::vector<int>& modulus() const noexcept { return modulus_; }

    FieldElement zero() const noexcept { return {this, 0}; }
    FieldElement one() const noexcept { return {this, 1}; }
    FieldElement alpha() const noexcept { return {this, alpha_}; }

    FieldElement from_packed(std::uint32_t v) const;
    FieldElement from_coeffs(const std::vector<int>& coeffs) const;
    /// alpha^e, exponent taken mod q-1 (negative e allowed).
    FieldElement from_dlog(std::int64_t e) const;
    /// Embeds an integer into the prime subfield.
    FieldElement scalar(std::int64_t c) const;

    FieldElement add(FieldElement x, FieldElement y) const;
    FieldElement sub(FieldElement x, FieldElement y) const;
    FieldElement neg(FieldElement x) const;
    FieldElement mul(FieldElement x, FieldElement y) const;
    /// Throws Errc::DivisionByZero for x = 0.
    FieldElement inv(FieldElement x) const;
    /// x^k. Negative k requires x != 0. pow(0, 0) = 1.
    FieldElement pow(FieldElement x, std::int64_t k) const;

    /// Tr(x) = sum of x^{p^i}, reported as an integer in [0, p-1].
    int trace(FieldElement x) const;
    /// Exponent e in [0, q-2] with alpha^e = x. Throws Errc::LogOfZero.
    std::int64_t dlog(FieldElement x) const;
    /// Quadratic character: +1 for nonzero squares, -1 for nonsquares, 0 at 0.
    int eta(FieldElement x) const;

    // Raw table access for the character-sum and correlation inner loops.
    const std::vector<std::uint32_t>& trace_exp_table() const noexcept { return trace_exp_; }
    std::uint32_t trace_packed(std::uint32_t v) const { return trace_pk_[v]; }
    std::uint32_t antilog(std::int64_t e) const { return antilog_[static_cast<std::size_t>(e)]; }
    std::int64_t log_packed(std::uint32_t v) const { return log_[v]; }
    std::uint32_t add_packed(std::uint32_t a, std::uint32_t b) const;

    FieldCtx(const FieldCtx&) = delete;
    FieldCtx& operator=(const FieldCtx&) = delete;

private:
    friend std::unique_ptr<FieldCtx> build_field(int, int, const std::optional<std::vector<int>>&,
                                                 const std::optional<std::vector<int>>&);
    FieldCtx() = default;

    void check_same_field(FieldElement x) const;

    int p_ = 0;
    int n_ = 0;
    std::int64_t q_ = 0;
    std::int64_t half_ = 0;
    std::vector<int> modulus_;
    std::uint32_t alpha_ = 0;
    std::vector<std::int32_t> log_;      // packed -> exponent, -1 at zero
    std::vector<std::uint32_t> antilog_; // exponent -> packed
    std::vector<std::uint32_t> trace_exp_;
    std::vector<std::uint32_t> trace_pk_;
};

/// Builds GF(p^n). Requires p prime with p = 3 (mod 4) and odd n >= 1.
/// A supplied modulus must be monic of degree n and irreducible; a supplied
/// primitive element (coefficient list) must have order exactly q-1.
std::unique_ptr<FieldCtx> build_field(int p, int n,
                                      const std::optional<std::vector<int>>& modulus = std::nullopt,
                                      const std::optional<std::vector<int>>& alpha = std::nullopt);

/// {"p":..,"n":..,"modulus":[c0..cn],"alpha":[a0..a_{n-1}]}, coefficient
/// order constant-term-first. Stable for golden files.
std::string field_to_json(const FieldCtx& ctx);
std::unique_ptr<FieldCtx> field_from_json(std::string_view text);

inline FieldElement operator+(FieldElement a, FieldElement b) { return a.field().add(a, b); }
inline FieldElement operator-(FieldElement a, FieldElement b) { return a.field().sub(a, b); }
inline FieldElement operator*(FieldElement a, FieldElement b) { return a.field().mul(a, b); }
inline FieldElement operator-(FieldElement a) { return a.field().neg(a); }

}  // namespace pseq
