#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "pseq/errors.hpp"

namespace pseq {

/// Exact integer combination of p-th roots of unity: value = sum of
/// counts[k] * w^k with w = exp(2*pi*i/p). Stored canonically with
/// min(counts) = 0, which is reachable because 1 + w + ... + w^{p-1} = 0.
/// For prime p that is the only integer relation among the roots, so two
/// canonical vectors are equal as complex numbers iff they are identical --
/// equality and distinct-value counting are exact, no float thresholds.
class CyclotomicInteger {
public:
    explicit CyclotomicInteger(int p) : counts_(static_cast<std::size_t>(p), 0) {}

    /// Canonicalizes an arbitrary (possibly negative) count vector.
    static CyclotomicInteger from_counts(std::vector<std::int64_t> counts);

    int p() const noexcept { return static_cast<int>(counts_.size()); }
    const std::vector<std::int64_t>& counts() const noexcept { return counts_; }

    bool is_zero() const noexcept;

    CyclotomicInteger operator+(const CyclotomicInteger& other) const;
    CyclotomicInteger operator-() const;
    /// Multiplication by w^k (a rotation of the count vector).
    CyclotomicInteger rotated(std::int64_t k) const;
    /// Multiplication by a rational integer.
    CyclotomicInteger scaled(std::int64_t m) const;

    std::complex<double> value() const;
    double magnitude() const { return std::abs(value()); }

    friend bool operator==(const CyclotomicInteger& a, const CyclotomicInteger& b) noexcept {
        return a.counts_ == b.counts_;
    }
    friend bool operator!=(const CyclotomicInteger& a, const CyclotomicInteger& b) noexcept {
        return !(a == b);
    }
    friend bool operator<(const CyclotomicInteger& a, const CyclotomicInteger& b) noexcept {
        return a.counts_ < b.counts_;
    }

private:
    void canonicalize();

    std::vector<std::int64_t> counts_;
};

inline CyclotomicInteger cyc_add(const CyclotomicInteger& u, const CyclotomicInteger& v) {
    return u + v;
}

inline double cyc_magnitude(const CyclotomicInteger& u) { return u.magnitude(); }

}  // namespace pseq
