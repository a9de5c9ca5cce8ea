#include "pseq/cyclotomic.hpp"

#include <algorithm>
#include <cmath>

namespace pseq {

void CyclotomicInteger::canonicalize() {
    auto m = *std::min_element(counts_.begin(), counts_.end());
    if (m != 0)
        for (auto& c : counts_) c -= m;
}

CyclotomicInteger CyclotomicInteger::from_counts(std::vector<std::int64_t> counts) {
    if (counts.empty()) throw std::invalid_argument("empty count vector");
    CyclotomicInteger out(static_cast<int>(counts.size()));
    out.counts_ = std::move(counts);
    out.canonicalize();
    return out;
}

bool CyclotomicInteger::is_zero() const noexcept {
    for (auto c : counts_)
        if (c != 0) return false;
    return true;
}

CyclotomicInteger CyclotomicInteger::operator+(const CyclotomicInteger& other) const {
    if (p() != other.p())
        throw Error(Errc::MixedModulus, "cyclotomic integers over different p");
    CyclotomicInteger out(p());
    for (std::size_t k = 0; k < counts_.size(); ++k)
        out.counts_[k] = counts_[k] + other.counts_[k];
    out.canonicalize();
    return out;
}

CyclotomicInteger CyclotomicInteger::operator-() const {
    CyclotomicInteger out(p());
    for (std::size_t k = 0; k < counts_.size(); ++k) out.counts_[k] = -counts_[k];
    out.canonicalize();
    return out;
}

CyclotomicInteger CyclotomicInteger::rotated(std::int64_t k) const {
    const auto pp = static_cast<std::int64_t>(counts_.size());
    k %= pp;
    if (k < 0) k += pp;
    CyclotomicInteger out(p());
    for (std::int64_t i = 0; i < pp; ++i)
        out.counts_[static_cast<std::size_t>((i + k) % pp)] = counts_[static_cast<std::size_t>(i)];
    return out;
}

CyclotomicInteger CyclotomicInteger::scaled(std::int64_t m) const {
    CyclotomicInteger out(p());
    for (std::size_t k = 0; k < counts_.size(); ++k) out.counts_[k] = counts_[k] * m;
    out.canonicalize();
    return out;
}

std::complex<double> CyclotomicInteger::value() const {
    const double step = 2.0 * M_PI / static_cast<double>(counts_.size());
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t k = 0; k < counts_.size(); ++k) {
        if (counts_[k] == 0) continue;
        double a = step * static_cast<double>(k);
        acc += static_cast<double>(counts_[k]) * std::complex<double>(std::cos(a), std::sin(a));
    }
    return acc;
}

}  // namespace pseq
