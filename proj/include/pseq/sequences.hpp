#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <vector>

#include "pseq/field.hpp"

namespace pseq {

/// p-ary sequence, one period of symbols in [0, p-1].
struct PSequence {
    int p = 0;
    std::vector<std::uint32_t> symbols;

    std::int64_t period() const noexcept { return static_cast<std::int64_t>(symbols.size()); }
};

/// Index (i, j, l) of one of the 4N family members: i, j in {0, 1} and
/// l in [0, N-1].
struct FamilyIndex {
    int i = 0;
    int j = 0;
    std::int64_t l = 0;

    friend bool operator==(const FamilyIndex&, const FamilyIndex&) = default;
};

/// One of the two sequence families: the 2-decimation combined with the
/// d-decimation for d = 4 or d = N+1. beta scales the underlying m-sequence
/// (default 1).
class FamilySpec {
public:
    FamilySpec(const FieldCtx& ctx, std::int64_t d, FieldElement beta);
    FamilySpec(const FieldCtx& ctx, std::int64_t d);

    const FieldCtx& ctx() const noexcept { return *ctx_; }
    std::int64_t d() const noexcept { return d_; }
    FieldElement beta() const noexcept { return beta_; }
    std::int64_t family_size() const noexcept { return 4 * ctx_->N(); }
    /// The underlying m-sequence m(t) = Tr(beta alpha^t), period q-1.
    const PSequence& m_seq() const noexcept { return m_; }

private:
    const FieldCtx* ctx_;
    std::int64_t d_;
    FieldElement beta_;
    PSequence m_;
};

/// m(t) = Tr(beta alpha^t) for t in [0, q-2]. Throws Errc::ZeroBeta.
PSequence m_sequence(const FieldCtx& ctx, FieldElement beta);

/// out[t] = seq[(d t) mod period] for t in [0, new_period). Requires
/// d * new_period = 0 (mod period) so the result really has that period.
PSequence decimate(const PSequence& seq, std::int64_t d, std::int64_t new_period);

/// Member u(t) = m(2t + i) + m(d (t + l) + j) (mod p), period N.
PSequence family_member(const FamilySpec& spec, const FamilyIndex& idx);

/// Lazily yields all 4N members in lexicographic (i, j, l) order.
class FamilyRange {
public:
    explicit FamilyRange(const FamilySpec& spec) : spec_(&spec) {}

    class iterator {
    public:
        using value_type = std::pair<FamilyIndex, PSequence>;

        iterator(const FamilySpec* spec, std::int64_t pos) : spec_(spec), pos_(pos) {}
        value_type operator*() const;
        iterator& operator++() {
            ++pos_;
            return *this;
        }
        friend bool operator==(const iterator& a, const iterator& b) { return a.pos_ == b.pos_; }
        friend bool operator!=(const iterator& a, const iterator& b) { return !(a == b); }

    private:
        const FamilySpec* spec_;
        std::int64_t pos_;
    };

    iterator begin() const { return {spec_, 0}; }
    iterator end() const { return {spec_, spec_->family_size()}; }
    std::int64_t size() const { return spec_->family_size(); }

private:
    const FamilySpec* spec_;
};

inline FamilyRange family_enumerate(const FamilySpec& spec) { return FamilyRange(spec); }

FamilyIndex family_index_at(const FamilySpec& spec, std::int64_t pos);

std::vector<PSequence> collect_family(const FamilySpec& spec);

/// True iff no sequence in the list is a cyclic shift of another (including
/// plain duplicates). Direct all-pairs, all-shifts comparison.
bool all_cyclically_inequivalent(const std::vector<PSequence>& members, int threads = 0);

/// Family-size check: the 4N members are a genuine set. Exhaustive; meant for
/// q <= 2187.
bool cyclic_inequivalence_check(const FamilySpec& spec, int threads = 0);

/// Writes the family dump: a JSON header line {p, n, d, beta, modulus}
/// followed by one "i,j,l:s0 s1 ... s_{N-1}" line per member.
void write_family_dump(std::ostream& os, const FamilySpec& spec);

}  // namespace pseq
