#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pseq/cyclotomic.hpp"
#include "pseq/sequences.hpp"

namespace pseq {

/// Kernel parameters of a family correlation: C(tau) collapses to
/// T(a, b) = sum over x in QR of w^{Tr(a x + b x^2)} (d = 4), or to
/// T(b, a) (d = N+1). (0, 0) only arises from the trivial autocorrelation
/// and is excluded everywhere.
struct ParamPair {
    FieldElement a;
    FieldElement b;
};

/// The family correlation bound (3/sqrt 2) sqrt(N + 1/2) + 1/2.
double bound_value(std::int64_t N);

/// The sharper bound (sqrt q + 1)/2 for the b = 0 sub-case.
double subcase_bound_value(std::int64_t q);

/// C_{s1,s2}(tau) = sum over t of w^{s1(t) - s2(t + tau)}, exact.
CyclotomicInteger naive_correlation(const PSequence& s1, const PSequence& s2, std::int64_t tau);

/// Collapses the correlation between members (i1, j1, l1) and (i2, j2, l2)
/// at shift tau to its ParamPair:
///   a = beta (alpha^{i1} - alpha^{2 tau + i2}),
///   b = beta (alpha^{d l1 + j1} - alpha^{d (tau + l2) + j2}).
/// The trivial autocorrelation (tau = 0 and equal indices) throws
/// Errc::TrivialCase.
ParamPair param_reduce(const FamilyIndex& idx1, const FamilyIndex& idx2, std::int64_t tau,
                       const FamilySpec& spec);

/// T(a, b) over the quadratic residues, as an exact count vector of N terms.
CyclotomicInteger kernel_eval(const ParamPair& pair, const FieldCtx& ctx);

/// The family correlation value for the given d: T(a, b) for d = 4 and
/// T(b, a) for d = N+1.
CyclotomicInteger kernel_for_family(const ParamPair& pair, std::int64_t d, const FieldCtx& ctx);

/// One scaling-equivalence class of reachable parameters: (a, b) ~ (a c, b c^2)
/// for c in QR, under which T is invariant.
struct ParamClass {
    ParamPair rep;
    int a_eta = 0;                  // eta of the a-component: 0, +1, -1
    std::int64_t orbit_size = 0;    // raw (a, b) pairs collapsing to this rep
};

struct ReachableParams {
    std::vector<ParamClass> classes;
    /// Distinct values of a = beta (alpha^{i1} - alpha^{2 tau + i2}) actually
    /// enumerated from the index space (packed), zero included when reachable.
    std::vector<std::uint32_t> a_values;
};

/// Enumerates the reachable (a, b) space from the family parameterization and
/// reduces it by the QR-scaling equivalence. One representative per class.
ReachableParams reachable_params(const FamilySpec& spec);

struct SpectrumReport {
    int p = 0;
    int n = 0;
    std::int64_t d = 0;
    std::int64_t N = 0;
    double c_max = 0.0;
    double c_max_over_sqrt_n = 0.0;  // rounded half-up to 4 decimals
    std::int64_t distinct_count = 0;
    double bound = 0.0;
    bool pass = false;
    // b = 0 sub-case: classes whose family-side b vanishes
    double subcase_b0_max = 0.0;
    double subcase_b0_bound = 0.0;
    bool subcase_b0_pass = false;
    // field provenance
    std::vector<int> modulus;
    std::vector<int> alpha;
    std::vector<int> beta;
    std::optional<bool> naive_agrees;  // set when a validating naive sweep ran
};

struct SpectrumOptions {
    int threads = 0;           // 0 = hardware concurrency
    bool validate_naive = false;  // run the full naive cross-validation (q <= 2187)
};

/// Full spectrum computation: report plus the exact distinct-value set.
struct SpectrumResult {
    SpectrumReport report;
    std::set<CyclotomicInteger> values;
};

SpectrumResult compute_spectrum(const FamilySpec& spec, const SpectrumOptions& opts = {});

/// Spec'd entry point; equivalent to compute_spectrum(...).report.
SpectrumReport family_spectrum(const FamilySpec& spec, const SpectrumOptions& opts = {});

/// Distinct-value set over the raw (unreduced) reachable space. Exhaustive in
/// (a, b); intended for q <= 343.
std::set<CyclotomicInteger> unreduced_value_set(const FamilySpec& spec, int threads = 0);

/// Exhaustive naive sweep over all ordered member pairs and all shifts
/// (trivial autocorrelation excluded). When compare_kernel is set, each
/// correlation is also reduced via param_reduce and checked exactly against
/// kernel_for_family; mismatches are counted.
struct NaiveSweepResult {
    std::set<CyclotomicInteger> values;
    double c_max = 0.0;
    std::uint64_t correlations = 0;
    std::uint64_t mismatches = 0;
};

NaiveSweepResult naive_sweep(const FamilySpec& spec, bool compare_kernel, int threads = 0);

/// Half-up fixed-point rendering with 4 decimals, bit-stable across
/// platforms ("2.1650" style).
std::string format_fixed4(double x);
double round_half_up4(double x);

std::string spectrum_report_to_json(const SpectrumReport& r);

}  // namespace pseq
