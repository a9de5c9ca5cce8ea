#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pseq/char_sums.hpp"
#include "pseq/correlation.hpp"

using namespace pseq;

TEST_CASE("naive correlation basics") {
    auto F = build_field(3, 3);
    FamilySpec spec(*F, 4);
    auto s = family_member(spec, {0, 1, 3});

    auto inphase = naive_correlation(s, s, 0);
    CHECK(inphase.counts() == std::vector<std::int64_t>{13, 0, 0});
    CHECK(inphase.magnitude() == doctest::Approx(13.0));

    PSequence zeros{3, std::vector<std::uint32_t>(13, 0)};
    for (std::int64_t tau = 0; tau < 13; ++tau)
        CHECK(naive_correlation(zeros, zeros, tau).magnitude() == doctest::Approx(13.0));

    PSequence shorter{3, std::vector<std::uint32_t>(12, 0)};
    CHECK_THROWS_AS(naive_correlation(zeros, shorter, 0), Error);
    CHECK_THROWS_AS(naive_correlation(zeros, zeros, 13), std::invalid_argument);
}

TEST_CASE("param_reduce cases") {
    auto F = build_field(3, 3);
    FamilySpec spec(*F, 4);

    // same i, tau = 0, different l: a = 0 and b != 0
    auto pr = param_reduce({0, 0, 2}, {0, 0, 5}, 0, spec);
    CHECK(pr.a.is_zero());
    CHECK_FALSE(pr.b.is_zero());

    // i1 = i2 = 0 with tau != 0: a = 1 - alpha^{2 tau} != 0
    for (std::int64_t tau = 1; tau < 13; ++tau) {
        auto pp = param_reduce({0, 0, 0}, {0, 0, 0}, tau, spec);
        CHECK(pp.a == F->sub(F->one(), F->from_dlog(2 * tau)));
        CHECK_FALSE(pp.a.is_zero());
    }

    CHECK_THROWS_AS(param_reduce({1, 0, 4}, {1, 0, 4}, 0, spec), Error);      // trivial
    CHECK_THROWS_AS(param_reduce({0, 0, 13}, {0, 0, 0}, 1, spec), Error);     // bad l
    CHECK_THROWS_AS(param_reduce({0, 0, 0}, {0, 0, 0}, 13, spec), std::invalid_argument);
}

TEST_CASE("kernel_eval rejects the trivial pair and matches the half-sum split") {
    auto F = build_field(3, 3);
    CHECK_THROWS_AS(kernel_eval({F->zero(), F->zero()}, *F), Error);

    // T(a, b) doubled equals the plain sum plus the eta-weighted sum over
    // F_q^*, both computed by the independent char_sums path.
    auto psi1 = AdditiveCharacter{F->one()};
    auto eta = MultiplicativeCharacter::eta_of(*F);
    auto chi0 = MultiplicativeCharacter::trivial();
    FieldPoly gx{{F->zero(), F->one()}};
    for (std::uint32_t a = 0; a < 27; ++a)
        for (std::uint32_t b = 0; b < 27; ++b) {
            if (a == 0 && b == 0) continue;
            FieldPoly f{{F->zero(), F->from_packed(a), F->from_packed(b)}};
            auto plain = hybrid_sum(gx, f, chi0, psi1, *F);
            auto twisted = hybrid_sum(gx, f, eta, psi1, *F);
            REQUIRE(plain.exact.has_value());
            REQUIRE(twisted.exact.has_value());
            auto t = kernel_eval({F->from_packed(a), F->from_packed(b)}, *F);
            CHECK(t.scaled(2) == *plain.exact + *twisted.exact);
        }
}

TEST_CASE("kernel_for_family swaps the pair for d = N+1") {
    auto F = build_field(3, 3);
    auto a = F->from_dlog(3), b = F->from_dlog(17);
    CHECK(kernel_for_family({a, b}, 4, *F) == kernel_eval({a, b}, *F));
    CHECK(kernel_for_family({a, b}, 14, *F) == kernel_eval({b, a}, *F));
    CHECK_THROWS_AS(kernel_for_family({a, b}, 6, *F), Error);
}

TEST_CASE("reachable parameter space") {
    auto F = build_field(3, 3);
    const auto q = F->q();
    FamilySpec spec(*F, 4);
    auto reach = reachable_params(spec);

    // the a-enumeration covers all of F_q, zero included
    CHECK(reach.a_values.size() == static_cast<std::size_t>(q));
    // 2q + 2 class representatives, (0,0) never among them
    CHECK(reach.classes.size() == static_cast<std::size_t>(2 * q + 2));
    std::int64_t orbit_total = 0;
    for (const auto& cls : reach.classes) {
        CHECK_FALSE((cls.rep.a.is_zero() && cls.rep.b.is_zero()));
        orbit_total += cls.orbit_size;
    }
    // classes tile the raw reachable space F_q^2 minus the origin
    CHECK(orbit_total == q * q - 1);
}

TEST_CASE("the d-decimation phases sweep b over all of F_q") {
    auto F = build_field(3, 3);
    const auto period = F->q() - 1;
    for (std::int64_t d : {4, 14}) {
        for (std::int64_t tau : {0, 1, 7}) {
            std::vector<bool> seen(static_cast<std::size_t>(F->q()), false);
            for (int j1 = 0; j1 <= 1; ++j1)
                for (int j2 = 0; j2 <= 1; ++j2)
                    for (std::int64_t l1 = 0; l1 < F->N(); ++l1)
                        for (std::int64_t l2 = 0; l2 < F->N(); ++l2) {
                            auto b = F->sub(F->from_dlog((d * l1 + j1) % period),
                                            F->from_dlog((d * (tau + l2) + j2) % period));
                            seen[b.packed()] = true;
                        }
            CHECK(std::count(seen.begin(), seen.end(), false) == 0);
        }
    }
}

TEST_CASE("scaling equivalence: T(a, b) = T(a c, b c^2) for c in QR") {
    auto F = build_field(7, 3);
    std::mt19937_64 rng(20240209);
    for (int trial = 0; trial < 100; ++trial) {
        auto a = F->from_dlog(static_cast<std::int64_t>(rng() % 342));
        auto b = F->from_dlog(static_cast<std::int64_t>(rng() % 342));
        auto c = F->from_dlog(2 * static_cast<std::int64_t>(rng() % 171));
        REQUIRE(F->eta(c) == 1);
        auto lhs = kernel_eval({a, b}, *F);
        auto rhs = kernel_eval({F->mul(a, c), F->mul(b, F->mul(c, c))}, *F);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("reduced and unreduced spectra coincide") {
    for (auto [p, n] : {std::pair{3, 3}, {7, 3}}) {
        auto F = build_field(p, n);
        for (std::int64_t d : {static_cast<std::int64_t>(4), F->N() + 1}) {
            FamilySpec spec(*F, d);
            auto reduced = compute_spectrum(spec, {.threads = 1, .validate_naive = false});
            auto unreduced = unreduced_value_set(spec, 1);
            CHECK(reduced.values == unreduced);
        }
    }
}

TEST_CASE("both families share one spectrum set") {
    for (auto [p, n] : {std::pair{3, 3}, {7, 3}}) {
        auto F = build_field(p, n);
        FamilySpec s4(*F, 4);
        FamilySpec sn(*F, F->N() + 1);
        auto r4 = compute_spectrum(s4, {.threads = 1});
        auto rn = compute_spectrum(sn, {.threads = 1});
        CHECK(r4.values == rn.values);
        CHECK(r4.report.c_max == doctest::Approx(rn.report.c_max).epsilon(1e-12));
    }
}

TEST_CASE("q = 27 spectrum, frozen exact values") {
    auto F = build_field(3, 3);
    FamilySpec spec(*F, 4);
    auto res = compute_spectrum(spec, {.threads = 1, .validate_naive = true});
    const auto& r = res.report;

    CHECK(r.distinct_count == 6);
    CHECK(r.c_max * r.c_max == doctest::Approx(61.0).epsilon(1e-9));  // (9q+1)/4
    CHECK(format_fixed4(r.c_max_over_sqrt_n) == "2.1662");
    CHECK(r.pass);
    CHECK(r.subcase_b0_max * r.subcase_b0_max == doctest::Approx(7.0).epsilon(1e-9));  // (q+1)/4
    CHECK(r.subcase_b0_pass);
    REQUIRE(r.naive_agrees.has_value());
    CHECK(*r.naive_agrees);

    // the six exact count vectors
    std::set<std::vector<std::int64_t>> got;
    for (const auto& v : res.values) got.insert(v.counts());
    std::set<std::vector<std::int64_t>> want = {
        {0, 5, 5}, {1, 0, 3}, {1, 3, 0}, {4, 0, 0}, {4, 0, 9}, {4, 9, 0}};
    CHECK(got == want);
}

TEST_CASE("naive sweep agrees with the kernel path for q = 27, both d") {
    auto F = build_field(3, 3);
    for (std::int64_t d : {4, 14}) {
        FamilySpec spec(*F, d);
        auto naive = naive_sweep(spec, true, 1);
        CHECK(naive.mismatches == 0);
        CHECK(naive.correlations == 52ull * 52ull * 13ull - 52ull);
        auto kernel = compute_spectrum(spec, {.threads = 1});
        CHECK(naive.values == kernel.values);
        CHECK(naive.c_max == doctest::Approx(kernel.report.c_max).epsilon(1e-12));
    }
}

TEST_CASE("sampled oracle equivalence at q = 2187") {
    // the exhaustive sweep at this size is hours of work (available behind
    // PSEQ_SLOW_TESTS); 2000 seeded samples keep the field covered here
    auto F = build_field(3, 7);
    std::mt19937_64 rng(31337);
    for (std::int64_t d : {static_cast<std::int64_t>(4), F->N() + 1}) {
        FamilySpec spec(*F, d);
        const auto count = spec.family_size();
        int checked = 0;
        while (checked < 1000) {
            auto pos1 = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(count));
            auto pos2 = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(count));
            auto tau = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(F->N()));
            if (pos1 == pos2 && tau == 0) continue;
            auto idx1 = family_index_at(spec, pos1);
            auto idx2 = family_index_at(spec, pos2);
            auto direct = naive_correlation(family_member(spec, idx1), family_member(spec, idx2), tau);
            auto reduced = kernel_for_family(param_reduce(idx1, idx2, tau, spec), d, *F);
            REQUIRE(direct == reduced);
            ++checked;
        }
    }
}

TEST_CASE("oracle equivalence and spectrum invariance hold for beta != 1") {
    auto F = build_field(3, 3);
    FamilySpec base(*F, 4);
    FamilySpec scaled(*F, 4, F->alpha());
    auto naive = naive_sweep(scaled, true, 1);
    CHECK(naive.mismatches == 0);
    auto a = compute_spectrum(base, {.threads = 1});
    auto b = compute_spectrum(scaled, {.threads = 1});
    CHECK(a.values == b.values);
}

TEST_CASE("bound values") {
    CHECK(format_fixed4(bound_value(13)) == "8.2942");
    CHECK(format_fixed4(bound_value(121)) == "23.8827");
    CHECK(format_fixed4(bound_value(1)) == "3.0981");

    // Table-I-style consistency: c_max stays under the bound
    CHECK(2.1650 * std::sqrt(13.0) <= bound_value(13));
    CHECK(std::sqrt(61.0) <= bound_value(13));

    // the weaker (sqrt(3)/2)-variant figure is empirically exceeded, so the
    // (3/sqrt 2) form is the operative bound
    double weak = std::sqrt(3.0) / 2.0 * std::sqrt(13.5) + 0.5;
    CHECK(std::sqrt(61.0) > weak);
}

TEST_CASE("fixed-point rendering") {
    CHECK(format_fixed4(1.0 / 3.0) == "0.3333");
    CHECK(format_fixed4(2.0 / 3.0) == "0.6667");
    CHECK(format_fixed4(2.0) == "2.0000");
    CHECK(format_fixed4(-0.00004) == "-0.0000");
    CHECK(format_fixed4(std::sqrt(61.0) / std::sqrt(13.0)) == "2.1662");
    CHECK(round_half_up4(2.16617) == doctest::Approx(2.1662).epsilon(1e-12));
}

TEST_CASE("spectrum report serializes with provenance") {
    auto F = build_field(3, 1);
    FamilySpec spec(*F, 2);
    auto rep = family_spectrum(spec, {.threads = 1});
    auto text = spectrum_report_to_json(rep);
    CHECK(text.find("\"p\":3") != std::string::npos);
    CHECK(text.find("\"field\":{\"modulus\":[0,1],\"alpha\":[2],\"beta\":[1]}") != std::string::npos);
    CHECK(rep.pass);
}
