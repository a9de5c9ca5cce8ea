#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <sstream>

#include "pseq/sequences.hpp"

using namespace pseq;

namespace {

std::map<int, std::int64_t> histogram(const PSequence& s) {
    std::map<int, std::int64_t> h;
    for (auto v : s.symbols) ++h[v];
    return h;
}

// Independent member construction: index arithmetic straight from the
// definition u(t) = m(2t + i) + m(d (t + l) + j).
PSequence member_oracle(const PSequence& m, std::int64_t d, std::int64_t N, int i, int j,
                        std::int64_t l) {
    PSequence out;
    out.p = m.p;
    for (std::int64_t t = 0; t < N; ++t) {
        auto a = m.symbols[static_cast<std::size_t>((2 * t + i) % m.period())];
        auto b = m.symbols[static_cast<std::size_t>((d * (t + l) + j) % m.period())];
        out.symbols.push_back((a + b) % static_cast<std::uint32_t>(m.p));
    }
    return out;
}

std::int64_t minimal_period(const PSequence& s) {
    for (std::int64_t cand = 1; cand <= s.period(); ++cand) {
        if (s.period() % cand != 0) continue;
        bool ok = true;
        for (std::int64_t t = 0; ok && t < s.period(); ++t)
            ok = s.symbols[static_cast<std::size_t>(t)] ==
                 s.symbols[static_cast<std::size_t>(t % cand)];
        if (ok) return cand;
    }
    return s.period();
}

}  // namespace

TEST_CASE("m-sequence balance") {
    auto F33 = build_field(3, 3);
    auto m33 = m_sequence(*F33, F33->one());
    CHECK(m33.period() == 26);
    auto h33 = histogram(m33);
    CHECK(h33[0] == 8);
    CHECK(h33[1] == 9);
    CHECK(h33[2] == 9);

    auto F73 = build_field(7, 3);
    auto m73 = m_sequence(*F73, F73->one());
    CHECK(m73.period() == 342);
    auto h73 = histogram(m73);
    CHECK(h73[0] == 48);
    for (int r = 1; r < 7; ++r) CHECK(h73[r] == 49);

    auto F31 = build_field(3, 1);
    auto m31 = m_sequence(*F31, F31->one());
    REQUIRE(m31.period() == 2);
    CHECK(m31.symbols[0] == F31->trace(F31->one()));
    CHECK(m31.symbols[1] == F31->trace(F31->alpha()));
    CHECK(m31.symbols == std::vector<std::uint32_t>{1, 2});

    CHECK_THROWS_AS(m_sequence(*F33, F33->zero()), Error);
}

TEST_CASE("m-sequence with beta is a phase shift") {
    auto F = build_field(3, 3);
    auto m1 = m_sequence(*F, F->one());
    auto mb = m_sequence(*F, F->from_dlog(5));
    for (std::int64_t t = 0; t < m1.period(); ++t)
        CHECK(mb.symbols[static_cast<std::size_t>(t)] ==
              m1.symbols[static_cast<std::size_t>((t + 5) % m1.period())]);
}

TEST_CASE("decimation") {
    auto F = build_field(3, 3);
    auto m = m_sequence(*F, F->one());
    const auto N = F->N();

    auto ident = decimate(m, 1, m.period());
    CHECK(ident.symbols == m.symbols);

    auto d2 = decimate(m, 2, N);
    CHECK(d2.period() == N);
    for (std::int64_t t = 0; t < N; ++t)
        CHECK(d2.symbols[static_cast<std::size_t>(t)] ==
              m.symbols[static_cast<std::size_t>(2 * t % 26)]);

    auto d14 = decimate(m, 14, N);
    CHECK(d14.period() == N);
    for (std::int64_t t = 0; t < N; ++t)
        CHECK(d14.symbols[static_cast<std::size_t>(t)] ==
              m.symbols[static_cast<std::size_t>(14 * t % 26)]);

    CHECK_THROWS_AS(decimate(m, 3, N), Error);  // 3 * 13 is not a multiple of 26
}

TEST_CASE("decimations by 2 and d have minimal period exactly N") {
    auto F = build_field(3, 3);
    auto m = m_sequence(*F, F->one());
    CHECK(minimal_period(decimate(m, 2, 13)) == 13);
    CHECK(minimal_period(decimate(m, 4, 13)) == 13);
    CHECK(minimal_period(decimate(m, 14, 13)) == 13);
}

TEST_CASE("family members match the index-arithmetic oracle") {
    auto F = build_field(3, 3);
    for (std::int64_t d : {4, 14}) {
        FamilySpec spec(*F, d);
        const auto& m = spec.m_seq();
        for (int i = 0; i <= 1; ++i)
            for (int j = 0; j <= 1; ++j)
                for (std::int64_t l = 0; l < F->N(); ++l) {
                    auto got = family_member(spec, {i, j, l});
                    auto want = member_oracle(m, d, F->N(), i, j, l);
                    CHECK(got.symbols == want.symbols);
                    CHECK(minimal_period(got) == F->N());
                }
    }
    FamilySpec s4(*F, 4);
    CHECK_THROWS_AS(family_member(s4, {0, 0, 13}), Error);
    CHECK_THROWS_AS(family_member(s4, {2, 0, 0}), Error);
    CHECK_THROWS_AS(FamilySpec(*F, 5), Error);
}

TEST_CASE("member (1,1,l) is the (0,0,.) construction with shifted components") {
    auto F = build_field(3, 3);
    FamilySpec spec(*F, 4);
    const auto& m = spec.m_seq();
    const auto N = F->N();
    for (std::int64_t l = 0; l < N; ++l) {
        auto got = family_member(spec, {1, 1, l});
        for (std::int64_t t = 0; t < N; ++t) {
            std::uint32_t a = m.symbols[static_cast<std::size_t>((2 * t + 1) % 26)];
            std::uint32_t b = m.symbols[static_cast<std::size_t>((4 * (t + l) + 1) % 26)];
            CHECK(got.symbols[static_cast<std::size_t>(t)] == (a + b) % 3);
        }
    }
}

TEST_CASE("family enumeration yields 4N members in (i, j, l) order") {
    struct Row {
        int p, n;
        std::int64_t members;
    };
    for (auto [p, n, members] : {Row{3, 3, 52}, Row{7, 3, 684}, Row{3, 1, 4}}) {
        auto F = build_field(p, n);
        FamilySpec spec(*F, 4);
        std::int64_t count = 0;
        FamilyIndex prev{0, 0, -1};
        for (const auto& [idx, seq] : family_enumerate(spec)) {
            CHECK(seq.period() == F->N());
            // lexicographic order
            bool advanced = std::tuple(idx.i, idx.j, idx.l) >
                            std::tuple(prev.i, prev.j, prev.l);
            CHECK(advanced);
            prev = idx;
            ++count;
        }
        CHECK(count == members);
        CHECK(spec.family_size() == members);
    }
}

TEST_CASE("cyclic inequivalence holds for q = 27 and fails on corrupted families") {
    auto F = build_field(3, 3);
    for (std::int64_t d : {4, 14}) {
        FamilySpec spec(*F, d);
        CHECK(cyclic_inequivalence_check(spec));

        auto members = collect_family(spec);
        auto corrupted = members;
        corrupted.push_back(members[7]);  // duplicate
        CHECK_FALSE(all_cyclically_inequivalent(corrupted));

        auto shifted = members;
        PSequence rot;
        rot.p = members[3].p;
        for (std::int64_t t = 0; t < members[3].period(); ++t)
            rot.symbols.push_back(
                members[3].symbols[static_cast<std::size_t>((t + 5) % members[3].period())]);
        shifted.push_back(rot);
        CHECK_FALSE(all_cyclically_inequivalent(shifted));
    }
}

TEST_CASE("degenerate N = 1 family enumerates but contains duplicates") {
    auto F = build_field(3, 1);
    FamilySpec spec(*F, 2);
    CHECK(spec.family_size() == 4);
    auto members = collect_family(spec);
    REQUIRE(members.size() == 4);
    // m = [1, 2]: members are m(i) + m(j), so (0,1) and (1,0) coincide
    CHECK(members[1].symbols == members[2].symbols);
    CHECK_FALSE(all_cyclically_inequivalent(members));
}

TEST_CASE("family dump format") {
    auto F = build_field(3, 1);
    FamilySpec spec(*F, 4);
    std::ostringstream os;
    write_family_dump(os, spec);
    std::istringstream is(os.str());
    std::string header, line;
    std::getline(is, header);
    CHECK(header ==
          R"({"p":3,"n":1,"d":4,"beta":[1],"modulus":[0,1]})");
    std::vector<std::string> lines;
    while (std::getline(is, line)) lines.push_back(line);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "0,0,0:2");
    CHECK(lines[1] == "0,1,0:0");
    CHECK(lines[2] == "1,0,0:0");
    CHECK(lines[3] == "1,1,0:1");
}
