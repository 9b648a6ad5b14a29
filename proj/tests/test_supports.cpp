#include <gtest/gtest.h>

#include "hhh/supports.hpp"

using namespace hhh;

namespace {

Poly e(int k) { return Poly::var(k - 1); }

BraidWord word(std::vector<int> letters, int n) { return BraidWord{n, std::move(letters)}; }

const GeneratorReport& control(const SupportReport& r, const std::vector<int>& ct) {
    for (auto& [c, gens] : r.controls)
        if (c == ct) return gens.at(0);
    throw std::out_of_range("no such control");
}

}  // namespace

TEST(Stratum, TwoStrandDiscriminant) {
    StratumIdeal s = stratum_ideal({2}, 2);
    ASSERT_EQ(s.generators.size(), 1u);
    EXPECT_EQ(s.generators[0], e(1) * e(1) - e(2) * Q(4));
    // (x1 - x2)^2 in the x variables
    Poly x1 = Poly::var(0), x2 = Poly::var(1);
    EXPECT_EQ(symmetric_in_x(s.generators[0], 2), (x1 - x2) * (x1 - x2));
    EXPECT_TRUE(stratum_ideal({1, 1}, 2).generators.empty());
}

TEST(Stratum, LibraryVanishesOnItsStratum) {
    for (int n = 2; n <= 3; ++n)
        for (auto& ct : std::vector<std::vector<int>>{{2}, {2, 1}, {3}}) {
            int sum = 0;
            for (int p : ct) sum += p;
            if (sum != n) continue;
            EXPECT_TRUE(vanishes_on_stratum(stratum_ideal(ct, n), 20, 7));
        }
}

TEST(Stratum, WrongGeneratorDoesNotVanish) {
    EXPECT_FALSE(vanishes_on_stratum(stratum_ideal({2}, 2, {e(1)}), 20, 7));
    EXPECT_FALSE(vanishes_on_stratum(stratum_ideal({3}, 3, {e(1) * e(1) - e(2) * Q(4)}), 20, 7));
}

TEST(Stratum, LargeStrandCountNeedsUserGenerators) {
    EXPECT_THROW(stratum_ideal({4}, 4), std::invalid_argument);
    EXPECT_NO_THROW(stratum_ideal({4}, 4, {e(1)}));
}

TEST(Stratum, SmallerStrata) {
    EXPECT_EQ(smaller_strata({1, 1}, 2), (std::vector<std::vector<int>>{{2}}));
    EXPECT_TRUE(smaller_strata({2}, 2).empty());
    EXPECT_EQ(smaller_strata({2, 1}, 3), (std::vector<std::vector<int>>{{3}}));
}

TEST(Support, TrefoilPasses) {
    SupportReport r = support_report(word({1, 1, 1}, 2), 8, 6);
    EXPECT_EQ(r.verdict, Verdict::PASS);
    ASSERT_EQ(r.generators.size(), 1u);
    EXPECT_EQ(r.generators[0].verdict, Verdict::PASS);
    EXPECT_GE(r.generators[0].min_power, 1);
    EXPECT_LE(r.generators[0].min_power, 6);
    EXPECT_GT(r.generators[0].tested_classes, 0);
}

TEST(Support, HopfControlIsNotNilpotent) {
    HHHEngine eng(rouquier_complex(word({1, 1}, 2)));
    GeneratorReport g = nilpotence_report(eng, e(1) * e(1) - e(2) * Q(4), 8, 6);
    EXPECT_EQ(g.verdict, Verdict::NOT_NILPOTENT);
    EXPECT_EQ(g.witness_class.size(), 3u);
    SupportReport r = support_report(word({1, 1}, 2), 8, 6);
    EXPECT_EQ(control(r, {2}).verdict, Verdict::NOT_NILPOTENT);
}

TEST(Support, IdentityControlIsNotNilpotent) {
    SupportReport r = support_report(word({}, 2), 8, 6);
    EXPECT_EQ(r.verdict, Verdict::PASS);  // no predicted generators
    EXPECT_EQ(control(r, {2}).verdict, Verdict::NOT_NILPOTENT);
    EXPECT_EQ(control(r, {2}).witness_class, (MultiDegree{0, 0, 0}));
}

TEST(Support, ConjugationKeepsVerdicts) {
    SupportReport a = support_report(word({1, 2}, 3), 6, 4), b = support_report(word({2, 1}, 3), 6, 4);
    ASSERT_EQ(a.generators.size(), b.generators.size());
    for (std::size_t i = 0; i < a.generators.size(); ++i) EXPECT_EQ(a.generators[i].verdict, b.generators[i].verdict);
    EXPECT_EQ(a.verdict, b.verdict);
}

TEST(Support, PassSurvivesWindowGrowth) {
    SupportReport small = support_report(word({1, 1, 1}, 2), 6, 6), big = support_report(word({1, 1, 1}, 2), 8, 6);
    EXPECT_EQ(small.verdict, Verdict::PASS);
    EXPECT_EQ(big.verdict, Verdict::PASS);
}

TEST(Support, ReportJson) {
    nlohmann::json j = to_json(support_report(word({1, 1, 1}, 2), 6, 6));
    EXPECT_EQ(j.at("verdict"), "PASS");
    EXPECT_EQ(j.at("cycle_type"), (std::vector<int>{2}));
    EXPECT_EQ(j.at("window").at("qmax"), 6);
    EXPECT_EQ(verdict_name(Verdict::NOT_NILPOTENT), "NOT_NILPOTENT");
}
