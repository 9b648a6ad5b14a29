#include <gtest/gtest.h>

#include <random>

#include "hhh/multigrade.hpp"

using namespace hhh;

namespace {

GradingScheme xyc() { return GradingScheme({"X", "Y", "C"}, "C"); }
GradingScheme xc() { return GradingScheme({"X", "C"}, "C"); }

DimTable random_table(const GradingScheme& s, std::mt19937& rng, int entries = 8, int range = 6) {
    std::uniform_int_distribution<int> coord(-range, range), dim(1, 4);
    DimTable t(s);
    for (int i = 0; i < entries; ++i) {
        MultiDegree d(s.size());
        for (auto& v : d) v = coord(rng);
        t.add(d, dim(rng));
    }
    return t;
}

DimTable single(const GradingScheme& s, const MultiDegree& d, long long v = 1) {
    DimTable t(s);
    t.add(d, v);
    return t;
}

}  // namespace

TEST(GradingScheme, RejectsDuplicateAxes) {
    EXPECT_THROW(GradingScheme({"X", "X", "C"}, "C"), std::invalid_argument);
    EXPECT_THROW(GradingScheme({"X", "Y"}, "C"), std::invalid_argument);
}

TEST(DimTable, AbsentMeansZeroAndNegativeRejected) {
    DimTable t(xc());
    t.add({0, 0}, 2);
    EXPECT_EQ(t.at({0, 0}), 2);
    EXPECT_EQ(t.at({1, 0}), 0);
    EXPECT_THROW(t.add({1, 0}, -1), std::invalid_argument);
}

TEST(DimTable, EqualityOnlyOnWindowIntersection) {
    DimTable a = single(xc(), {0, 0}), b = single(xc(), {0, 0});
    a.add({10, 0}, 1);
    b.set_upper("X", 5);
    EXPECT_TRUE(equal_on_window(a, b));
    DimTable c = single(xc(), {0, 0});
    c.set_upper("X", 10);
    EXPECT_FALSE(equal_on_window(a, c));
}

TEST(Shift, GradingShiftMovesFormalAxis) {
    DimTable t = single(xc(), {0, 0});
    EXPECT_EQ(shift(t, grading_shift(xc(), "X", 2)), single(xc(), {2, 0}));
}

TEST(Shift, CohomologicalShiftLowersC) {
    DimTable t = single(xc(), {0, 0});
    EXPECT_EQ(shift(t, coh_shift(xc(), 1)), single(xc(), {0, -1}));
}

TEST(Shift, FreeGroupAction) {
    std::mt19937 rng(7);
    for (int i = 0; i < 20; ++i) {
        DimTable t = random_table(xyc(), rng);
        t.set_upper("C", 3);
        MultiDegree d1{1, -2, 3}, d2{-4, 1, 1}, sum{-3, -1, 4}, neg{-1, 2, -3};
        EXPECT_EQ(shift(shift(t, d1), neg), t);
        EXPECT_EQ(shift(shift(t, d1), d2), shift(t, sum));
    }
}

TEST(Shear, LeftOnUnitY) {
    DimTable t = single(xyc(), {0, 1, 0});
    EXPECT_EQ(shear(t, "Y", ShearDir::left), single(xyc(), {0, 1, -2}));
}

TEST(Shear, MutuallyInverse) {
    std::mt19937 rng(11);
    for (int i = 0; i < 30; ++i) {
        DimTable t = random_table(xyc(), rng);
        EXPECT_EQ(shear(shear(t, "Y", ShearDir::left), "Y", ShearDir::right), t);
        EXPECT_EQ(shear(shear(t, "Y", ShearDir::right), "Y", ShearDir::left), t);
    }
}

TEST(Shear, EmptyStaysEmpty) { EXPECT_TRUE(shear(DimTable(xyc()), "Y", ShearDir::left).empty()); }

TEST(Regrade, TildeImagesOfGeneratorDegrees) {
    Regrading r = tilde_regrading();
    GradingScheme t = r.target;
    EXPECT_EQ(regrade(single(xyc(), {2, 1, 0}), r).entries().begin()->first, (MultiDegree{1, 0, 0}));
    EXPECT_EQ(regrade(single(xyc(), {-2, 0, 0}), r).entries().begin()->first, (MultiDegree{0, 2, 0}));
    EXPECT_EQ(regrade(single(xyc(), {0, 1, 0}), r).entries().begin()->first, (MultiDegree{1, 2, 0}));
    EXPECT_EQ(t.axes(), (std::vector<std::string>{"Xt", "Yt", "C"}));
}

TEST(Regrade, InverseRoundTrip) {
    std::mt19937 rng(3);
    Regrading r = tilde_regrading(), ri = inverse(r);
    for (int i = 0; i < 30; ++i) {
        DimTable t = random_table(xyc(), rng);
        EXPECT_EQ(regrade(regrade(t, r), ri), t);
    }
}

TEST(Periodize, ContainsBetaOrbit) {
    DimTable p = periodize(single(xyc(), {0, 0, 0}), "Y", -3, 3);
    for (int k = -3; k <= 3; ++k) EXPECT_EQ(p.at({0, k, -2 * k}), 1);
    EXPECT_EQ(p.total(), 7);
}

TEST(Periodize, EmptyStaysEmpty) { EXPECT_TRUE(periodize(DimTable(xyc()), "Y", -2, 2).empty()); }

TEST(Periodize, AgreesWithRightShearThenDegrade) {
    std::mt19937 rng(5);
    for (int i = 0; i < 50; ++i) {
        DimTable t = random_table(xyc(), rng);
        DimTable via_shear = degrade(shear(t, "Y", ShearDir::right), "Y");
        DimTable via_per = drop_axis(slice(periodize(t, "Y", 0, 0), "Y", 0), "Y");
        EXPECT_TRUE(equal_on_window(via_shear, via_per));
        EXPECT_EQ(via_shear.entries(), via_per.entries());
    }
}

TEST(Periodize, BetaInvariant) {
    std::mt19937 rng(9);
    MultiDegree b = beta_degree(xyc());
    for (int i = 0; i < 20; ++i) {
        DimTable t = random_table(xyc(), rng);
        DimTable p = periodize(t, "Y", -4, 4);
        EXPECT_TRUE(equal_on_window(periodize(shift(t, b), "Y", -4, 4), p));
        EXPECT_TRUE(equal_on_window(shift(p, b), p));
    }
}

TEST(HomShear, UnitInput) {
    DimTable h = hom_shear_check(single(xc(), {0, 0}), -3, 3);
    for (int k = -3; k <= 3; ++k) EXPECT_EQ(h.at({0, 2 * k, k}), 1);
    EXPECT_EQ(h.total(), 7);
}

TEST(HomShear, EmptyInput) { EXPECT_TRUE(hom_shear_check(DimTable(xc()), -2, 2).empty()); }

TEST(HomShear, MatchesDirectEnumeration) {
    std::mt19937 rng(13);
    for (int i = 0; i < 20; ++i) {
        DimTable t = random_table(xc(), rng);
        DimTable h = hom_shear_check(t, -3, 3);
        // every entry (X, C) contributes at (X, C + 2k, Y = k)
        std::map<MultiDegree, long long> want;
        for (auto& [d, v] : t.entries())
            for (int k = -3; k <= 3; ++k) want[{d[0], d[1] + 2 * k, k}] += v;
        EXPECT_EQ(h.entries(), want);
    }
}

TEST(DimTable, JsonRoundTrip) {
    std::mt19937 rng(17);
    DimTable t = random_table(xyc(), rng);
    t.set_upper("C", 4);
    t.set_lower("X", -2);
    EXPECT_EQ(dimtable_from_json(to_json(t)), t);
}
