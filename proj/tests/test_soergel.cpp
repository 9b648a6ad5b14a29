#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "hhh/soergel.hpp"

using namespace hhh;

namespace {

Poly x(int i) { return Poly::var(i); }

PolyMatrix scalar(const Bimodule& m, const Poly& p) { return left_action(m, p); }

std::vector<int> sorted_degrees(const Bimodule& m) {
    std::vector<int> d;
    for (auto& g : m.under.gens) d.push_back(g[0]);
    std::sort(d.begin(), d.end());
    return d;
}

// Degrees of (q^{-1/2} + q^{1/2})^l in X units: C(l, k) copies of 2k - l.
std::vector<int> binomial_degrees(int l) {
    std::vector<int> d;
    for (int mask = 0; mask < (1 << l); ++mask) d.push_back(2 * __builtin_popcount(mask) - l);
    std::sort(d.begin(), d.end());
    return d;
}

std::vector<std::vector<int>> words(int n, int maxlen) {
    std::vector<std::vector<int>> out{{}};
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (static_cast<int>(out[i].size()) == maxlen) continue;
        for (int s = 1; s < n; ++s) {
            auto w = out[i];
            w.push_back(s);
            out.push_back(w);
        }
    }
    return out;
}

}  // namespace

TEST(Regular, OneStrand) {
    Bimodule r = regular_bimodule(1);
    EXPECT_EQ(r.rank(), 1u);
    EXPECT_EQ(r.rho[0].at(0, 0), x(0));
    EXPECT_TRUE(check_bimodule(r).ok);
}

TEST(Regular, UnitLaw) {
    for (auto& w : std::vector<std::vector<int>>{{1}, {1, 2}, {2, 1, 2}}) {
        Bimodule m = bs_word(w, 3);
        for (const Bimodule& t : {tensor(regular_bimodule(3), m), tensor(m, regular_bimodule(3))}) {
            EXPECT_EQ(t.under.gens, m.under.gens);
            for (int j = 0; j < 3; ++j) EXPECT_EQ(t.rho[j], m.rho[j]);
        }
    }
}

TEST(Generator, MinimalPolynomialOfRightAction) {
    for (int n = 2; n <= 3; ++n)
        for (int i = 1; i < n; ++i) {
            Bimodule b = bs_generator(i, n);
            const PolyMatrix& r = b.rho[i - 1];
            PolyMatrix lhs = r * r - scalar(b, x(i - 1) + x(i)) * r + scalar(b, x(i - 1) * x(i));
            EXPECT_TRUE(lhs.is_zero());
        }
}

TEST(Generator, InvariantsActTheSameOnBothSides) {
    Bimodule b = bs_generator(1, 2);
    RingPtr r = ring_for(2);
    for (int k = 1; k <= 2; ++k) EXPECT_EQ(right_action(b, elem_sym(k, 2, *r)), left_action(b, elem_sym(k, 2, *r)));
}

TEST(Generator, GradedRankIsTwoSymmetricGenerators) {
    EXPECT_EQ(sorted_degrees(bs_generator(1, 2)), (std::vector<int>{-1, 1}));
}

TEST(Tensor, SquareHasRankFour) {
    Bimodule b = bs_generator(1, 2);
    EXPECT_EQ(sorted_degrees(tensor(b, b)), (std::vector<int>{-2, 0, 0, 2}));
}

TEST(Tensor, Associative) {
    Bimodule s = bs_generator(1, 3), t = bs_generator(2, 3);
    Bimodule l = tensor(tensor(s, t), s), r = tensor(s, tensor(t, s));
    EXPECT_EQ(sorted_degrees(l), sorted_degrees(r));
    EXPECT_EQ(l.under.gens, r.under.gens);
    for (int j = 0; j < 3; ++j) EXPECT_EQ(l.rho[j], r.rho[j]);
}

TEST(Check, PassesOnGeneratorsAndFailsOnBrokenCommutator) {
    EXPECT_TRUE(check_bimodule(bs_generator(1, 2)).ok);
    Bimodule bad = bs_generator(1, 3);
    bad.rho[2].at(0, 0) += x(0);  // x3 now mixes with the generator's variables
    BimoduleReport rep = check_bimodule(bad);
    EXPECT_FALSE(rep.ok);
    EXPECT_FALSE(rep.witness.empty());
}

TEST(Check, BottSamelsonCorpus) {
    for (int n = 2; n <= 3; ++n)
        for (auto& w : words(n, 4)) {
            Bimodule m = bs_word(w, n);
            EXPECT_TRUE(check_bimodule(m).ok);
            EXPECT_EQ(sorted_degrees(m), binomial_degrees(static_cast<int>(w.size())));
            RingPtr r = ring_for(n);
            for (int k = 0; k <= n; ++k) EXPECT_EQ(left_action(m, elem_sym(k, n, *r)), right_action(m, elem_sym(k, n, *r)));
        }
}

TEST(Splitting, MergeAndSplitAreInverseBimoduleMaps) {
    for (int n = 2; n <= 3; ++n)
        for (int i = 1; i < n; ++i) {
            SquareSplitting sq = square_splitting(i, n);
            Bimodule sum{n, sq.sum, {}, {i}, 0};
            Bimodule lo = shifted(bs_generator(i, n), -1), hi = shifted(bs_generator(i, n), 1);
            for (int j = 0; j < n; ++j) {
                PolyMatrix r(sq.sum, sq.sum, {2});
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b) {
                        r.at(a, b) = lo.rho[j].at(a, b);
                        r.at(2 + a, 2 + b) = hi.rho[j].at(a, b);
                    }
                sum.rho.push_back(r);
            }
            EXPECT_TRUE(is_bimodule_map(sq.square, sum, sq.split));
            EXPECT_TRUE(is_bimodule_map(sum, sq.square, sq.merge));
            EXPECT_EQ(sq.split * sq.merge, PolyMatrix::identity(sq.sum));
            EXPECT_EQ(sq.merge * sq.split, PolyMatrix::identity(sq.square.under));
        }
}

TEST(Unimodular, InverseOfTriangular) {
    RingPtr r = ring_for(2);
    GradedFreeModule m{r, {{0}, {2}}};
    PolyMatrix a(m, m, {0});
    a.at(0, 0) = Poly(2);
    a.at(1, 1) = Poly(1);
    a.at(0, 1) = x(0);
    PolyMatrix inv = invert_unimodular(a);
    EXPECT_EQ(a * inv, PolyMatrix::identity(m));
    EXPECT_EQ(inv * a, PolyMatrix::identity(m));
}

TEST(Json, BimoduleRoundTrip) {
    Bimodule m = bs_word({1, 2, 1}, 3);
    Bimodule back = bimodule_from_json(to_json(m));
    EXPECT_EQ(back.under.gens, m.under.gens);
    EXPECT_EQ(back.word, m.word);
    for (int j = 0; j < 3; ++j) EXPECT_EQ(back.rho[j], m.rho[j]);
}
