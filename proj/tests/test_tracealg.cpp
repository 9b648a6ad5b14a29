#include <gtest/gtest.h>

#include "hhh/tracealg.hpp"
#include "oracle.hpp"

using namespace hhh;

namespace {

long long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

long long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

// Monomials in n variables of total degree k.
long long monomials(int n, int k) { return k < 0 ? 0 : binom(n + k - 1, k); }

// Q[x] ⋊ S_n ⊗ ∧θ with x at (2, 2) and θ at (2, 1), scaled by mult; no θ when theta is false.
DimTable free_dims(int n, bool theta, long long mult, int lo, int hi) {
    DimTable t(GradingScheme({"X", "C"}, "C"));
    for (int x = lo; x <= hi; ++x)
        for (int c = lo; c <= hi; ++c)
            for (int a = 0; a <= (theta ? n : 0); ++a) {
                int twice_k = x - 2 * a;
                if (twice_k < 0 || twice_k % 2 || c != twice_k + a) continue;
                long long v = mult * binom(n, a) * monomials(n, twice_k / 2);
                if (v) t.add({x, c}, v);
            }
    return t;
}

// Character of ∧^a of the permutation representation: the t^a coefficient of Π (1 - (-t)^m).
Q wedge_character(const std::vector<int>& ct, int a) {
    std::vector<long long> poly{1};
    for (int m : ct) {
        std::vector<long long> next(poly.size() + m, 0);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i] += poly[i];
            next[i + m] -= (m % 2 ? -1 : 1) * poly[i];
        }
        poly = next;
    }
    return a < static_cast<int>(poly.size()) ? Q(static_cast<long>(poly[a])) : Q(0);
}

void expect_ok(const SkewModule& m) {
    ModuleReport r = check_module(m);
    EXPECT_TRUE(r.ok) << r.witness;
}

}  // namespace

TEST(Modules, RelationsHoldOnStandardModules) {
    for (int n = 1; n <= 3; ++n) {
        for (AlgTag t : {AlgTag::A, AlgTag::Abar, AlgTag::B, AlgTag::Btilde}) {
            expect_ok(free_module(t, n));
            expect_ok(zero_module(t, n));
        }
        expect_ok(triv_theta(n));
        expect_ok(triv_y(n));
        expect_ok(sign_twist(free_module(AlgTag::A, n)));
        expect_ok(shift_module(free_module(AlgTag::Abar, n), 3, -2));
    }
}

TEST(Modules, BrokenPermutationIsCaught) {
    SkewModule m = free_module(AlgTag::A, 2);
    m.perm[0] = m.perm[0].scaled(2);
    EXPECT_FALSE(check_module(m).ok);
}

TEST(Modules, FreeADims) {
    for (int n = 1; n <= 2; ++n)
        EXPECT_EQ(graded_dims(free_module(AlgTag::A, n), -4, 10, -4, 10).entries(), free_dims(n, true, factorial(n), -4, 10).entries());
}

TEST(Koszul, InvOfTrivialThetaIsFreeB) {
    for (int n = 1; n <= 2; ++n)
        EXPECT_EQ(graded_dims(inv_theta(triv_theta(n)), -8, 8, -8, 8), graded_dims(free_module(AlgTag::B, n), -8, 8, -8, 8));
}

TEST(Koszul, TwistedInvOfFreeAIsTrivialY) {
    for (int n = 1; n <= 2; ++n) {
        DimTable got = graded_dims(inv_theta_twisted(free_module(AlgTag::A, n)), -8, 10, -8, 10);
        EXPECT_EQ(got, graded_dims(triv_y(n), -8, 10, -8, 10));
        EXPECT_EQ(got.entries(), free_dims(n, false, factorial(n), -8, 10).entries());
    }
}

TEST(Koszul, TwistedCoinvOfTrivialYIsFreeA) {
    for (int n = 1; n <= 2; ++n)
        EXPECT_EQ(graded_dims(coinv_y_twisted(triv_y(n)), -6, 10, -6, 10).entries(), free_dims(n, true, factorial(n), -6, 10).entries());
}

TEST(Koszul, ZeroGoesToZero) {
    EXPECT_TRUE(graded_dims(coinv_y(zero_module(AlgTag::B, 2)), -5, 5, -5, 5).empty());
    EXPECT_TRUE(graded_dims(inv_theta(zero_module(AlgTag::A, 2)), -5, 5, -5, 5).empty());
}

TEST(Koszul, RandomComplexesRoundTrip) {
    for (unsigned seed = 1; seed <= 5; ++seed) {
        SkewModule m = oracle::random_free_a_complex(2, seed);
        expect_ok(m);
        SkewModule back = coinv_y_twisted(inv_theta_twisted(m));
        expect_ok(back);
        EXPECT_EQ(graded_dims(back, -10, 10, -10, 10), graded_dims(m, -10, 10, -10, 10)) << seed;
    }
}

TEST(Reps, WedgeCharactersTwoStrands) {
    PermRep r1 = wedge_perm_rep(1, 2), r2 = wedge_perm_rep(2, 2);
    EXPECT_EQ(r1.character.at({1, 1}), Q(2));
    EXPECT_EQ(r1.character.at({2}), Q(0));
    EXPECT_EQ(r2.character.at({1, 1}), Q(1));
    EXPECT_EQ(r2.character.at({2}), Q(-1));
}

TEST(Reps, WedgeAndInducedAgreeWithCharacterFormula) {
    for (int n = 1; n <= 4; ++n)
        for (int a = 0; a <= n; ++a) {
            PermRep w = wedge_perm_rep(a, n), ind = induced_rep(a, n);
            EXPECT_TRUE(w.relations_hold());
            EXPECT_TRUE(ind.relations_hold());
            EXPECT_EQ(ind.dim, binom(n, a));
            for (auto& ct : cycle_types(n)) {
                EXPECT_EQ(w.character.at(ct), wedge_character(ct, a));
                EXPECT_EQ(ind.character.at(ct), wedge_character(ct, a));
            }
        }
    EXPECT_EQ(wedge_perm_rep(1, 3).character.at({3}), Q(0));
    EXPECT_EQ(wedge_perm_rep(1, 3).character.at({2, 1}), Q(1));
}

TEST(Reps, CycleTypes) {
    EXPECT_EQ(cycle_types(3), (std::vector<std::vector<int>>{{1, 1, 1}, {2, 1}, {3}}));
    EXPECT_EQ(cycle_type({1, 2, 0, 3}), (std::vector<int>{3, 1}));
}

TEST(Gamma, ZeroOfAbarIsPolynomialRing) {
    for (int n = 1; n <= 2; ++n)
        EXPECT_EQ(gamma_a(free_module(AlgTag::Abar, n), 0, -4, 12, -4, 12).entries(), free_dims(n, false, 1, -4, 12).entries());
}

TEST(Gamma, ZeroModuleIsEmpty) {
    for (int a = 0; a <= 2; ++a) EXPECT_TRUE(gamma_a(zero_module(AlgTag::A, 2), a, -6, 6, -6, 6).empty());
}

TEST(Gamma, TauTildeCoordinates) {
    DimTable g(GradingScheme({"X", "C"}, "C"));
    g.add({2, 5}, 3);
    DimTable t = tau_tilde(g, 1);
    EXPECT_EQ(t.at({4, 3, 3}), 3);
    EXPECT_EQ(t.total(), 3);
}

TEST(Heart, DiagonalFamily) {
    for (int n = 1; n <= 2; ++n) {
        SkewModule a = free_module(AlgTag::Abar, n);
        EXPECT_TRUE(weight_heart_check(a));
        for (int k = -2; k <= 2; ++k) EXPECT_TRUE(weight_heart_check(shift_module(a, k, k)));
        EXPECT_FALSE(weight_heart_check(shift_module(a, 0, -1)));
        EXPECT_FALSE(weight_heart_check(shift_module(a, 1, 0)));
    }
}

TEST(Nilpotence, Examples) {
    EXPECT_FALSE(nilp_y_check(free_module(AlgTag::B, 1), 4).nilpotent);
    EXPECT_TRUE(nilp_y_check(inv_theta_twisted(free_module(AlgTag::A, 1)), 4).nilpotent);
    NilpReport t = nilp_y_check(triv_y(2), 4);
    EXPECT_TRUE(t.nilpotent);
    EXPECT_EQ(t.power, 1);
}

TEST(Json, ModuleRoundTripAndValidation) {
    SkewModule m = oracle::random_free_a_complex(2, 3);
    SkewModule back = skew_module_from_json(to_json(m));
    EXPECT_EQ(to_json(back), to_json(m));
    nlohmann::json bad = to_json(free_module(AlgTag::A, 2));
    bad["perm"][0] = to_json(free_module(AlgTag::A, 2).perm[0].scaled(3));
    EXPECT_THROW(skew_module_from_json(bad), std::invalid_argument);
}
