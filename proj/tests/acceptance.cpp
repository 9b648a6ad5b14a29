#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "hhh/supports.hpp"
#include "hhh/tracealg.hpp"
#include "oracle.hpp"

using namespace hhh;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

// Fails the criterion with the first violated expectation.
struct Checker {
    Outcome out;
    void expect(bool cond, const std::string& what) {
        if (!cond && out.ok) {
            out.ok = false;
            out.detail = what;
        }
    }
};

BraidWord word(std::vector<int> letters, int n) { return BraidWord{n, std::move(letters)}; }

DimTable hhh_dims(const BraidWord& b, int qmax) { return assemble_hhh(rouquier_complex(b), qmax).dims; }

long long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::string str(const BraidWord& b) { return "[" + b.str() + "] n=" + std::to_string(b.n); }

Outcome a1() {
    Checker c;
    DimTable r = render(assemble_hhh(rouquier_complex(word({}, 1)), 10), Render::qat);
    std::map<MultiDegree, long long> want;
    for (int k = 0; k <= 10; ++k) {
        want[{0, 2 * k, 0}] = 1;
        want[{1, 2 * k, 0}] = 1;
    }
    c.expect(r.entries() == want, "unknot series mismatch");
    return c.out;
}

Outcome a2() {
    Checker c;
    DimTable r = render(assemble_hhh(rouquier_complex(word({}, 2)), 8), Render::qat);
    // (1 + a)^2 / (1 - q)^2 truncated at q^8
    std::map<MultiDegree, long long> want;
    for (int j = 0; j <= 2; ++j)
        for (int k = 0; k <= 8; ++k) want[{j, 2 * k, 0}] = binom(2, j) * (k + 1);
    c.expect(r.entries() == want, "unlink table is not the squared series");
    return c.out;
}

Outcome a3() {
    Checker c;
    for (auto& b : {word({1, 1}, 2), word({1, 1, 1}, 2), word({-1, 2, -1}, 3)}) {
        DimTable prod = hhh_dims(b, 8);
        DimTable orc = oracle::page_two_hhh(rouquier_complex(b, false), 8);
        c.expect(prod.entries() == orc.entries(), "pipeline differs from oracle on " + str(b));
    }
    return c.out;
}

Outcome a4() {
    Checker c;
    std::mt19937 rng(2024);
    for (int n = 2; n <= 3; ++n)
        for (int pair = 0; pair < 5; ++pair) {
            std::uniform_int_distribution<int> len(1, 2), gen(1, n - 1), sign(0, 1);
            auto random_word = [&] {
                std::vector<int> w;
                for (int i = len(rng); i > 0; --i) w.push_back(sign(rng) ? gen(rng) : -gen(rng));
                return w;
            };
            std::vector<int> beta = random_word(), gamma = random_word(), bg = beta, gb = gamma;
            bg.insert(bg.end(), gamma.begin(), gamma.end());
            gb.insert(gb.end(), beta.begin(), beta.end());
            c.expect(hhh_dims(word(bg, n), 6).entries() == hhh_dims(word(gb, n), 6).entries(),
                     "HHH differs for " + str(word(bg, n)) + " and " + str(word(gb, n)));
        }
    return c.out;
}

Outcome a5() {
    Checker c;
    for (auto& [small, big] : std::vector<std::pair<BraidWord, BraidWord>>{{word({}, 1), word({1}, 2)}, {word({1}, 2), word({1, 2}, 3)}})
        c.expect(hhh_dims(small, 6).entries() == hhh_dims(big, 6).entries(), "stabilization changes HHH of " + str(small));
    return c.out;
}

Outcome a6() {
    Checker c;
    auto dims = [](const SkewModule& m) { return graded_dims(m, -10, 10, -10, 10); };
    for (int n = 1; n <= 2; ++n) {
        c.expect(dims(inv_theta(triv_theta(n))) == dims(free_module(AlgTag::B, n)), "inv(triv_theta) is not free B");
        c.expect(dims(inv_theta_twisted(free_module(AlgTag::A, n))) == dims(triv_y(n)), "twisted inv(free A) is not triv_y");
    }
    for (unsigned seed = 1; seed <= 10; ++seed) {
        SkewModule m = oracle::random_free_a_complex(2, seed);
        c.expect(check_module(m).ok, "random complex invalid, seed " + std::to_string(seed));
        c.expect(dims(coinv_y_twisted(inv_theta_twisted(m))) == dims(m), "round trip changes dims, seed " + std::to_string(seed));
    }
    return c.out;
}

Outcome a7() {
    Checker c;
    for (int n = 1; n <= 2; ++n) {
        DimTable target = render(assemble_hhh(rouquier_complex(word({}, n)), 6), Render::QpApTp);
        for (int a = 0; a <= n; ++a) {
            DimTable g = tau_tilde(gamma_a(free_module(AlgTag::A, n), a, -2, 14, -2, 14), a);
            c.expect(equal_on_window(g, target), "n=" + std::to_string(n) + " a=" + std::to_string(a));
        }
    }
    return c.out;
}

Outcome a8() {
    Checker c;
    for (int n = 1; n <= 6; ++n)
        for (int a = 0; a <= n; ++a)
            c.expect(induced_rep(a, n).character == wedge_perm_rep(a, n).character,
                     "characters differ at n=" + std::to_string(n) + " a=" + std::to_string(a));
    return c.out;
}

Outcome a9() {
    Checker c;
    GradingScheme s({"X", "Y", "C"}, "C");
    Regrading r = tilde_regrading();
    auto image = [&](MultiDegree d) {
        DimTable t(s);
        t.add(d, 1);
        return regrade(t, r).entries().begin()->first;
    };
    c.expect(image({2, 1, 0}) == MultiDegree{1, 0, 0}, "(2,1) image");
    c.expect(image({-2, 0, 0}) == MultiDegree{0, 2, 0}, "(-2,0) image");
    c.expect(image({0, 1, 0}) == MultiDegree{1, 2, 0}, "(0,1) image");
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> coord(-6, 6), dim(1, 4);
    for (int i = 0; i < 50; ++i) {
        DimTable t(s);
        for (int e = 0; e < 8; ++e) t.add({coord(rng), coord(rng), coord(rng)}, dim(rng));
        c.expect(shear(shear(t, "Y", ShearDir::left), "Y", ShearDir::right) == t, "shear round trip");
        DimTable via_shear = degrade(shear(t, "Y", ShearDir::right), "Y");
        DimTable via_per = drop_axis(slice(periodize(t, "Y", 0, 0), "Y", 0), "Y");
        c.expect(equal_on_window(via_shear, via_per), "periodize vs shear-degrade");
    }
    return c.out;
}

Outcome a10() {
    Checker c;
    Poly g = Poly::var(0) * Poly::var(0) - Poly::var(1) * Q(4);
    SupportReport tre = support_report(word({1, 1, 1}, 2), 8, 6);
    c.expect(tre.generators.size() == 1 && tre.generators[0].verdict == Verdict::PASS && tre.generators[0].min_power <= 6,
             "trefoil verdict " + (tre.generators.empty() ? std::string("none") : verdict_name(tre.generators[0].verdict)));
    for (auto& b : {word({1, 1}, 2), word({}, 2)}) {
        GeneratorReport r = nilpotence_report(HHHEngine(rouquier_complex(b)), g, 8, 6);
        c.expect(r.verdict == Verdict::NOT_NILPOTENT, str(b) + " verdict " + verdict_name(r.verdict));
    }
    return c.out;
}

Outcome a11() {
    Checker c;
    for (int n = 2; n <= 3; ++n) {
        std::vector<std::vector<int>> words{{}};
        for (std::size_t i = 0; i < words.size(); ++i)
            if (words[i].size() < 4)
                for (int s = 1; s < n; ++s) {
                    auto w = words[i];
                    w.push_back(s);
                    words.push_back(w);
                }
        RingPtr ring = PolyRing::standard(n);
        for (auto& w : words) {
            Bimodule m = bs_word(w, n);
            for (int k = 0; k <= n; ++k) {
                Poly e = elem_sym(k, n, *ring);
                c.expect(left_action(m, e) == right_action(m, e), "left and right e_k differ");
            }
        }
    }
    return c.out;
}

Outcome a12() {
    Checker c;
    for (int n = 1; n <= 2; ++n)
        for (int k = -2; k <= 2; ++k) {
            // heart members sit on the diagonal X = C
            SkewModule abar = shift_module(free_module(AlgTag::Abar, n), k, k);
            SkewModule img = inv_theta_twisted(shift_module(free_module(AlgTag::A, n), k, k));
            c.expect(weight_heart_check(abar), "shifted Abar leaves the heart");
            c.expect(graded_dims(img, -10, 10, -10, 10) == graded_dims(abar, -10, 10, -10, 10),
                     "n=" + std::to_string(n) + " k=" + std::to_string(k));
        }
    return c.out;
}

}  // namespace

int main() {
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"A1", a1}, {"A2", a2}, {"A3", a3}, {"A4", a4}, {"A5", a5},   {"A6", a6},
        {"A7", a7}, {"A8", a8}, {"A9", a9}, {"A10", a10}, {"A11", a11}, {"A12", a12},
    };
    // time limits in seconds per criterion
    std::map<std::string, double> limit{{"A1", 1}, {"A2", 5}, {"A3", 300}, {"A6", 60}, {"A8", 10}, {"A10", 120}};
    int failures = 0;
    for (auto& [name, fn] : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (o.ok && limit.count(name) && secs > limit[name]) o = {false, "over time limit"};
        std::ostringstream line;
        line << name << ' ' << (o.ok ? "PASS" : "FAIL") << " (" << static_cast<long long>(secs * 1000) << " ms)";
        if (!o.detail.empty()) line << ' ' << o.detail;
        std::cout << line.str() << std::endl;
        if (!o.ok) ++failures;
    }
    return failures ? 1 : 0;
}
