#include "hhh/supports.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>

#include "hhh/tracealg.hpp"

namespace hhh {

RingPtr e_ring(int n) {
    static std::mutex mu;
    static std::map<int, RingPtr> rings;
    std::lock_guard<std::mutex> g(mu);
    auto& r = rings[n];
    if (!r) {
        std::vector<std::string> v;
        std::vector<MultiDegree> d;
        for (int k = 1; k <= n; ++k) {
            v.push_back("e" + std::to_string(k));
            d.push_back({2 * k});
        }
        r = std::make_shared<const PolyRing>(v, std::vector<std::string>{"X"}, d);
    }
    return r;
}

namespace {

Poly e(int k) { return Poly::var(k - 1); }

std::vector<int> normalized(std::vector<int> ct, int n) {
    std::sort(ct.rbegin(), ct.rend());
    int sum = 0;
    for (int p : ct) {
        if (p < 1) throw std::invalid_argument("cycle type parts must be positive");
        sum += p;
    }
    if (sum != n) throw std::invalid_argument("cycle type does not partition n");
    return ct;
}

// The parts of fine can be grouped so that the groups sum to the parts of coarse.
bool coarsens(const std::vector<int>& coarse, const std::vector<int>& fine) {
    std::vector<int> room = coarse;
    std::function<bool(std::size_t)> place = [&](std::size_t i) {
        if (i == fine.size()) return std::all_of(room.begin(), room.end(), [](int r) { return r == 0; });
        for (auto& r : room)
            if (r >= fine[i]) {
                r -= fine[i];
                if (place(i + 1)) return true;
                r += fine[i];
            }
        return false;
    };
    return place(0);
}

}  // namespace

StratumIdeal stratum_ideal(const std::vector<int>& cycle_type, int n, std::vector<Poly> generators) {
    StratumIdeal s;
    s.n = n;
    s.cycle_type = normalized(cycle_type, n);
    s.generators = std::move(generators);
    return s;
}

// Produced offline by elimination, see tools/stratum_oracle.py.
StratumIdeal stratum_ideal(const std::vector<int>& cycle_type, int n) {
    auto ct = normalized(cycle_type, n);
    std::vector<Poly> g;
    if (n > 3) throw std::invalid_argument("no built-in stratum ideal for n > 3; supply generators");
    if (ct.size() == static_cast<std::size_t>(n)) return stratum_ideal(ct, n, {});
    if (n == 2) {
        g.push_back(e(1) * e(1) - e(2) * Q(4));
    } else if (ct == std::vector<int>{2, 1}) {
        // discriminant of t^3 - e1 t^2 + e2 t - e3
        g.push_back(e(1).pow(2) * e(2).pow(2) - e(2).pow(3) * Q(4) - e(1).pow(3) * e(3) * Q(4) + e(1) * e(2) * e(3) * Q(18) -
                    e(3).pow(2) * Q(27));
    } else {
        g.push_back(e(1).pow(2) - e(2) * Q(3));
        g.push_back(e(1) * e(2) - e(3) * Q(9));
        g.push_back(e(2).pow(2) - e(1) * e(3) * Q(3));
    }
    return stratum_ideal(ct, n, g);
}

Poly symmetric_in_x(const Poly& g, int n) {
    RingPtr x = ring_for(n);
    std::vector<Poly> es;
    for (int k = 1; k <= n; ++k) es.push_back(elem_sym(k, n, *x));
    Poly out;
    for (auto& [m, c] : g.terms()) {
        Poly t(c);
        for (int k = 0; k < n; ++k)
            if (m.e[k]) t = t * es[k].pow(m.e[k]);
        out += t;
    }
    return out;
}

bool vanishes_on_stratum(const StratumIdeal& s, int trials, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> num(-20, 20), den(1, 7);
    std::vector<Poly> gx;
    for (auto& g : s.generators) gx.push_back(symmetric_in_x(g, s.n));
    for (int t = 0; t < trials; ++t) {
        // random positions for the cycles, one random value per cycle
        std::vector<int> pos(s.n);
        for (int i = 0; i < s.n; ++i) pos[i] = i;
        std::shuffle(pos.begin(), pos.end(), rng);
        std::vector<Q> pt(s.n);
        std::size_t k = 0;
        for (int part : s.cycle_type) {
            Q v(num(rng), den(rng));
            v.canonicalize();
            for (int j = 0; j < part; ++j) pt[pos[k++]] = v;
        }
        for (auto& p : gx)
            if (!p.evaluated(pt).is_zero()) return false;
    }
    return true;
}

std::vector<std::vector<int>> smaller_strata(const std::vector<int>& cycle_type, int n) {
    auto ct = normalized(cycle_type, n);
    std::vector<std::vector<int>> out;
    for (auto& c : cycle_types(n)) {
        auto cd = c;
        std::sort(cd.rbegin(), cd.rend());
        if (cd.size() < ct.size() && coarsens(cd, ct)) out.push_back(cd);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::PASS: return "PASS";
        case Verdict::NOT_NILPOTENT: return "NOT_NILPOTENT";
        case Verdict::INCONCLUSIVE: return "INCONCLUSIVE";
    }
    return "?";
}

GeneratorReport nilpotence_report(const HHHEngine& eng, const Poly& g_in_e, int qmax, int power_bound, int jobs) {
    GeneratorReport rep;
    int n = eng.n();
    rep.generator = g_in_e.str(e_ring(n)->vars());
    Poly g = symmetric_in_x(g_in_e, n);
    MultiDegree dg{0};
    if (g.is_zero() || !ring_for(n)->homogeneous(g, &dg) || dg[0] <= 0)
        throw std::invalid_argument("nilpotence_report: generator must be homogeneous of positive degree");
    struct Cls {
        int a, h, xn;
        MultiDegree coord;
        int kill = 0;       // least killing power, 0 if none
        int last = 0;       // largest power whose image stays in the window
    };
    std::vector<Cls> cls;
    if (eng.hmax() >= eng.hmin())
        for (int a = 0; a <= n; ++a)
            for (int xn = eng.min_internal(); xn <= 2 * qmax + 2 * a - eng.hmin(); ++xn)
                for (auto& [h, dim] : eng.e2_column(a, xn)) {
                    MultiDegree c = hhh_coordinates(eng, a, h, xn);
                    if (dim > 0 && c[2] <= 2 * qmax) cls.push_back({a, h, xn, c, 0, 0});
                }
    std::vector<Poly> powers{Poly(1)};
    for (int p = 1; p <= power_bound; ++p) powers.push_back(powers.back() * g);
    parallel_for(cls.size(), jobs, [&](std::size_t i) {
        Cls& c = cls[i];
        for (int p = 1; p <= power_bound && c.coord[2] + p * dg[0] <= 2 * qmax; ++p) {
            c.last = p;
            if (eng.operator_rank(powers[p], c.a, c.h, c.xn) == 0) {
                c.kill = p;
                return;
            }
        }
    });
    bool survivor = false;
    for (auto& c : cls) {
        if (c.last == 0) {
            ++rep.untested_classes;
            continue;
        }
        ++rep.tested_classes;
        if (c.kill) {
            rep.min_power = std::max(rep.min_power, c.kill);
        } else if (!survivor || c.coord < rep.witness_class) {
            survivor = true;
            rep.witness_class = c.coord;
            rep.witness_power = c.last;
        }
    }
    if (survivor) {
        rep.verdict = Verdict::NOT_NILPOTENT;
        rep.min_power = 0;
    } else if (rep.tested_classes > 0) {
        rep.verdict = Verdict::PASS;
    } else {
        rep.verdict = Verdict::INCONCLUSIVE;
    }
    return rep;
}

SupportReport support_report(const BraidWord& b, const HHHEngine& e, int qmax, int power_bound, int jobs) {
    SupportReport r;
    r.braid = b;
    r.qmax = qmax;
    r.power_bound = power_bound;
    r.cycle_type = cycle_type(b.permutation());
    StratumIdeal s = stratum_ideal(r.cycle_type, b.n);
    for (auto& g : s.generators) {
        r.generators.push_back(nilpotence_report(e, g, qmax, power_bound, jobs));
        Verdict v = r.generators.back().verdict;
        if (v == Verdict::INCONCLUSIVE && r.verdict == Verdict::PASS) r.verdict = v;
        if (v == Verdict::NOT_NILPOTENT) r.verdict = v;
    }
    for (auto& ct : smaller_strata(r.cycle_type, b.n)) {
        std::vector<GeneratorReport> reps;
        for (auto& g : stratum_ideal(ct, b.n).generators) reps.push_back(nilpotence_report(e, g, qmax, power_bound, jobs));
        r.controls.emplace_back(ct, reps);
    }
    return r;
}

SupportReport support_report(const BraidWord& b, int qmax, int power_bound, int jobs) {
    return support_report(b, HHHEngine(rouquier_complex(b)), qmax, power_bound, jobs);
}

static nlohmann::json to_json(const GeneratorReport& g) {
    nlohmann::json j{{"generator", g.generator}, {"verdict", verdict_name(g.verdict)}, {"tested_classes", g.tested_classes},
                     {"untested_classes", g.untested_classes}};
    if (g.verdict == Verdict::PASS) j["min_power"] = g.min_power;
    if (g.verdict == Verdict::NOT_NILPOTENT) {
        j["witness_class"] = {{"a", g.witness_class[0]}, {"X", g.witness_class[1]}, {"C", g.witness_class[2]}};
        j["witness_power"] = g.witness_power;
    }
    return j;
}

nlohmann::json to_json(const SupportReport& r) {
    nlohmann::json j;
    j["braid"] = r.braid.letters;
    j["strands"] = r.braid.n;
    j["cycle_type"] = r.cycle_type;
    j["window"] = {{"qmax", r.qmax}, {"power_bound", r.power_bound}};
    j["generators"] = nlohmann::json::array();
    for (auto& g : r.generators) j["generators"].push_back(to_json(g));
    j["controls"] = nlohmann::json::array();
    for (auto& [ct, reps] : r.controls) {
        nlohmann::json c{{"cycle_type", ct}, {"generators", nlohmann::json::array()}};
        for (auto& g : reps) c["generators"].push_back(to_json(g));
        j["controls"].push_back(c);
    }
    j["verdict"] = verdict_name(r.verdict);
    return j;
}

}  // namespace hhh
