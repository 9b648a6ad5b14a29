#pragma once

#include <string>
#include <vector>

#include "hhh/hochschild.hpp"

namespace hhh {

// Q[e_1..e_n] with e_k at X-degree 2k.
RingPtr e_ring(int n);

// Generators are polynomials in e_1..e_n cutting out the image of the fixed locus of w.
struct StratumIdeal {
    int n = 0;
    std::vector<int> cycle_type;  // descending parts
    std::vector<Poly> generators;
};

// Built-in library for n <= 3; throws for larger n.
StratumIdeal stratum_ideal(const std::vector<int>& cycle_type, int n);
// User-supplied generators for any n.
StratumIdeal stratum_ideal(const std::vector<int>& cycle_type, int n, std::vector<Poly> generators);

// g(e_1(x)..e_n(x)) in Q[x_1..x_n].
Poly symmetric_in_x(const Poly& g, int n);
// Evaluates every generator at random points with x_i = x_{w(i)} for a w of the class.
bool vanishes_on_stratum(const StratumIdeal& s, int trials, unsigned seed);
// Cycle types whose strata lie strictly inside the given one (fewer cycles, coarser partitions).
std::vector<std::vector<int>> smaller_strata(const std::vector<int>& cycle_type, int n);

enum class Verdict { PASS, NOT_NILPOTENT, INCONCLUSIVE };
std::string verdict_name(Verdict v);

// PASS: every class whose image stays in the window for some power is killed, min_power is the
// least power doing so. NOT_NILPOTENT: some class survives the largest power that still lands in
// the window. INCONCLUSIVE: no class can be tested.
struct GeneratorReport {
    std::string generator;  // in e_1..e_n
    Verdict verdict = Verdict::INCONCLUSIVE;
    int min_power = 0;
    MultiDegree witness_class;  // (a, X, C) of a surviving class
    int witness_power = 0;
    int tested_classes = 0;
    int untested_classes = 0;  // image leaves the window already at power one
};

GeneratorReport nilpotence_report(const HHHEngine& e, const Poly& g_in_e, int qmax, int power_bound, int jobs = 1);

struct SupportReport {
    BraidWord braid;
    std::vector<int> cycle_type;
    int qmax = 0;
    int power_bound = 0;
    std::vector<GeneratorReport> generators;
    std::vector<std::pair<std::vector<int>, std::vector<GeneratorReport>>> controls;  // per smaller stratum
    Verdict verdict = Verdict::PASS;  // over the predicted generators only
};

SupportReport support_report(const BraidWord& b, const HHHEngine& e, int qmax, int power_bound, int jobs = 1);
SupportReport support_report(const BraidWord& b, int qmax, int power_bound, int jobs = 1);

nlohmann::json to_json(const SupportReport& r);

}  // namespace hhh
