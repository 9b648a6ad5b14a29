#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hhh/rouquier.hpp"

namespace hhh {

// Axes (a, X, C): Koszul degree, internal degree with the θ-offset removed, and C = X + h for
// Rouquier chain degree h.
GradingScheme hhh_scheme();

struct HHHTable {
    DimTable dims;
    int n = 0;
    std::vector<int> word;
    int writhe = 0;
    std::vector<int> permutation;
};

// M ⊗ ∧^a(θ_1..θ_n) placed in chain degree -a; θ_i has X-degree 2.
FreeComplex koszul_hh(const Bimodule& m);
// HH_a(M) dims on axes (a, X) with X the native internal degree (θ counted), for X <= xmax.
DimTable hh_dims(const Bimodule& m, int xmax, int jobs = 1);

// Koszul terms of every chain object and the maps between them; answers page-two questions.
class HHHEngine {
public:
    explicit HHHEngine(const BimoduleComplex& c);

    int n() const { return n_; }
    int a_offset() const { return a_off_; }
    int hmin() const { return hmin_; }
    int hmax() const { return hmax_; }
    int min_internal() const { return xmin_; }  // smallest native degree of a Koszul generator

    const GradedFreeModule& term(int a, int h) const;  // K_a^h, empty outside the range
    PolyMatrix koszul_d(int a, int h) const;           // K_a^h -> K_{a-1}^h
    PolyMatrix rouquier_d(int a, int h) const;         // K_a^h -> K_a^{h+1}

    // dim of the page-two term at Koszul degree a, chain degree h, native internal degree xn.
    std::map<int, long long> e2_column(int a, int xn) const;
    // Rank of multiplication by a homogeneous p from page-two (a, h, xn) to (a, h, xn + deg p).
    long long operator_rank(const Poly& p, int a, int h, int xn) const;

    // Total complex homology at native degree xn, indexed by h - a.
    std::map<int, long long> total_homology(int xn) const;

private:
    int n_ = 0, a_off_ = 0, hmin_ = 0, hmax_ = -1, xmin_ = 0;
    RingPtr ring_;
    GradedFreeModule empty_;
    std::map<std::pair<int, int>, GradedFreeModule> k_;
    std::map<std::pair<int, int>, PolyMatrix> dk_, dr_;
};

// Table coordinates of the page-two term: (a + offset, xn - 2a, xn - 2a + h).
MultiDegree hhh_coordinates(const HHHEngine& e, int a, int h, int xn);

// All entries with q <= qmax, i.e. C <= 2*qmax.
HHHTable assemble_hhh(const BimoduleComplex& c, int qmax, int jobs = 1);
HHHTable assemble_hhh(const HHHEngine& e, int qmax, int jobs = 1);

enum class Render { QpApTp, QAT, qat, tilde };
Render parse_render(const std::string& name);
std::string render_name(Render r);

// QpApTp: (X+2a, X+a, C-X); QAT: (X+2a, -a, C-X); qat: (a, 2q = C, 2t = C-X) with doubled
// exponents; tilde: the β-orbit representative with C in {0,1}, as (a, Xt, Yt, C).
DimTable render(const HHHTable& t, Render r);
// Σ dims·sign·a^a q^(q2/2) t^(t2/2) with the tilde sign (-1)^C; keys are degree vectors.
std::map<MultiDegree, long long> decategorify(const DimTable& rendered);

struct SymfunOperator {
    int k = 0;
    std::map<int, PolyMatrix> left, right;       // chain level on each flattened term
    std::map<MultiDegree, long long> hhh_rank;   // rank on HHH by source (a, X, C)
};
SymfunOperator symfun_operator(const BimoduleComplex& c, int k, int qmax, int jobs = 1);

nlohmann::json to_json(const HHHTable& t);
HHHTable hhh_table_from_json(const nlohmann::json& j);

}  // namespace hhh
