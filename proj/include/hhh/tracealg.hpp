#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hhh/polyalg.hpp"

namespace hhh {

// A: Q[x,θ]⋊S_n, Abar: Q[x]⋊S_n, B: Q[x,y]⋊S_n, Btilde: B with the (X, Y) degree table.
enum class AlgTag { A, Abar, B, Btilde };

struct SkewAlgebra {
    AlgTag tag = AlgTag::A;
    int n = 0;
    GradingScheme scheme;                                       // (X, C) or (X, Y, C)
    std::vector<std::pair<std::string, MultiDegree>> degrees;  // one entry per alphabet
};
SkewAlgebra skew_algebra(AlgTag tag, int n);
std::string alg_name(AlgTag tag);

// Q[x_1..x_n] with x at (X, C) = (2, 2), and Q[x, y] with y at (-2, 0).
RingPtr x_ring(int n);
RingPtr xy_ring(int n);

// Free module over x_ring or xy_ring with a differential of degree (0, 1); θ_i act with degree
// (2, 1) (A-modules), y_i act with degree (-2, 0) (B-modules whose base has no y). perm[j] is the
// semilinear action of s_{j+1}: column c is the image of generator c, and p·g goes to s(p)·S(g).
struct SkewModule {
    AlgTag alg = AlgTag::A;
    int n = 0;
    GradedFreeModule under;
    PolyMatrix d;
    std::vector<PolyMatrix> theta;
    std::vector<PolyMatrix> y;
    std::vector<PolyMatrix> perm;

    bool y_in_base() const { return under.ring->nvars() == 2 * n; }
    std::size_t rank() const { return under.rank(); }
};

struct ModuleReport {
    bool ok = true;
    std::string witness;
};
ModuleReport check_module(const SkewModule& m);

// Variable permutation of s_j (j from 1) on the base ring of m.
std::vector<int> transposition_on_vars(const SkewModule& m, int j);
// Semilinear composite S∘T.
PolyMatrix semilinear_compose(const PolyMatrix& s, const std::vector<int>& var_perm, const PolyMatrix& t);

SkewModule free_module(AlgTag tag, int n);
SkewModule triv_theta(int n);
SkewModule triv_y(int n);
SkewModule zero_module(AlgTag tag, int n);
SkewModule shift_module(const SkewModule& m, int dx, int dc);
SkewModule sign_twist(const SkewModule& m);

// M ⊗ Q[y] with differential d + Σ θ_i y_i.
SkewModule inv_theta(const SkewModule& m);
// Twisted: shift by (-2n, -n) and tensor with the sign representation.
SkewModule inv_theta_twisted(const SkewModule& m);
// Q ⊗^L_{Q[y]} N with the θ-action of the Koszul generators.
SkewModule coinv_y(const SkewModule& m);
// Twisted: shift by (+2n, +n) and tensor with the sign representation.
SkewModule coinv_y_twisted(const SkewModule& m);

// Cohomology dims on (X, C) for X in [xlo, xhi], C in [clo, chi].
DimTable graded_dims(const SkewModule& m, int xlo, int xhi, int clo, int chi, int jobs = 1);

struct PermRep {
    int n = 0;
    int dim = 0;
    std::vector<std::vector<std::vector<Q>>> s;  // dense matrix per simple transposition
    std::map<std::vector<int>, Q> character;      // by cycle type (descending parts)

    bool relations_hold() const;
};

PermRep wedge_perm_rep(int a, int n);
PermRep induced_rep(int a, int n);
std::vector<std::vector<int>> cycle_types(int n);
std::vector<int> cycle_type(const std::vector<int>& perm);

// Cohomology dims of (∧^a P ⊗ N)^{S_n}, with N = ĩnv(M) for A-modules and N = M for Abar-modules.
DimTable gamma_a(const SkewModule& m, int a, int xlo, int xhi, int clo, int chi, int jobs = 1);
// (X, C) -> (Q', A', T') = (X + 2a, X + a, C - X).
DimTable tau_tilde(const DimTable& gamma, int a);

// Zero differential and every generator on the diagonal X = C.
bool weight_heart_check(const SkewModule& m);

struct NilpReport {
    bool nilpotent = false;
    int power = 0;        // least power killing every y_i, when nilpotent
    std::string witness;  // failure description otherwise
};
// Chain level when y acts by operators; on cohomology within the box when y is in the base.
NilpReport nilp_y_check(const SkewModule& m, int bound, int xlo = -10, int xhi = 10, int clo = -10, int chi = 10);

nlohmann::json to_json(const SkewModule& m);
SkewModule skew_module_from_json(const nlohmann::json& j);

}  // namespace hhh
