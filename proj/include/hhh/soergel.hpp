#pragma once

#include <string>
#include <vector>

#include "hhh/polyalg.hpp"

namespace hhh {

// Left-free bimodule over R = Q[x_1..x_n]: right multiplication by x_j is the matrix rho[j].
struct Bimodule {
    int n = 0;
    GradedFreeModule under;
    std::vector<PolyMatrix> rho;
    std::vector<int> word;  // Bott-Samelson label, simple reflections numbered from 1
    int shift = 0;          // internal shift already included in under.gens

    std::size_t rank() const { return under.rank(); }
};

// Shared ring Q[x_1..x_n] (one instance per n).
RingPtr ring_for(int n);

Bimodule regular_bimodule(int n);
Bimodule bs_generator(int i, int n);
Bimodule bs_word(const std::vector<int>& word, int n);
Bimodule shifted(const Bimodule& m, int k);  // generators move by +k in X
Bimodule tensor(const Bimodule& m, const Bimodule& n);

// p(rho_1..rho_n) on m (square matrix of degree deg p).
PolyMatrix right_action(const Bimodule& m, const Poly& p);
// Left multiplication by p on m.
PolyMatrix left_action(const Bimodule& m, const Poly& p);

// Tensor products of bimodule maps with identities; f : M -> M', g : N -> N'.
PolyMatrix tensor_id(const PolyMatrix& f, const Bimodule& n);   // M⊗N -> M'⊗N
PolyMatrix id_tensor(const Bimodule& m, const PolyMatrix& g);   // M⊗N -> M⊗N'

// f : M -> N commutes with every rho.
bool is_bimodule_map(const Bimodule& m, const Bimodule& n, const PolyMatrix& f);

struct BimoduleReport {
    bool ok = true;
    std::string witness;
};
BimoduleReport check_bimodule(const Bimodule& m);

// Inverse of a square matrix whose determinant is a nonzero constant.
PolyMatrix invert_unimodular(const PolyMatrix& m);

// B_s ⊗ B_s ≅ B_s<-1> ⊕ B_s<+1>: `split` maps the tensor square onto the direct sum, whose
// generators are ordered (copy -1: e, f; copy +1: e, f).
struct SquareSplitting {
    Bimodule square;
    GradedFreeModule sum;
    PolyMatrix split;  // square -> sum
    PolyMatrix merge;  // sum -> square
};
SquareSplitting square_splitting(int i, int n);

nlohmann::json to_json(const Bimodule& m);
Bimodule bimodule_from_json(const nlohmann::json& j);

}  // namespace hhh
