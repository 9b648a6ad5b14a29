#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hhh/soergel.hpp"

namespace hhh {

// Letters are ±i for σ_i^{±1}.
struct BraidWord {
    int n = 0;
    std::vector<int> letters;

    int writhe() const;
    int positive_count() const;
    int negative_count() const;
    // Strand permutation: perm[i] is where the strand starting at i ends.
    std::vector<int> permutation() const;
    int components() const;
    std::string str() const;
};

BraidWord parse_braid_word(const std::string& text, int n);

// Per positive crossing (inverse per negative one): internal, chain and a-degree offsets.
struct Normalization {
    int dX = 0;
    int dh = 0;
    int da = 0;
};
Normalization default_normalization();

struct Summand {
    Bimodule bim;  // bim.word and bim.shift give the label
    bool operator==(const Summand& o) const { return bim.word == o.bim.word && bim.shift == o.bim.shift; }
};

// Cochain complex of Soergel bimodules; d[h][(t, s)] maps terms[h][s] to terms[h+1][t].
class BimoduleComplex {
public:
    explicit BimoduleComplex(int n = 0) : n_(n) {}

    int n() const { return n_; }
    const std::map<int, std::vector<Summand>>& terms() const { return terms_; }
    std::map<int, std::vector<Summand>>& terms() { return terms_; }
    const std::map<std::pair<int, int>, PolyMatrix>& blocks(int h) const;
    std::map<std::pair<int, int>, PolyMatrix>& blocks(int h) { return d_[h]; }
    int a_offset() const { return a_off_; }
    void set_a_offset(int a) { a_off_ = a; }

    std::vector<int> degrees() const;  // chain degrees with a nonzero term
    std::size_t rank(int h) const;     // total rank of the term
    std::size_t summand_count() const;

    // The term as one bimodule (summands in order) and the differential as one matrix.
    Bimodule flat(int h) const;
    PolyMatrix flat_differential(int h) const;

    // Each block is a homogeneous degree-0 bimodule map and d∘d = 0.
    bool check(std::string* why = nullptr) const;

    // Internal shift by k on every summand, chain shift by c (term h moves to h + c).
    BimoduleComplex shifted(int k, int c) const;

private:
    int n_;
    int a_off_ = 0;
    std::map<int, std::vector<Summand>> terms_;
    std::map<int, std::map<std::pair<int, int>, PolyMatrix>> d_;
};

BimoduleComplex unit_complex(int n);
BimoduleComplex crossing_complex(int letter, int n);
BimoduleComplex complex_tensor(const BimoduleComplex& a, const BimoduleComplex& b);

struct SimplifyStats {
    int split = 0;      // B_s ⊗ B_s splittings performed
    int cancelled = 0;  // pairs removed by Gaussian elimination
};

// Splits repeated adjacent letters, then cancels isomorphism components between equal summands.
SimplifyStats simplify(BimoduleComplex& c);

// Tensor product of crossing complexes, normalized; simplified after each crossing when asked.
BimoduleComplex rouquier_complex(const BraidWord& b, bool simplify_each = true,
                                 const Normalization& norm = default_normalization());

nlohmann::json to_json(const BimoduleComplex& c);
BimoduleComplex bimodule_complex_from_json(const nlohmann::json& j);

}  // namespace hhh
