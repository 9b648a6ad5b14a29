#pragma once

#include <vector>

#include "hhh/hochschild.hpp"
#include "hhh/tracealg.hpp"

namespace oracle {

using hhh::Q;

// Textbook Gaussian elimination on a dense rational matrix.
long long dense_rank(std::vector<std::vector<Q>> m);

// HHH entries with C <= 2*qmax: Koszul complex of every term built from the right actions, an
// explicit homology basis per term, the induced maps on it, then their homology.
hhh::DimTable page_two_hhh(const hhh::BimoduleComplex& c, int qmax);

// Two-term complex of free A_n-modules with a random odd A_n-linear differential.
hhh::SkewModule random_free_a_complex(int n, unsigned seed);

}  // namespace oracle
