#pragma once
#include <string>
#include <utility>
#include <vector>

#include "core/opword.hpp"

namespace dlops {

// An input class for a free unstable algebra over the operation algebra.
struct UnstableInput {
    std::string name;
    int degree = 0;
};

// One free-algebra generator: an admissible word applied to an input atom
// (empty word = the atom itself).  odd means exterior at odd primes.
struct UnstableGenerator {
    OpSeq word;
    std::string atom;
    int atom_degree = 0;
    int degree = 0;
    bool odd = false;

    std::string str() const; // e.g. "b Q^3 zeta1", "x" for the empty word
};

// All admissible words Q^I x with excess(I) + eps_1 > |x| and total degree
// <= N, bare atoms included; complete, duplicate-free, sorted by
// (degree, word, atom).  Input degrees must be >= 1 and names distinct.
std::vector<UnstableGenerator> enumerate_generators(int p, const std::vector<UnstableInput>& gens,
                                                    int N);

// Dimensions by degree 0..N of the free graded-commutative algebra on an
// explicit (degree, exterior) generator list.
std::vector<size_t> free_commutative_poincare(const std::vector<std::pair<int, bool>>& gens,
                                              int N);

// Dimensions by degree 0..N of the free graded-commutative algebra on the
// enumerated generators of the free unstable algebra.
std::vector<size_t> free_unstable_poincare(int p, const std::vector<UnstableInput>& gens, int N);

} // namespace dlops
