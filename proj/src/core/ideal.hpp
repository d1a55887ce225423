#pragma once
#include <vector>

#include "core/algebra.hpp"
#include "core/fp_util.hpp"

namespace dlops {

// Homogeneous two-sided ideal of a truncated graded-commutative algebra,
// stored as a reduced row echelon basis of its span in every degree up to
// the ambient bound.  Relations of mixed degree are split into their
// homogeneous components at construction.
class GradedIdeal {
  public:
    GradedIdeal(AlgebraPtr alg, const std::vector<AlgElement>& relations);

    const AlgebraPtr& algebra() const { return alg_; }
    const std::vector<AlgElement>& relations() const { return relations_; }

    // Canonical coset representative: subtracts the echelon span.
    AlgElement reduce(const AlgElement& x) const;
    bool contains(const AlgElement& x) const { return reduce(x).is_zero(); }

    size_t span_rank(int degree) const;
    size_t quotient_dim(int degree) const;
    // Basis of the quotient in a degree: ambient monomials off the pivot set.
    std::vector<Monomial> quotient_basis(int degree) const;

  private:
    AlgebraPtr alg_;
    std::vector<AlgElement> relations_; // homogeneous
    std::vector<FpMatrix> span_;        // by degree
};

// Dimensions of the (quotient) algebra by degree, 0..bound.
std::vector<size_t> poincare_series(const Algebra& alg, int bound);
std::vector<size_t> poincare_series(const GradedIdeal& ideal, int bound);

} // namespace dlops
