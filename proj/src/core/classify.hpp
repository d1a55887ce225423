#pragma once
#include <string>
#include <vector>

#include "errors.hpp"

namespace dlops {

// The two cohomology rings feeding the degree-(n+2) extension count: a
// polynomial algebra on sigma2 (degree 2) and a divided-power algebra on
// alpha2 with basis gamma_k in degree 2k, gamma_i*gamma_j = binom(i+j,i)
// gamma_{i+j}.  Both are rank one in even degrees and zero in odd ones.
enum class ThhVariant { Polynomial, DividedPower };

class ThhRing {
  public:
    ThhRing(ThhVariant variant, int p, int degree_bound);

    ThhVariant variant() const { return variant_; }
    int p() const { return p_; }
    int bound() const { return bound_; }

    // F_p-dimension of the degree-d component.
    int dim(int degree) const;

    // Coefficient of the degree-2(i+j) basis element in the product of the
    // degree-2i and degree-2j basis elements.
    int product_coeff(int i, int j) const;

    // Coefficient of the degree-2k basis element in the k-th power of the
    // degree-2 generator, accumulated through product_coeff; equals k! in
    // the divided-power ring and 1 in the polynomial ring.
    int power_coeff(int k) const;

    // "1", then "sigma2", "sigma2^k" resp. "alpha2", "gamma_k".
    std::string basis_name(int k) const;

  private:
    ThhVariant variant_;
    int p_;
    int bound_;
};

enum class BaseRing { HZ, S };

std::string base_ring_name(BaseRing base);

// One scaling orbit of the degree-(n+2) component; annotation names a known
// model for the extension when one exists.
struct OrbitClass {
    std::string representative;
    std::string annotation;
};

struct ClassificationReport {
    int p = 0;
    int n = 0;
    BaseRing base = BaseRing::HZ;
    int count = 0; // orbits of the unit-scaling action on the component
    std::vector<OrbitClass> classes;
    std::string note;
};

// Orbits of the degree-(n+2) component of the base ring's cohomology under
// unit scaling: one class when the component vanishes, two otherwise.
ClassificationReport postnikov_classes(BaseRing base, int p, int n);

// Coefficient of gamma_k in the image of sigma2^k under the ring map sending
// sigma2 to alpha2, i.e. k! mod p.
int comparison_image_coeff(int p, int k);

struct CollapseReport {
    int p = 0;
    int n = 0;
    int k = 0;           // (n + 2) / 2
    int image_coeff = 0; // comparison_image_coeff(p, k)
    bool collapse = false;
    std::string provenance; // "reference" at n = 2p-2, else "derived"
};

// For even n > 0: whether the two degree-n extension classes over the
// integral base merge over the sphere, i.e. whether sigma2^k maps to zero.
CollapseReport comparison_collapse(int p, int n);

struct ClassifyRow {
    int n = 0;
    int hz_count = 0;
    int s_count = 0;
    bool has_collapse = false; // verdict defined only for even n > 0
    bool collapse = false;
    std::string provenance; // of the collapse verdict, when defined
};

std::vector<ClassifyRow> classify_table(int p, int n_max);

} // namespace dlops
