#include "classify.hpp"

#include "fp_util.hpp"

namespace dlops {

ThhRing::ThhRing(ThhVariant variant, int p, int degree_bound)
    : variant_(variant), p_(p), bound_(degree_bound) {
    if (!is_prime(p)) throw DomainError("p must be prime");
    if (degree_bound < 0) throw DomainError("degree bound must be non-negative");
}

int ThhRing::dim(int degree) const {
    if (degree < 0 || degree > bound_) throw BoundError("degree outside the ring bound");
    return degree % 2 == 0 ? 1 : 0;
}

int ThhRing::product_coeff(int i, int j) const {
    if (i < 0 || j < 0) throw DomainError("basis indices must be non-negative");
    if (2 * (i + j) > bound_) throw BoundError("product degree outside the ring bound");
    if (variant_ == ThhVariant::Polynomial) return 1;
    return binom_mod(i + j, i, p_);
}

int ThhRing::power_coeff(int k) const {
    if (k < 0) throw DomainError("exponent must be non-negative");
    if (2 * k > bound_) throw BoundError("power degree outside the ring bound");
    int c = 1;
    for (int j = 1; j < k; ++j) c = mod_p(static_cast<long long>(c) * product_coeff(j, 1), p_);
    return c;
}

std::string ThhRing::basis_name(int k) const {
    if (k < 0) throw DomainError("basis index must be non-negative");
    if (k == 0) return "1";
    if (variant_ == ThhVariant::Polynomial)
        return k == 1 ? "sigma2" : "sigma2^" + std::to_string(k);
    return k == 1 ? "alpha2" : "gamma_" + std::to_string(k);
}

std::string base_ring_name(BaseRing base) { return base == BaseRing::HZ ? "HZ" : "S"; }

ClassificationReport postnikov_classes(BaseRing base, int p, int n) {
    if (n < 0) throw DomainError("n must be non-negative");
    ThhRing ring(base == BaseRing::HZ ? ThhVariant::Polynomial : ThhVariant::DividedPower, p,
                 n + 2);
    ClassificationReport rep;
    rep.p = p;
    rep.n = n;
    rep.base = base;
    // Unit scaling is transitive on the nonzero vectors of a rank-one
    // component, so the orbits are {0} and at most one nonzero class.
    const int d = ring.dim(n + 2);
    rep.count = 1 + d;
    rep.classes.push_back({"0", ""});
    if (d == 1) rep.classes.push_back({ring.basis_name((n + 2) / 2), ""});
    if (base == BaseRing::HZ && n == 0) {
        rep.classes[0].annotation = "HLambda_Fp(x0)";
        rep.classes[1].annotation = "HZ/p^2";
    }
    if (base == BaseRing::S)
        rep.note = "count follows the even-degree grading of the divided-power ring; quoted "
                   "counts transposing the odd/even cases contradict that grading and are not "
                   "adopted";
    return rep;
}

int comparison_image_coeff(int p, int k) {
    if (!is_prime(p)) throw DomainError("p must be prime");
    if (k < 0) throw DomainError("exponent must be non-negative");
    // sigma2 maps to alpha2, so sigma2^k maps to alpha2^k = k! gamma_k.
    return factorial_mod(k, p);
}

CollapseReport comparison_collapse(int p, int n) {
    if (!is_prime(p)) throw DomainError("p must be prime");
    if (n <= 0 || n % 2 != 0)
        throw DomainError("collapse verdict is defined for even n > 0 only");
    CollapseReport rep;
    rep.p = p;
    rep.n = n;
    rep.k = (n + 2) / 2;
    rep.image_coeff = comparison_image_coeff(p, rep.k);
    rep.collapse = rep.image_coeff == 0;
    rep.provenance = n == 2 * p - 2 ? "reference" : "derived";
    return rep;
}

std::vector<ClassifyRow> classify_table(int p, int n_max) {
    if (n_max < 0) throw DomainError("n-max must be non-negative");
    std::vector<ClassifyRow> rows;
    for (int n = 0; n <= n_max; ++n) {
        ClassifyRow row;
        row.n = n;
        row.hz_count = postnikov_classes(BaseRing::HZ, p, n).count;
        row.s_count = postnikov_classes(BaseRing::S, p, n).count;
        if (n > 0 && n % 2 == 0) {
            CollapseReport c = comparison_collapse(p, n);
            row.has_collapse = true;
            row.collapse = c.collapse;
            row.provenance = c.provenance;
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace dlops
