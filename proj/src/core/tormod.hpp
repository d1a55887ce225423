#pragma once
#include <vector>

#include "core/fp_util.hpp"

namespace dlops {

// Finitely supported graded module over Lambda_{F_p}[x_n]: dimensions for
// degrees 0..top plus the action of x_n as matrices shifting degree by n.
// Degrees outside the declared range are zero; x_n^2 = 0 is validated.
class ExteriorModule {
  public:
    // action[d] is the matrix of x_n : M_d -> M_{d+n}, row-major with
    // dim(d+n) rows and dim(d) columns; missing/short entries mean zero.
    ExteriorModule(int p, int n, std::vector<size_t> dims,
                   std::vector<std::vector<std::vector<int>>> action);

    int p() const { return p_; }
    int n() const { return n_; }
    int top_degree() const { return static_cast<int>(dims_.size()) - 1; }
    size_t dim(int d) const;
    // Matrix of x_n out of degree d (dim(d+n) x dim(d)); empty when either
    // side is zero-dimensional.
    const std::vector<std::vector<int>>& action(int d) const;

    size_t action_rank(int d) const; // rank of x_n : M_d -> M_{d+n}

  private:
    int p_;
    int n_;
    std::vector<size_t> dims_;
    std::vector<std::vector<std::vector<int>>> action_;
    std::vector<std::vector<int>> empty_;
};

// Bigraded dimensions Tor^{Lambda[x_n]}_{k,l}(F_p, M) for 0 <= k <= k_max,
// 0 <= l <= l_max, computed from the periodic resolution
//   ... -> S^{kn} Lambda -> ... -> S^n Lambda -> Lambda -> F_p
// whose differentials are all multiplication by x_n:
//   Tor_{0,l} = M_l / x M_{l-n},
//   Tor_{k,l} = ker(x: M_{l-kn} -> M_{l-kn+n}) / im(x: M_{l-kn-n} -> M_{l-kn}).
// Requires module data through degree l_max + (k_max+1) n.
std::vector<std::vector<size_t>> tor_exterior(const ExteriorModule& M, int k_max, int l_max);

} // namespace dlops
