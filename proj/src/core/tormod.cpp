#include "core/tormod.hpp"

#include <string>

#include "core/errors.hpp"

namespace dlops {

namespace {

size_t matrix_rank(int p, const std::vector<std::vector<int>>& m, size_t cols) {
    FpMatrix mat(p, cols);
    for (const auto& row : m) {
        auto r = row;
        r.resize(cols, 0);
        mat.add_row(std::move(r));
    }
    mat.rref();
    return mat.rank();
}

} // namespace

ExteriorModule::ExteriorModule(int p, int n, std::vector<size_t> dims,
                               std::vector<std::vector<std::vector<int>>> action)
    : p_(p), n_(n), dims_(std::move(dims)), action_(std::move(action)) {
    if (n_ < 1) throw DomainError("exterior generator degree must be >= 1");
    if (dims_.empty()) dims_.push_back(1);
    action_.resize(dims_.size());
    for (int d = 0; d < static_cast<int>(dims_.size()); ++d) {
        auto& mat = action_[d];
        size_t rows = dim(d + n_), cols = dim(d);
        if (rows == 0 || cols == 0) {
            if (!mat.empty())
                for (const auto& row : mat)
                    for (int v : row)
                        if (mod_p(v, p_) != 0)
                            throw DomainError("action into a zero-dimensional degree");
            mat.clear();
            continue;
        }
        mat.resize(rows);
        for (auto& row : mat) {
            if (row.size() > cols) throw DomainError("action matrix has too many columns");
            row.resize(cols, 0);
            for (int& v : row) v = mod_p(v, p_);
        }
    }
    // x_n^2 = 0: the composite M_d -> M_{d+n} -> M_{d+2n} vanishes
    for (int d = 0; d + 2 * n_ <= top_degree(); ++d) {
        const auto& a = action_[d];
        const auto& b = action_[d + n_];
        if (a.empty() || b.empty()) continue;
        for (size_t i = 0; i < b.size(); ++i)
            for (size_t j = 0; j < a[0].size(); ++j) {
                long long acc = 0;
                for (size_t k = 0; k < a.size(); ++k) acc += (long long)b[i][k] * a[k][j];
                if (mod_p(acc, p_) != 0)
                    throw DomainError("x_n^2 does not act as zero (degree " + std::to_string(d) + ")");
            }
    }
}

size_t ExteriorModule::dim(int d) const {
    if (d < 0 || d > top_degree()) return 0;
    return dims_[d];
}

const std::vector<std::vector<int>>& ExteriorModule::action(int d) const {
    if (d < 0 || d > top_degree()) return empty_;
    return action_[d];
}

size_t ExteriorModule::action_rank(int d) const {
    if (dim(d) == 0 || dim(d + n_) == 0) return 0;
    // rank of the transpose equals the rank
    return matrix_rank(p_, action(d), dim(d));
}

std::vector<std::vector<size_t>> tor_exterior(const ExteriorModule& M, int k_max, int l_max) {
    if (k_max < 0 || l_max < 0) throw DomainError("tor indices must be non-negative");
    int needed = l_max + (k_max + 1) * M.n();
    if (M.top_degree() < needed)
        throw BoundError("module data needed through degree " + std::to_string(needed) +
                         ", declared only through " + std::to_string(M.top_degree()));
    std::vector<std::vector<size_t>> tor(k_max + 1, std::vector<size_t>(l_max + 1, 0));
    int n = M.n();
    for (int l = 0; l <= l_max; ++l) {
        // Tor_0 = coker(x: M_{l-n} -> M_l)
        tor[0][l] = M.dim(l) - M.action_rank(l - n);
        for (int k = 1; k <= k_max; ++k) {
            int d = l - k * n;
            if (d < 0 || M.dim(d) == 0) continue;
            size_t ker = M.dim(d) - M.action_rank(d);
            size_t im = M.action_rank(d - n);
            tor[k][l] = ker - im; // im(x) inside ker(x) since x^2 = 0
        }
    }
    return tor;
}

} // namespace dlops
