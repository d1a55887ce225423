#pragma once
#include <cstdint>
#include <vector>

namespace dlops {

bool is_prime(int p);

// Reduce any integer into [0, p).
int mod_p(long long v, int p);

// Inverse of a (non-zero mod p) via Fermat.
int inv_mod(int a, int p);

// binom(n, k) mod p via Lucas; 0 when k < 0, n < 0 or k > n.
int binom_mod(long long n, long long k, int p);

// The two-variable convention (a, b) = binom(a + b, a); 0 when a < 0 or b < 0.
int two_var_binom(long long a, long long b, int p);

// n! mod p; 0 for n >= p.
int factorial_mod(long long n, int p);

// Number of distinct orderings of a multiset with the given part
// multiplicities: (sum parts)! / prod(parts!), computed mod p.
int multinomial_mod(const std::vector<int>& parts, int p);

// Dense matrix over F_p with row reduction; rows are vectors of length cols.
class FpMatrix {
  public:
    FpMatrix(int p, size_t cols) : p_(p), cols_(cols) {}

    void add_row(std::vector<int> row);
    // Bring to reduced row echelon form; drops zero rows.
    void rref();
    size_t rank() const { return rows_.size(); }
    size_t cols() const { return cols_; }
    const std::vector<std::vector<int>>& rows() const { return rows_; }
    const std::vector<size_t>& pivots() const { return pivots_; }

    // Subtract multiples of the (reduced) rows to clear pivot coordinates.
    std::vector<int> reduce_vector(std::vector<int> v) const;

  private:
    int p_;
    size_t cols_;
    std::vector<std::vector<int>> rows_;
    std::vector<size_t> pivots_; // pivot column of each row, ascending
};

} // namespace dlops
