#include "core/fp_util.hpp"

#include <algorithm>

#include "core/errors.hpp"

namespace dlops {

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

int mod_p(long long v, int p) {
    long long r = v % p;
    return static_cast<int>(r < 0 ? r + p : r);
}

int inv_mod(int a, int p) {
    a = mod_p(a, p);
    if (a == 0) throw DomainError("inverse of zero mod p");
    int result = 1, base = a, e = p - 2;
    while (e > 0) {
        if (e & 1) result = (result * base) % p;
        base = (base * base) % p;
        e >>= 1;
    }
    return result;
}

int binom_mod(long long n, long long k, int p) {
    if (k < 0 || n < 0 || k > n) return 0;
    // Lucas: multiply binomials of base-p digits.
    int result = 1;
    while (n > 0 || k > 0) {
        int nd = static_cast<int>(n % p), kd = static_cast<int>(k % p);
        if (kd > nd) return 0;
        // Small binomial of digits, nd < p.
        long long num = 1, den = 1;
        for (int i = 0; i < kd; ++i) {
            num = (num * ((nd - i) % p)) % p;
            den = (den * ((i + 1) % p)) % p;
        }
        result = static_cast<int>((result * num) % p * inv_mod(static_cast<int>(den), p) % p);
        n /= p;
        k /= p;
    }
    return result;
}

int two_var_binom(long long a, long long b, int p) {
    if (a < 0 || b < 0) return 0;
    return binom_mod(a + b, a, p);
}

int factorial_mod(long long n, int p) {
    if (n < 0) return 0;
    if (n >= p) return 0; // contains the factor p
    int result = 1;
    for (long long i = 2; i <= n; ++i) result = static_cast<int>((result * i) % p);
    return result;
}

int multinomial_mod(const std::vector<int>& parts, int p) {
    long long total = 0;
    int result = 1;
    for (int part : parts) {
        total += part;
        result = static_cast<int>((static_cast<long long>(result) *
                                   binom_mod(total, part, p)) % p);
        if (result == 0) return 0;
    }
    return result;
}

void FpMatrix::add_row(std::vector<int> row) {
    if (row.size() != cols_) throw DomainError("FpMatrix row width mismatch");
    for (int& v : row) v = mod_p(v, p_);
    rows_.push_back(std::move(row));
}

void FpMatrix::rref() {
    size_t pivot_row = 0;
    pivots_.clear();
    for (size_t col = 0; col < cols_ && pivot_row < rows_.size(); ++col) {
        size_t sel = pivot_row;
        while (sel < rows_.size() && rows_[sel][col] == 0) ++sel;
        if (sel == rows_.size()) continue;
        std::swap(rows_[pivot_row], rows_[sel]);
        int inv = inv_mod(rows_[pivot_row][col], p_);
        for (size_t c = col; c < cols_; ++c)
            rows_[pivot_row][c] = (rows_[pivot_row][c] * inv) % p_;
        for (size_t r = 0; r < rows_.size(); ++r) {
            if (r == pivot_row || rows_[r][col] == 0) continue;
            int factor = rows_[r][col];
            for (size_t c = col; c < cols_; ++c)
                rows_[r][c] = mod_p(rows_[r][c] - static_cast<long long>(factor) * rows_[pivot_row][c], p_);
        }
        pivots_.push_back(col);
        ++pivot_row;
    }
    rows_.resize(pivot_row);
}

std::vector<int> FpMatrix::reduce_vector(std::vector<int> v) const {
    if (v.size() != cols_) throw DomainError("FpMatrix vector width mismatch");
    for (size_t r = 0; r < rows_.size(); ++r) {
        int c = v[pivots_[r]];
        if (c == 0) continue;
        for (size_t j = pivots_[r]; j < cols_; ++j)
            v[j] = mod_p(v[j] - static_cast<long long>(c) * rows_[r][j], p_);
    }
    return v;
}

} // namespace dlops
