#pragma once
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace dlops {

// A named generator of a graded-commutative algebra.  For odd primes a
// generator of odd degree is exterior (its square vanishes); for p = 2 every
// generator is polynomial.
struct GeneratorSpec {
    std::string name;
    int degree = 0;
    bool exterior = false;
};

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

// Exponent vector over the ambient algebra's generators, with its total
// degree cached.  Ordering is (degree, lexicographic exponents).
struct Monomial {
    int degree = 0;
    std::vector<uint16_t> exps;

    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
        if (auto c = a.degree <=> b.degree; c != 0) return c;
        return a.exps <=> b.exps;
    }
    friend bool operator==(const Monomial&, const Monomial&) = default;
    bool is_unit() const { return degree == 0; }
};

// Free graded-commutative F_p-algebra on a finite generator list, truncated
// above a degree bound: products landing above the bound are zero.
// Immutable after construction; the monomial basis of every degree <= bound
// is precomputed so queries are pure and safe to share across threads.
class Algebra {
  public:
    static AlgebraPtr make(int p, int bound, std::vector<GeneratorSpec> gens);

    int p() const { return p_; }
    int bound() const { return bound_; }
    size_t gen_count() const { return gens_.size(); }
    const GeneratorSpec& gen(size_t i) const { return gens_[i]; }
    const std::vector<GeneratorSpec>& gens() const { return gens_; }
    std::optional<size_t> gen_index(const std::string& name) const;

    // All monomials of the given degree, ascending in monomial order.
    const std::vector<Monomial>& basis(int degree) const;
    size_t basis_index(const Monomial& m) const;

    Monomial unit_monomial() const { return Monomial{0, std::vector<uint16_t>(gens_.size(), 0)}; }
    int monomial_degree(const std::vector<uint16_t>& exps) const;

  private:
    Algebra(int p, int bound, std::vector<GeneratorSpec> gens);
    void build_basis();

    int p_;
    int bound_;
    std::vector<GeneratorSpec> gens_;
    std::map<std::string, size_t> index_;
    std::vector<std::vector<Monomial>> basis_; // by degree 0..bound
};

// Element of an Algebra: a sparse F_p-linear combination of monomials.
// All arithmetic respects the Koszul sign rule and the degree truncation.
class AlgElement {
  public:
    AlgElement() = default;
    explicit AlgElement(AlgebraPtr alg) : alg_(std::move(alg)) {}

    static AlgElement zero(AlgebraPtr alg) { return AlgElement(std::move(alg)); }
    static AlgElement unit(AlgebraPtr alg, int coeff = 1);
    static AlgElement generator(const AlgebraPtr& alg, size_t index, int coeff = 1);
    static AlgElement generator(const AlgebraPtr& alg, const std::string& name, int coeff = 1);
    static AlgElement monomial(AlgebraPtr alg, Monomial m, int coeff = 1);

    const AlgebraPtr& algebra() const { return alg_; }
    bool attached() const { return alg_ != nullptr; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const std::map<Monomial, int>& terms() const { return terms_; }

    // Degree of a homogeneous element; nullopt when zero; throws for mixed.
    std::optional<int> degree() const;
    bool is_homogeneous() const;
    AlgElement component(int degree) const;
    std::vector<int> degrees() const; // distinct degrees present, ascending

    void add_term(const Monomial& m, int coeff); // accumulate, drop zeros

    AlgElement operator+(const AlgElement& o) const;
    AlgElement operator-(const AlgElement& o) const;
    AlgElement operator*(const AlgElement& o) const;
    AlgElement operator-() const;
    AlgElement scaled(int c) const;
    AlgElement pow(unsigned e) const;
    bool operator==(const AlgElement& o) const;

    // Coordinates of the degree-d component in the ambient basis(d).
    std::vector<int> coords(int degree) const;
    static AlgElement from_coords(const AlgebraPtr& alg, int degree,
                                  const std::vector<int>& coords);

    std::string str() const;

  private:
    void check_same(const AlgElement& o) const;

    AlgebraPtr alg_;
    std::map<Monomial, int> terms_; // coeffs in [1, p)
};

// Sign (+1/-1) produced by moving the factors of b leftwards past those of a
// when multiplying monomials of a graded-commutative algebra.
int koszul_sign(const Algebra& alg, const Monomial& a, const Monomial& b);

std::string monomial_str(const Algebra& alg, const Monomial& m);

} // namespace dlops
