#pragma once
#include <compare>
#include <string>
#include <vector>

#include "core/opword.hpp"

namespace dlops {

// A named argument of known degree for formal operation words.
struct Atom {
    std::string name;
    int degree = 0;
    friend std::strong_ordering operator<=>(const Atom&, const Atom&) = default;
    friend bool operator==(const Atom&, const Atom&) = default;
};

// An operation word applied to an atom.
struct OpWord {
    OpSeq ops;
    Atom arg;
    int degree(int p) const { return seq_degree(ops, p) + arg.degree; }
    bool odd(int p) const { return p != 2 && degree(p) % 2 == 1; }
    friend std::strong_ordering operator<=>(const OpWord&, const OpWord&) = default;
    friend bool operator==(const OpWord&, const OpWord&) = default;
};

// coeff * product of op-words, factors kept in canonical order.  Ordering is
// by factors alone (the sort key); equality includes the coefficient.
struct OpTerm {
    int coeff = 1;
    std::vector<OpWord> factors;
    int degree(int p) const;
    friend std::strong_ordering operator<=>(const OpTerm& a, const OpTerm& b) {
        return a.factors <=> b.factors;
    }
    friend bool operator==(const OpTerm& a, const OpTerm& b) {
        return a.coeff == b.coeff && a.factors == b.factors;
    }
};

// Canonicalized F_p-linear combination of formal products of op-words.
class OpPolynomial {
  public:
    explicit OpPolynomial(int p) : p_(p) {}
    static OpPolynomial zero(int p) { return OpPolynomial(p); }
    static OpPolynomial word(int p, OpWord w, int coeff = 1);
    static OpPolynomial term(int p, OpTerm t);

    int p() const { return p_; }
    bool is_zero() const { return terms_.empty(); }
    const std::vector<OpTerm>& terms() const { return terms_; }

    // Adds a term, sorting its factors with Koszul signs, dropping odd
    // squares (odd p) and merging with an existing equal term.
    void add_term(OpTerm t);

    OpPolynomial operator+(const OpPolynomial& o) const;
    OpPolynomial operator*(const OpPolynomial& o) const;
    OpPolynomial scaled(int c) const;
    bool operator==(const OpPolynomial& o) const { return p_ == o.p_ && terms_ == o.terms_; }

    std::string str() const;

  private:
    int p_;
    std::vector<OpTerm> terms_; // sorted by factors, coeffs in [1, p)
};

// Rewrite every word's operation sequence to admissible form.  Arguments and
// formal products are untouched; purely the Adem relations.
OpPolynomial adem_normalize(const OpPolynomial& poly,
                            AdemStrategy strategy = AdemStrategy::Leftmost);

// Result of one instability step on the innermost operation of a word.
struct InstabilityStep {
    enum Kind { Unchanged, Zero, PthPower } kind = Unchanged;
    OpPolynomial value; // meaningful for Zero / PthPower
    explicit InstabilityStep(OpPolynomial v) : value(std::move(v)) {}
};

// Apply the instability axioms to the innermost operation of w acting on its
// atom: below range gives zero, the boundary case gives the p-th power with
// the remaining outer word still applied formally.
InstabilityStep instability_rewrite(int p, const OpWord& w);

// Single Cartan step: beta^eps Q^s applied to a formal product a * b.
// For odd p with eps = 1 the Bockstein-decorated rule applies:
//   b Q^s (a b) = sum (b Q^i a)(Q^j b) + (-1)^{|a|} (Q^i a)(b Q^j b).
OpPolynomial cartan_expand(int p, OpFactor op, const OpWord& a, const OpWord& b);

// beta^eps Q^s applied to a formal product of any length by iterating the
// Cartan rule; the empty product is the unit (Q^0 fixes it, the rest kill it).
OpPolynomial apply_op_to_factors(int p, OpFactor op, const std::vector<OpWord>& factors);

} // namespace dlops
