#pragma once
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "core/algebra.hpp"
#include "core/ideal.hpp"
#include "core/steenrod.hpp"

namespace dlops {

// One recorded operation value: beta^eps Q^s of a basis monomial.
struct QRecord {
    int eps = 0;
    int s = 0;
    Monomial arg;
    AlgElement value;
};

std::string q_record_str(const Algebra& alg, int eps, int s, const Monomial& arg);

// Finitely presented truncated graded-commutative algebra carrying recorded
// operation values on basis monomials.  Everything above the ambient bound
// is zero.  Records are validated at install time: correct target degree,
// consistency with the instability axioms, arguments in canonical form.
class Presentation {
  public:
    explicit Presentation(AlgebraPtr alg, std::vector<AlgElement> relations = {});

    const AlgebraPtr& algebra() const { return alg_; }
    const GradedIdeal& ideal() const { return ideal_; }
    int p() const { return alg_->p(); }
    int bound() const { return alg_->bound(); }

    AlgElement reduce(const AlgElement& x) const { return ideal_.reduce(x); }
    std::vector<size_t> series() const { return poincare_series(ideal_, bound()); }

    // Install beta^eps Q^s (arg) = value.  Values the axioms already force
    // (instability, truncation) are checked and not stored; contradictions
    // and malformed records throw DomainError.
    void record_q(int eps, int s, const AlgElement& arg, const AlgElement& value);
    void record_q(int eps, int s, const std::string& gen_name, const AlgElement& value);

    std::optional<AlgElement> lookup_q(int eps, int s, const Monomial& arg) const;
    std::vector<QRecord> q_records() const; // ascending in (eps, s, arg)

  private:
    AlgebraPtr alg_;
    GradedIdeal ideal_;
    std::map<std::tuple<int, int, Monomial>, AlgElement> q_;
};

// beta^eps Q^s on an element of the quotient, resolved from truncation, the
// instability axioms, the recorded values, and the Cartan rule on product
// monomials.  nullopt when some needed value is not determined.
std::optional<AlgElement> resolve_q(const Presentation& P, int eps, int s, const AlgElement& x);

// Keep generators and homogeneous relation components of degree <= n; drop
// recorded operations whose argument or value lands above n.
Presentation postnikov_truncate(const Presentation& P, int n);

// The dual algebra truncated at n, carrying the chosen action's table
// entries (those landing in degrees <= n) as recorded operations.
Presentation truncated_dual(const SteenrodDual& D, Side side, int n);

// Quotient by a homogeneous element x of top degree n (nothing nonzero
// above n, degree 0 one-dimensional).  Verifies the obstruction groups
// Tor_{k,l} (k >= 1, k + l <= n) of multiplication by x vanish, cross-checks
// the quotient dimensions against the resolution bookkeeping, and carries
// re-reduced recorded operations.  The result is bounded at n.
Presentation kill_element(const Presentation& P, const AlgElement& x);

enum class Verdict { Ok, Violation, Undetermined };

struct MorphismReport {
    Verdict verdict = Verdict::Ok;
    std::string detail; // first violated or unresolvable constraint
    bool ok() const { return verdict == Verdict::Ok; }
};

// Does generator i |-> images[i] define a map of presented algebras, and of
// the recorded operations when use_q?  Primes and bounds must agree and the
// images must be degree-preserving; violations of the presentation itself
// are reported, not thrown.
MorphismReport check_morphism(const Presentation& X, const Presentation& Y,
                              const std::vector<AlgElement>& images, bool use_q = true);

struct Isomorphism {
    std::vector<AlgElement> images;         // X generators into Y
    std::vector<AlgElement> inverse_images; // Y generators into X
};

// Exhaustive search over degree-preserving generator images for two-sided
// isomorphisms (preserving recorded operations when use_q).  Candidates are
// enumerated in a fixed coordinate order, so the result is deterministic.
// Throws BudgetError when the space exceeds the budget.
std::vector<Isomorphism> find_isomorphisms(const Presentation& X, const Presentation& Y,
                                           bool use_q = true,
                                           unsigned long long budget = 1000000);

} // namespace dlops
