#pragma once
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/presentation.hpp"
#include "core/steenrod.hpp"

namespace dlops {

// Element of A (x) X: canonical-monomial pairs with coefficients in [1, p).
struct ExtElement {
    std::map<std::pair<Monomial, Monomial>, int> terms;
    bool is_zero() const { return terms.empty(); }
    friend bool operator==(const ExtElement&, const ExtElement&) = default;
};

// The tensor A_* (x) X_* of a truncated dual algebra and a presented ring.
// Operations on A (x) 1 are the chosen side's action on A; operations on
// 1 (x) x come from recorded values or the instability axioms; mixed basis
// pairs expand by the Cartan rule.  Elements above the componentwise bounds
// are zero, so every equality holds within the represented rectangle.
class ExtendedModule {
  public:
    ExtendedModule(SteenrodDualPtr dual, Side side, Presentation ring);

    const SteenrodDualPtr& dual() const { return dual_; }
    Side side() const { return side_; }
    const Presentation& ring() const { return ring_; }
    int p() const { return ring_.p(); }

    ExtElement zero() const { return {}; }
    ExtElement unit() const;
    ExtElement elem(const AlgElement& a, const AlgElement& x) const;
    ExtElement eta(const AlgElement& x) const; // x |-> 1 (x) x
    AlgElement mu(const ExtElement& e) const;  // a (x) x |-> ax for |a| = 0, else 0

    ExtElement add(const ExtElement& e1, const ExtElement& e2) const;
    ExtElement scale(const ExtElement& e, int c) const;
    ExtElement mul(const ExtElement& e1, const ExtElement& e2) const;

    // Install Q^s (1 (x) arg) = value; axiom-forced values are checked and
    // not stored, contradictions throw DomainError.
    void record_q(int s, const AlgElement& arg, const ExtElement& value);

    // Q^s of an element; nullopt when some needed value is undetermined.
    std::optional<ExtElement> q(int s, const ExtElement& e) const;

    std::string str(const ExtElement& e) const;

  private:
    std::optional<ExtElement> q_basis(int s, const Monomial& ma, const Monomial& mx) const;

    SteenrodDualPtr dual_;
    Side side_;
    Presentation ring_;
    std::map<std::pair<int, Monomial>, ExtElement> q_;
};

// Multiplicative map E_X -> E_Y given on tensor-factor generators.  Not
// derived from maps of the factors: a_images may mix the factors freely.
struct ExtMap {
    const ExtendedModule* domain = nullptr;
    const ExtendedModule* codomain = nullptr;
    std::vector<ExtElement> a_images; // per generator of the dual's algebra
    std::vector<ExtElement> x_images; // per generator of the ring
    ExtElement unit_image;

    ExtElement apply(const ExtElement& e) const;
};

// The factorwise map: a_images g |-> g (x) 1, x_images g |-> 1 (x) phi(g).
ExtMap make_ext_map(const ExtendedModule& EX, const ExtendedModule& EY,
                    const std::vector<AlgElement>& phi_images);

struct TransferStep {
    std::string name;
    std::string statement;
    bool pass = false;
    std::string lhs;
    std::string rhs;
};

struct TransferReport {
    bool certificate = false;
    std::vector<TransferStep> steps;
    std::string failing_step; // empty when every step passed
};

// Verify the equation chain that transfers operations along the ring iso
// phi using the extended-module data and psi.  Steps are emitted in proof
// order and evaluation stops at the first failing equation.  q_pairs names
// the (s, x) operations to transfer; empty means X's recorded pairs.
TransferReport extend_and_transfer(const ExtendedModule& EX, const ExtendedModule& EY,
                                   const std::vector<AlgElement>& phi_images, const ExtMap& psi,
                                   const std::vector<std::pair<int, AlgElement>>& q_pairs = {});

} // namespace dlops
