#pragma once
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "core/algebra.hpp"
#include "core/opword.hpp"

namespace dlops {

// The two circle actions on the dual Steenrod algebra coming from the two
// unit maps; values of the right action are the chi-conjugates of the left.
enum class Side { Left, Right };

std::string side_str(Side s);

class SteenrodDual;
using SteenrodDualPtr = std::shared_ptr<const SteenrodDual>;

// Dual Steenrod algebra through a degree bound N, in Milnor coordinates:
//   p = 2:  F_2[xi_1, xi_2, ...],          |xi_r| = 2^r - 1;
//   p odd:  F_p[xi_r] (x) Lambda(tau_s),   |xi_r| = 2(p^r - 1), |tau_s| = 2p^s - 1.
// Carries the conjugate generators zeta_r (series inverse of the xi series)
// and taubar_s, the antipode chi, the Bockstein, and the table of
// Dyer-Lashof operation values on the generators for both actions.
// Immutable after construction.
class SteenrodDual {
  public:
    // Default bound 2 p^2 covers every value the shipped table produces.
    // Mutable only for install_entry before the caller freezes it as const.
    static std::shared_ptr<SteenrodDual> make(int p, int bound = -1);

    int p() const { return p_; }
    int bound() const { return N_; }
    const AlgebraPtr& algebra() const { return A_; }

    // Largest r with xi_r (resp. tau_s) present.
    int max_xi() const { return static_cast<int>(xi_idx_.size()) - 1; }
    int max_tau() const { return static_cast<int>(tau_idx_.size()) - 1; }

    AlgElement xi(int r) const;       // r >= 1
    AlgElement tau(int s) const;      // s >= 0, odd p
    AlgElement zeta_in_xi(int r) const;    // r >= 0 (zeta_0 = 1)
    AlgElement taubar_in_milnor(int s) const; // s >= 0, odd p

    // The conjugate coordinate system as its own algebra, generators named
    // zeta<r> / taubar<s>, and the Milnor generators expressed there.
    const AlgebraPtr& conjugate_algebra() const { return other_; }
    AlgElement xi_in_zeta(int r) const;
    AlgElement tau_in_conjugate(int s) const;

    // Antipode: ring homomorphism with chi(xi_r) = zeta_r, chi(tau_s) = taubar_s.
    AlgElement chi(const AlgElement& x) const;

    // Homology Bockstein: derivation with beta(xi_r) = 0, beta(tau_0) = 0,
    // beta(tau_s) = xi_s for s >= 1.  Odd p only.
    AlgElement beta(const AlgElement& x) const;

    // Apply an operation word.  Inadmissible words are Adem-normalized first
    // unless normalize is false (the raw right-to-left evaluation is kept
    // callable so rewrites can be cross-checked against it).  Throws
    // MissingTableEntry when neither the table nor the instability axioms
    // determine a needed value.
    AlgElement q_act(Side side, const OpSeq& w, const AlgElement& x,
                     bool normalize = true) const;

    struct TableEntry {
        Side side;
        OpSeq word;
        size_t gen_index;
        AlgElement value;
        std::string provenance; // "reference" | "derived" | "config"
    };
    const std::vector<TableEntry>& table() const { return entries_; }
    std::optional<AlgElement> lookup(Side side, const OpSeq& w, size_t gen_index) const;

    // Config extension point; validates degree and coherence with values the
    // table and axioms already determine, rejecting contradictions.
    void install_entry(Side side, const OpSeq& w, const std::string& gen_name,
                       const AlgElement& value, const std::string& provenance);

    // Coefficients of the series composite through t^(bound+1):
    // xi_outer ? xi(zeta(t)) : zeta(xi(t)).  Identity means coefficient of
    // t^1 is 1 and all others vanish.
    std::vector<AlgElement> compose_series(bool xi_outer) const;

    // Sum tau_s + sum_{i=0..s} taubar_i xi_{s-i}^{p^i}; zero when the
    // conjugate tau relation holds.
    AlgElement tau_relation_residual(int s) const;

  private:
    SteenrodDual() = default;
    void build(int p, int bound);
    void install(Side side, OpSeq w, size_t gen, AlgElement value, std::string prov);

    struct Key {
        Side side;
        OpSeq word;
        size_t gen;
        friend std::strong_ordering operator<=>(const Key&, const Key&) = default;
    };

    // Internal evaluation; monostate result so a zero factor can beat a
    // missing one inside Cartan products.
    struct QRes {
        bool missing = false;
        AlgElement value;
        std::string miss_word; // e.g. "Q^4", when missing
        std::string miss_gen;  // generator name, when missing
    };
    QRes eval_word(Side side, const OpSeq& w, const AlgElement& x) const;
    QRes apply_factor(Side side, OpFactor op, const AlgElement& x) const;
    QRes apply_q(Side side, int s, const AlgElement& x) const;
    QRes block_apply(Side side, int s, size_t gen, int e) const;
    QRes single_gen(Side side, int s, size_t gen) const;

    int p_ = 2;
    int N_ = 0;
    AlgebraPtr A_;
    AlgebraPtr other_;
    std::vector<int> xi_idx_;  // xi_idx_[r] = generator index, r >= 1 (slot 0 unused)
    std::vector<int> tau_idx_; // tau_idx_[s], odd p
    std::vector<AlgElement> zeta_;   // in Milnor coordinates, zeta_[0] = 1
    std::vector<AlgElement> taubar_; // odd p
    std::vector<AlgElement> xi_in_zeta_;      // in conjugate coordinates
    std::vector<AlgElement> tau_in_conj_;     // odd p
    std::map<Key, AlgElement> table_;
    std::vector<TableEntry> entries_;
};

// Substitute generator images into a (possibly different) target algebra:
// the ring homomorphism determined by images[i] for generator i.
AlgElement substitute(const AlgElement& x, const AlgebraPtr& target,
                      const std::vector<AlgElement>& images);

} // namespace dlops
