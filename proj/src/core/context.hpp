#pragma once
#include <memory>
#include <string>
#include <vector>

#include "core/parser.hpp"
#include "core/presentation.hpp"
#include "core/steenrod.hpp"

namespace dlops {

// One declared operation value on a presentation: beta^eps Q^s arg = value,
// both sides written in the expression grammar.
struct QValueConfig {
    int eps = 0;
    int s = 0;
    std::string arg;
    std::string value;
};

// Declarative description of a presentation context.  Generators of odd
// degree are exterior at odd primes; further truncations go in relations.
struct ContextConfig {
    int p = 2;
    int bound = 0;
    std::vector<GeneratorSpec> generators;
    std::vector<std::string> relations; // expression strings, no operations
    std::vector<QValueConfig> q_values;
};

// Parse and validate the JSON context schema {prime, bound, generators:
// [{name, degree}], relations: [...], q_values: [{eps?, s, arg, value}]}.
// Throws DomainError naming the offending field.
ContextConfig parse_context_config(const std::string& json_text);

// Evaluation context over the dual algebra engine.  Atoms are the xi_r /
// tau_s generators and their conjugate aliases zeta_r / taubar_s; operation
// words act through the chosen side's table.  Odd-p results are displayed in
// conjugate coordinates, the system the left table values are stated in;
// p = 2 results display natively.
class DualContext : public EvalContext {
  public:
    explicit DualContext(SteenrodDualPtr dual, Side side = Side::Left);

    int p() const override { return dual_->p(); }
    AlgElement resolve_atom(const std::string& name,
                            std::optional<int> ann_degree) const override;
    AlgElement apply_ops(const OpSeq& ops, const AlgElement& x) const override;
    std::string render(const AlgElement& x) const override;
    AlgebraPtr algebra() const override { return dual_->algebra(); }

    const SteenrodDualPtr& dual() const { return dual_; }
    Side side() const { return side_; }

  private:
    SteenrodDualPtr dual_;
    Side side_;
};

// Evaluation context over a finitely presented algebra: operations resolve
// through the recorded values, the instability axioms, and the Cartan rule;
// words are Adem-normalized first.  Underdetermined operations throw
// MissingTableEntry.
class PresentationContext : public EvalContext {
  public:
    explicit PresentationContext(Presentation pres);

    int p() const override;
    AlgElement resolve_atom(const std::string& name,
                            std::optional<int> ann_degree) const override;
    AlgElement apply_ops(const OpSeq& ops, const AlgElement& x) const override;
    AlgElement post_reduce(const AlgElement& x) const override;
    AlgebraPtr algebra() const override;

    const Presentation& presentation() const { return pres_; }

  private:
    Presentation pres_;
};

// Builds the presentation a config describes and installs its recorded
// operation values; validation failures throw DomainError.
Presentation build_presentation(const ContextConfig& cfg);

std::vector<std::string> builtin_context_names(); // {"p2-dual", "p3-dual"}

// Named builtin contexts over the dual engine; bound -1 keeps the engine
// default.  Unknown names throw DomainError.
std::unique_ptr<EvalContext> builtin_context(const std::string& name, int bound = -1,
                                             Side side = Side::Left);

// Dual context for an arbitrary prime.
std::unique_ptr<EvalContext> dual_context(int p, int bound = -1, Side side = Side::Left);

std::unique_ptr<EvalContext> config_context(const ContextConfig& cfg);

// Parse, evaluate, and render in the context's display convention.
std::string eval_in_context(const std::string& expr, const EvalContext& ctx);

} // namespace dlops
