#pragma once
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "core/algebra.hpp"
#include "core/opexpr.hpp"

namespace dlops {

// Grammar (whitespace separates tokens; composition binds tighter than '*',
// '*' tighter than '+'/'-'):
//   expr    := ['-'] term (('+' | '-') term)*
//   term    := INT | [INT] factor ('*' factor)*
//   factor  := op* primary ['^' INT]
//   op      := 'b' | 'Q^' INT
//   primary := atom | '(' expr ')'
//   atom    := IDENT | 'g' NAME '@' INT      (explicit degree annotation)
// Atoms are generator names of the binding context (xi1, zeta2, tau0,
// taubar1, or user names); bare integers are multiples of the unit.

struct AstExpr;

struct AstAtom {
    std::string name;
    std::optional<int> ann_degree;
    size_t pos = 0;
};

struct AstFactor {
    std::vector<OpFactor> ops;
    std::variant<AstAtom, std::shared_ptr<AstExpr>> base;
    unsigned exponent = 1;
    size_t pos = 0;
};

struct AstTerm {
    int coeff = 1;
    std::vector<AstFactor> factors; // empty: bare integer times the unit
};

struct AstExpr {
    std::vector<AstTerm> terms;
};

// Throws ParseError with a byte position on malformed input.
AstExpr parse_expr(const std::string& text);

// Binding target for formal op-polynomials: names with known degrees.
struct SymbolTable {
    int p = 2;
    std::map<std::string, int> degrees;
};

// Binds atoms against the table; unknown names and degree-annotation
// mismatches are rejected.  Operation factors become formal word prefixes.
OpPolynomial bind_formal(const AstExpr& ast, const SymbolTable& symbols);

// Context interface for concrete evaluation (dual Steenrod algebra or a
// finitely presented algebra).
class EvalContext {
  public:
    virtual ~EvalContext() = default;
    virtual int p() const = 0;
    // Resolve an atom to a concrete element; throws DomainError when unknown.
    virtual AlgElement resolve_atom(const std::string& name,
                                    std::optional<int> ann_degree) const = 0;
    // Apply an operation word (outermost first) to an element.
    virtual AlgElement apply_ops(const OpSeq& ops, const AlgElement& x) const = 0;
    // Final normalization (quotient reduction where applicable).
    virtual AlgElement post_reduce(const AlgElement& x) const { return x; }
    // Display convention for results; contexts may render in another
    // coordinate system of the same algebra.
    virtual std::string render(const AlgElement& x) const { return x.str(); }
    virtual AlgebraPtr algebra() const = 0;
};

AlgElement eval_ast(const AstExpr& ast, const EvalContext& ctx);
AlgElement eval_expression(const std::string& text, const EvalContext& ctx);

// Canonical rendering of an element in the expression grammar.
std::string render_element(const AlgElement& x);

} // namespace dlops
