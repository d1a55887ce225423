#include "doctest.h"

#include "core/errors.hpp"
#include "core/ideal.hpp"
#include "core/parser.hpp"

using namespace dlops;

namespace {

OpSeq seq(std::initializer_list<OpFactor> fs) { return OpSeq{std::vector<OpFactor>(fs)}; }

size_t error_pos(const std::string& text) {
    try {
        parse_expr(text);
    } catch (const ParseError& e) {
        return e.pos;
    }
    FAIL("expected a parse error for: ", text);
    return static_cast<size_t>(-1);
}

// Minimal concrete context over a plain quotient algebra: atoms are
// generators, operations are unsupported, reduction happens per ideal.
class PlainContext : public EvalContext {
  public:
    PlainContext(AlgebraPtr alg, const GradedIdeal* ideal = nullptr)
        : alg_(std::move(alg)), ideal_(ideal) {}
    int p() const override { return alg_->p(); }
    AlgElement resolve_atom(const std::string& name,
                            std::optional<int> ann) const override {
        auto idx = alg_->gen_index(name);
        if (!idx) throw DomainError("unknown generator " + name);
        if (ann && *ann != alg_->gen(*idx).degree)
            throw DomainError("degree annotation mismatch for " + name);
        return AlgElement::generator(alg_, *idx);
    }
    AlgElement apply_ops(const OpSeq&, const AlgElement&) const override {
        throw DomainError("operations unsupported in this context");
    }
    AlgElement post_reduce(const AlgElement& x) const override {
        return ideal_ ? ideal_->reduce(x) : x;
    }
    AlgebraPtr algebra() const override { return alg_; }

  private:
    AlgebraPtr alg_;
    const GradedIdeal* ideal_;
};

} // namespace

TEST_CASE("lexing and structure") {
    auto e = parse_expr("Q^3 Q^1 xi1");
    REQUIRE(e.terms.size() == 1);
    REQUIRE(e.terms[0].factors.size() == 1);
    const auto& f = e.terms[0].factors[0];
    CHECK(OpSeq{f.ops} == seq({{0, 3}, {0, 1}}));
    CHECK(std::get<AstAtom>(f.base).name == "xi1");
    CHECK(f.exponent == 1);

    auto b = parse_expr("b Q^4 tau0");
    CHECK(OpSeq{b.terms[0].factors[0].ops} == seq({{1, 4}}));

    auto sum = parse_expr("2 xi1^3*xi2 + tau0 - 1");
    REQUIRE(sum.terms.size() == 3);
    CHECK(sum.terms[0].coeff == 2);
    CHECK(sum.terms[0].factors.size() == 2);
    CHECK(sum.terms[0].factors[0].exponent == 3);
    CHECK(sum.terms[1].coeff == 1);
    CHECK(sum.terms[2].coeff == -1);
    CHECK(sum.terms[2].factors.empty());

    auto neg = parse_expr("-xi1");
    CHECK(neg.terms[0].coeff == -1);

    auto ann = parse_expr("gx@5");
    const auto& atom = std::get<AstAtom>(ann.terms[0].factors[0].base);
    CHECK(atom.name == "x");
    CHECK(atom.ann_degree == 5);

    auto unit = parse_expr("Q^0 1");
    CHECK(std::get<AstAtom>(unit.terms[0].factors[0].base).name == "1");

    auto paren = parse_expr("Q^2 (xi1 + xi2)^2");
    CHECK(paren.terms[0].factors[0].exponent == 2);
    CHECK(std::holds_alternative<std::shared_ptr<AstExpr>>(paren.terms[0].factors[0].base));
}

TEST_CASE("parse errors carry positions") {
    CHECK(error_pos("Q3") == 1);          // expected ^ after Q
    CHECK(error_pos("Q^x") == 2);         // expected integer
    CHECK(error_pos("xi1 )") == 4);       // trailing input
    CHECK(error_pos("gx@") == 3);         // expected degree
    CHECK(error_pos("xi1 ^ b") == 6);     // exponent must be an integer
    CHECK(error_pos("xi1 + ") == 6);      // missing term
    CHECK(error_pos("[") == 0);           // unexpected character
    CHECK(error_pos("(xi1") == 4);        // unclosed paren
    CHECK(error_pos("b xi1") == 0);       // b must precede Q^
}

TEST_CASE("formal binding") {
    SymbolTable sym{2, {{"x", 1}, {"y", 2}}};
    auto p1 = bind_formal(parse_expr("Q^2 x"), sym);
    CHECK(p1 == OpPolynomial::word(2, OpWord{seq({{0, 2}}), Atom{"x", 1}}));
    // Powers multiply out; x^2 equals x*x.
    CHECK(bind_formal(parse_expr("x^2"), sym) == bind_formal(parse_expr("x*x"), sym));
    // Operations distribute over parenthesized products via the Cartan rule.
    auto viaparen = bind_formal(parse_expr("Q^2 (x*x)"), sym);
    auto direct = apply_op_to_factors(
        2, {0, 2}, {OpWord{OpSeq{}, Atom{"x", 1}}, OpWord{OpSeq{}, Atom{"x", 1}}});
    CHECK(viaparen == direct);
    // Coefficients reduce mod p.
    CHECK(bind_formal(parse_expr("2 x"), sym).is_zero());
    CHECK(bind_formal(parse_expr("3 x"), sym) == bind_formal(parse_expr("x"), sym));
    // Sums group by canonical term.
    CHECK(bind_formal(parse_expr("x + x"), sym).is_zero());
    CHECK_FALSE(bind_formal(parse_expr("x + y"), sym).is_zero());
}

TEST_CASE("binding validation") {
    SymbolTable sym{2, {{"x", 1}}};
    CHECK_THROWS_AS(bind_formal(parse_expr("z"), sym), DomainError);
    CHECK_THROWS_AS(bind_formal(parse_expr("gx@3"), sym), DomainError);
    CHECK(bind_formal(parse_expr("gx@1"), sym) ==
          bind_formal(parse_expr("x"), sym));
    CHECK_THROWS_AS(bind_formal(parse_expr("b Q^2 x"), sym), DomainError);
    SymbolTable sym3{3, {{"t", 1}}};
    CHECK_FALSE(bind_formal(parse_expr("b Q^2 t"), sym3).is_zero());
}

TEST_CASE("concrete evaluation through a context") {
    auto a = Algebra::make(3, 10, {{"s", 1, true}, {"x", 2, false}});
    PlainContext ctx(a);
    auto s = AlgElement::generator(a, "s");
    auto x = AlgElement::generator(a, "x");
    CHECK(eval_expression("s*x + x*s", ctx) == (s * x).scaled(2));
    CHECK(eval_expression("x^3 - x^3", ctx).is_zero());
    CHECK(eval_expression("2 x^2", ctx) == x.pow(2).scaled(2));
    CHECK(eval_expression("(s + x)^2", ctx) == (s + x) * (s + x));
    CHECK(eval_expression("5", ctx) == AlgElement::unit(a, 2));
    CHECK(eval_expression("1", ctx) == AlgElement::unit(a));
    CHECK_THROWS_AS(eval_expression("Q^1 x", ctx), DomainError);
    CHECK_THROWS_AS(eval_expression("unknown", ctx), DomainError);
    CHECK_THROWS_AS(eval_expression("gx@7", ctx), DomainError);

    GradedIdeal ideal(a, {x.pow(2)});
    PlainContext qctx(a, &ideal);
    CHECK(eval_expression("x^2 + s", qctx) == s);
    CHECK(render_element(eval_expression("x^2 + s", qctx)) == "s");
}
