#include "doctest.h"

#include "core/errors.hpp"
#include "core/opexpr.hpp"

using namespace dlops;

namespace {

OpSeq seq(std::initializer_list<OpFactor> fs) { return OpSeq{std::vector<OpFactor>(fs)}; }

OpWord bare(const std::string& name, int degree) { return OpWord{OpSeq{}, Atom{name, degree}}; }

OpWord wrap(std::initializer_list<OpFactor> fs, const std::string& name, int degree) {
    return OpWord{seq(fs), Atom{name, degree}};
}

} // namespace

TEST_CASE("term canonicalization sorts factors with koszul signs") {
    const int p = 3;
    OpWord s = bare("s", 1), t = bare("t", 1), x = bare("x", 2);
    // [t, s] reorders to [s, t] with one odd-odd swap.
    auto a = OpPolynomial::term(p, OpTerm{1, {t, s}});
    auto b = OpPolynomial::term(p, OpTerm{-1, {s, t}});
    CHECK(a == b);
    // Even factors move freely.
    CHECK(OpPolynomial::term(p, OpTerm{1, {x, s}}) == OpPolynomial::term(p, OpTerm{1, {s, x}}));
    // Odd squares vanish.
    CHECK(OpPolynomial::term(p, OpTerm{1, {s, s}}).is_zero());
    // Anticommutativity through the product.
    auto st = OpPolynomial::word(p, s) * OpPolynomial::word(p, t);
    auto ts = OpPolynomial::word(p, t) * OpPolynomial::word(p, s);
    CHECK((st + ts).is_zero());
}

TEST_CASE("addition merges and cancels") {
    const int p = 2;
    OpWord x = bare("x", 1);
    auto one = OpPolynomial::word(p, x);
    CHECK((one + one).is_zero());
    auto two = OpPolynomial::term(p, OpTerm{1, {x, x}});
    CHECK_FALSE(two.is_zero()); // squares survive at p = 2
    CHECK(two.str() == "x^2");
}

TEST_CASE("rendering formal polynomials") {
    const int p = 2;
    OpWord x = bare("x", 1);
    CHECK(OpPolynomial::zero(p).str() == "0");
    CHECK(OpPolynomial::term(p, OpTerm{1, {}}).str() == "1");
    CHECK(OpPolynomial::word(p, wrap({{0, 3}, {0, 1}}, "x", 1)).str() == "Q^3 Q^1 x");
    auto sq = OpPolynomial::term(p, OpTerm{1, {wrap({{0, 2}}, "x", 1), wrap({{0, 2}}, "x", 1)}});
    CHECK(sq.str() == "(Q^2 x)^2");
    auto prod = OpPolynomial::term(p, OpTerm{1, {wrap({{0, 1}}, "x", 1), wrap({{0, 2}}, "x", 1)}});
    CHECK(prod.str() == "(Q^1 x)*(Q^2 x)");
    auto scaled = OpPolynomial::term(3, OpTerm{2, {bare("x", 2)}});
    CHECK(scaled.str() == "2 x");
}

TEST_CASE("cartan expansion at p = 2") {
    OpWord x = bare("x", 1), y = bare("y", 1);
    auto e = cartan_expand(2, {0, 2}, x, y);
    // (Q^0 x)(Q^2 y) + (Q^1 x)(Q^1 y) + (Q^2 x)(Q^0 y).
    OpPolynomial expect(2);
    expect.add_term(OpTerm{1, {wrap({{0, 0}}, "x", 1), wrap({{0, 2}}, "y", 1)}});
    expect.add_term(OpTerm{1, {wrap({{0, 1}}, "x", 1), wrap({{0, 1}}, "y", 1)}});
    expect.add_term(OpTerm{1, {wrap({{0, 2}}, "x", 1), wrap({{0, 0}}, "y", 1)}});
    CHECK(e == expect);
    CHECK_THROWS_AS(cartan_expand(2, {1, 2}, x, y), DomainError);
}

TEST_CASE("decorated cartan expansion at p = 3") {
    OpWord s = bare("s", 1), t = bare("t", 1);
    auto e = cartan_expand(3, {1, 1}, s, t);
    // b Q^1 (s t) = (b Q^0 s)(Q^1 t) + (b Q^1 s)(Q^0 t)
    //             - (Q^0 s)(b Q^1 t) - (Q^1 s)(b Q^0 t).
    OpPolynomial expect(3);
    expect.add_term(OpTerm{1, {wrap({{1, 0}}, "s", 1), wrap({{0, 1}}, "t", 1)}});
    expect.add_term(OpTerm{1, {wrap({{1, 1}}, "s", 1), wrap({{0, 0}}, "t", 1)}});
    expect.add_term(OpTerm{-1, {wrap({{0, 0}}, "s", 1), wrap({{1, 1}}, "t", 1)}});
    expect.add_term(OpTerm{-1, {wrap({{0, 1}}, "s", 1), wrap({{1, 0}}, "t", 1)}});
    CHECK(e == expect);
    // An even first factor drops the sign.
    OpWord x = bare("x", 2);
    auto e2 = cartan_expand(3, {1, 0}, x, t);
    OpPolynomial expect2(3);
    expect2.add_term(OpTerm{1, {wrap({{1, 0}}, "x", 2), wrap({{0, 0}}, "t", 1)}});
    expect2.add_term(OpTerm{1, {wrap({{0, 0}}, "x", 2), wrap({{1, 0}}, "t", 1)}});
    CHECK(e2 == expect2);
}

TEST_CASE("operations on the empty product") {
    CHECK(apply_op_to_factors(2, {0, 0}, {}) == OpPolynomial::term(2, OpTerm{1, {}}));
    CHECK(apply_op_to_factors(2, {0, 2}, {}).is_zero());
    CHECK(apply_op_to_factors(3, {1, 0}, {}).is_zero());
}

TEST_CASE("instability below the range gives zero") {
    auto step = instability_rewrite(2, wrap({{0, 1}}, "x", 2));
    CHECK(step.kind == InstabilityStep::Zero);
    auto step3 = instability_rewrite(3, wrap({{0, 1}}, "x", 4));
    CHECK(step3.kind == InstabilityStep::Zero);
    // A decorated operation at the boundary is a Bockstein on a p-th power.
    auto stepb = instability_rewrite(3, wrap({{1, 1}}, "x", 2));
    CHECK(stepb.kind == InstabilityStep::Zero);
}

TEST_CASE("instability at the boundary gives the p-th power") {
    auto step = instability_rewrite(2, wrap({{0, 2}}, "x", 2));
    REQUIRE(step.kind == InstabilityStep::PthPower);
    CHECK(step.value.str() == "x^2");
    auto step3 = instability_rewrite(3, wrap({{0, 1}}, "x", 2));
    REQUIRE(step3.kind == InstabilityStep::PthPower);
    CHECK(step3.value.str() == "x^3");
}

TEST_CASE("instability above the range leaves the word alone") {
    auto step = instability_rewrite(2, wrap({{0, 3}}, "x", 2));
    CHECK(step.kind == InstabilityStep::Unchanged);
}

TEST_CASE("boundary case pushes outer operations through the power") {
    // Q^4 Q^2 x with |x| = 2: the inner operation squares, and Q^4 expands
    // over x * x.  Only the symmetric split survives mod 2.
    auto step = instability_rewrite(2, wrap({{0, 4}, {0, 2}}, "x", 2));
    REQUIRE(step.kind == InstabilityStep::PthPower);
    OpPolynomial expect(2);
    expect.add_term(OpTerm{1, {wrap({{0, 2}}, "x", 2), wrap({{0, 2}}, "x", 2)}});
    CHECK(step.value == expect);
    // Q^3 of the square cancels completely mod 2.
    auto odd = instability_rewrite(2, wrap({{0, 3}, {0, 2}}, "x", 2));
    REQUIRE(odd.kind == InstabilityStep::PthPower);
    CHECK(odd.value.is_zero());
}

TEST_CASE("formal adem normalization rewrites factor words") {
    auto poly = OpPolynomial::word(2, wrap({{0, 4}, {0, 1}}, "x", 1));
    auto nf = adem_normalize(poly);
    CHECK(nf == OpPolynomial::word(2, wrap({{0, 3}, {0, 2}}, "x", 1)));
    CHECK(adem_normalize(OpPolynomial::word(2, wrap({{0, 3}, {0, 1}}, "x", 1))).is_zero());
    // Admissible words pass through untouched, products included.
    auto prod = OpPolynomial::term(2, OpTerm{1, {wrap({{0, 2}}, "x", 1), bare("y", 1)}});
    CHECK(adem_normalize(prod) == prod);
    // Both strategies agree on formal polynomials too.
    auto big = OpPolynomial::word(3, wrap({{0, 5}, {1, 1}}, "t", 1));
    CHECK(adem_normalize(big, AdemStrategy::Leftmost) ==
          adem_normalize(big, AdemStrategy::Rightmost));
}

TEST_CASE("mixed prime arithmetic is rejected") {
    auto a = OpPolynomial::word(2, bare("x", 1));
    auto b = OpPolynomial::word(3, bare("x", 2));
    CHECK_THROWS_AS(a + b, DomainError);
    CHECK_THROWS_AS(a * b, DomainError);
}
