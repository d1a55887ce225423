#include "doctest.h"

#include "core/context.hpp"
#include "core/errors.hpp"

using namespace dlops;

namespace {

std::string ev(const std::string& expr, const EvalContext& ctx) {
    return eval_in_context(expr, ctx);
}

const char* kConfigText = R"({
  "prime": 3,
  "bound": 12,
  "generators": [
    {"name": "x", "degree": 1},
    {"name": "y", "degree": 2},
    {"name": "z", "degree": 3}
  ],
  "relations": ["y^3"],
  "q_values": [{"s": 1, "arg": "x", "value": "x * y^2"}]
})";

} // namespace

TEST_CASE("the builtin p2 context evaluates and prints natively") {
    auto ctx = builtin_context("p2-dual");
    CHECK(ev("Q^2 xi1", *ctx) == "xi2 + xi1^3");
    CHECK(ev("Q^3 1", *ctx) == "0");
    CHECK(ev("Q^0 1", *ctx) == "1");
    CHECK(ev("zeta2", *ctx) == "xi2 + xi1^3");
    CHECK(ev("xi1 + xi1", *ctx) == "0");
    CHECK(ev("Q^1 xi1", *ctx) == "xi1^2");
    CHECK_THROWS_AS(ev("taubar1", *ctx), DomainError);
}

TEST_CASE("the builtin p3 context displays conjugate coordinates") {
    auto ctx = builtin_context("p3-dual");
    CHECK(ev("b Q^1 tau0", *ctx) == "2 zeta1");
    CHECK(ev("Q^1 tau0", *ctx) == "2 taubar1");
    CHECK(ev("xi1", *ctx) == "2 zeta1");
    CHECK(ev("tau0", *ctx) == "2 taubar0");
    CHECK(ev("zeta1", *ctx) == "zeta1");
    CHECK(ev("taubar1", *ctx) == "taubar1");
    CHECK(ev("5", *ctx) == "2");
    CHECK(ev("Q^3 1", *ctx) == "0");
}

TEST_CASE("the action side changes which table the context reads") {
    DualContext right(SteenrodDual::make(2), Side::Right);
    CHECK(ev("Q^2 xi1", right) == "xi2");
    DualContext left(SteenrodDual::make(2), Side::Left);
    CHECK(ev("Q^2 xi1", left) == "xi2 + xi1^3");
    CHECK(left.side() == Side::Left);
}

TEST_CASE("degree annotations are checked against the context") {
    auto ctx = builtin_context("p2-dual");
    CHECK(ev("gxi1@1", *ctx) == "xi1");
    CHECK_THROWS_AS(ev("gxi1@2", *ctx), DomainError);
    CHECK_THROWS_AS(ev("nope", *ctx), DomainError);
    CHECK_THROWS_AS(builtin_context("p5-dual"), DomainError);
}

TEST_CASE("config text parses into the declared presentation data") {
    ContextConfig cfg = parse_context_config(kConfigText);
    CHECK(cfg.p == 3);
    CHECK(cfg.bound == 12);
    REQUIRE(cfg.generators.size() == 3);
    CHECK(cfg.generators[0].name == "x");
    CHECK(cfg.generators[0].exterior); // odd degree at an odd prime
    CHECK_FALSE(cfg.generators[1].exterior);
    REQUIRE(cfg.relations.size() == 1);
    REQUIRE(cfg.q_values.size() == 1);
    CHECK(cfg.q_values[0].eps == 0);
    CHECK(cfg.q_values[0].s == 1);
}

TEST_CASE("malformed config text is rejected with the offending field") {
    CHECK_THROWS_AS(parse_context_config("not json"), DomainError);
    CHECK_THROWS_AS(parse_context_config("[1, 2]"), DomainError);
    CHECK_THROWS_AS(parse_context_config(R"({"prime": 4, "bound": 3, "generators": []})"),
                    DomainError);
    CHECK_THROWS_AS(parse_context_config(R"({"prime": 3, "generators": []})"), DomainError);
    CHECK_THROWS_AS(
        parse_context_config(R"({"prime": 3, "bound": 3, "generators": [], "extra": 1})"),
        DomainError);
    CHECK_THROWS_AS(parse_context_config(
                        R"({"prime": 3, "bound": 3, "generators": [{"name": "b", "degree": 1}]})"),
                    DomainError);
    CHECK_THROWS_AS(parse_context_config(
                        R"({"prime": 3, "bound": 3, "generators": [{"name": "t", "degree": 0}]})"),
                    DomainError);
    CHECK_THROWS_AS(
        parse_context_config(
            R"({"prime": 3, "bound": 3, "generators": [{"name": "t", "degree": 1}, {"name": "t", "degree": 2}]})"),
        DomainError);
    CHECK_THROWS_AS(
        parse_context_config(
            R"({"prime": 3, "bound": 3, "generators": [], "q_values": [{"eps": 2, "s": 1, "arg": "t", "value": "0"}]})"),
        DomainError);
    CHECK_THROWS_AS(
        parse_context_config(R"({"prime": 3, "bound": 3, "generators": [], "relations": [7]})"),
        DomainError);
}

TEST_CASE("a configured presentation context resolves recorded operations") {
    auto ctx = config_context(parse_context_config(kConfigText));
    CHECK(ev("Q^1 x", *ctx) == "x*y^2");
    CHECK(ev("y^3", *ctx) == "0");
    CHECK(ev("Q^1 y", *ctx) == "0");       // forced cube lands in the relation
    CHECK(ev("Q^1 (x * y)", *ctx) == "0"); // Cartan with a zero factor
    CHECK(ev("Q^2 Q^1 x", *ctx) == "0");
    CHECK(ev("Q^6 x", *ctx) == "0"); // above the bound
    CHECK_THROWS_AS(ev("Q^2 z", *ctx), MissingTableEntry);
}

TEST_CASE("config expressions may not contain operation factors") {
    ContextConfig cfg = parse_context_config(kConfigText);
    cfg.relations.push_back("Q^1 x");
    CHECK_THROWS_AS(build_presentation(cfg), DomainError);
    cfg.relations.pop_back();
    cfg.relations.push_back("x +");
    CHECK_THROWS_AS(build_presentation(cfg), DomainError);
}

TEST_CASE("configured records must not contradict forced values") {
    ContextConfig cfg = parse_context_config(kConfigText);
    // Q^1 y is forced to y^3 = 0 by instability, so any nonzero record lies.
    cfg.q_values.push_back({0, 1, "y", "x * y * z"});
    CHECK_THROWS_AS(build_presentation(cfg), DomainError);
}

TEST_CASE("an empty generator list gives the ground field") {
    ContextConfig cfg = parse_context_config(R"({"prime": 3, "bound": 0, "generators": []})");
    auto ctx = config_context(cfg);
    CHECK(ev("3", *ctx) == "0");
    CHECK(ev("4", *ctx) == "1");
}
