#include "doctest.h"

#include "core/errors.hpp"
#include "core/presentation.hpp"

using namespace dlops;

namespace {

const SteenrodDual& dual2() {
    static auto d = SteenrodDual::make(2);
    return *d;
}
const SteenrodDual& dual3() {
    static auto d = SteenrodDual::make(3);
    return *d;
}

AlgElement gen(const Presentation& P, const std::string& name) {
    return AlgElement::generator(P.algebra(), name);
}

// tau0 xi1 - tau1, the degree-5 conjugate generator, in P's coordinates
AlgElement conj5(const Presentation& P) {
    return gen(P, "tau0") * gen(P, "xi1") - gen(P, "tau1");
}

std::vector<AlgElement> identity_images(const Presentation& X, const Presentation& Y) {
    std::vector<AlgElement> images;
    for (const auto& g : X.algebra()->gens())
        images.push_back(AlgElement::generator(Y.algebra(), g.name));
    return images;
}

} // namespace

TEST_CASE("truncated dual at p = 2 carries the reachable table entries") {
    Presentation L = truncated_dual(dual2(), Side::Left, 3);
    Presentation R = truncated_dual(dual2(), Side::Right, 3);
    CHECK(L.series() == std::vector<size_t>{1, 1, 1, 2});
    auto lrec = L.q_records();
    REQUIRE(lrec.size() == 1);
    CHECK(lrec[0].eps == 0);
    CHECK(lrec[0].s == 2);
    CHECK(monomial_str(*L.algebra(), lrec[0].arg) == "xi1");
    CHECK(lrec[0].value == gen(L, "xi2") + gen(L, "xi1").pow(3));
    auto rrec = R.q_records();
    REQUIRE(rrec.size() == 1);
    CHECK(rrec[0].value == gen(R, "xi2"));

    // at bound 7 the next conjugate generator comes into range
    Presentation L7 = truncated_dual(dual2(), Side::Left, 7);
    CHECK(L7.q_records().size() == 2);
    CHECK(L7.q_records()[1].s == 6);
}

TEST_CASE("operation resolution on the truncated dual at p = 2") {
    Presentation L = truncated_dual(dual2(), Side::Left, 3);
    AlgElement x1 = gen(L, "xi1");
    CHECK(*resolve_q(L, 0, 1, x1) == x1 * x1);                       // p-th power boundary
    CHECK(*resolve_q(L, 0, 2, x1) == gen(L, "xi2") + x1.pow(3));     // recorded
    CHECK(resolve_q(L, 0, 3, x1)->is_zero());                        // lands above the bound
    CHECK(resolve_q(L, 0, 0, x1)->is_zero());                        // below range
    CHECK(*resolve_q(L, 0, 0, AlgElement::unit(L.algebra())) == AlgElement::unit(L.algebra()));
    CHECK(resolve_q(L, 0, 2, AlgElement::unit(L.algebra()))->is_zero());
    CHECK(resolve_q(L, 0, 2, x1 * x1)->is_zero()); // (xi1^2)^2 above the bound
}

TEST_CASE("resolution agrees with the dual engine wherever both are defined") {
    const SteenrodDual& D = dual2();
    Presentation P = truncated_dual(D, Side::Left, 7);
    std::vector<AlgElement> images;
    for (const auto& g : D.algebra()->gens())
        images.push_back(g.degree <= 7 ? gen(P, g.name) : AlgElement::zero(P.algebra()));
    int checked = 0;
    for (int d = 1; d <= 7; ++d)
        for (const auto& m : P.algebra()->basis(d))
            for (int s = 0; d + s <= 7; ++s) {
                auto lhs = resolve_q(P, 0, s, AlgElement::monomial(P.algebra(), m));
                try {
                    AlgElement rhs = D.q_act(Side::Left, OpSeq{{{0, s}}},
                                             AlgElement::monomial(D.algebra(), m));
                    REQUIRE(lhs.has_value());
                    CHECK(*lhs == substitute(rhs, P.algebra(), images));
                } catch (const MissingTableEntry&) {
                    CHECK(!lhs.has_value());
                }
                ++checked;
            }
    CHECK(checked > 30);
}

TEST_CASE("resolution agrees with the dual engine at p = 3, both decorations") {
    const SteenrodDual& D = dual3();
    Presentation P = truncated_dual(D, Side::Left, 9);
    std::vector<AlgElement> images;
    for (const auto& g : D.algebra()->gens())
        images.push_back(g.degree <= 9 ? gen(P, g.name) : AlgElement::zero(P.algebra()));
    int checked = 0;
    for (int d = 1; d <= 9; ++d)
        for (const auto& m : P.algebra()->basis(d))
            for (int eps = 0; eps <= 1; ++eps)
                for (int s = 0; s <= 2; ++s) {
                    if (d + 4 * s - eps > 9) continue;
                    auto lhs = resolve_q(P, eps, s, AlgElement::monomial(P.algebra(), m));
                    try {
                        AlgElement rhs = D.q_act(Side::Left, OpSeq{{{eps, s}}},
                                                 AlgElement::monomial(D.algebra(), m));
                        REQUIRE(lhs.has_value());
                        CHECK(*lhs == substitute(rhs, P.algebra(), images));
                    } catch (const MissingTableEntry&) {
                        CHECK(!lhs.has_value());
                    }
                    ++checked;
                }
    CHECK(checked > 15);
}

TEST_CASE("decorated Cartan resolution with a zero factor beating a missing one") {
    Presentation P = truncated_dual(dual3(), Side::Left, 16);
    CHECK(P.q_records().size() == 3); // Q^1, b Q^1, b Q^4 rows reach degree 16
    AlgElement m = gen(P, "tau0") * gen(P, "xi1");
    CHECK(*resolve_q(P, 1, 3, m) == gen(P, "xi1").pow(4));
    // the same value in the untruncated engine
    const SteenrodDual& D = dual3();
    AlgElement dm = AlgElement::generator(D.algebra(), "tau0") *
                    AlgElement::generator(D.algebra(), "xi1");
    CHECK(D.q_act(Side::Left, OpSeq{{{1, 3}}}, dm) ==
          AlgElement::generator(D.algebra(), "xi1").pow(4));
    // a single generator with no recorded value stays undetermined
    CHECK(!resolve_q(P, 0, 2, gen(P, "tau0")).has_value());
}

TEST_CASE("recorded operation validation") {
    Presentation L = truncated_dual(dual2(), Side::Left, 3);
    AlgElement x1 = gen(L, "xi1");
    AlgElement x2 = gen(L, "xi2");
    // consistent with forced values: accepted, not stored
    L.record_q(0, 1, x1, x1 * x1);
    L.record_q(0, 0, x1, AlgElement::zero(L.algebra()));
    CHECK(L.q_records().size() == 1);
    // contradictions and malformed records
    CHECK_THROWS_AS(L.record_q(0, 1, x1, AlgElement::zero(L.algebra())), DomainError);
    CHECK_THROWS_AS(L.record_q(0, 0, x1, x1), DomainError);
    CHECK_THROWS_AS(L.record_q(0, 5, x1, AlgElement::zero(L.algebra())), DomainError);
    CHECK_THROWS_AS(L.record_q(1, 1, x1, x1 * x1), DomainError);
    CHECK_THROWS_AS(L.record_q(0, 2, AlgElement::unit(L.algebra()), x1), DomainError);
    CHECK_THROWS_AS(L.record_q(0, 2, x1, x2), DomainError); // conflicts with the table row
    L.record_q(0, 2, x1, x2 + x1.pow(3));                   // identical re-record is fine
    CHECK(L.q_records().size() == 1);

    Presentation L7 = truncated_dual(dual2(), Side::Left, 7);
    CHECK_THROWS_AS(L7.record_q(0, 4, gen(L7, "xi2"), gen(L7, "xi1")), DomainError); // degree
    CHECK_THROWS_AS(L7.record_q(0, 5, gen(L7, "xi2") + gen(L7, "xi1").pow(3), gen(L7, "xi1")),
                    DomainError); // two monomials
    L7.record_q(0, 4, gen(L7, "xi2"), AlgElement::zero(L7.algebra()));
    CHECK(resolve_q(L7, 0, 4, gen(L7, "xi2"))->is_zero());
    CHECK(L7.q_records().size() == 3);
}

TEST_CASE("truncation keeps low degrees and drops out-of-range records") {
    Presentation P5 = truncated_dual(dual3(), Side::Left, 5);
    CHECK(P5.series() == std::vector<size_t>{1, 1, 0, 0, 1, 2});
    auto recs = P5.q_records();
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].eps == 0);
    CHECK(recs[0].s == 1);
    CHECK(recs[0].value == gen(P5, "tau1") - gen(P5, "tau0") * gen(P5, "xi1"));
    CHECK(recs[1].eps == 1);
    CHECK(recs[1].s == 1);
    CHECK(recs[1].value == gen(P5, "xi1"));

    Presentation P4 = postnikov_truncate(P5, 4);
    CHECK(P4.series() == std::vector<size_t>{1, 1, 0, 0, 1});
    auto recs4 = P4.q_records();
    REQUIRE(recs4.size() == 1); // the undecorated row lands in degree 5, dropped
    CHECK(recs4[0].eps == 1);
    CHECK(recs4[0].value == gen(P4, "xi1"));

    Presentation P5b = postnikov_truncate(P5, 5);
    CHECK(P5b.series() == P5.series());
    CHECK(P5b.q_records().size() == 2);
    CHECK_THROWS_AS(postnikov_truncate(P5, 6), BoundError);
}

TEST_CASE("cell attachment at p = 2 gives the two operation structures") {
    Presentation L = truncated_dual(dual2(), Side::Left, 3);
    Presentation R = truncated_dual(dual2(), Side::Right, 3);
    AlgElement xL = gen(L, "xi2") + gen(L, "xi1").pow(3);
    AlgElement xR = gen(R, "xi2") + gen(R, "xi1").pow(3);
    Presentation X1 = kill_element(L, xL);
    Presentation X2 = kill_element(R, xR);
    CHECK(X1.series() == std::vector<size_t>{1, 1, 1, 1});
    CHECK(X2.series() == std::vector<size_t>{1, 1, 1, 1});
    CHECK(X1.reduce(gen(X1, "xi2")) == gen(X1, "xi1").pow(3));
    REQUIRE(X1.q_records().size() == 1);
    CHECK(X1.q_records()[0].value.is_zero());
    REQUIRE(X2.q_records().size() == 1);
    CHECK(X2.q_records()[0].value == gen(X2, "xi1").pow(3));
    CHECK(resolve_q(X1, 0, 2, gen(X1, "xi1"))->is_zero());
    CHECK(*resolve_q(X2, 0, 2, gen(X2, "xi1")) == gen(X2, "xi1").pow(3));
    CHECK(resolve_q(X1, 0, 3, gen(X1, "xi1"))->is_zero());
    CHECK(resolve_q(X2, 0, 3, gen(X2, "xi1"))->is_zero());

    CHECK_THROWS_AS(kill_element(L, gen(L, "xi1")), DomainError);          // not top degree
    CHECK_THROWS_AS(kill_element(L, AlgElement::zero(L.algebra())), DomainError);
    CHECK_THROWS_AS(kill_element(L, gen(L, "xi1") + gen(L, "xi2")), DomainError); // mixed
}

TEST_CASE("cell attachment at p = 3 gives the two operation structures") {
    Presentation L = truncated_dual(dual3(), Side::Left, 5);
    Presentation R = truncated_dual(dual3(), Side::Right, 5);
    Presentation X1 = kill_element(L, conj5(L));
    Presentation X2 = kill_element(R, conj5(R));
    CHECK(X1.series() == std::vector<size_t>{1, 1, 0, 0, 1, 1});
    CHECK(X2.series() == std::vector<size_t>{1, 1, 0, 0, 1, 1});
    CHECK(X1.reduce(gen(X1, "tau1")) == gen(X1, "tau0") * gen(X1, "xi1"));

    auto r1 = X1.q_records();
    REQUIRE(r1.size() == 2);
    CHECK(r1[0].eps == 0);
    CHECK(r1[0].value.is_zero()); // tau1 - tau0 xi1 dies in the quotient
    CHECK(r1[1].eps == 1);
    CHECK(r1[1].value == gen(X1, "xi1"));

    auto r2 = X2.q_records();
    REQUIRE(r2.size() == 2);
    CHECK(r2[0].eps == 0);
    CHECK(r2[0].value == gen(X2, "tau0") * gen(X2, "xi1")); // tau1, reduced
    CHECK(r2[1].value == gen(X2, "xi1"));

    // attach one more cell on top of the quotient
    Presentation Y = kill_element(X1, X1.reduce(gen(X1, "tau0") * gen(X1, "xi1")));
    CHECK(Y.series() == std::vector<size_t>{1, 1, 0, 0, 1, 0});
    auto ry = Y.q_records();
    REQUIRE(ry.size() == 2);
    CHECK(ry[0].value.is_zero());
    CHECK(ry[1].value == gen(Y, "xi1"));
}

TEST_CASE("attaching a cell to the exterior algebra on one generator") {
    AlgebraPtr alg = Algebra::make(3, 1, {{"x", 1, true}});
    Presentation P(alg);
    Presentation Q = kill_element(P, AlgElement::generator(alg, "x"));
    CHECK(Q.series() == std::vector<size_t>{1, 0});
    CHECK(Q.q_records().empty());
}

TEST_CASE("morphism checking") {
    Presentation L = truncated_dual(dual3(), Side::Left, 5);
    Presentation R = truncated_dual(dual3(), Side::Right, 5);
    Presentation X1 = kill_element(L, conj5(L));
    Presentation X2 = kill_element(R, conj5(R));

    auto rep = check_morphism(X1, X2, identity_images(X1, X2));
    CHECK(rep.verdict == Verdict::Violation);
    CHECK(rep.detail.find("Q^1") != std::string::npos);
    CHECK(check_morphism(X1, X2, identity_images(X1, X2), false).ok());
    CHECK(check_morphism(X1, X1, identity_images(X1, X1)).ok());

    // different bounds are a structural error, not a verdict
    Presentation X1t = postnikov_truncate(X1, 4);
    CHECK_THROWS_AS(check_morphism(X1t, X2, identity_images(X1t, X2)), DomainError);

    // wrong degree image is malformed input
    std::vector<AlgElement> bad = identity_images(X1, X2);
    bad[0] = gen(X2, "xi1");
    CHECK_THROWS_AS(check_morphism(X1, X2, bad), DomainError);
}

TEST_CASE("an unresolvable operation makes the verdict undetermined") {
    AlgebraPtr alg = Algebra::make(2, 6, {{"a", 2, false}});
    Presentation X(alg);
    X.record_q(0, 3, "a", AlgElement::zero(alg));
    Presentation Y(alg);
    std::vector<AlgElement> id = {AlgElement::generator(alg, "a")};
    auto rep = check_morphism(X, Y, id);
    CHECK(rep.verdict == Verdict::Undetermined);
    CHECK(rep.detail.find("Q^3 a") != std::string::npos);
    CHECK(check_morphism(Y, X, id).ok()); // no records to transport
    CHECK(find_isomorphisms(X, Y, true).empty());
    CHECK(find_isomorphisms(X, Y, false).size() == 1);
}

TEST_CASE("isomorphism search distinguishes the two structures at p = 2") {
    Presentation L = truncated_dual(dual2(), Side::Left, 3);
    Presentation R = truncated_dual(dual2(), Side::Right, 3);
    AlgElement xL = gen(L, "xi2") + gen(L, "xi1").pow(3);
    AlgElement xR = gen(R, "xi2") + gen(R, "xi1").pow(3);
    Presentation X1 = kill_element(L, xL);
    Presentation X2 = kill_element(R, xR);

    auto bare = find_isomorphisms(X1, X2, false);
    REQUIRE(bare.size() == 1);
    CHECK(bare[0].images[0] == gen(X2, "xi1"));
    CHECK(bare[0].images[1] == gen(X2, "xi1").pow(3));
    CHECK(find_isomorphisms(X1, X2, true).empty());
    CHECK(find_isomorphisms(X2, X1, true).empty());

    // the un-killed and killed presentations differ in dimensions: no search
    CHECK(find_isomorphisms(L, X2, false).empty());
}

TEST_CASE("isomorphism search distinguishes the two structures at p = 3") {
    Presentation L = truncated_dual(dual3(), Side::Left, 5);
    Presentation R = truncated_dual(dual3(), Side::Right, 5);
    Presentation X1 = kill_element(L, conj5(L));
    Presentation X2 = kill_element(R, conj5(R));

    CHECK(find_isomorphisms(X1, X2, false).size() == 4);
    CHECK(find_isomorphisms(X1, X2, true).empty());
    CHECK(find_isomorphisms(X2, X1, true).empty());

    auto autos = find_isomorphisms(X1, X1, true);
    REQUIRE(autos.size() == 2);
    for (const auto& iso : autos) {
        CHECK(check_morphism(X1, X1, iso.images).ok());
        CHECK(check_morphism(X1, X1, iso.inverse_images).ok());
    }
    CHECK(autos[0].images[0] == gen(X1, "tau0"));
    CHECK(autos[1].images[0] == gen(X1, "tau0").scaled(2));
}

TEST_CASE("isomorphism search refuses oversized candidate spaces") {
    std::vector<GeneratorSpec> gens;
    for (int i = 0; i < 13; ++i) gens.push_back({"a" + std::to_string(i), 1, true});
    AlgebraPtr alg = Algebra::make(3, 1, gens);
    Presentation Z(alg);
    CHECK_THROWS_AS(find_isomorphisms(Z, Z), BudgetError);
    try {
        find_isomorphisms(Z, Z);
    } catch (const BudgetError& e) {
        CHECK(e.size > 1000000ull);
        CHECK(std::string(e.what()).find("budget") != std::string::npos);
    }
}
