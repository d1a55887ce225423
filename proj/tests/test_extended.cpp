#include "doctest.h"

#include <random>

#include "core/errors.hpp"
#include "core/extended.hpp"

using namespace dlops;

namespace {

SteenrodDualPtr dual(int p, int bound) {
    return SteenrodDual::make(p, bound);
}

AlgElement gen(const Presentation& P, const std::string& name) {
    return AlgElement::generator(P.algebra(), name);
}

std::vector<AlgElement> identity_images(const Presentation& X, const Presentation& Y) {
    std::vector<AlgElement> images;
    for (const auto& g : X.algebra()->gens())
        images.push_back(AlgElement::generator(Y.algebra(), g.name));
    return images;
}

// the p = 3 pair of quotient structures: Q^1 tau0 = 0 on the left side,
// Q^1 tau0 = tau0 xi1 on the right side
Presentation example_ring(Side side) {
    static auto d = SteenrodDual::make(3);
    Presentation P = truncated_dual(*d, side, 5);
    AlgElement conj = gen(P, "tau0") * gen(P, "xi1") - gen(P, "tau1");
    return kill_element(P, conj);
}

// the p = 2 pair: Q^2 xi1 = 0 / xi1^3 on F_2[xi1]/(xi1^4)
Presentation example_ring2(Side side) {
    static auto d = SteenrodDual::make(2);
    Presentation P = truncated_dual(*d, side, 3);
    AlgElement conj = gen(P, "xi2") + gen(P, "xi1").pow(3);
    return kill_element(P, conj);
}

} // namespace

TEST_CASE("tensor arithmetic carries the Koszul sign across the factors") {
    auto D = dual(3, 5);
    auto alg = Algebra::make(3, 5, {{"t", 5, true}});
    ExtendedModule E(D, Side::Left, Presentation(alg));

    AlgElement tau0 = AlgElement::generator(D->algebra(), "tau0");
    AlgElement t = AlgElement::generator(alg, "t");
    ExtElement left = E.elem(tau0, AlgElement::unit(alg)); // tau0 (x) 1
    ExtElement right = E.eta(t);                           // 1 (x) t

    // odd-odd factors anticommute across the tensor
    ExtElement ab = E.mul(left, right);
    ExtElement ba = E.mul(right, left);
    CHECK(ab == E.elem(tau0, t));
    CHECK(ba == E.scale(ab, 2));
    CHECK(E.str(ab) == "tau0⊗t");
    CHECK(E.str(E.add(right, left)) == "1⊗t + tau0⊗1");

    // squares of odd elements vanish on both sides
    CHECK(E.mul(left, left).is_zero());
    CHECK(E.mul(right, right).is_zero());

    // mu projects onto A_0 and eta sections it
    CHECK(E.mu(ab).is_zero());
    CHECK(E.mu(E.add(E.unit(), ab)) == AlgElement::unit(alg));
    CHECK(E.mu(E.eta(t)) == t);
}

TEST_CASE("mu is a retraction of eta on random elements") {
    auto D = dual(2, 4);
    auto alg = Algebra::make(2, 4, {{"u", 1, false}, {"v", 3, true}});
    Presentation R(alg, {AlgElement::generator(alg, "u").pow(3)});
    ExtendedModule E(D, Side::Left, R);

    std::mt19937 rng(77);
    for (int trial = 0; trial < 30; ++trial) {
        AlgElement x = AlgElement::zero(alg);
        for (int d = 0; d <= R.bound(); ++d)
            for (const Monomial& m : R.ideal().quotient_basis(d))
                x.add_term(m, static_cast<int>(rng() % 2));
        AlgElement xr = R.reduce(x);
        CHECK(E.mu(E.eta(x)) == xr);
    }
}

TEST_CASE("operations on the left factor are the dual engine's") {
    auto D = dual(3, 9);
    auto alg = Algebra::make(3, 1, {{"t", 1, true}});
    ExtendedModule E(D, Side::Left, Presentation(alg));

    AlgElement tau0 = AlgElement::generator(D->algebra(), "tau0");
    AlgElement xi1 = AlgElement::generator(D->algebra(), "xi1");
    AlgElement unit_x = AlgElement::unit(alg);

    // table value, instability zero, and a genuinely missing entry
    auto q1 = E.q(1, E.elem(tau0, unit_x));
    REQUIRE(q1.has_value());
    CHECK(*q1 == E.elem(D->q_act(Side::Left, OpSeq{{OpFactor{0, 1}}}, tau0), unit_x));
    auto q1xi = E.q(1, E.elem(xi1, unit_x));
    REQUIRE(q1xi.has_value());
    CHECK(q1xi->is_zero());
    // inside the rectangle but absent from the table
    CHECK_FALSE(E.q(2, E.elem(tau0, unit_x)).has_value());
    // beyond the representable total degree everything is zero
    auto clipped = E.q(4, E.elem(xi1, unit_x));
    REQUIRE(clipped.has_value());
    CHECK(clipped->is_zero());
}

TEST_CASE("mixed pairs expand by the Cartan rule with zero beating missing") {
    auto D = dual(3, 9);
    auto alg = Algebra::make(3, 1, {{"t", 1, true}});
    Presentation R(alg);
    ExtendedModule E(D, Side::Left, R);

    AlgElement t = AlgElement::generator(alg, "t");
    AlgElement tau0 = AlgElement::generator(D->algebra(), "tau0");
    AlgElement xi1 = AlgElement::generator(D->algebra(), "xi1");

    // record Q^1(1 (x) t) = xi1 (x) t, then Q^2(tau0 (x) t) has exactly one
    // surviving Cartan term: (Q^1 tau0 (x) 1)(Q^1(1 (x) t)); the terms with
    // Q^0 on a positive-degree factor vanish and override the unknown
    // Q^2(1 (x) t) and Q^2(tau0 (x) 1)
    E.record_q(1, t, E.elem(xi1, t));
    auto got = E.q(2, E.elem(tau0, t));
    REQUIRE(got.has_value());
    AlgElement q1tau0 = D->q_act(Side::Left, OpSeq{{OpFactor{0, 1}}}, tau0);
    CHECK(*got == E.mul(E.elem(q1tau0, AlgElement::unit(alg)), E.elem(xi1, t)));

    // without the record the same operation is undetermined
    ExtendedModule bare(D, Side::Left, R);
    CHECK_FALSE(bare.q(2, bare.elem(tau0, t)).has_value());
}

TEST_CASE("recorded extended values validate degree, axioms, and conflicts") {
    auto D = dual(3, 9);
    auto alg = Algebra::make(3, 1, {{"t", 1, true}});
    ExtendedModule E(D, Side::Left, Presentation(alg));
    AlgElement t = AlgElement::generator(alg, "t");
    AlgElement tau0 = AlgElement::generator(D->algebra(), "tau0");

    CHECK_THROWS_AS(E.record_q(1, t, E.elem(tau0, t)), DomainError);         // degree 2, not 5
    CHECK_THROWS_AS(E.record_q(0, t, E.eta(t)), DomainError);                // forced zero
    CHECK_THROWS_AS(E.record_q(1, AlgElement::unit(alg), E.unit()), DomainError);
    E.record_q(0, t, E.zero());                                              // forced, verified
    AlgElement xi1 = AlgElement::generator(D->algebra(), "xi1");
    E.record_q(1, t, E.elem(xi1, t));
    E.record_q(1, t, E.elem(xi1, t));                                        // idempotent
    CHECK_THROWS_AS(E.record_q(1, t, E.zero()), DomainError);                // conflict
}

TEST_CASE("the toy instance yields a certificate with every chain step true") {
    auto D = dual(3, 5);
    auto xalg = Algebra::make(3, 5, {{"taubar1", 5, true}});
    ExtendedModule EX(D, Side::Left, Presentation(xalg));
    ExtendedModule EY(D, Side::Right, Presentation(xalg));

    std::vector<AlgElement> phi = {AlgElement::generator(xalg, "taubar1")};
    ExtMap psi;
    psi.domain = &EX;
    psi.codomain = &EY;
    for (size_t i = 0; i < D->algebra()->gen_count(); ++i)
        psi.a_images.push_back(
            EY.elem(D->chi(AlgElement::generator(D->algebra(), i)), AlgElement::unit(xalg)));
    psi.x_images.push_back(EY.eta(phi[0]));
    psi.unit_image = EY.unit();

    std::vector<std::pair<int, AlgElement>> probes = {
        {1, AlgElement::generator(xalg, "taubar1")},
        {2, AlgElement::generator(xalg, "taubar1")},
        {3, AlgElement::generator(xalg, "taubar1")}};
    TransferReport rep = extend_and_transfer(EX, EY, phi, psi, probes);

    CHECK(rep.certificate);
    CHECK(rep.failing_step.empty());
    CHECK(rep.steps.size() == 27); // 9 chain steps + 6 per transferred pair
    for (const TransferStep& st : rep.steps) CHECK(st.pass);
    CHECK(rep.steps[0].name == "phi-ring-iso");
    CHECK(rep.steps[2].name == "psi-q-equivariance");
    CHECK(rep.steps[2].statement.find("1 determined") != std::string::npos);
    CHECK(rep.steps[5].name == "mu_Y∘psi(tau0⊗1) = 0");
    CHECK(rep.steps[26].name == "q-transfer [Q^3, taubar1]");
}

TEST_CASE("recorded pairs drive the transfer chain when no probes are given") {
    auto D = dual(3, 1);
    auto xalg = Algebra::make(3, 5, {{"t", 1, true}});
    Presentation X(xalg);
    X.record_q(0, 1, "t", AlgElement::zero(xalg));
    ExtendedModule EX(D, Side::Left, X);
    ExtendedModule EY(D, Side::Left, X);
    AlgElement t = AlgElement::generator(xalg, "t");
    EX.record_q(1, t, EX.zero());
    EY.record_q(1, t, EY.zero());

    std::vector<AlgElement> phi = {t};
    ExtMap psi = make_ext_map(EX, EY, phi);
    TransferReport rep = extend_and_transfer(EX, EY, phi, psi);

    CHECK(rep.certificate);
    CHECK(rep.steps.size() == 15); // the recorded pair (Q^1, t) is transferred
    CHECK(rep.steps[9].name == "q-transfer c1 [Q^1, t]");
}

TEST_CASE("the example instance fails exactly at the degree-one vanishing step") {
    Presentation X1 = example_ring(Side::Left);
    Presentation X2 = example_ring(Side::Right);
    auto D = dual(3, 3);
    ExtendedModule EX(D, Side::Left, X1);
    ExtendedModule EY(D, Side::Left, X2);

    std::vector<AlgElement> phi = identity_images(X1, X2);
    ExtMap psi = make_ext_map(EX, EY, phi);
    size_t i = *D->algebra()->gen_index("tau0");
    psi.a_images[i] = EY.add(psi.a_images[i], EY.eta(gen(X2, "tau0")));

    TransferReport rep = extend_and_transfer(EX, EY, phi, psi);
    CHECK_FALSE(rep.certificate);
    CHECK(rep.failing_step == "mu_Y∘psi(tau0⊗1) = 0");
    CHECK(rep.steps.size() == 6);
    for (size_t k = 0; k + 1 < rep.steps.size(); ++k) CHECK(rep.steps[k].pass);
    CHECK_FALSE(rep.steps.back().pass);
    CHECK(rep.steps.back().lhs == "tau0");
    CHECK(rep.steps.back().rhs == "0");
}

TEST_CASE("the p = 2 example instance fails the same way") {
    Presentation X1 = example_ring2(Side::Left);
    Presentation X2 = example_ring2(Side::Right);
    auto D = dual(2, 2);
    ExtendedModule EX(D, Side::Left, X1);
    ExtendedModule EY(D, Side::Left, X2);

    std::vector<AlgElement> phi = identity_images(X1, X2);
    ExtMap psi = make_ext_map(EX, EY, phi);
    size_t i = *D->algebra()->gen_index("xi1");
    psi.a_images[i] = EY.add(psi.a_images[i], EY.eta(gen(X2, "xi1")));

    TransferReport rep = extend_and_transfer(EX, EY, phi, psi);
    CHECK_FALSE(rep.certificate);
    CHECK(rep.failing_step == "mu_Y∘psi(xi1⊗1) = 0");
}

TEST_CASE("unit-incompatible psi and broken phi are rejected") {
    auto D = dual(3, 1);
    auto xalg = Algebra::make(3, 1, {{"t", 1, true}});
    Presentation X(xalg);
    ExtendedModule EX(D, Side::Left, X);
    ExtendedModule EY(D, Side::Left, X);
    std::vector<AlgElement> phi = {AlgElement::generator(xalg, "t")};

    ExtMap bad = make_ext_map(EX, EY, phi);
    bad.unit_image = EY.zero();
    CHECK_THROWS_AS(extend_and_transfer(EX, EY, phi, bad), DomainError);

    ExtMap detached = make_ext_map(EX, EY, phi);
    detached.domain = nullptr;
    CHECK_THROWS_AS(extend_and_transfer(EX, EY, phi, detached), DomainError);

    // phi sending the generator to zero is not bijective in degree one
    ExtMap psi = make_ext_map(EX, EY, phi);
    std::vector<AlgElement> collapse = {AlgElement::zero(xalg)};
    TransferReport rep = extend_and_transfer(EX, EY, collapse, psi);
    CHECK_FALSE(rep.certificate);
    CHECK(rep.failing_step == "phi-ring-iso");
    CHECK(rep.steps.size() == 1);
}
