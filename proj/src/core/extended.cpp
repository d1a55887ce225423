#include "core/extended.hpp"

#include "core/errors.hpp"
#include "core/fp_util.hpp"
#include "core/opexpr.hpp"

namespace dlops {
namespace {

int q_degree(int p, int s) { return p == 2 ? s : 2 * s * (p - 1); }

InstabilityStep::Kind step_kind(int p, int s, int degree) {
    OpWord w{OpSeq{{OpFactor{0, s}}}, Atom{"x", degree}};
    return instability_rewrite(p, w).kind;
}

void accumulate(std::map<std::pair<Monomial, Monomial>, int>& acc,
                const std::pair<Monomial, Monomial>& key, long long c, int p) {
    int v = mod_p(acc[key] + c, p);
    if (v == 0) acc.erase(key);
    else acc[key] = v;
}

} // namespace

ExtendedModule::ExtendedModule(SteenrodDualPtr dual, Side side, Presentation ring)
    : dual_(std::move(dual)), side_(side), ring_(std::move(ring)) {
    if (!dual_) throw DomainError("extended module needs a dual algebra");
    if (dual_->p() != ring_.p())
        throw DomainError("extended module factors disagree on the prime");
}

ExtElement ExtendedModule::unit() const {
    ExtElement e;
    e.terms[{dual_->algebra()->unit_monomial(), ring_.algebra()->unit_monomial()}] = 1;
    return e;
}

ExtElement ExtendedModule::elem(const AlgElement& a, const AlgElement& x) const {
    if (a.attached() && a.algebra() != dual_->algebra())
        throw DomainError("left tensor factor is not in the dual algebra");
    if (x.attached() && x.algebra() != ring_.algebra())
        throw DomainError("right tensor factor is not in the ring");
    ExtElement out;
    if (!a.attached() || !x.attached()) return out;
    AlgElement xr = ring_.reduce(x);
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mx, cx] : xr.terms())
            accumulate(out.terms, {ma, mx}, static_cast<long long>(ca) * cx, p());
    return out;
}

ExtElement ExtendedModule::eta(const AlgElement& x) const {
    return elem(AlgElement::unit(dual_->algebra()), x);
}

AlgElement ExtendedModule::mu(const ExtElement& e) const {
    AlgElement acc = AlgElement::zero(ring_.algebra());
    for (const auto& [key, c] : e.terms)
        if (key.first.is_unit()) acc.add_term(key.second, c);
    return ring_.reduce(acc);
}

ExtElement ExtendedModule::add(const ExtElement& e1, const ExtElement& e2) const {
    ExtElement out = e1;
    for (const auto& [key, c] : e2.terms) accumulate(out.terms, key, c, p());
    return out;
}

ExtElement ExtendedModule::scale(const ExtElement& e, int c) const {
    ExtElement out;
    for (const auto& [key, k] : e.terms) {
        int v = mod_p(static_cast<long long>(k) * c, p());
        if (v != 0) out.terms[key] = v;
    }
    return out;
}

ExtElement ExtendedModule::mul(const ExtElement& e1, const ExtElement& e2) const {
    const AlgebraPtr& A = dual_->algebra();
    const AlgebraPtr& X = ring_.algebra();
    ExtElement out;
    for (const auto& [k1, c1] : e1.terms) {
        for (const auto& [k2, c2] : e2.terms) {
            // (a (x) x)(b (x) y) = (-1)^{|x||b|} ab (x) xy
            int sign = (k1.second.degree % 2 != 0 && k2.first.degree % 2 != 0) ? -1 : 1;
            AlgElement ap = AlgElement::monomial(A, k1.first) * AlgElement::monomial(A, k2.first);
            AlgElement xp =
                ring_.reduce(AlgElement::monomial(X, k1.second) * AlgElement::monomial(X, k2.second));
            long long c = static_cast<long long>(c1) * c2 * sign;
            for (const auto& [ma, ca] : ap.terms())
                for (const auto& [mx, cx] : xp.terms())
                    accumulate(out.terms, {ma, mx}, c * ca * cx, p());
        }
    }
    return out;
}

void ExtendedModule::record_q(int s, const AlgElement& arg, const ExtElement& value) {
    if (s < 0) throw DomainError("negative operation index");
    if (!arg.attached() || arg.algebra() != ring_.algebra())
        throw DomainError("recorded argument is not in the ring");
    if (arg.is_zero() || arg.term_count() != 1 || arg.terms().begin()->second != 1 ||
        ring_.reduce(arg) != arg)
        throw DomainError("recorded argument must be a reduced basis monomial");
    Monomial m = arg.terms().begin()->first;
    if (m.is_unit()) throw DomainError("operations on the unit are fixed");
    int target = m.degree + q_degree(p(), s);
    for (const auto& [key, c] : value.terms)
        if (key.first.degree + key.second.degree != target)
            throw DomainError("recorded value has the wrong degree");
    // axiom-forced values are verified against the axioms and not stored
    std::optional<ExtElement> forced;
    if (target > dual_->bound() + ring_.bound()) forced = zero();
    else {
        switch (step_kind(p(), s, m.degree)) {
        case InstabilityStep::Zero: forced = zero(); break;
        case InstabilityStep::PthPower:
            forced = eta(ring_.reduce(AlgElement::monomial(ring_.algebra(), m)
                                          .pow(static_cast<unsigned>(p()))));
            break;
        case InstabilityStep::Unchanged: break;
        }
    }
    if (forced) {
        if (!(value == *forced))
            throw DomainError("recorded value contradicts the instability axioms");
        return;
    }
    auto it = q_.find({s, m});
    if (it != q_.end()) {
        if (!(it->second == value)) throw DomainError("conflicting recorded operation value");
        return;
    }
    q_.emplace(std::make_pair(s, m), value);
}

std::optional<ExtElement> ExtendedModule::q_basis(int s, const Monomial& ma,
                                                  const Monomial& mx) const {
    if (s < 0) return zero();
    int target = ma.degree + mx.degree + q_degree(p(), s);
    if (target > dual_->bound() + ring_.bound()) return zero();
    if (mx.is_unit()) {
        AlgElement a = AlgElement::monomial(dual_->algebra(), ma);
        try {
            return elem(dual_->q_act(side_, OpSeq{{OpFactor{0, s}}}, a),
                        AlgElement::unit(ring_.algebra()));
        } catch (const MissingTableEntry&) {
            return std::nullopt;
        }
    }
    if (ma.is_unit()) {
        if (auto it = q_.find({s, mx}); it != q_.end()) return it->second;
        switch (step_kind(p(), s, mx.degree)) {
        case InstabilityStep::Zero: return zero();
        case InstabilityStep::PthPower:
            return eta(ring_.reduce(
                AlgElement::monomial(ring_.algebra(), mx).pow(static_cast<unsigned>(p()))));
        case InstabilityStep::Unchanged: return std::nullopt;
        }
        return std::nullopt;
    }
    // Cartan across the tensor; a determined zero factor beats a missing one
    ExtElement acc;
    Monomial ua = dual_->algebra()->unit_monomial();
    Monomial ux = ring_.algebra()->unit_monomial();
    for (int i = 0; i <= s; ++i) {
        auto left = q_basis(i, ma, ux);
        auto right = q_basis(s - i, ua, mx);
        if ((left && left->is_zero()) || (right && right->is_zero())) continue;
        if (!left || !right) return std::nullopt;
        acc = add(acc, mul(*left, *right));
    }
    return acc;
}

std::optional<ExtElement> ExtendedModule::q(int s, const ExtElement& e) const {
    ExtElement acc;
    for (const auto& [key, c] : e.terms) {
        auto part = q_basis(s, key.first, key.second);
        if (!part) return std::nullopt;
        acc = add(acc, scale(*part, c));
    }
    return acc;
}

std::string ExtendedModule::str(const ExtElement& e) const {
    if (e.is_zero()) return "0";
    std::string out;
    for (const auto& [key, c] : e.terms) {
        if (!out.empty()) out += " + ";
        if (c != 1) out += std::to_string(c) + " ";
        out += key.first.is_unit() ? "1" : monomial_str(*dual_->algebra(), key.first);
        out += "⊗";
        out += key.second.is_unit() ? "1" : monomial_str(*ring_.algebra(), key.second);
    }
    return out;
}

ExtElement ExtMap::apply(const ExtElement& e) const {
    if (!domain || !codomain) throw DomainError("map endpoints are not set");
    const AlgebraPtr& A = domain->dual()->algebra();
    const AlgebraPtr& X = domain->ring().algebra();
    if (a_images.size() != A->gen_count() || x_images.size() != X->gen_count())
        throw DomainError("map image count does not match the generators");
    ExtElement out;
    for (const auto& [key, c] : e.terms) {
        ExtElement t = unit_image;
        for (size_t i = 0; i < A->gen_count(); ++i)
            for (int k = 0; k < key.first.exps[i]; ++k) t = codomain->mul(t, a_images[i]);
        for (size_t j = 0; j < X->gen_count(); ++j)
            for (int k = 0; k < key.second.exps[j]; ++k) t = codomain->mul(t, x_images[j]);
        out = codomain->add(out, codomain->scale(t, c));
    }
    return out;
}

ExtMap make_ext_map(const ExtendedModule& EX, const ExtendedModule& EY,
                    const std::vector<AlgElement>& phi_images) {
    ExtMap psi;
    psi.domain = &EX;
    psi.codomain = &EY;
    const AlgebraPtr& A = EX.dual()->algebra();
    for (size_t i = 0; i < A->gen_count(); ++i)
        psi.a_images.push_back(
            EY.elem(AlgElement::generator(A, i), AlgElement::unit(EY.ring().algebra())));
    for (const auto& img : phi_images)
        psi.x_images.push_back(EY.eta(img));
    psi.unit_image = EY.unit();
    return psi;
}

namespace {

// phi applied to an element of X, landing reduced in Y
AlgElement apply_ring_map(const Presentation& Y, const std::vector<AlgElement>& images,
                          const AlgElement& x) {
    return Y.reduce(substitute(x, Y.algebra(), images));
}

} // namespace

TransferReport extend_and_transfer(const ExtendedModule& EX, const ExtendedModule& EY,
                                   const std::vector<AlgElement>& phi_images, const ExtMap& psi,
                                   const std::vector<std::pair<int, AlgElement>>& q_pairs) {
    if (EX.dual() != EY.dual())
        throw DomainError("extended modules must share the dual algebra");
    if (psi.domain != &EX || psi.codomain != &EY)
        throw DomainError("psi endpoints do not match the given modules");
    if (!(psi.unit_image == EY.unit())) throw DomainError("psi is not unit-compatible");

    const Presentation& X = EX.ring();
    const Presentation& Y = EY.ring();
    const AlgebraPtr& A = EX.dual()->algebra();
    int p = X.p();

    TransferReport rep;
    auto push = [&](TransferStep st) {
        bool pass = st.pass;
        if (!pass && rep.failing_step.empty()) rep.failing_step = st.name;
        rep.steps.push_back(std::move(st));
        return pass;
    };

    // 1. phi is a bijective ring morphism
    {
        TransferStep st{"phi-ring-iso", "phi is a degreewise bijective ring morphism", true, "", ""};
        MorphismReport mr = check_morphism(X, Y, phi_images, false);
        if (!mr.ok()) {
            st.pass = false;
            st.lhs = mr.detail;
        }
        for (int d = 0; st.pass && d <= X.bound(); ++d) {
            std::vector<Monomial> basis = X.ideal().quotient_basis(d);
            std::vector<Monomial> ybasis = Y.ideal().quotient_basis(d);
            if (basis.size() != ybasis.size()) {
                st.pass = false;
                st.lhs = "dimension mismatch in degree " + std::to_string(d);
                break;
            }
            if (basis.empty()) continue;
            std::map<Monomial, size_t> pos;
            for (size_t i = 0; i < ybasis.size(); ++i) pos[ybasis[i]] = i;
            FpMatrix M(p, ybasis.size());
            for (const Monomial& m : basis) {
                AlgElement img =
                    apply_ring_map(Y, phi_images, AlgElement::monomial(X.algebra(), m));
                std::vector<int> row(ybasis.size(), 0);
                for (const auto& [mt, c] : img.terms()) row[pos.at(mt)] = c;
                M.add_row(std::move(row));
            }
            M.rref();
            if (M.rank() != basis.size()) {
                st.pass = false;
                st.lhs = "not invertible in degree " + std::to_string(d);
            }
        }
        if (!push(std::move(st))) return rep;
    }

    // 2. psi respects the unit
    {
        ExtElement v = psi.apply(EX.unit());
        TransferStep st{"psi-unit", "psi(1⊗1) = 1⊗1", v == EY.unit(), EY.str(v),
                        EY.str(EY.unit())};
        if (!push(std::move(st))) return rep;
    }

    // 3. psi commutes with the operations on every determined A (x) 1 pair
    {
        TransferStep st{"psi-q-equivariance", "", true, "", ""};
        int checked = 0, skipped = 0;
        for (const auto& te : EX.dual()->table()) {
            if (te.side != EX.side() || te.word.length() != 1 || te.word.f[0].eps != 0) continue;
            int s = te.word.f[0].idx;
            ExtElement garg =
                EX.elem(AlgElement::generator(A, te.gen_index), AlgElement::unit(X.algebra()));
            auto lhs = EX.q(s, garg);
            if (!lhs) {
                ++skipped;
                continue;
            }
            auto rhs = EY.q(s, psi.apply(garg));
            if (!rhs) {
                ++skipped;
                continue;
            }
            ExtElement lv = psi.apply(*lhs);
            ++checked;
            if (!(lv == *rhs)) {
                st.pass = false;
                st.statement = "psi(Q^" + std::to_string(s) + "(" + A->gen(te.gen_index).name +
                               "⊗1)) = Q^" + std::to_string(s) + "(psi(" +
                               A->gen(te.gen_index).name + "⊗1))";
                st.lhs = EY.str(lv);
                st.rhs = EY.str(*rhs);
                break;
            }
        }
        if (st.pass)
            st.statement = "psi commutes with the operations on A⊗1 (" +
                           std::to_string(checked) + " determined pairs, " +
                           std::to_string(skipped) + " undetermined skipped)";
        if (!push(std::move(st))) return rep;
    }

    // 4. psi restricted along eta_X agrees with eta_Y after phi
    {
        TransferStep st{"psi∘eta_X = eta_Y∘phi", "psi(1⊗x) = 1⊗phi(x) on ring generators",
                        true, "", ""};
        for (size_t j = 0; j < X.algebra()->gen_count(); ++j) {
            ExtElement lv = psi.apply(EX.eta(AlgElement::generator(X.algebra(), j)));
            ExtElement rv = EY.eta(Y.reduce(phi_images[j]));
            if (!(lv == rv)) {
                st.pass = false;
                st.statement = "psi(1⊗" + X.algebra()->gen(j).name + ") = 1⊗phi(" +
                               X.algebra()->gen(j).name + ")";
                st.lhs = EY.str(lv);
                st.rhs = EY.str(rv);
                break;
            }
        }
        if (!push(std::move(st))) return rep;
    }

    // 5. mu is a retraction of eta on both modules
    {
        TransferStep st{"mu∘eta = id", "mu(eta(x)) = x on the quotient bases", true, "", ""};
        auto check = [&](const ExtendedModule& E) {
            const Presentation& R = E.ring();
            for (int d = 0; d <= R.bound() && st.pass; ++d)
                for (const Monomial& m : R.ideal().quotient_basis(d)) {
                    AlgElement x = AlgElement::monomial(R.algebra(), m);
                    AlgElement back = E.mu(E.eta(x));
                    if (!(back == x)) {
                        st.pass = false;
                        st.lhs = back.str();
                        st.rhs = x.str();
                        break;
                    }
                }
        };
        check(EX);
        if (st.pass) check(EY);
        if (!push(std::move(st))) return rep;
    }

    // 6. the degree-one class of A dies under mu_Y after psi
    {
        std::optional<size_t> g1;
        for (size_t i = 0; i < A->gen_count(); ++i)
            if (A->gen(i).degree == 1) g1 = i;
        if (!g1) throw DomainError("dual truncation lacks the degree-one generator");
        const std::string& gname = A->gen(*g1).name;
        AlgElement v = EY.mu(
            psi.apply(EX.elem(AlgElement::generator(A, *g1), AlgElement::unit(X.algebra()))));
        TransferStep st{"mu_Y∘psi(" + gname + "⊗1) = 0",
                        "pi_1(Y) has dimension " + std::to_string(Y.ideal().quotient_dim(1)) +
                            "; the image of the degree-one class must vanish",
                        v.is_zero(), v.str(), "0"};
        if (!push(std::move(st))) return rep;
    }

    // 7. mu_Y after psi kills every positive-degree generator of A
    {
        TransferStep st{"mu_Y∘psi positive-degree vanishing",
                        "the degree-one case generates A over the operations, so the"
                        " composite kills all of A in positive degrees",
                        true, "", ""};
        for (size_t i = 0; i < A->gen_count(); ++i) {
            if (A->gen(i).degree == 0) continue;
            AlgElement v = EY.mu(
                psi.apply(EX.elem(AlgElement::generator(A, i), AlgElement::unit(X.algebra()))));
            if (!v.is_zero()) {
                st.pass = false;
                st.statement = "mu_Y∘psi(" + A->gen(i).name + "⊗1) = 0";
                st.lhs = v.str();
                st.rhs = "0";
                break;
            }
        }
        if (!push(std::move(st))) return rep;
    }

    // 8. on A (x) 1 the operations are the dual algebra's, on both modules
    {
        TransferStep st{"q-propagation on A⊗1", "", true, "", ""};
        int checked = 0;
        auto check = [&](const ExtendedModule& E) {
            for (const auto& te : E.dual()->table()) {
                if (te.side != E.side() || te.word.length() != 1 || te.word.f[0].eps != 0)
                    continue;
                if (!st.pass) return;
                int s = te.word.f[0].idx;
                auto got = E.q(s, E.elem(AlgElement::generator(A, te.gen_index),
                                         AlgElement::unit(E.ring().algebra())));
                ExtElement want = E.elem(te.value, AlgElement::unit(E.ring().algebra()));
                ++checked;
                if (!got || !(*got == want)) {
                    st.pass = false;
                    st.statement = "Q^" + std::to_string(s) + "(" + A->gen(te.gen_index).name +
                                   "⊗1) = (Q^" + std::to_string(s) + " " +
                                   A->gen(te.gen_index).name + ")⊗1";
                    st.lhs = got ? E.str(*got) : "undetermined";
                    st.rhs = E.str(want);
                }
            }
        };
        check(EX);
        if (st.pass) check(EY);
        if (st.pass)
            st.statement = "operations on A⊗1 are the dual algebra's (" +
                           std::to_string(checked) + " table rows)";
        if (!push(std::move(st))) return rep;
    }

    // 9. the bottom square commutes on the full tensor basis
    {
        TransferStep st{"bottom-square", "mu_Y∘psi = phi∘mu_X on the tensor basis", true,
                        "", ""};
        for (int da = 0; da <= EX.dual()->bound() && st.pass; ++da) {
            for (const Monomial& ma : A->basis(da)) {
                if (!st.pass) break;
                for (int dx = 0; dx <= X.bound() && st.pass; ++dx) {
                    for (const Monomial& mx : X.ideal().quotient_basis(dx)) {
                        ExtElement e = EX.elem(AlgElement::monomial(A, ma),
                                               AlgElement::monomial(X.algebra(), mx));
                        if (e.is_zero()) continue;
                        AlgElement lv = EY.mu(psi.apply(e));
                        AlgElement rv = apply_ring_map(Y, phi_images, EX.mu(e));
                        if (!(lv == rv)) {
                            st.pass = false;
                            st.statement = "mu_Y∘psi = phi∘mu_X at " + EX.str(e);
                            st.lhs = lv.str();
                            st.rhs = rv.str();
                            break;
                        }
                    }
                }
            }
        }
        if (!push(std::move(st))) return rep;
    }

    // 10. the transfer chain, one recorded or requested operation at a time
    std::vector<std::pair<int, AlgElement>> pairs = q_pairs;
    if (pairs.empty())
        for (const QRecord& rec : X.q_records())
            if (rec.eps == 0)
                pairs.emplace_back(rec.s, AlgElement::monomial(X.algebra(), rec.arg));
    for (const auto& [s, x] : pairs) {
        AlgElement xr = X.reduce(x);
        if (!xr.is_homogeneous()) throw DomainError("transfer argument must be homogeneous");
        std::string tag = " [Q^" + std::to_string(s) + ", " + xr.str() + "]";
        AlgElement fx = apply_ring_map(Y, phi_images, xr);
        auto vX = resolve_q(X, 0, s, xr);
        auto vY = resolve_q(Y, 0, s, fx);
        auto e1 = EX.q(s, EX.eta(xr));
        auto e2 = EY.q(s, EY.eta(fx));
        {
            TransferStep st{"q-transfer c1" + tag,
                            "Q^s(1⊗x), Q^s(1⊗phi x), Q^s x, and Q^s phi(x) are determined",
                            static_cast<bool>(e1) && static_cast<bool>(e2) &&
                                static_cast<bool>(vX) && static_cast<bool>(vY),
                            "", ""};
            if (!st.pass)
                st.lhs = std::string(e1 ? "" : "Q^s(1⊗x) ") + (e2 ? "" : "Q^s(1⊗phi x) ") +
                         (vX ? "" : "Q^s x ") + (vY ? "" : "Q^s phi(x) ") + "undetermined";
            if (!push(std::move(st))) return rep;
        }
        {
            AlgElement lv = EX.mu(*e1);
            TransferStep st{"q-transfer c2" + tag, "mu_X(Q^s(1⊗x)) = Q^s x",
                            lv == *vX, lv.str(), vX->str()};
            if (!push(std::move(st))) return rep;
        }
        {
            AlgElement lv = apply_ring_map(Y, phi_images, EX.mu(*e1));
            AlgElement rv = EY.mu(psi.apply(*e1));
            TransferStep st{"q-transfer c3" + tag, "phi(mu_X(Q^s(1⊗x))) = mu_Y(psi(Q^s(1⊗x)))",
                            lv == rv, lv.str(), rv.str()};
            if (!push(std::move(st))) return rep;
        }
        {
            ExtElement lv = psi.apply(*e1);
            TransferStep st{"q-transfer c4" + tag, "psi(Q^s(1⊗x)) = Q^s(1⊗phi x)",
                            lv == *e2, EY.str(lv), EY.str(*e2)};
            if (!push(std::move(st))) return rep;
        }
        {
            AlgElement lv = EY.mu(*e2);
            TransferStep st{"q-transfer c5" + tag, "mu_Y(Q^s(1⊗phi x)) = Q^s phi(x)",
                            lv == *vY, lv.str(), vY->str()};
            if (!push(std::move(st))) return rep;
        }
        {
            AlgElement lv = apply_ring_map(Y, phi_images, *vX);
            TransferStep st{"q-transfer" + tag, "phi(Q^s x) = Q^s phi(x)", lv == *vY, lv.str(),
                            vY->str()};
            if (!push(std::move(st))) return rep;
        }
    }

    rep.certificate = true;
    return rep;
}

} // namespace dlops
