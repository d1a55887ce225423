#include "core/presentation.hpp"

#include <string>

#include "core/errors.hpp"
#include "core/fp_util.hpp"
#include "core/opexpr.hpp"
#include "core/tormod.hpp"

namespace dlops {

namespace {

int op_degree(int p, int eps, int s) { return p == 2 ? s : 2 * s * (p - 1) - eps; }

InstabilityStep::Kind step_kind(int p, int eps, int s, int degree) {
    OpWord w{OpSeq{{OpFactor{eps, s}}}, Atom{"x", degree}};
    return instability_rewrite(p, w).kind;
}

void check_eps(int p, int eps) {
    if (eps != 0 && eps != 1) throw DomainError("operation decoration must be 0 or 1");
    if (p == 2 && eps != 0) throw DomainError("no decorated operations at p = 2");
}

AlgElement monomial_elem(const AlgebraPtr& alg, const Monomial& m) {
    return AlgElement::monomial(alg, m);
}

// Generator images for dropping everything above the target bound.
std::vector<AlgElement> truncation_images(const AlgebraPtr& from, const AlgebraPtr& to) {
    std::vector<AlgElement> images;
    images.reserve(from->gen_count());
    for (const auto& g : from->gens()) {
        if (g.degree <= to->bound()) images.push_back(AlgElement::generator(to, g.name));
        else images.push_back(AlgElement::zero(to));
    }
    return images;
}

// Partial resolution value; missing means no determination, not zero.
struct Res {
    bool missing = false;
    AlgElement value;
};

// One generator with exponent 1: truncation, instability, then the records.
Res res_single(const Presentation& P, int eps, int s, size_t g) {
    const AlgebraPtr& alg = P.algebra();
    int p = P.p();
    int d = alg->gen(g).degree;
    if (d + op_degree(p, eps, s) > P.bound()) return {false, AlgElement::zero(alg)};
    switch (step_kind(p, eps, s, d)) {
    case InstabilityStep::Zero: return {false, AlgElement::zero(alg)};
    case InstabilityStep::PthPower:
        return {false, P.reduce(AlgElement::generator(alg, g).pow(static_cast<unsigned>(p)))};
    case InstabilityStep::Unchanged: break;
    }
    Monomial gm = alg->unit_monomial();
    gm.exps[g] = 1;
    gm.degree = d;
    if (auto hit = P.lookup_q(eps, s, gm)) return {false, *hit};
    return {true, AlgElement::zero(alg)};
}

// beta^eps Q^s on gen^e: sum over multisets u_1 <= ... <= u_e with sum s of
// (orderings of the multiset mod p) * prod_j Q^{u_j} gen, with the Bockstein
// landing on one factor at a time when decorated.  Vanishing multinomial
// coefficients are skipped before any value is consulted, so symmetric
// cancellation never depends on unknown entries; within a surviving term a
// determined zero factor beats a missing one.
Res res_block(const Presentation& P, int eps, int s, size_t g, int e) {
    if (e == 1) return res_single(P, eps, s, g);
    const AlgebraPtr& alg = P.algebra();
    // exponents >= 2 force an even-degree (polynomial) generator, so the
    // decorated rule needs no signs inside the block
    AlgElement total = AlgElement::zero(alg);
    bool missing = false;
    std::vector<int> parts;
    auto emit = [&](int coeff) {
        size_t variants = eps == 0 ? 1 : parts.size();
        for (size_t t = 0; t < variants; ++t) {
            AlgElement prod = AlgElement::unit(alg, coeff);
            bool term_missing = false;
            for (size_t j = 0; j < parts.size(); ++j) {
                Res r = res_single(P, eps != 0 && j == t ? 1 : 0, parts[j], g);
                if (r.missing) {
                    term_missing = true;
                    continue;
                }
                if (r.value.is_zero()) {
                    term_missing = false;
                    prod = AlgElement::zero(alg);
                    break;
                }
                prod = prod * r.value;
            }
            if (term_missing) missing = true;
            else total = total + prod;
        }
    };
    auto rec = [&](auto&& self, int remaining, int minimum, int slots) -> void {
        if (slots == 0) {
            if (remaining != 0) return;
            std::vector<int> mult;
            for (size_t i = 0; i < parts.size();) {
                size_t j = i;
                while (j < parts.size() && parts[j] == parts[i]) ++j;
                mult.push_back(static_cast<int>(j - i));
                i = j;
            }
            int coeff = multinomial_mod(mult, P.p());
            if (coeff != 0) emit(coeff);
            return;
        }
        for (int u = minimum; u * slots <= remaining; ++u) {
            parts.push_back(u);
            self(self, remaining - u, u, slots - 1);
            parts.pop_back();
        }
    };
    rec(rec, s, 0, e);
    if (missing) return {true, AlgElement::zero(alg)};
    return {false, total};
}

// Cartan rule over the generator-power blocks of a monomial, multiplied in
// canonical order (no reordering, hence no sign corrections beyond the
// derivation signs of a decorated operation crossing earlier blocks).
Res res_monomial(const Presentation& P, int eps, int s, const Monomial& m) {
    const AlgebraPtr& alg = P.algebra();
    std::vector<std::pair<size_t, int>> blocks;
    for (size_t i = 0; i < m.exps.size(); ++i)
        if (m.exps[i] > 0) blocks.emplace_back(i, m.exps[i]);
    if (blocks.size() == 1) return res_block(P, eps, s, blocks[0].first, blocks[0].second);
    AlgElement total = AlgElement::zero(alg);
    bool missing = false;
    std::vector<int> split(blocks.size(), 0);
    auto emit = [&]() {
        size_t variants = eps == 0 ? 1 : blocks.size();
        for (size_t t = 0; t < variants; ++t) {
            int sign = 1;
            if (eps != 0)
                for (size_t u = 0; u < t; ++u)
                    if ((blocks[u].second * alg->gen(blocks[u].first).degree) % 2 != 0)
                        sign = -sign;
            AlgElement prod = AlgElement::unit(alg, sign);
            bool term_missing = false;
            for (size_t k = 0; k < blocks.size(); ++k) {
                Res r = res_block(P, eps != 0 && k == t ? 1 : 0, split[k], blocks[k].first,
                                  blocks[k].second);
                if (r.missing) {
                    term_missing = true;
                    continue;
                }
                if (r.value.is_zero()) {
                    term_missing = false;
                    prod = AlgElement::zero(alg);
                    break;
                }
                prod = prod * r.value;
            }
            if (term_missing) missing = true;
            else total = total + prod;
        }
    };
    auto rec = [&](auto&& self, size_t bi, int remaining) -> void {
        if (bi + 1 == blocks.size()) {
            split[bi] = remaining;
            emit();
            return;
        }
        for (int t = 0; t <= remaining; ++t) {
            split[bi] = t;
            self(self, bi + 1, remaining - t);
        }
    };
    rec(rec, 0, s);
    if (missing) return {true, AlgElement::zero(alg)};
    return {false, total};
}

std::optional<AlgElement> resolve_term(const Presentation& P, int eps, int s, const Monomial& m) {
    const AlgebraPtr& alg = P.algebra();
    int p = P.p();
    if (m.is_unit()) {
        if (eps == 0 && s == 0) return AlgElement::unit(alg);
        return AlgElement::zero(alg);
    }
    if (m.degree + op_degree(p, eps, s) > P.bound()) return AlgElement::zero(alg);
    switch (step_kind(p, eps, s, m.degree)) {
    case InstabilityStep::Zero: return AlgElement::zero(alg);
    case InstabilityStep::PthPower:
        return P.reduce(monomial_elem(alg, m).pow(static_cast<unsigned>(p)));
    case InstabilityStep::Unchanged: break;
    }
    if (auto hit = P.lookup_q(eps, s, m)) return hit;
    Res r = res_monomial(P, eps, s, m);
    if (r.missing) return std::nullopt;
    return P.reduce(r.value);
}

} // namespace

std::string q_record_str(const Algebra& alg, int eps, int s, const Monomial& arg) {
    std::string out = eps ? "b Q^" : "Q^";
    out += std::to_string(s);
    out += " ";
    out += monomial_str(alg, arg);
    return out;
}

Presentation::Presentation(AlgebraPtr alg, std::vector<AlgElement> relations)
    : alg_(std::move(alg)), ideal_(alg_, relations) {}

void Presentation::record_q(int eps, int s, const AlgElement& arg, const AlgElement& value) {
    check_eps(p(), eps);
    if (!arg.attached() || arg.algebra() != alg_)
        throw DomainError("record argument is not in the presentation's algebra");
    if (!value.attached() || value.algebra() != alg_)
        throw DomainError("record value is not in the presentation's algebra");
    if (arg.term_count() != 1 || arg.terms().begin()->second != 1)
        throw DomainError("record argument must be a single monomial with coefficient 1");
    Monomial m = arg.terms().begin()->first;
    if (m.is_unit()) throw DomainError("operations on the unit are already determined");
    if (reduce(arg) != arg) throw DomainError("record argument must be in reduced form");
    int target = m.degree + op_degree(p(), eps, s);
    if (target > bound())
        throw DomainError("recorded operation " + q_record_str(*alg_, eps, s, m) +
                          " lands above the bound");
    AlgElement v = reduce(value);
    if (!v.is_zero() && (!v.is_homogeneous() || *v.degree() != target))
        throw DomainError("recorded value of " + q_record_str(*alg_, eps, s, m) +
                          " has the wrong degree");
    switch (step_kind(p(), eps, s, m.degree)) {
    case InstabilityStep::Zero:
        if (!v.is_zero())
            throw DomainError("recorded value of " + q_record_str(*alg_, eps, s, m) +
                              " contradicts the instability axioms");
        return; // forced, nothing to store
    case InstabilityStep::PthPower:
        if (v != reduce(arg.pow(static_cast<unsigned>(p()))))
            throw DomainError("recorded value of " + q_record_str(*alg_, eps, s, m) +
                              " contradicts the p-th power rule");
        return;
    case InstabilityStep::Unchanged: break;
    }
    auto key = std::make_tuple(eps, s, m);
    auto it = q_.find(key);
    if (it != q_.end()) {
        if (it->second != v)
            throw DomainError("conflicting recorded values for " + q_record_str(*alg_, eps, s, m));
        return;
    }
    q_.emplace(std::move(key), std::move(v));
}

void Presentation::record_q(int eps, int s, const std::string& gen_name, const AlgElement& value) {
    auto gi = alg_->gen_index(gen_name);
    if (!gi) throw DomainError("unknown generator " + gen_name);
    record_q(eps, s, AlgElement::generator(alg_, *gi), value);
}

std::optional<AlgElement> Presentation::lookup_q(int eps, int s, const Monomial& arg) const {
    auto it = q_.find(std::make_tuple(eps, s, arg));
    if (it == q_.end()) return std::nullopt;
    return it->second;
}

std::vector<QRecord> Presentation::q_records() const {
    std::vector<QRecord> out;
    out.reserve(q_.size());
    for (const auto& [key, value] : q_)
        out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), value});
    return out;
}

std::optional<AlgElement> resolve_q(const Presentation& P, int eps, int s, const AlgElement& x) {
    if (!x.attached() || x.algebra() != P.algebra())
        throw DomainError("element is not in the presentation's algebra");
    check_eps(P.p(), eps);
    AlgElement acc = AlgElement::zero(P.algebra());
    AlgElement xr = P.reduce(x);
    for (const auto& [m, c] : xr.terms()) {
        auto r = resolve_term(P, eps, s, m);
        if (!r) return std::nullopt;
        acc = acc + r->scaled(c);
    }
    return P.reduce(acc);
}

Presentation postnikov_truncate(const Presentation& P, int n) {
    if (n < 0) throw DomainError("truncation degree must be non-negative");
    if (n > P.bound()) throw BoundError("truncation degree exceeds the declared bound");
    const AlgebraPtr& A = P.algebra();
    std::vector<GeneratorSpec> gens;
    for (const auto& g : A->gens())
        if (g.degree <= n) gens.push_back(g);
    AlgebraPtr B = Algebra::make(P.p(), n, gens);
    std::vector<AlgElement> images = truncation_images(A, B);
    std::vector<AlgElement> rels;
    for (const auto& r : P.ideal().relations()) {
        if (r.is_zero() || *r.degree() > n) continue;
        rels.push_back(substitute(r, B, images));
    }
    Presentation out(B, rels);
    for (const auto& rec : P.q_records()) {
        if (rec.arg.degree > n) continue;
        if (rec.arg.degree + op_degree(P.p(), rec.eps, rec.s) > n) continue;
        AlgElement arg2 = substitute(monomial_elem(A, rec.arg), B, images);
        out.record_q(rec.eps, rec.s, arg2, substitute(rec.value, B, images));
    }
    return out;
}

Presentation truncated_dual(const SteenrodDual& D, Side side, int n) {
    if (n < 0) throw DomainError("truncation degree must be non-negative");
    if (n > D.bound()) throw BoundError("truncation degree exceeds the table bound");
    const AlgebraPtr& A = D.algebra();
    std::vector<GeneratorSpec> gens;
    for (const auto& g : A->gens())
        if (g.degree <= n) gens.push_back(g);
    AlgebraPtr B = Algebra::make(D.p(), n, gens);
    std::vector<AlgElement> images = truncation_images(A, B);
    Presentation out(B);
    for (const auto& e : D.table()) {
        if (e.side != side || e.word.length() != 1) continue;
        const OpFactor& f = e.word.f[0];
        const GeneratorSpec& g = A->gen(e.gen_index);
        if (g.degree > n) continue;
        if (g.degree + op_degree(D.p(), f.eps, f.idx) > n) continue;
        out.record_q(f.eps, f.idx, AlgElement::generator(B, g.name), substitute(e.value, B, images));
    }
    return out;
}

Presentation kill_element(const Presentation& P, const AlgElement& x) {
    if (!x.attached() || x.algebra() != P.algebra())
        throw DomainError("element is not in the presentation's algebra");
    AlgElement xr = P.reduce(x);
    if (xr.is_zero()) throw DomainError("cannot attach a cell along zero");
    if (!xr.is_homogeneous()) throw DomainError("cell attachment needs a homogeneous element");
    int n = *xr.degree();
    if (n < 1) throw DomainError("cell attachment needs positive degree");
    if (P.ideal().quotient_dim(0) != 1)
        throw DomainError("cell attachment needs a one-dimensional degree 0");
    for (int d = n + 1; d <= P.bound(); ++d)
        if (P.ideal().quotient_dim(d) != 0)
            throw DomainError("attached element must sit in the top nonzero degree");

    // multiplication by x makes the quotient a module over the exterior
    // algebra on one degree-n generator; everything above n is zero
    int k_max = n, l_max = n;
    int top = l_max + (k_max + 1) * n;
    std::vector<size_t> dims(static_cast<size_t>(top) + 1, 0);
    for (int d = 0; d <= n; ++d) dims[d] = P.ideal().quotient_dim(d);
    std::vector<std::vector<std::vector<int>>> action(static_cast<size_t>(top) + 1);
    for (int d = 0; d + n <= n; ++d) {
        auto dom = P.ideal().quotient_basis(d);
        auto cod = P.ideal().quotient_basis(d + n);
        if (dom.empty() || cod.empty()) continue;
        std::map<Monomial, size_t> pos;
        for (size_t i = 0; i < cod.size(); ++i) pos[cod[i]] = i;
        std::vector<std::vector<int>> mat(cod.size(), std::vector<int>(dom.size(), 0));
        for (size_t j = 0; j < dom.size(); ++j) {
            AlgElement im = P.reduce(xr * monomial_elem(P.algebra(), dom[j]));
            for (const auto& [mono, c] : im.terms()) mat[pos.at(mono)][j] = c;
        }
        action[d] = std::move(mat);
    }
    ExteriorModule M(P.p(), n, dims, action);
    auto tor = tor_exterior(M, k_max, l_max);
    for (int k = 1; k <= k_max; ++k)
        for (int l = 0; k + l <= n; ++l)
            if (tor[k][l] != 0)
                throw DomainError("cell attachment obstructed: Tor_{" + std::to_string(k) + "," +
                                  std::to_string(l) + "} is nonzero");

    Presentation T = postnikov_truncate(P, n);
    const AlgebraPtr& B = T.algebra();
    std::vector<AlgElement> rels = T.ideal().relations();
    rels.push_back(substitute(xr, B, truncation_images(P.algebra(), B)));
    Presentation out(B, rels);

    // the quotient dimensions must match the resolution bookkeeping
    for (int l = 0; l <= n; ++l)
        if (out.ideal().quotient_dim(l) != tor[0][l])
            throw EngineError("cell attachment: quotient dimensions disagree with the "
                              "resolution bookkeeping in degree " +
                              std::to_string(l));

    // carry recorded operations, re-reduced against the larger ideal
    for (const auto& rec : T.q_records()) {
        AlgElement arg_red = out.reduce(monomial_elem(B, rec.arg));
        if (arg_red.is_zero() || arg_red.term_count() != 1) continue;
        auto [m2, c2] = *arg_red.terms().begin();
        AlgElement v2 = out.reduce(rec.value).scaled(inv_mod(c2, P.p()));
        out.record_q(rec.eps, rec.s, monomial_elem(B, m2), v2);
    }
    return out;
}

MorphismReport check_morphism(const Presentation& X, const Presentation& Y,
                              const std::vector<AlgElement>& images, bool use_q) {
    if (X.p() != Y.p()) throw DomainError("presentations have different primes");
    if (X.bound() != Y.bound()) throw DomainError("presentations have different bounds");
    const AlgebraPtr& A = X.algebra();
    const AlgebraPtr& B = Y.algebra();
    if (images.size() != A->gen_count()) throw DomainError("one image per generator required");
    for (size_t i = 0; i < images.size(); ++i) {
        const AlgElement& im = images[i];
        if (!im.attached() || im.algebra() != B)
            throw DomainError("image of " + A->gen(i).name + " is not in the target algebra");
        if (!im.is_zero() && (!im.is_homogeneous() || *im.degree() != A->gen(i).degree))
            throw DomainError("image of " + A->gen(i).name + " does not preserve degree");
    }
    for (const auto& r : X.ideal().relations()) {
        AlgElement rr = Y.reduce(substitute(r, B, images));
        if (!rr.is_zero())
            return {Verdict::Violation, "relation " + r.str() + " maps to " + rr.str()};
    }
    std::string undetermined;
    if (use_q) {
        for (const auto& rec : X.q_records()) {
            AlgElement farg = Y.reduce(substitute(monomial_elem(A, rec.arg), B, images));
            AlgElement want = Y.reduce(substitute(rec.value, B, images));
            auto got = resolve_q(Y, rec.eps, rec.s, farg);
            if (!got) {
                if (undetermined.empty())
                    undetermined = q_record_str(*A, rec.eps, rec.s, rec.arg) +
                                   " is undetermined in the target";
                continue;
            }
            if (*got != want)
                return {Verdict::Violation, q_record_str(*A, rec.eps, rec.s, rec.arg) +
                                                " should map to " + want.str() +
                                                " but the target operation gives " + got->str()};
        }
    }
    if (!undetermined.empty()) return {Verdict::Undetermined, undetermined};
    return {};
}

std::vector<Isomorphism> find_isomorphisms(const Presentation& X, const Presentation& Y, bool use_q,
                                           unsigned long long budget) {
    if (X.p() != Y.p()) throw DomainError("presentations have different primes");
    if (X.bound() != Y.bound()) throw DomainError("presentations have different bounds");
    const AlgebraPtr& A = X.algebra();
    const AlgebraPtr& B = Y.algebra();
    int p = X.p(), N = X.bound();
    for (int d = 0; d <= N; ++d)
        if (X.ideal().quotient_dim(d) != Y.ideal().quotient_dim(d)) return {};

    constexpr unsigned long long kSat = 1ull << 62;
    auto sat_mul = [](unsigned long long a, unsigned long long b) {
        if (a == 0 || b == 0) return 0ull;
        if (a > kSat / b) return kSat;
        return a * b;
    };
    // one coordinate slot per target-basis monomial per generator image
    std::vector<std::vector<Monomial>> target_basis;
    unsigned long long total = 1;
    for (size_t i = 0; i < A->gen_count(); ++i) {
        target_basis.push_back(Y.ideal().quotient_basis(A->gen(i).degree));
        for (size_t j = 0; j < target_basis.back().size(); ++j)
            total = sat_mul(total, static_cast<unsigned long long>(p));
    }
    if (total > budget)
        throw BudgetError("isomorphism search space of size " + std::to_string(total) +
                              " exceeds the budget of " + std::to_string(budget),
                          total);

    std::vector<std::vector<Monomial>> xbasis(N + 1), ybasis(N + 1);
    std::vector<std::map<Monomial, size_t>> ypos(N + 1);
    for (int d = 0; d <= N; ++d) {
        xbasis[d] = X.ideal().quotient_basis(d);
        ybasis[d] = Y.ideal().quotient_basis(d);
        for (size_t i = 0; i < ybasis[d].size(); ++i) ypos[d][ybasis[d][i]] = i;
    }
    auto y_coords = [&](const AlgElement& v, int d) {
        std::vector<int> out(ybasis[d].size(), 0);
        for (const auto& [m, c] : v.terms()) out[ypos[d].at(m)] = c;
        return out;
    };

    // flat odometer over coordinates, lexicographic from zero
    std::vector<std::pair<size_t, size_t>> slots; // (generator, basis position)
    for (size_t i = 0; i < target_basis.size(); ++i)
        for (size_t j = 0; j < target_basis[i].size(); ++j) slots.emplace_back(i, j);
    std::vector<int> digits(slots.size(), 0);

    std::vector<Isomorphism> found;
    while (true) {
        std::vector<AlgElement> images;
        for (size_t i = 0; i < target_basis.size(); ++i) images.push_back(AlgElement::zero(B));
        for (size_t t = 0; t < slots.size(); ++t)
            if (digits[t]) images[slots[t].first].add_term(target_basis[slots[t].first][slots[t].second], digits[t]);

        if (check_morphism(X, Y, images, use_q).ok()) {
            // per-degree invertibility, explicit inverse via [M | I] reduction
            bool invertible = true;
            std::vector<std::vector<std::vector<int>>> inv(N + 1);
            for (int d = 1; d <= N && invertible; ++d) {
                size_t k = xbasis[d].size();
                if (k == 0) continue;
                std::vector<std::vector<int>> cols(k);
                for (size_t j = 0; j < k; ++j)
                    cols[j] = y_coords(Y.reduce(substitute(monomial_elem(A, xbasis[d][j]), B, images)), d);
                FpMatrix aug(p, 2 * k);
                for (size_t r = 0; r < k; ++r) {
                    std::vector<int> row(2 * k, 0);
                    for (size_t j = 0; j < k; ++j) row[j] = cols[j][r];
                    row[k + r] = 1;
                    aug.add_row(std::move(row));
                }
                aug.rref();
                invertible = aug.rank() == k;
                for (size_t t = 0; t < aug.pivots().size() && invertible; ++t)
                    invertible = aug.pivots()[t] < k;
                if (!invertible) break;
                inv[d].assign(k, std::vector<int>(k, 0));
                for (size_t r = 0; r < k; ++r)
                    for (size_t j = 0; j < k; ++j) inv[d][r][j] = aug.rows()[r][k + j];
            }
            if (invertible) {
                std::vector<AlgElement> inv_images;
                bool solvable = true;
                for (size_t i = 0; i < B->gen_count() && solvable; ++i) {
                    int d = B->gen(i).degree;
                    AlgElement h = Y.reduce(AlgElement::generator(B, i));
                    size_t k = xbasis[d].size();
                    if (k == 0) {
                        solvable = h.is_zero();
                        inv_images.push_back(AlgElement::zero(A));
                        continue;
                    }
                    std::vector<int> e = y_coords(h, d);
                    AlgElement v = AlgElement::zero(A);
                    for (size_t r = 0; r < k; ++r) {
                        long long acc = 0;
                        for (size_t j = 0; j < k; ++j) acc += static_cast<long long>(inv[d][r][j]) * e[j];
                        if (int c = mod_p(acc, p)) v.add_term(xbasis[d][r], c);
                    }
                    inv_images.push_back(v);
                }
                if (solvable && check_morphism(Y, X, inv_images, use_q).ok()) {
                    bool composites = true;
                    for (size_t i = 0; i < A->gen_count() && composites; ++i) {
                        AlgElement g = AlgElement::generator(A, i);
                        composites = X.reduce(substitute(substitute(g, B, images), A, inv_images)) ==
                                     X.reduce(g);
                    }
                    for (size_t i = 0; i < B->gen_count() && composites; ++i) {
                        AlgElement h = AlgElement::generator(B, i);
                        composites = Y.reduce(substitute(substitute(h, A, inv_images), B, images)) ==
                                     Y.reduce(h);
                    }
                    if (composites) found.push_back({images, inv_images});
                }
            }
        }

        // advance the odometer
        size_t t = 0;
        while (t < digits.size()) {
            if (++digits[t] < p) break;
            digits[t] = 0;
            ++t;
        }
        if (t == digits.size()) break;
    }
    return found;
}

} // namespace dlops
