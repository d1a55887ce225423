#include "core/steenrod.hpp"

#include <algorithm>
#include <tuple>

#include "core/errors.hpp"
#include "core/fp_util.hpp"

namespace dlops {

std::string side_str(Side s) { return s == Side::Left ? "left" : "right"; }

namespace {

long long ipow(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

} // namespace

std::shared_ptr<SteenrodDual> SteenrodDual::make(int p, int bound) {
    if (!is_prime(p)) throw DomainError("characteristic must be prime");
    if (bound < 0) bound = 2 * p * p;
    auto dual = std::shared_ptr<SteenrodDual>(new SteenrodDual());
    dual->build(p, bound);
    return dual;
}

void SteenrodDual::build(int p, int bound) {
    p_ = p;
    N_ = bound;
    // Milnor generators within the bound, sorted by degree.
    struct G { std::string name; int degree; bool exterior; int kind; int index; };
    std::vector<G> gen_list;
    for (int r = 1;; ++r) {
        long long deg = p == 2 ? ipow(2, r) - 1 : 2 * (ipow(p, r) - 1);
        if (deg > N_) break;
        gen_list.push_back({"xi" + std::to_string(r), static_cast<int>(deg), false, 0, r});
    }
    if (p != 2) {
        for (int s = 0;; ++s) {
            long long deg = 2 * ipow(p, s) - 1;
            if (deg > N_) break;
            gen_list.push_back({"tau" + std::to_string(s), static_cast<int>(deg), true, 1, s});
        }
    }
    std::sort(gen_list.begin(), gen_list.end(),
              [](const G& a, const G& b) { return std::tie(a.degree, a.name) < std::tie(b.degree, b.name); });
    std::vector<GeneratorSpec> specs;
    for (const auto& g : gen_list) specs.push_back({g.name, g.degree, g.exterior});
    A_ = Algebra::make(p, N_, specs);
    int max_r = 0, max_s = -1;
    for (const auto& g : gen_list) {
        if (g.kind == 0) max_r = std::max(max_r, g.index);
        else max_s = std::max(max_s, g.index);
    }
    xi_idx_.assign(static_cast<size_t>(max_r) + 1, -1);
    tau_idx_.assign(static_cast<size_t>(max_s) + 1, -1);
    for (const auto& g : gen_list) {
        size_t idx = *A_->gen_index(g.name);
        if (g.kind == 0) xi_idx_[static_cast<size_t>(g.index)] = static_cast<int>(idx);
        else tau_idx_[static_cast<size_t>(g.index)] = static_cast<int>(idx);
    }

    // zeta_s = -(sum_{i<s} zeta_i xi_{s-i}^{p^i}); the series inverse.
    zeta_.push_back(AlgElement::unit(A_));
    for (int s = 1; s <= max_r; ++s) {
        AlgElement acc = AlgElement::zero(A_);
        for (int i = 0; i < s; ++i)
            acc = acc + zeta_[static_cast<size_t>(i)] *
                            xi(s - i).pow(static_cast<unsigned>(ipow(p, i)));
        zeta_.push_back(-acc);
    }
    if (p != 2) {
        // taubar_s = -tau_s - sum_{i<s} taubar_i xi_{s-i}^{p^i}.
        for (int s = 0; s <= max_s; ++s) {
            AlgElement acc = tau(s);
            for (int i = 0; i < s; ++i)
                acc = acc + taubar_[static_cast<size_t>(i)] *
                                xi(s - i).pow(static_cast<unsigned>(ipow(p, i)));
            taubar_.push_back(-acc);
        }
    }

    // Conjugate coordinate system.
    {
        std::vector<GeneratorSpec> ospecs;
        struct OG { std::string name; int degree; bool exterior; };
        std::vector<OG> olist;
        for (int r = 1; r <= max_r; ++r)
            olist.push_back({"zeta" + std::to_string(r), *zeta_[static_cast<size_t>(r)].degree(), false});
        for (int s = 0; s <= max_s; ++s)
            olist.push_back({"taubar" + std::to_string(s), *taubar_[static_cast<size_t>(s)].degree(), true});
        std::sort(olist.begin(), olist.end(),
                  [](const OG& a, const OG& b) { return std::tie(a.degree, a.name) < std::tie(b.degree, b.name); });
        for (const auto& g : olist) ospecs.push_back({g.name, g.degree, g.exterior});
        other_ = Algebra::make(p, N_, ospecs);
    }
    // xi_s = -(sum_{i=1..s} zeta_i xi_{s-i}^{p^i}) expressed purely in zeta.
    xi_in_zeta_.push_back(AlgElement::unit(other_));
    for (int s = 1; s <= max_r; ++s) {
        AlgElement acc = AlgElement::zero(other_);
        for (int i = 1; i <= s; ++i)
            acc = acc + AlgElement::generator(other_, "zeta" + std::to_string(i)) *
                            xi_in_zeta_[static_cast<size_t>(s - i)].pow(
                                static_cast<unsigned>(ipow(p, i)));
        xi_in_zeta_.push_back(-acc);
    }
    if (p != 2) {
        // tau_s = -taubar_s - sum_{i<s} taubar_i xi_{s-i}^{p^i} in conjugate terms.
        for (int s = 0; s <= max_s; ++s) {
            AlgElement acc = AlgElement::generator(other_, "taubar" + std::to_string(s));
            for (int i = 0; i < s; ++i)
                acc = acc + AlgElement::generator(other_, "taubar" + std::to_string(i)) *
                                xi_in_zeta_[static_cast<size_t>(s - i)].pow(
                                    static_cast<unsigned>(ipow(p, i)));
            tau_in_conj_.push_back(-acc);
        }
    }

    // Operation values on the generators.  p = 2: Q^{2^s-2} xi_1 = zeta_s on
    // the left and xi_s on the right; the s = 1 case is governed by the
    // instability axioms instead (Q^0 on a degree-1 class vanishes), so
    // entries start at s = 2.  Odd p, s >= 1, w_s = (p^s-1)/(p-1):
    //   left:  Q^{w_s} tau_0 = (-1)^s taubar_s,  b Q^{w_s} tau_0 = (-1)^s zeta_s;
    //   right: the chi-conjugate values, with the opposite sign.
    // Undecorated entries need tau_s within the bound; decorated ones only zeta_s.
    if (p == 2) {
        for (int s = 2; s <= max_r; ++s) {
            int op = static_cast<int>(ipow(2, s)) - 2;
            size_t x1 = static_cast<size_t>(xi_idx_[1]);
            install(Side::Left, OpSeq{{{0, op}}}, x1, zeta_[static_cast<size_t>(s)], "reference");
            install(Side::Right, OpSeq{{{0, op}}}, x1, xi(s), "reference");
        }
    } else if (max_s >= 0) {
        size_t t0 = static_cast<size_t>(tau_idx_[0]);
        for (int s = 1; s <= max_r; ++s) {
            int op = static_cast<int>((ipow(p, s) - 1) / (p - 1));
            int sign = s % 2 == 0 ? 1 : -1;
            if (s <= max_s) {
                install(Side::Left, OpSeq{{{0, op}}}, t0,
                        taubar_[static_cast<size_t>(s)].scaled(sign), "reference");
                install(Side::Right, OpSeq{{{0, op}}}, t0, tau(s).scaled(-sign), "derived");
            }
            install(Side::Left, OpSeq{{{1, op}}}, t0,
                    zeta_[static_cast<size_t>(s)].scaled(sign), "reference");
            install(Side::Right, OpSeq{{{1, op}}}, t0, xi(s).scaled(-sign), "derived");
        }
    }
}

void SteenrodDual::install(Side side, OpSeq w, size_t gen, AlgElement value, std::string prov) {
    table_.emplace(Key{side, w, gen}, value);
    entries_.push_back({side, std::move(w), gen, std::move(value), std::move(prov)});
}

AlgElement SteenrodDual::xi(int r) const {
    if (r == 0) return AlgElement::unit(A_);
    if (r < 0 || r >= static_cast<int>(xi_idx_.size()))
        throw BoundError("xi_" + std::to_string(r) + " exceeds the bound");
    return AlgElement::generator(A_, static_cast<size_t>(xi_idx_[static_cast<size_t>(r)]));
}

AlgElement SteenrodDual::tau(int s) const {
    if (p_ == 2) throw DomainError("tau generators exist only at odd primes");
    if (s < 0 || s >= static_cast<int>(tau_idx_.size()))
        throw BoundError("tau_" + std::to_string(s) + " exceeds the bound");
    return AlgElement::generator(A_, static_cast<size_t>(tau_idx_[static_cast<size_t>(s)]));
}

AlgElement SteenrodDual::zeta_in_xi(int r) const {
    if (r < 0 || r >= static_cast<int>(zeta_.size()))
        throw BoundError("zeta_" + std::to_string(r) + " exceeds the bound");
    return zeta_[static_cast<size_t>(r)];
}

AlgElement SteenrodDual::taubar_in_milnor(int s) const {
    if (p_ == 2) throw DomainError("taubar generators exist only at odd primes");
    if (s < 0 || s >= static_cast<int>(taubar_.size()))
        throw BoundError("taubar_" + std::to_string(s) + " exceeds the bound");
    return taubar_[static_cast<size_t>(s)];
}

AlgElement SteenrodDual::xi_in_zeta(int r) const {
    if (r < 0 || r >= static_cast<int>(xi_in_zeta_.size()))
        throw BoundError("xi_" + std::to_string(r) + " exceeds the bound");
    return xi_in_zeta_[static_cast<size_t>(r)];
}

AlgElement SteenrodDual::tau_in_conjugate(int s) const {
    if (p_ == 2) throw DomainError("tau generators exist only at odd primes");
    if (s < 0 || s >= static_cast<int>(tau_in_conj_.size()))
        throw BoundError("tau_" + std::to_string(s) + " exceeds the bound");
    return tau_in_conj_[static_cast<size_t>(s)];
}

AlgElement substitute(const AlgElement& x, const AlgebraPtr& target,
                      const std::vector<AlgElement>& images) {
    if (!x.attached()) throw DomainError("substitute of a detached element");
    if (images.size() != x.algebra()->gen_count())
        throw DomainError("substitute needs one image per generator");
    AlgElement out = AlgElement::zero(target);
    for (const auto& [m, c] : x.terms()) {
        AlgElement prod = AlgElement::unit(target, c);
        for (size_t i = 0; i < m.exps.size() && !prod.is_zero(); ++i)
            for (int e = 0; e < m.exps[i]; ++e) prod = prod * images[i];
        out = out + prod;
    }
    return out;
}

AlgElement SteenrodDual::chi(const AlgElement& x) const {
    if (x.algebra() != A_) throw DomainError("chi needs a Milnor-coordinate element");
    std::vector<AlgElement> images;
    images.reserve(A_->gen_count());
    for (size_t i = 0; i < A_->gen_count(); ++i) {
        const std::string& name = A_->gen(i).name;
        if (name.rfind("xi", 0) == 0)
            images.push_back(zeta_[static_cast<size_t>(std::stoi(name.substr(2)))]);
        else
            images.push_back(taubar_[static_cast<size_t>(std::stoi(name.substr(3)))]);
    }
    return substitute(x, A_, images);
}

AlgElement SteenrodDual::beta(const AlgElement& x) const {
    if (p_ == 2) throw DomainError("no Bockstein at p = 2");
    if (x.algebra() != A_) throw DomainError("beta needs a Milnor-coordinate element");
    AlgElement out = AlgElement::zero(A_);
    for (const auto& [m, c] : x.terms()) {
        int sign = 1; // parity of odd factors to the left of the current one
        for (size_t i = 0; i < m.exps.size(); ++i) {
            if (m.exps[i] == 0) continue;
            const auto& g = A_->gen(i);
            if (g.degree % 2 == 0) continue;
            // Exterior tau_s factor; beta(tau_s) = xi_s, zero for s = 0.
            int s = std::stoi(g.name.substr(3));
            if (s >= 1) {
                Monomial rest = m;
                rest.exps[i] = 0;
                rest.degree = m.degree - g.degree;
                out = out + AlgElement::monomial(A_, rest, c * sign) * xi(s);
            }
            sign = -sign;
        }
    }
    return out;
}

std::optional<AlgElement> SteenrodDual::lookup(Side side, const OpSeq& w, size_t gen) const {
    auto it = table_.find(Key{side, w, gen});
    if (it == table_.end()) return std::nullopt;
    return it->second;
}

SteenrodDual::QRes SteenrodDual::single_gen(Side side, int s, size_t gen) const {
    if (auto hit = lookup(side, OpSeq{{{0, s}}}, gen)) return {false, *hit, "", ""};
    const auto& g = A_->gen(gen);
    const int scaled = p_ == 2 ? s : 2 * s;
    if (scaled < g.degree) return {false, AlgElement::zero(A_), "", ""};
    if (scaled == g.degree)
        return {false, AlgElement::generator(A_, gen).pow(static_cast<unsigned>(p_)), "", ""};
    return {true, AlgElement::zero(A_), "Q^" + std::to_string(s), g.name};
}

SteenrodDual::QRes SteenrodDual::block_apply(Side side, int s, size_t gen, int e) const {
    // Q^s on gen^e: sum over multisets u_1 <= ... <= u_e with sum s of
    // (orderings of the multiset mod p) * prod_j Q^{u_j} gen.
    AlgElement total = AlgElement::zero(A_);
    std::optional<std::pair<std::string, std::string>> missing;
    std::vector<int> parts;
    auto rec = [&](auto&& self, int remaining, int minimum, int slots) -> void {
        if (slots == 0) {
            if (remaining != 0) return;
            std::vector<int> mult; // multiplicities of the distinct parts
            for (size_t i = 0; i < parts.size();) {
                size_t j = i;
                while (j < parts.size() && parts[j] == parts[i]) ++j;
                mult.push_back(static_cast<int>(j - i));
                i = j;
            }
            int coeff = multinomial_mod(mult, p_);
            if (coeff == 0) return; // skip before touching any table entry
            AlgElement prod = AlgElement::unit(A_, coeff);
            bool term_missing = false;
            std::pair<std::string, std::string> term_what;
            for (int u : parts) {
                QRes r = single_gen(side, u, gen);
                if (r.missing) {
                    term_missing = true;
                    term_what = {r.miss_word, r.miss_gen};
                    continue; // a later zero factor may still kill the term
                }
                if (r.value.is_zero()) {
                    term_missing = false;
                    prod = AlgElement::zero(A_);
                    break;
                }
                prod = prod * r.value;
            }
            if (term_missing) {
                if (!missing) missing = term_what;
                return;
            }
            total = total + prod;
            return;
        }
        // parts are non-decreasing, so the current one is at most remaining/slots.
        for (int u = minimum; u * slots <= remaining; ++u) {
            parts.push_back(u);
            self(self, remaining - u, u, slots - 1);
            parts.pop_back();
        }
    };
    rec(rec, s, 0, e);
    if (missing) return {true, AlgElement::zero(A_), missing->first, missing->second};
    return {false, total, "", ""};
}

SteenrodDual::QRes SteenrodDual::apply_q(Side side, int s, const AlgElement& x) const {
    AlgElement total = AlgElement::zero(A_);
    std::optional<std::pair<std::string, std::string>> missing;
    for (const auto& [m, c] : x.terms()) {
        if (m.is_unit()) {
            if (s == 0) total = total + AlgElement::unit(A_, c);
            continue;
        }
        // Cartan over the generator-power blocks of the monomial, multiplied
        // in canonical order (no reordering, hence no sign corrections).
        std::vector<std::pair<size_t, int>> blocks;
        for (size_t i = 0; i < m.exps.size(); ++i)
            if (m.exps[i] > 0) blocks.emplace_back(i, m.exps[i]);
        AlgElement mono_total = AlgElement::zero(A_);
        bool mono_missing = false;
        std::pair<std::string, std::string> mono_what;
        std::vector<int> split(blocks.size(), 0);
        auto rec = [&](auto&& self, size_t bi, int remaining) -> void {
            if (bi + 1 == blocks.size()) {
                split[bi] = remaining;
                AlgElement prod = AlgElement::unit(A_);
                bool term_missing = false;
                std::pair<std::string, std::string> term_what;
                for (size_t k = 0; k < blocks.size(); ++k) {
                    QRes r = block_apply(side, split[k], blocks[k].first, blocks[k].second);
                    if (r.missing) {
                        term_missing = true;
                        term_what = {r.miss_word, r.miss_gen};
                        continue;
                    }
                    if (r.value.is_zero()) {
                        term_missing = false;
                        prod = AlgElement::zero(A_);
                        break;
                    }
                    prod = prod * r.value;
                }
                if (term_missing) {
                    mono_missing = true;
                    mono_what = term_what;
                } else {
                    mono_total = mono_total + prod;
                }
                return;
            }
            for (int t = 0; t <= remaining; ++t) {
                split[bi] = t;
                self(self, bi + 1, remaining - t);
            }
        };
        rec(rec, 0, s);
        if (mono_missing) {
            if (!missing) missing = mono_what;
            continue;
        }
        total = total + mono_total.scaled(c);
    }
    if (missing) return {true, AlgElement::zero(A_), missing->first, missing->second};
    return {false, total, "", ""};
}

SteenrodDual::QRes SteenrodDual::apply_factor(Side side, OpFactor op, const AlgElement& x) const {
    // Single-generator fast path through the table, covering decorated
    // entries whose undecorated value may exceed the bound.
    if (x.term_count() == 1) {
        const auto& [m, c] = *x.terms().begin();
        size_t gen = 0;
        int nnz = 0, exp = 0;
        for (size_t i = 0; i < m.exps.size(); ++i)
            if (m.exps[i] > 0) { gen = i; exp = m.exps[i]; ++nnz; }
        if (nnz == 1 && exp == 1) {
            if (auto hit = lookup(side, OpSeq{{op}}, gen)) return {false, hit->scaled(c), "", ""};
        }
    }
    QRes r = apply_q(side, op.idx, x);
    if (r.missing || op.eps == 0) return r;
    return {false, beta(r.value), "", ""};
}

SteenrodDual::QRes SteenrodDual::eval_word(Side side, const OpSeq& w, const AlgElement& x) const {
    // Whole-word table hit on a plain generator first.
    if (!w.empty() && x.term_count() == 1) {
        const auto& [m, c] = *x.terms().begin();
        size_t gen = 0;
        int nnz = 0, exp = 0;
        for (size_t i = 0; i < m.exps.size(); ++i)
            if (m.exps[i] > 0) { gen = i; exp = m.exps[i]; ++nnz; }
        if (nnz == 1 && exp == 1) {
            if (auto hit = lookup(side, w, gen)) return {false, hit->scaled(c), "", ""};
        }
    }
    AlgElement cur = x;
    for (auto it = w.f.rbegin(); it != w.f.rend(); ++it) {
        QRes r = apply_factor(side, *it, cur);
        if (r.missing) return r;
        cur = r.value;
        if (cur.is_zero()) break;
    }
    return {false, cur, "", ""};
}

AlgElement SteenrodDual::q_act(Side side, const OpSeq& w, const AlgElement& x,
                               bool normalize) const {
    if (x.algebra() != A_) throw DomainError("q_act needs a Milnor-coordinate element");
    if (p_ == 2)
        for (const auto& op : w.f)
            if (op.eps) throw DomainError("Bockstein factor at p = 2");
    SeqPoly words = normalize ? adem_normalize(w, p_) : SeqPoly{{w, 1}};
    AlgElement total = AlgElement::zero(A_);
    for (const auto& [seq, coeff] : words) {
        QRes r = eval_word(side, seq, x);
        if (r.missing) throw MissingTableEntry(side_str(side), r.miss_word, r.miss_gen);
        total = total + r.value.scaled(coeff);
    }
    return total;
}

void SteenrodDual::install_entry(Side side, const OpSeq& w, const std::string& gen_name,
                                 const AlgElement& value, const std::string& provenance) {
    auto gi = A_->gen_index(gen_name);
    if (!gi) throw DomainError("unknown generator " + gen_name);
    if (w.empty()) throw DomainError("table entries need a non-empty word");
    if (!seq_admissible(w, p_))
        throw DomainError("table entries must use admissible words: " + seq_str(w));
    if (p_ == 2)
        for (const auto& op : w.f)
            if (op.eps) throw DomainError("Bockstein factor at p = 2");
    if (value.algebra() != A_) throw DomainError("table value from a different algebra");
    if (!value.is_zero()) {
        if (!value.is_homogeneous()) throw DomainError("table value must be homogeneous");
        int expect = seq_degree(w, p_) + A_->gen(*gi).degree;
        if (*value.degree() != expect)
            throw DomainError("table value degree " + std::to_string(*value.degree()) +
                              " does not match the word, expected " + std::to_string(expect));
    }
    if (table_.count(Key{side, w, *gi}))
        throw DomainError("duplicate table entry for " + seq_str(w) + " on " + gen_name);
    // Coherence: when the axioms or existing entries already determine the
    // value, a new entry must agree.
    try {
        AlgElement existing = q_act(side, w, AlgElement::generator(A_, *gi));
        if (!(existing == value))
            throw DomainError("table entry for " + seq_str(w) + " on " + gen_name +
                              " contradicts the determined value " + existing.str());
    } catch (const MissingTableEntry&) {
        // genuinely new information
    }
    install(side, w, *gi, value, provenance);
}

std::vector<AlgElement> SteenrodDual::compose_series(bool xi_outer) const {
    const int T = N_ + 1;
    auto series_of = [&](bool use_xi) {
        std::vector<AlgElement> s(static_cast<size_t>(T) + 1, AlgElement::zero(A_));
        if (T >= 1) s[1] = AlgElement::unit(A_); // the r = 0 coefficient
        for (int r = 1;; ++r) {
            long long tpow = ipow(p_, r);
            if (tpow > T) break;
            if (r >= static_cast<int>(xi_idx_.size())) break;
            s[static_cast<size_t>(tpow)] = use_xi ? xi(r) : zeta_[static_cast<size_t>(r)];
        }
        return s;
    };
    std::vector<AlgElement> outer = series_of(xi_outer);
    std::vector<AlgElement> inner = series_of(!xi_outer);
    auto mul = [&](const std::vector<AlgElement>& a, const std::vector<AlgElement>& b) {
        std::vector<AlgElement> c(static_cast<size_t>(T) + 1, AlgElement::zero(A_));
        for (int i = 0; i <= T; ++i) {
            if (a[static_cast<size_t>(i)].is_zero()) continue;
            for (int j = 0; i + j <= T; ++j) {
                if (b[static_cast<size_t>(j)].is_zero()) continue;
                c[static_cast<size_t>(i + j)] =
                    c[static_cast<size_t>(i + j)] +
                    a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)];
            }
        }
        return c;
    };
    // outer(inner(t)) = sum_k outer_k * inner(t)^k over the powers present.
    std::vector<AlgElement> result(static_cast<size_t>(T) + 1, AlgElement::zero(A_));
    std::vector<AlgElement> power(static_cast<size_t>(T) + 1, AlgElement::zero(A_));
    power[0] = AlgElement::unit(A_); // inner^0
    int current = 0;
    for (int k = 0; k <= T; ++k) {
        if (outer[static_cast<size_t>(k)].is_zero()) continue;
        while (current < k) {
            power = mul(power, inner);
            ++current;
        }
        for (int j = 0; j <= T; ++j) {
            if (power[static_cast<size_t>(j)].is_zero()) continue;
            result[static_cast<size_t>(j)] =
                result[static_cast<size_t>(j)] +
                outer[static_cast<size_t>(k)] * power[static_cast<size_t>(j)];
        }
    }
    return result;
}

AlgElement SteenrodDual::tau_relation_residual(int s) const {
    if (p_ == 2) throw DomainError("tau relation exists only at odd primes");
    AlgElement acc = tau(s);
    for (int i = 0; i <= s; ++i)
        acc = acc + taubar_in_milnor(i) * xi(s - i).pow(static_cast<unsigned>(ipow(p_, i)));
    return acc;
}

} // namespace dlops
