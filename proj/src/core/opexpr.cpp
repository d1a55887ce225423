#include "core/opexpr.hpp"

#include <algorithm>
#include <sstream>

#include "core/errors.hpp"
#include "core/fp_util.hpp"

namespace dlops {

int OpTerm::degree(int p) const {
    int d = 0;
    for (const auto& w : factors) d += w.degree(p);
    return d;
}

OpPolynomial OpPolynomial::word(int p, OpWord w, int coeff) {
    OpPolynomial poly(p);
    poly.add_term(OpTerm{coeff, {std::move(w)}});
    return poly;
}

OpPolynomial OpPolynomial::term(int p, OpTerm t) {
    OpPolynomial poly(p);
    poly.add_term(std::move(t));
    return poly;
}

void OpPolynomial::add_term(OpTerm t) {
    t.coeff = mod_p(t.coeff, p_);
    if (t.coeff == 0) return;
    // Bubble the factors into canonical order, tracking the Koszul sign of
    // each swap of odd-degree words.
    int sign = 1;
    auto& fs = t.factors;
    for (size_t i = 1; i < fs.size(); ++i) {
        for (size_t j = i; j > 0 && fs[j] < fs[j - 1]; --j) {
            if (fs[j].odd(p_) && fs[j - 1].odd(p_)) sign = -sign;
            std::swap(fs[j], fs[j - 1]);
        }
    }
    if (p_ != 2) {
        for (size_t i = 0; i + 1 < fs.size(); ++i)
            if (fs[i] == fs[i + 1] && fs[i].odd(p_)) return; // odd square
    }
    t.coeff = mod_p(t.coeff * sign, p_);
    auto it = std::lower_bound(terms_.begin(), terms_.end(), t,
                               [](const OpTerm& a, const OpTerm& b) { return a.factors < b.factors; });
    if (it != terms_.end() && it->factors == t.factors) {
        it->coeff = mod_p(it->coeff + t.coeff, p_);
        if (it->coeff == 0) terms_.erase(it);
    } else {
        terms_.insert(it, std::move(t));
    }
}

OpPolynomial OpPolynomial::operator+(const OpPolynomial& o) const {
    if (p_ != o.p_) throw DomainError("op-polynomials over different primes");
    OpPolynomial out = *this;
    for (const auto& t : o.terms_) out.add_term(t);
    return out;
}

OpPolynomial OpPolynomial::operator*(const OpPolynomial& o) const {
    if (p_ != o.p_) throw DomainError("op-polynomials over different primes");
    OpPolynomial out(p_);
    for (const auto& a : terms_) {
        for (const auto& b : o.terms_) {
            OpTerm t;
            t.coeff = a.coeff * b.coeff;
            t.factors = a.factors;
            t.factors.insert(t.factors.end(), b.factors.begin(), b.factors.end());
            out.add_term(std::move(t));
        }
    }
    return out;
}

OpPolynomial OpPolynomial::scaled(int c) const {
    OpPolynomial out(p_);
    for (auto t : terms_) {
        t.coeff = t.coeff * c;
        out.add_term(std::move(t));
    }
    return out;
}

std::string OpPolynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first_term = true;
    for (const auto& t : terms_) {
        if (!first_term) os << " + ";
        first_term = false;
        if (t.coeff != 1 || t.factors.empty()) os << t.coeff;
        if (t.coeff != 1 && !t.factors.empty()) os << " ";
        // Group equal adjacent factors as powers.
        bool first_factor = true;
        for (size_t i = 0; i < t.factors.size();) {
            size_t j = i;
            while (j < t.factors.size() && t.factors[j] == t.factors[i]) ++j;
            if (!first_factor) os << "*";
            first_factor = false;
            const auto& w = t.factors[i];
            bool need_paren = !w.ops.empty() && (j - i > 1 || t.factors.size() > 1);
            if (need_paren) os << "(";
            if (!w.ops.empty()) os << seq_str(w.ops) << " ";
            os << w.arg.name;
            if (need_paren) os << ")";
            if (j - i > 1) os << "^" << (j - i);
            i = j;
        }
    }
    return os.str();
}

OpPolynomial adem_normalize(const OpPolynomial& poly, AdemStrategy strategy) {
    const int p = poly.p();
    OpPolynomial out(p);
    for (const auto& t : poly.terms()) {
        // Normalize each factor's sequence and distribute.
        OpPolynomial prod(p);
        prod.add_term(OpTerm{t.coeff, {}});
        for (const auto& w : t.factors) {
            OpPolynomial factor_poly(p);
            for (const auto& [seq, c] : adem_normalize(w.ops, p, strategy))
                factor_poly.add_term(OpTerm{c, {OpWord{seq, w.arg}}});
            prod = prod * factor_poly;
        }
        out = out + prod;
    }
    return out;
}

namespace {

OpWord prepend(const OpWord& w, OpFactor f) {
    OpWord nw = w;
    nw.ops.f.insert(nw.ops.f.begin(), f);
    return nw;
}

// Apply beta^eps Q^s to a formal product of op-words via the Cartan rule,
// recursing over the factor list.
OpPolynomial apply_to_product(int p, OpFactor op, const std::vector<OpWord>& fs) {
    if (fs.empty()) {
        // Operations on the unit: Q^0 is the identity there, higher vanish.
        if (op.idx == 0 && op.eps == 0) return OpPolynomial::term(p, OpTerm{1, {}});
        return OpPolynomial::zero(p);
    }
    if (fs.size() == 1) return OpPolynomial::word(p, prepend(fs[0], op));
    const OpWord& a = fs.front();
    std::vector<OpWord> rest(fs.begin() + 1, fs.end());
    OpPolynomial out(p);
    for (int i = 0; i <= op.idx; ++i) {
        int j = op.idx - i;
        if (op.eps == 0) {
            OpPolynomial right = apply_to_product(p, {0, j}, rest);
            out = out + OpPolynomial::word(p, prepend(a, {0, i})) * right;
        } else {
            OpPolynomial right = apply_to_product(p, {0, j}, rest);
            out = out + OpPolynomial::word(p, prepend(a, {1, i})) * right;
            int sign = a.degree(p) % 2 == 0 ? 1 : -1;
            OpPolynomial right_b = apply_to_product(p, {1, j}, rest);
            out = out + OpPolynomial::word(p, prepend(a, {0, i})).scaled(sign) * right_b;
        }
    }
    return out;
}

} // namespace

InstabilityStep instability_rewrite(int p, const OpWord& w) {
    if (w.ops.empty()) throw DomainError("instability_rewrite needs an operation");
    const OpFactor inner = w.ops.f.back();
    const int d = w.arg.degree;
    const int scaled = p == 2 ? inner.idx : 2 * inner.idx;
    OpSeq outer{std::vector<OpFactor>(w.ops.f.begin(), w.ops.f.end() - 1)};
    if (scaled < d) {
        InstabilityStep step(OpPolynomial::zero(p));
        step.kind = InstabilityStep::Zero;
        return step;
    }
    if (scaled == d) {
        if (inner.eps) {
            // A Bockstein on a p-th power vanishes.
            InstabilityStep step(OpPolynomial::zero(p));
            step.kind = InstabilityStep::Zero;
            return step;
        }
        // Q^s x = x^p; the remaining outer word is applied to the power via
        // the Cartan rule so the result stays inside the formal calculus.
        OpPolynomial value(p);
        value.add_term(OpTerm{1, std::vector<OpWord>(p, OpWord{OpSeq{}, w.arg})});
        for (auto it = outer.f.rbegin(); it != outer.f.rend(); ++it) {
            OpPolynomial next(p);
            for (const auto& t : value.terms())
                next = next + apply_to_product(p, *it, t.factors).scaled(t.coeff);
            value = next;
        }
        InstabilityStep step(std::move(value));
        step.kind = InstabilityStep::PthPower;
        return step;
    }
    InstabilityStep step(OpPolynomial::zero(p));
    step.kind = InstabilityStep::Unchanged;
    return step;
}

OpPolynomial cartan_expand(int p, OpFactor op, const OpWord& a, const OpWord& b) {
    if (p == 2 && op.eps) throw DomainError("Bockstein factor at p = 2");
    return apply_to_product(p, op, {a, b});
}

OpPolynomial apply_op_to_factors(int p, OpFactor op, const std::vector<OpWord>& factors) {
    if (p == 2 && op.eps) throw DomainError("Bockstein factor at p = 2");
    return apply_to_product(p, op, factors);
}

} // namespace dlops
