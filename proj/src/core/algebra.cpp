#include "core/algebra.hpp"

#include <algorithm>
#include <sstream>

#include "core/errors.hpp"
#include "core/fp_util.hpp"

namespace dlops {

Algebra::Algebra(int p, int bound, std::vector<GeneratorSpec> gens)
    : p_(p), bound_(bound), gens_(std::move(gens)) {}

AlgebraPtr Algebra::make(int p, int bound, std::vector<GeneratorSpec> gens) {
    if (!is_prime(p)) throw DomainError("characteristic must be prime");
    if (bound < 0) throw BoundError("degree bound must be non-negative");
    for (auto& g : gens) {
        if (g.name.empty()) throw DomainError("generator with empty name");
        if (g.degree < 0) throw DomainError("generator " + g.name + " has negative degree");
        if (p == 2) {
            // Every generator is polynomial in characteristic 2.
            g.exterior = false;
        } else if (g.exterior != (g.degree % 2 == 1)) {
            throw DomainError("generator " + g.name +
                              ": parity must match degree parity for odd p");
        }
    }
    auto alg = std::shared_ptr<Algebra>(new Algebra(p, bound, std::move(gens)));
    for (size_t i = 0; i < alg->gens_.size(); ++i) {
        if (!alg->index_.emplace(alg->gens_[i].name, i).second)
            throw DomainError("duplicate generator name " + alg->gens_[i].name);
    }
    alg->build_basis();
    return alg;
}

std::optional<size_t> Algebra::gen_index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

int Algebra::monomial_degree(const std::vector<uint16_t>& exps) const {
    int d = 0;
    for (size_t i = 0; i < exps.size(); ++i) d += exps[i] * gens_[i].degree;
    return d;
}

void Algebra::build_basis() {
    basis_.assign(bound_ + 1, {});
    // Depth-first exponent assignment; generators of degree 0 are capped at
    // exponent p-1 if polynomial (their powers repeat past that only for the
    // exterior cap; a polynomial degree-0 generator would make every degree
    // infinite-dimensional, so reject it).
    for (const auto& g : gens_) {
        if (g.degree == 0 && !g.exterior)
            throw DomainError("polynomial generator " + g.name +
                              " of degree 0 gives infinite-dimensional degrees");
    }
    std::vector<uint16_t> exps(gens_.size(), 0);
    // Recursive enumeration over generator positions.
    auto rec = [&](auto&& self, size_t pos, int deg) -> void {
        if (pos == gens_.size()) {
            basis_[deg].push_back(Monomial{deg, exps});
            return;
        }
        const auto& g = gens_[pos];
        // Degree-0 generators were rejected above, so the quotient is safe.
        int max_e = (bound_ - deg) / g.degree;
        if (g.exterior) max_e = std::min(max_e, 1);
        for (int e = 0; e <= max_e; ++e) {
            exps[pos] = static_cast<uint16_t>(e);
            self(self, pos + 1, deg + e * g.degree);
        }
        exps[pos] = 0;
    };
    rec(rec, 0, 0);
    for (auto& level : basis_) std::sort(level.begin(), level.end());
}

const std::vector<Monomial>& Algebra::basis(int degree) const {
    if (degree < 0 || degree > bound_)
        throw BoundError("basis degree " + std::to_string(degree) +
                         " outside [0, " + std::to_string(bound_) + "]");
    return basis_[degree];
}

size_t Algebra::basis_index(const Monomial& m) const {
    const auto& level = basis(m.degree);
    auto it = std::lower_bound(level.begin(), level.end(), m);
    if (it == level.end() || !(*it == m))
        throw DomainError("monomial not in basis");
    return static_cast<size_t>(it - level.begin());
}

int koszul_sign(const Algebra& alg, const Monomial& a, const Monomial& b) {
    if (alg.p() == 2) return 1;
    // Each factor of b's generator j crosses every factor of a's generator i
    // with i > j; odd-odd crossings contribute -1.
    long long crossings = 0;
    for (size_t j = 0; j < b.exps.size(); ++j) {
        if (b.exps[j] == 0 || alg.gen(j).degree % 2 == 0) continue;
        for (size_t i = j + 1; i < a.exps.size(); ++i) {
            if (a.exps[i] == 0 || alg.gen(i).degree % 2 == 0) continue;
            crossings += static_cast<long long>(a.exps[i]) * b.exps[j];
        }
    }
    return crossings % 2 == 0 ? 1 : -1;
}

AlgElement AlgElement::unit(AlgebraPtr alg, int coeff) {
    AlgElement e(alg);
    e.add_term(alg->unit_monomial(), coeff);
    return e;
}

AlgElement AlgElement::generator(const AlgebraPtr& alg, size_t index, int coeff) {
    if (index >= alg->gen_count()) throw DomainError("generator index out of range");
    Monomial m = alg->unit_monomial();
    m.exps[index] = 1;
    m.degree = alg->gen(index).degree;
    return monomial(alg, std::move(m), coeff);
}

AlgElement AlgElement::generator(const AlgebraPtr& alg, const std::string& name, int coeff) {
    auto idx = alg->gen_index(name);
    if (!idx) throw DomainError("unknown generator " + name);
    return generator(alg, *idx, coeff);
}

AlgElement AlgElement::monomial(AlgebraPtr alg, Monomial m, int coeff) {
    AlgElement e(alg);
    if (m.degree <= alg->bound()) e.add_term(m, coeff);
    return e;
}

void AlgElement::add_term(const Monomial& m, int coeff) {
    if (!alg_) throw DomainError("element has no ambient algebra");
    coeff = mod_p(coeff, alg_->p());
    if (coeff == 0) return;
    auto [it, inserted] = terms_.emplace(m, coeff);
    if (!inserted) {
        it->second = mod_p(it->second + coeff, alg_->p());
        if (it->second == 0) terms_.erase(it);
    }
}

void AlgElement::check_same(const AlgElement& o) const {
    if (alg_ != o.alg_) throw DomainError("elements of different ambient algebras");
}

std::optional<int> AlgElement::degree() const {
    if (terms_.empty()) return std::nullopt;
    int d = terms_.begin()->first.degree;
    if (terms_.rbegin()->first.degree != d)
        throw DomainError("degree of a non-homogeneous element");
    return d;
}

bool AlgElement::is_homogeneous() const {
    if (terms_.empty()) return true;
    return terms_.begin()->first.degree == terms_.rbegin()->first.degree;
}

AlgElement AlgElement::component(int degree) const {
    AlgElement out(alg_);
    for (const auto& [m, c] : terms_)
        if (m.degree == degree) out.terms_.emplace(m, c);
    return out;
}

std::vector<int> AlgElement::degrees() const {
    std::vector<int> ds;
    for (const auto& [m, c] : terms_)
        if (ds.empty() || ds.back() != m.degree) ds.push_back(m.degree);
    return ds;
}

AlgElement AlgElement::operator+(const AlgElement& o) const {
    check_same(o);
    AlgElement out = *this;
    for (const auto& [m, c] : o.terms_) out.add_term(m, c);
    return out;
}

AlgElement AlgElement::operator-(const AlgElement& o) const {
    check_same(o);
    AlgElement out = *this;
    for (const auto& [m, c] : o.terms_) out.add_term(m, -c);
    return out;
}

AlgElement AlgElement::operator-() const { return scaled(-1); }

AlgElement AlgElement::scaled(int c) const {
    AlgElement out(alg_);
    c = mod_p(c, alg_->p());
    if (c == 0) return out;
    for (const auto& [m, k] : terms_) out.add_term(m, k * c);
    return out;
}

AlgElement AlgElement::operator*(const AlgElement& o) const {
    check_same(o);
    AlgElement out(alg_);
    const auto& alg = *alg_;
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            int deg = ma.degree + mb.degree;
            if (deg > alg.bound()) continue; // truncation
            bool dead = false;
            Monomial m{deg, ma.exps};
            for (size_t i = 0; i < m.exps.size(); ++i) {
                int e = m.exps[i] + mb.exps[i];
                if (alg.gen(i).exterior && e > 1) { dead = true; break; }
                m.exps[i] = static_cast<uint16_t>(e);
            }
            if (dead) continue;
            int sign = koszul_sign(alg, ma, mb);
            out.add_term(m, ca * cb * sign);
        }
    }
    return out;
}

AlgElement AlgElement::pow(unsigned e) const {
    AlgElement out = unit(alg_);
    for (unsigned i = 0; i < e; ++i) out = out * *this;
    return out;
}

bool AlgElement::operator==(const AlgElement& o) const {
    check_same(o);
    return terms_ == o.terms_;
}

std::vector<int> AlgElement::coords(int degree) const {
    const auto& level = alg_->basis(degree);
    std::vector<int> v(level.size(), 0);
    for (const auto& [m, c] : terms_)
        if (m.degree == degree) v[alg_->basis_index(m)] = c;
    return v;
}

AlgElement AlgElement::from_coords(const AlgebraPtr& alg, int degree,
                                   const std::vector<int>& coords) {
    const auto& level = alg->basis(degree);
    if (coords.size() != level.size()) throw DomainError("coordinate length mismatch");
    AlgElement out(alg);
    for (size_t i = 0; i < coords.size(); ++i)
        if (mod_p(coords[i], alg->p()) != 0) out.add_term(level[i], coords[i]);
    return out;
}

std::string monomial_str(const Algebra& alg, const Monomial& m) {
    if (m.is_unit()) return "1";
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < m.exps.size(); ++i) {
        if (m.exps[i] == 0) continue;
        if (!first) os << "*";
        os << alg.gen(i).name;
        if (m.exps[i] > 1) os << "^" << m.exps[i];
        first = false;
    }
    return os.str();
}

std::string AlgElement::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        if (m.is_unit()) {
            os << c;
        } else {
            if (c != 1) os << c << " ";
            os << monomial_str(*alg_, m);
        }
        first = false;
    }
    return os.str();
}

} // namespace dlops
