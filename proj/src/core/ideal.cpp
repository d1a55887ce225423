#include "core/ideal.hpp"

#include <algorithm>

#include "core/errors.hpp"

namespace dlops {

GradedIdeal::GradedIdeal(AlgebraPtr alg, const std::vector<AlgElement>& relations)
    : alg_(std::move(alg)) {
    for (const auto& r : relations) {
        if (r.attached() && r.algebra() != alg_)
            throw DomainError("relation from a different ambient algebra");
        if (r.is_zero()) continue;
        for (int d : r.degrees()) {
            if (d > alg_->bound())
                throw BoundError("relation of degree " + std::to_string(d) +
                                 " exceeds the bound " + std::to_string(alg_->bound()));
            relations_.push_back(r.component(d));
        }
    }
    // Span of { r * m } per degree, in reduced echelon form.
    span_.reserve(alg_->bound() + 1);
    for (int d = 0; d <= alg_->bound(); ++d) {
        FpMatrix mat(alg_->p(), alg_->basis(d).size());
        for (const auto& r : relations_) {
            int rd = *r.degree();
            if (rd > d) continue;
            for (const auto& m : alg_->basis(d - rd)) {
                AlgElement prod = r * AlgElement::monomial(alg_, m);
                if (!prod.is_zero()) mat.add_row(prod.coords(d));
            }
        }
        mat.rref();
        span_.push_back(std::move(mat));
    }
}

AlgElement GradedIdeal::reduce(const AlgElement& x) const {
    if (!x.attached()) throw DomainError("reduce of a detached element");
    if (x.algebra() != alg_) throw DomainError("element from a different ambient algebra");
    AlgElement out(alg_);
    for (int d : x.degrees()) {
        auto v = span_[d].reduce_vector(x.coords(d));
        out = out + AlgElement::from_coords(alg_, d, v);
    }
    return out;
}

size_t GradedIdeal::span_rank(int degree) const {
    if (degree < 0 || degree > alg_->bound()) throw BoundError("degree outside bound");
    return span_[degree].rank();
}

size_t GradedIdeal::quotient_dim(int degree) const {
    return alg_->basis(degree).size() - span_rank(degree);
}

std::vector<Monomial> GradedIdeal::quotient_basis(int degree) const {
    const auto& level = alg_->basis(degree);
    const auto& piv = span_[degree].pivots();
    std::vector<Monomial> out;
    size_t pi = 0;
    for (size_t i = 0; i < level.size(); ++i) {
        if (pi < piv.size() && piv[pi] == i) { ++pi; continue; }
        out.push_back(level[i]);
    }
    return out;
}

std::vector<size_t> poincare_series(const Algebra& alg, int bound) {
    if (bound > alg.bound()) throw BoundError("series bound exceeds algebra bound");
    std::vector<size_t> dims;
    for (int d = 0; d <= bound; ++d) dims.push_back(alg.basis(d).size());
    return dims;
}

std::vector<size_t> poincare_series(const GradedIdeal& ideal, int bound) {
    if (bound > ideal.algebra()->bound()) throw BoundError("series bound exceeds algebra bound");
    std::vector<size_t> dims;
    for (int d = 0; d <= bound; ++d) dims.push_back(ideal.quotient_dim(d));
    return dims;
}

} // namespace dlops
