#include "core/unstable.hpp"

#include <algorithm>
#include <set>

#include "core/errors.hpp"

namespace dlops {

std::string UnstableGenerator::str() const {
    std::string w = seq_str(word);
    return w.empty() ? atom : w + " " + atom;
}

namespace {

// Prepend factors to a gated word; every gated word's tail is gated (from
// admissibility i_1 <= p*i_2 - eps_2), so recursing only through gated words
// loses nothing.
void grow(int p, int atom_degree, int word_cap, const OpSeq& tail, int tail_degree,
          std::vector<OpSeq>& out) {
    int remaining = word_cap - tail_degree;
    for (int eps = 0; eps <= (p == 2 ? 0 : 1); ++eps) {
        int max_i = p == 2 ? remaining : (remaining + eps) / (2 * (p - 1));
        if (!tail.empty()) {
            const OpFactor& inner = tail.f.front();
            max_i = std::min(max_i, p * inner.idx - inner.eps);
        }
        for (int i = 1; i <= max_i; ++i) {
            OpSeq w;
            w.f.reserve(tail.length() + 1);
            w.f.push_back(OpFactor{eps, i});
            w.f.insert(w.f.end(), tail.f.begin(), tail.f.end());
            if (!leading_gate(w, p, atom_degree)) continue;
            out.push_back(w);
            grow(p, atom_degree, word_cap, w, tail_degree + factor_degree(w.f.front(), p), out);
        }
    }
}

} // namespace

std::vector<UnstableGenerator> enumerate_generators(int p, const std::vector<UnstableInput>& gens,
                                                    int N) {
    std::set<std::string> names;
    for (const auto& g : gens) {
        if (g.degree < 1) throw DomainError("unstable input degree must be >= 1: " + g.name);
        if (!names.insert(g.name).second) throw DomainError("duplicate input name: " + g.name);
    }
    std::vector<UnstableGenerator> result;
    for (size_t gi = 0; gi < gens.size(); ++gi) {
        const auto& g = gens[gi];
        if (g.degree > N) continue;
        std::vector<OpSeq> words;
        words.push_back(OpSeq{});
        grow(p, g.degree, N - g.degree, OpSeq{}, 0, words);
        for (auto& w : words) {
            int deg = g.degree + seq_degree(w, p);
            result.push_back(
                UnstableGenerator{std::move(w), g.name, g.degree, deg, p != 2 && deg % 2 == 1});
        }
    }
    std::sort(result.begin(), result.end(), [&](const UnstableGenerator& a, const UnstableGenerator& b) {
        if (a.degree != b.degree) return a.degree < b.degree;
        if (a.word != b.word) return a.word < b.word;
        return a.atom < b.atom;
    });
    return result;
}

std::vector<size_t> free_commutative_poincare(const std::vector<std::pair<int, bool>>& gens,
                                              int N) {
    std::vector<size_t> dims(N + 1, 0);
    dims[0] = 1;
    for (const auto& [deg, exterior] : gens) {
        if (deg < 1) throw DomainError("free algebra generator degree must be >= 1");
        if (deg > N) continue;
        if (exterior) {
            for (int d = N; d >= deg; --d) dims[d] += dims[d - deg];
        } else {
            for (int d = deg; d <= N; ++d) dims[d] += dims[d - deg];
        }
    }
    return dims;
}

std::vector<size_t> free_unstable_poincare(int p, const std::vector<UnstableInput>& gens, int N) {
    std::vector<std::pair<int, bool>> list;
    for (const auto& g : enumerate_generators(p, gens, N)) list.emplace_back(g.degree, g.odd);
    return free_commutative_poincare(list, N);
}

} // namespace dlops
