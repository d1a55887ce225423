#include "core/opword.hpp"

#include <mutex>
#include <sstream>

#include "core/errors.hpp"
#include "core/fp_util.hpp"

namespace dlops {

int factor_degree(const OpFactor& op, int p) {
    return p == 2 ? op.idx : 2 * op.idx * (p - 1) - op.eps;
}

int seq_degree(const OpSeq& w, int p) {
    int d = 0;
    for (const auto& op : w.f) d += factor_degree(op, p);
    return d;
}

int seq_excess(const OpSeq& w, int p) {
    if (w.empty()) return kInfiniteExcess;
    int tail = 0;
    for (size_t j = 1; j < w.f.size(); ++j) tail += factor_degree(w.f[j], p);
    if (p == 2) return w.f[0].idx - tail;
    return 2 * w.f[0].idx - w.f[0].eps - tail;
}

bool seq_admissible(const OpSeq& w, int p) {
    for (size_t j = 0; j + 1 < w.f.size(); ++j)
        if (w.f[j].idx > p * w.f[j + 1].idx - w.f[j + 1].eps) return false;
    return true;
}

bool leading_gate(const OpSeq& w, int p, int arg_degree) {
    if (w.empty()) return false;
    int tail = 0;
    for (size_t j = 1; j < w.f.size(); ++j) tail += factor_degree(w.f[j], p);
    int lhs = (p == 2 ? w.f[0].idx : 2 * w.f[0].idx);
    return lhs > arg_degree + tail;
}

std::string seq_str(const OpSeq& w) {
    std::ostringstream os;
    bool first = true;
    for (const auto& op : w.f) {
        if (!first) os << " ";
        if (op.eps) os << "b ";
        os << "Q^" << op.idx;
        first = false;
    }
    return os.str();
}

void seq_poly_add(SeqPoly& poly, const OpSeq& w, int coeff, int p) {
    coeff = mod_p(coeff, p);
    if (coeff == 0) return;
    auto [it, inserted] = poly.emplace(w, coeff);
    if (!inserted) {
        it->second = mod_p(it->second + coeff, p);
        if (it->second == 0) poly.erase(it);
    }
}

namespace {

// Replace factors j, j+1 of w by the given pair, dropping the term when a
// double Bockstein appears.  Returns false when the term dies.
bool splice(const OpSeq& w, size_t j, OpFactor a, OpFactor b, OpSeq& out) {
    if (a.eps > 1 || b.eps > 1) return false; // beta^2 = 0
    out.f.clear();
    out.f.reserve(w.f.size());
    for (size_t k = 0; k < j; ++k) out.f.push_back(w.f[k]);
    out.f.push_back(a);
    out.f.push_back(b);
    for (size_t k = j + 2; k < w.f.size(); ++k) out.f.push_back(w.f[k]);
    return true;
}

bool pair_admissible(const OpFactor& a, const OpFactor& b, int p) {
    return a.idx <= p * b.idx - b.eps;
}

} // namespace

SeqPoly adem_step(const OpSeq& w, size_t j, int p) {
    if (j + 1 >= w.f.size()) throw DomainError("adem_step position out of range");
    const OpFactor& fa = w.f[j];
    const OpFactor& fb = w.f[j + 1];
    if (pair_admissible(fa, fb, p)) throw DomainError("adem_step on an admissible pair");
    const int r = fa.idx, s = fb.idx;
    SeqPoly out;
    if (p == 2) {
        // Q^r Q^s = sum_i binom(i - s - 1, 2i - r) Q^{r+s-i} Q^i, r > 2s.
        for (int i = (r + 1) / 2; i <= r - s - 1; ++i) {
            int c = binom_mod(i - s - 1, 2LL * i - r, 2);
            if (c == 0) continue;
            OpSeq nw;
            if (splice(w, j, {0, r + s - i}, {0, i}, nw))
                seq_poly_add(out, nw, c, p);
        }
        return out;
    }
    if (fb.eps == 0) {
        // Q^r Q^s = sum_i (-1)^{r+i} (pi - r, r - (p-1)s - i - 1) Q^{r+s-i} Q^i,
        // r > ps.  The outer eps of factor j is carried along unchanged.
        for (int i = 0; i <= r + s; ++i) {
            int c = two_var_binom(static_cast<long long>(p) * i - r,
                                  r - static_cast<long long>(p - 1) * s - i - 1, p);
            if (c == 0) continue;
            int sign = ((r + i) % 2 == 0) ? 1 : -1;
            OpSeq nw;
            if (splice(w, j, {fa.eps, r + s - i}, {0, i}, nw))
                seq_poly_add(out, nw, sign * c, p);
        }
        return out;
    }
    // Q^r (b Q^s), r >= ps:
    //   sum_i (-1)^{r+i} (pi - r, r - (p-1)s - i)   (b Q^{r+s-i}) Q^i
    // - sum_i (-1)^{r+i} (pi - r - 1, r - (p-1)s - i) Q^{r+s-i} (b Q^i).
    for (int i = 0; i <= r + s; ++i) {
        int sign = ((r + i) % 2 == 0) ? 1 : -1;
        int c1 = two_var_binom(static_cast<long long>(p) * i - r,
                               r - static_cast<long long>(p - 1) * s - i, p);
        if (c1 != 0) {
            OpSeq nw;
            if (splice(w, j, {fa.eps + 1, r + s - i}, {0, i}, nw))
                seq_poly_add(out, nw, sign * c1, p);
        }
        int c2 = two_var_binom(static_cast<long long>(p) * i - r - 1,
                               r - static_cast<long long>(p - 1) * s - i, p);
        if (c2 != 0) {
            OpSeq nw;
            if (splice(w, j, {fa.eps, r + s - i}, {1, i}, nw))
                seq_poly_add(out, nw, -sign * c2, p);
        }
    }
    return out;
}

namespace {

// Memoized full normalization.  The cache is tiny (words are short) and
// guarded so concurrent scenario runs stay safe.
struct MemoKey {
    int p;
    AdemStrategy strategy;
    OpSeq w;
    friend std::strong_ordering operator<=>(const MemoKey&, const MemoKey&) = default;
};

std::map<MemoKey, SeqPoly>& memo() {
    static std::map<MemoKey, SeqPoly> m;
    return m;
}
std::mutex memo_mutex;

} // namespace

SeqPoly adem_normalize(const OpSeq& w, int p, AdemStrategy strategy) {
    if (p == 2) {
        for (const auto& op : w.f)
            if (op.eps) throw DomainError("Bockstein factor at p = 2");
    }
    if (seq_admissible(w, p)) return SeqPoly{{w, 1}};
    {
        std::lock_guard<std::mutex> lock(memo_mutex);
        auto it = memo().find({p, strategy, w});
        if (it != memo().end()) return it->second;
    }
    size_t pos = 0;
    if (strategy == AdemStrategy::Leftmost) {
        while (pair_admissible(w.f[pos], w.f[pos + 1], p)) ++pos;
    } else {
        pos = w.f.size() - 2;
        while (pair_admissible(w.f[pos], w.f[pos + 1], p)) --pos;
    }
    SeqPoly expanded = adem_step(w, pos, p);
    SeqPoly result;
    for (const auto& [word, coeff] : expanded) {
        SeqPoly sub = adem_normalize(word, p, strategy);
        for (const auto& [sw, sc] : sub) seq_poly_add(result, sw, coeff * sc, p);
    }
    {
        std::lock_guard<std::mutex> lock(memo_mutex);
        memo().emplace(MemoKey{p, strategy, w}, result);
    }
    return result;
}

SeqPoly adem_normalize(const SeqPoly& poly, int p, AdemStrategy strategy) {
    SeqPoly out;
    for (const auto& [w, c] : poly) {
        SeqPoly sub = adem_normalize(w, p, strategy);
        for (const auto& [sw, sc] : sub) seq_poly_add(out, sw, c * sc, p);
    }
    return out;
}

} // namespace dlops
