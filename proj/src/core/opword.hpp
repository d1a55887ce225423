#pragma once
#include <compare>
#include <map>
#include <string>
#include <vector>

namespace dlops {

// One operation beta^eps Q^idx.  At p = 2 eps must be 0.
struct OpFactor {
    int eps = 0;
    int idx = 0;
    friend std::strong_ordering operator<=>(const OpFactor&, const OpFactor&) = default;
    friend bool operator==(const OpFactor&, const OpFactor&) = default;
};

// Composite operation word; f[0] is the outermost (applied last).
struct OpSeq {
    std::vector<OpFactor> f;
    bool empty() const { return f.empty(); }
    size_t length() const { return f.size(); }
    friend std::strong_ordering operator<=>(const OpSeq&, const OpSeq&) = default;
    friend bool operator==(const OpSeq&, const OpSeq&) = default;
};

// Sentinel excess of the empty word.
inline constexpr int kInfiniteExcess = 1 << 30;

// Degree raised by the word: sum of 2*i*(p-1) - eps for odd p, sum of i at p = 2.
int seq_degree(const OpSeq& w, int p);
int factor_degree(const OpFactor& op, int p);

// Excess: i_1 - sum_{j>=2} i_j at p = 2;
// 2*i_1 - eps_1 - sum_{j>=2} (2*i_j*(p-1) - eps_j) for odd p.
// Empty word: kInfiniteExcess.
int seq_excess(const OpSeq& w, int p);

// Adjacent pairs satisfy i_j <= p*i_{j+1} - eps_{j+1}.
bool seq_admissible(const OpSeq& w, int p);

// Leading-term test of the free-generator condition excess(w) + eps_1 > |x|:
// equivalent to (p == 2 ? i_1 : 2*i_1) > |x| + degree of the word's tail.
bool leading_gate(const OpSeq& w, int p, int arg_degree);

std::string seq_str(const OpSeq& w); // e.g. "b Q^4", "Q^3 Q^1"; "" for empty

// Linear combination of operation words, coefficients in [1, p).
using SeqPoly = std::map<OpSeq, int>;

void seq_poly_add(SeqPoly& poly, const OpSeq& w, int coeff, int p);

enum class AdemStrategy { Leftmost, Rightmost };

// Rewrite into a combination of admissible words using the Adem relations.
// The strategy picks which inadmissible adjacent pair is rewritten first;
// both strategies give the same normal form (tested property, not assumed).
SeqPoly adem_normalize(const OpSeq& w, int p,
                       AdemStrategy strategy = AdemStrategy::Leftmost);
SeqPoly adem_normalize(const SeqPoly& poly, int p,
                       AdemStrategy strategy = AdemStrategy::Leftmost);

// One Adem expansion of the inadmissible adjacent pair at position j
// (factors j and j+1); requires that pair to be inadmissible.
SeqPoly adem_step(const OpSeq& w, size_t j, int p);

} // namespace dlops
