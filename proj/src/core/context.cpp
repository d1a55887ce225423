#include "core/context.hpp"

#include <cctype>
#include <set>

#include "json.hpp"

#include "core/errors.hpp"
#include "core/fp_util.hpp"
#include "core/opword.hpp"

namespace dlops {

namespace {

using nlohmann::json;

void check_annotation(const std::string& name, std::optional<int> ann, int degree) {
    if (ann && *ann != degree)
        throw DomainError("degree annotation mismatch for " + name + ": declared " +
                          std::to_string(degree) + ", written " + std::to_string(*ann));
}

// Trailing index of an aliased name, e.g. ("zeta12", "zeta") -> 12.
std::optional<int> name_suffix(const std::string& name, const std::string& prefix) {
    if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0)
        return std::nullopt;
    std::string digits = name.substr(prefix.size());
    if (digits.size() > 1 && digits[0] == '0') return std::nullopt;
    for (char c : digits)
        if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    return std::stoi(digits);
}

bool valid_generator_name(const std::string& name) {
    if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
    for (char c : name)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    // Single-letter operation and annotation tokens of the grammar.
    return name != "b" && name != "g" && name != "Q";
}

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& where) {
    for (const auto& [key, _] : obj.items())
        if (!allowed.count(key))
            throw DomainError("config: unknown key \"" + key + "\" in " + where);
}

int get_int(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key))
        throw DomainError("config: missing \"" + std::string(key) + "\" in " + where);
    if (!obj[key].is_number_integer())
        throw DomainError("config: \"" + std::string(key) + "\" in " + where +
                          " must be an integer");
    return obj[key].get<int>();
}

std::string get_string(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key))
        throw DomainError("config: missing \"" + std::string(key) + "\" in " + where);
    if (!obj[key].is_string())
        throw DomainError("config: \"" + std::string(key) + "\" in " + where +
                          " must be a string");
    return obj[key].get<std::string>();
}

// Evaluation context with no operations: plain ring elements only, used for
// relation strings and record arguments.
class RingOnly : public EvalContext {
  public:
    explicit RingOnly(AlgebraPtr a) : a_(std::move(a)) {}
    int p() const override { return a_->p(); }
    AlgElement resolve_atom(const std::string& name,
                            std::optional<int> ann) const override {
        auto idx = a_->gen_index(name);
        if (!idx) throw DomainError("unknown atom " + name);
        check_annotation(name, ann, a_->gen(*idx).degree);
        return AlgElement::generator(a_, *idx);
    }
    AlgElement apply_ops(const OpSeq&, const AlgElement&) const override {
        throw DomainError("operation factors are not allowed in ring-element expressions");
    }
    AlgebraPtr algebra() const override { return a_; }

  private:
    AlgebraPtr a_;
};

} // namespace

ContextConfig parse_context_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw DomainError(std::string("config: ") + e.what());
    }
    if (!doc.is_object()) throw DomainError("config: top level must be an object");
    check_keys(doc, {"prime", "bound", "generators", "relations", "q_values"}, "the config");

    ContextConfig cfg;
    cfg.p = get_int(doc, "prime", "the config");
    if (!is_prime(cfg.p)) throw DomainError("config: \"prime\" must be a prime number");
    cfg.bound = get_int(doc, "bound", "the config");
    if (cfg.bound < 0) throw DomainError("config: \"bound\" must be non-negative");

    if (!doc.contains("generators") || !doc["generators"].is_array())
        throw DomainError("config: \"generators\" must be an array");
    std::set<std::string> seen;
    for (size_t i = 0; i < doc["generators"].size(); ++i) {
        const json& g = doc["generators"][i];
        const std::string where = "generators[" + std::to_string(i) + "]";
        if (!g.is_object()) throw DomainError("config: " + where + " must be an object");
        check_keys(g, {"name", "degree"}, where);
        GeneratorSpec spec;
        spec.name = get_string(g, "name", where);
        if (!valid_generator_name(spec.name))
            throw DomainError("config: " + where + " has an invalid name \"" + spec.name +
                              "\"");
        if (!seen.insert(spec.name).second)
            throw DomainError("config: duplicate generator name \"" + spec.name + "\"");
        spec.degree = get_int(g, "degree", where);
        if (spec.degree < 1)
            throw DomainError("config: " + where + " must have degree >= 1");
        spec.exterior = cfg.p != 2 && spec.degree % 2 == 1;
        cfg.generators.push_back(std::move(spec));
    }

    if (doc.contains("relations")) {
        if (!doc["relations"].is_array())
            throw DomainError("config: \"relations\" must be an array");
        for (size_t i = 0; i < doc["relations"].size(); ++i) {
            const json& r = doc["relations"][i];
            if (!r.is_string())
                throw DomainError("config: relations[" + std::to_string(i) +
                                  "] must be a string");
            cfg.relations.push_back(r.get<std::string>());
        }
    }

    if (doc.contains("q_values")) {
        if (!doc["q_values"].is_array())
            throw DomainError("config: \"q_values\" must be an array");
        for (size_t i = 0; i < doc["q_values"].size(); ++i) {
            const json& q = doc["q_values"][i];
            const std::string where = "q_values[" + std::to_string(i) + "]";
            if (!q.is_object()) throw DomainError("config: " + where + " must be an object");
            check_keys(q, {"eps", "s", "arg", "value"}, where);
            QValueConfig qv;
            if (q.contains("eps")) {
                qv.eps = get_int(q, "eps", where);
                if (qv.eps != 0 && qv.eps != 1)
                    throw DomainError("config: " + where + " must have eps 0 or 1");
            }
            qv.s = get_int(q, "s", where);
            if (qv.s < 0) throw DomainError("config: " + where + " must have s >= 0");
            qv.arg = get_string(q, "arg", where);
            qv.value = get_string(q, "value", where);
            cfg.q_values.push_back(std::move(qv));
        }
    }
    return cfg;
}

Presentation build_presentation(const ContextConfig& cfg) {
    AlgebraPtr alg = Algebra::make(cfg.p, cfg.bound, cfg.generators);
    RingOnly ring(alg);
    std::vector<AlgElement> relations;
    for (size_t i = 0; i < cfg.relations.size(); ++i) {
        try {
            relations.push_back(eval_expression(cfg.relations[i], ring));
        } catch (const EngineError& e) {
            throw DomainError("config: relations[" + std::to_string(i) + "]: " + e.what());
        }
    }
    Presentation pres(alg, std::move(relations));
    for (size_t i = 0; i < cfg.q_values.size(); ++i) {
        const QValueConfig& qv = cfg.q_values[i];
        try {
            AlgElement arg = pres.reduce(eval_expression(qv.arg, ring));
            AlgElement value = pres.reduce(eval_expression(qv.value, ring));
            pres.record_q(qv.eps, qv.s, arg, value);
        } catch (const EngineError& e) {
            throw DomainError("config: q_values[" + std::to_string(i) + "]: " + e.what());
        }
    }
    return pres;
}

DualContext::DualContext(SteenrodDualPtr dual, Side side)
    : dual_(std::move(dual)), side_(side) {}

AlgElement DualContext::resolve_atom(const std::string& name,
                                     std::optional<int> ann_degree) const {
    const AlgebraPtr& A = dual_->algebra();
    AlgElement el;
    if (auto idx = A->gen_index(name)) {
        el = AlgElement::generator(A, *idx);
    } else if (auto r = name_suffix(name, "taubar")) {
        el = dual_->taubar_in_milnor(*r);
    } else if (auto r = name_suffix(name, "zeta")) {
        el = dual_->zeta_in_xi(*r);
    } else {
        throw DomainError("unknown atom " + name);
    }
    if (ann_degree && !el.is_zero()) check_annotation(name, ann_degree, el.degrees().front());
    return el;
}

AlgElement DualContext::apply_ops(const OpSeq& ops, const AlgElement& x) const {
    return dual_->q_act(side_, ops, x);
}

std::string DualContext::render(const AlgElement& x) const {
    if (dual_->p() == 2) return x.str();
    // Odd p: display in the conjugate coordinate system.
    const AlgebraPtr& A = dual_->algebra();
    std::vector<AlgElement> images;
    for (size_t i = 0; i < A->gen_count(); ++i) {
        const std::string& name = A->gen(i).name;
        if (auto r = name_suffix(name, "xi"))
            images.push_back(dual_->xi_in_zeta(*r));
        else if (auto s = name_suffix(name, "tau"))
            images.push_back(dual_->tau_in_conjugate(*s));
        else
            throw DomainError("unexpected dual generator " + name);
    }
    return substitute(x, dual_->conjugate_algebra(), images).str();
}

PresentationContext::PresentationContext(Presentation pres) : pres_(std::move(pres)) {}

int PresentationContext::p() const { return pres_.p(); }

AlgElement PresentationContext::resolve_atom(const std::string& name,
                                             std::optional<int> ann_degree) const {
    const AlgebraPtr& A = pres_.algebra();
    auto idx = A->gen_index(name);
    if (!idx) throw DomainError("unknown atom " + name);
    check_annotation(name, ann_degree, A->gen(*idx).degree);
    return AlgElement::generator(A, *idx);
}

AlgElement PresentationContext::apply_ops(const OpSeq& ops, const AlgElement& x) const {
    SeqPoly normal = adem_normalize(ops, pres_.p());
    AlgElement out = AlgElement::zero(pres_.algebra());
    for (const auto& [word, coeff] : normal) {
        AlgElement cur = pres_.reduce(x);
        // f[0] is outermost, so factors apply right to left.
        for (auto it = word.f.rbegin(); it != word.f.rend(); ++it) {
            auto r = resolve_q(pres_, it->eps, it->idx, cur);
            if (!r)
                throw MissingTableEntry("recorded", seq_str(OpSeq{{*it}}), cur.str());
            cur = *r;
        }
        out = out + cur.scaled(coeff);
    }
    return out;
}

AlgElement PresentationContext::post_reduce(const AlgElement& x) const {
    return pres_.reduce(x);
}

AlgebraPtr PresentationContext::algebra() const { return pres_.algebra(); }

std::vector<std::string> builtin_context_names() { return {"p2-dual", "p3-dual"}; }

std::unique_ptr<EvalContext> builtin_context(const std::string& name, int bound, Side side) {
    if (name == "p2-dual") return dual_context(2, bound, side);
    if (name == "p3-dual") return dual_context(3, bound, side);
    throw DomainError("unknown context \"" + name + "\"; builtins are p2-dual, p3-dual");
}

std::unique_ptr<EvalContext> dual_context(int p, int bound, Side side) {
    return std::make_unique<DualContext>(SteenrodDual::make(p, bound), side);
}

std::unique_ptr<EvalContext> config_context(const ContextConfig& cfg) {
    return std::make_unique<PresentationContext>(build_presentation(cfg));
}

std::string eval_in_context(const std::string& expr, const EvalContext& ctx) {
    return ctx.render(eval_expression(expr, ctx));
}

} // namespace dlops
