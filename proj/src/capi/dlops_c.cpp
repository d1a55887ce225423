#include "dlops/dlops.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "core/classify.hpp"
#include "core/context.hpp"
#include "core/errors.hpp"
#include "core/scenario.hpp"
#include "core/unstable.hpp"
#include "json.hpp"

using nlohmann::ordered_json;

// Owner of the C++ context behind the opaque handle.
struct dlops_context {
    std::unique_ptr<dlops::EvalContext> ctx;
};

namespace {

thread_local std::string tl_error;
thread_local int tl_pos = -1;

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

dlops_status fail(dlops_status code, const std::string& msg, int pos = -1) {
    tl_error = msg;
    tl_pos = pos;
    return code;
}

// Hands a string to the caller, or reports allocation failure.
dlops_status yield_string(const std::string& s, char** out) {
    *out = dup_string(s);
    return *out != nullptr ? DLOPS_OK : fail(DLOPS_E_INTERNAL, "allocation failed");
}

// Runs the body with the thread-local error slot cleared, mapping engine
// exceptions onto status codes.
template <class F>
dlops_status guarded(F&& body) {
    tl_error.clear();
    tl_pos = -1;
    try {
        return body();
    } catch (const dlops::ParseError& e) {
        return fail(DLOPS_E_PARSE, e.what(), static_cast<int>(e.pos));
    } catch (const dlops::BoundError& e) {
        return fail(DLOPS_E_BOUND, e.what());
    } catch (const dlops::MissingTableEntry& e) {
        return fail(DLOPS_E_MISSING_TABLE, e.what());
    } catch (const dlops::BudgetError& e) {
        return fail(DLOPS_E_BUDGET, e.what());
    } catch (const dlops::EngineError& e) {
        return fail(DLOPS_E_DOMAIN, e.what());
    } catch (const std::exception& e) {
        return fail(DLOPS_E_INTERNAL, e.what());
    }
}

std::vector<std::string> split_names(const char* names) {
    std::vector<std::string> out;
    if (names == nullptr) return out;
    std::string cur;
    for (const char* c = names; *c != '\0'; ++c) {
        if (*c == ',' || *c == ' ' || *c == '\n' || *c == '\t') {
            if (!cur.empty()) out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += *c;
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

}  // namespace

extern "C" {

const char* dlops_version(void) { return "1.0.0"; }

const char* dlops_last_error(void) { return tl_error.c_str(); }

int dlops_last_error_pos(void) { return tl_pos; }

void dlops_string_free(char* s) { std::free(s); }

dlops_status dlops_context_builtins(char** out) {
    if (out == nullptr) return fail(DLOPS_E_INVALID_ARG, "out must be non-null");
    *out = nullptr;
    return guarded([&] {
        std::string joined;
        for (const auto& name : dlops::builtin_context_names()) {
            if (!joined.empty()) joined += '\n';
            joined += name;
        }
        return yield_string(joined, out);
    });
}

dlops_status dlops_context_builtin(const char* name, int bound, int right_action,
                                   dlops_context** out) {
    if (name == nullptr || out == nullptr)
        return fail(DLOPS_E_INVALID_ARG, "name and out must be non-null");
    *out = nullptr;
    return guarded([&] {
        auto side = right_action != 0 ? dlops::Side::Right : dlops::Side::Left;
        int effective = bound <= 0 ? -1 : bound;
        *out = new dlops_context{dlops::builtin_context(name, effective, side)};
        return DLOPS_OK;
    });
}

dlops_status dlops_context_dual(int p, int bound, int right_action, dlops_context** out) {
    if (out == nullptr) return fail(DLOPS_E_INVALID_ARG, "out must be non-null");
    *out = nullptr;
    return guarded([&] {
        auto side = right_action != 0 ? dlops::Side::Right : dlops::Side::Left;
        int effective = bound <= 0 ? -1 : bound;
        *out = new dlops_context{dlops::dual_context(p, effective, side)};
        return DLOPS_OK;
    });
}

dlops_status dlops_context_from_config_text(const char* json_text, dlops_context** out) {
    if (json_text == nullptr || out == nullptr)
        return fail(DLOPS_E_INVALID_ARG, "json_text and out must be non-null");
    *out = nullptr;
    return guarded([&] {
        auto cfg = dlops::parse_context_config(json_text);
        *out = new dlops_context{dlops::config_context(cfg)};
        return DLOPS_OK;
    });
}

dlops_status dlops_context_from_config_file(const char* path, dlops_context** out) {
    if (path == nullptr || out == nullptr)
        return fail(DLOPS_E_INVALID_ARG, "path and out must be non-null");
    *out = nullptr;
    std::ifstream in(path, std::ios::binary);
    if (!in) return fail(DLOPS_E_IO, std::string("cannot read config file \"") + path + "\"");
    std::ostringstream text;
    text << in.rdbuf();
    return dlops_context_from_config_text(text.str().c_str(), out);
}

void dlops_context_free(dlops_context* ctx) { delete ctx; }

dlops_status dlops_context_prime(const dlops_context* ctx, int* out) {
    if (ctx == nullptr || out == nullptr)
        return fail(DLOPS_E_INVALID_ARG, "ctx and out must be non-null");
    return guarded([&] {
        *out = ctx->ctx->p();
        return DLOPS_OK;
    });
}

dlops_status dlops_eval(const dlops_context* ctx, const char* expr, char** out) {
    if (ctx == nullptr || expr == nullptr || out == nullptr)
        return fail(DLOPS_E_INVALID_ARG, "ctx, expr, and out must be non-null");
    *out = nullptr;
    return guarded([&] { return yield_string(dlops::eval_in_context(expr, *ctx->ctx), out); });
}

dlops_status dlops_scenario_list(char** out) {
    if (out == nullptr) return fail(DLOPS_E_INVALID_ARG, "out must be non-null");
    *out = nullptr;
    return guarded([&] {
        std::string joined;
        for (const auto& name : dlops::scenario_names()) {
            if (!joined.empty()) joined += '\n';
            joined += name;
        }
        return yield_string(joined, out);
    });
}

dlops_status dlops_scenario_run(const char* names, int parallel, int* all_pass,
                                char** out_json) {
    if (all_pass == nullptr || out_json == nullptr)
        return fail(DLOPS_E_INVALID_ARG, "all_pass and out_json must be non-null");
    *out_json = nullptr;
    return guarded([&] {
        auto reports = dlops::run_scenarios(split_names(names), parallel != 0);
        bool ok = true;
        for (const auto& rep : reports) ok = ok && rep.all_pass;
        *all_pass = ok ? 1 : 0;
        return yield_string(dlops::reports_json(reports), out_json);
    });
}

dlops_status dlops_classify_table(int p, int n_max, char** out_json) {
    if (out_json == nullptr) return fail(DLOPS_E_INVALID_ARG, "out_json must be non-null");
    *out_json = nullptr;
    return guarded([&] {
        auto rows = dlops::classify_table(p, n_max);
        ordered_json doc;
        doc["schema"] = "dlops-classify/1";
        doc["p"] = p;
        doc["n_max"] = n_max;
        doc["rows"] = ordered_json::array();
        for (const auto& row : rows) {
            ordered_json r;
            r["n"] = row.n;
            r["hz_classes"] = row.hz_count;
            r["s_classes"] = row.s_count;
            if (row.has_collapse) {
                r["collapse"] = row.collapse ? "COLLAPSE" : "NO COLLAPSE";
                r["provenance"] = row.provenance;
            } else {
                r["collapse"] = nullptr;
                r["provenance"] = nullptr;
            }
            doc["rows"].push_back(std::move(r));
        }
        return yield_string(doc.dump(2), out_json);
    });
}

dlops_status dlops_unstable_report(const char* config_json, char** out_json) {
    if (config_json == nullptr || out_json == nullptr)
        return fail(DLOPS_E_INVALID_ARG, "config_json and out_json must be non-null");
    *out_json = nullptr;
    return guarded([&] {
        ordered_json doc;
        try {
            doc = ordered_json::parse(config_json);
        } catch (const ordered_json::parse_error& e) {
            throw dlops::DomainError(std::string("config: ") + e.what());
        }
        if (!doc.is_object()) throw dlops::DomainError("config: top level must be an object");
        for (const auto& [key, value] : doc.items()) {
            (void)value;
            if (key != "prime" && key != "n_max" && key != "generators")
                throw dlops::DomainError("config: unknown key \"" + key + "\"");
        }
        if (!doc.contains("prime") || !doc["prime"].is_number_integer())
            throw dlops::DomainError("config: \"prime\" must be an integer");
        if (!doc.contains("n_max") || !doc["n_max"].is_number_integer())
            throw dlops::DomainError("config: \"n_max\" must be an integer");
        if (!doc.contains("generators") || !doc["generators"].is_array())
            throw dlops::DomainError("config: \"generators\" must be an array");
        int p = doc["prime"].get<int>();
        int n_max = doc["n_max"].get<int>();
        std::vector<dlops::UnstableInput> inputs;
        for (const auto& g : doc["generators"]) {
            if (!g.is_object() || !g.contains("name") || !g["name"].is_string() ||
                !g.contains("degree") || !g["degree"].is_number_integer())
                throw dlops::DomainError(
                    "config: each generator needs a string \"name\" and integer \"degree\"");
            inputs.push_back({g["name"].get<std::string>(), g["degree"].get<int>()});
        }

        auto generators = dlops::enumerate_generators(p, inputs, n_max);
        auto dims = dlops::free_unstable_poincare(p, inputs, n_max);

        ordered_json rep;
        rep["schema"] = "dlops-unstable/1";
        rep["p"] = p;
        rep["n_max"] = n_max;
        rep["generators"] = ordered_json::array();
        for (const auto& g : generators)
            rep["generators"].push_back({{"word", g.str()}, {"degree", g.degree}});
        rep["poincare"] = dims;
        return yield_string(rep.dump(2), out_json);
    });
}

}  // extern "C"
