#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dlops/dlops.h"
#include "json.hpp"

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// Releases library strings on scope exit.
struct CStr {
    char* s = nullptr;
    ~CStr() { dlops_string_free(s); }
    std::string str() const { return s != nullptr ? std::string(s) : std::string(); }
};

// Releases context handles on scope exit.
struct Ctx {
    dlops_context* c = nullptr;
    ~Ctx() { dlops_context_free(c); }
};

// Prints the library's last error; for parse errors on a known input, adds
// a caret line under the offending byte.
int report_error(const std::string& input = "") {
    std::cerr << "error: " << dlops_last_error() << "\n";
    int pos = dlops_last_error_pos();
    if (pos >= 0 && !input.empty() && static_cast<size_t>(pos) <= input.size()) {
        std::cerr << "  " << input << "\n  " << std::string(static_cast<size_t>(pos), ' ')
                  << "^\n";
    }
    return 1;
}

bool is_builtin_context(const std::string& name) {
    CStr names;
    if (dlops_context_builtins(&names.s) != DLOPS_OK) return false;
    std::istringstream in(names.str());
    std::string line;
    while (std::getline(in, line))
        if (line == name) return true;
    return false;
}

int run_eval(const std::string& expr, const std::string& context, int p, int bound, bool right,
             bool as_json) {
    Ctx ctx;
    std::string label;
    dlops_status st;
    if (!context.empty()) {
        label = context;
        if (is_builtin_context(context)) {
            st = dlops_context_builtin(context.c_str(), bound, right ? 1 : 0, &ctx.c);
        } else {
            if (right) {
                std::cerr << "error: --right applies to dual-algebra contexts only\n";
                return 1;
            }
            st = dlops_context_from_config_file(context.c_str(), &ctx.c);
        }
    } else {
        label = "p" + std::to_string(p) + "-dual";
        st = dlops_context_dual(p, bound, right ? 1 : 0, &ctx.c);
    }
    if (st != DLOPS_OK) return report_error();

    CStr result;
    if (dlops_eval(ctx.c, expr.c_str(), &result.s) != DLOPS_OK) return report_error(expr);
    if (as_json) {
        ordered_json doc;
        doc["schema"] = "dlops-eval/1";
        doc["expr"] = expr;
        doc["context"] = label;
        doc["result"] = result.str();
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << result.str() << "\n";
    }
    return 0;
}

int run_scenario_cmd(const std::vector<std::string>& names, bool list, bool parallel,
                     bool as_json) {
    if (list) {
        CStr out;
        if (dlops_scenario_list(&out.s) != DLOPS_OK) return report_error();
        std::cout << out.str() << "\n";
        return 0;
    }

    std::string joined;
    for (const auto& name : names) {
        if (!joined.empty()) joined += ',';
        joined += name;
    }

    auto start = std::chrono::steady_clock::now();
    int all_pass = 0;
    CStr out;
    if (dlops_scenario_run(joined.c_str(), parallel ? 1 : 0, &all_pass, &out.s) != DLOPS_OK)
        return report_error();
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();

    if (as_json) {
        // The payload is deterministic; keep the wall time out of it.
        std::cout << out.str() << "\n";
        std::cerr << "wall time: " << elapsed << " ms\n";
        return all_pass != 0 ? 0 : 1;
    }

    auto doc = json::parse(out.str());
    for (const auto& rep : doc["scenarios"]) {
        std::cout << (rep["all_pass"].get<bool>() ? "PASS" : "FAIL") << "  "
                  << rep["name"].get<std::string>() << " — " << rep["title"].get<std::string>()
                  << "\n";
        for (const auto& a : rep["assertions"]) {
            bool pass = a["pass"].get<bool>();
            std::cout << "  " << (pass ? "ok  " : "FAIL") << " ["
                      << a["provenance"].get<std::string>() << "] "
                      << a["name"].get<std::string>() << "\n";
            if (!pass) {
                std::cout << "       expected: " << a["expected"].get<std::string>() << "\n"
                          << "       actual:   " << a["actual"].get<std::string>() << "\n";
            }
        }
    }
    std::cout << (all_pass != 0 ? "all assertions passed" : "assertion failures present")
              << " (wall time " << elapsed << " ms)\n";
    return all_pass != 0 ? 0 : 1;
}

int run_classify(int p, int n_max, bool as_json) {
    CStr out;
    if (dlops_classify_table(p, n_max, &out.s) != DLOPS_OK) return report_error();
    if (as_json) {
        std::cout << out.str() << "\n";
        return 0;
    }
    auto doc = json::parse(out.str());
    std::cout << std::left << std::setw(4) << "n" << std::setw(12) << "HZ-classes"
              << std::setw(11) << "S-classes" << std::setw(13) << "collapse"
              << "provenance\n";
    for (const auto& row : doc["rows"]) {
        std::string verdict = row["collapse"].is_null() ? "-" : row["collapse"].get<std::string>();
        std::string prov = row["provenance"].is_null() ? "-" : row["provenance"].get<std::string>();
        std::cout << std::left << std::setw(4) << row["n"].get<int>() << std::setw(12)
                  << row["hz_classes"].get<int>() << std::setw(11) << row["s_classes"].get<int>()
                  << std::setw(13) << verdict << prov << "\n";
    }
    return 0;
}

int run_unstable(int p, int n_max, const std::vector<std::string>& gen_specs,
                 const std::string& config_path, bool as_json) {
    std::string config;
    if (!config_path.empty()) {
        std::ifstream in(config_path, std::ios::binary);
        if (!in) {
            std::cerr << "error: cannot read config file \"" << config_path << "\"\n";
            return 1;
        }
        std::ostringstream text;
        text << in.rdbuf();
        config = text.str();
    } else {
        ordered_json doc;
        doc["prime"] = p;
        doc["n_max"] = n_max;
        doc["generators"] = ordered_json::array();
        for (const auto& spec : gen_specs) {
            auto at = spec.find('@');
            int degree = 0;
            if (at != std::string::npos && at > 0) {
                try {
                    size_t used = 0;
                    degree = std::stoi(spec.substr(at + 1), &used);
                    if (used != spec.size() - at - 1) degree = 0;
                } catch (const std::exception&) {
                    degree = 0;
                }
            }
            if (degree <= 0) {
                std::cerr << "error: --gen expects name@degree with a positive degree, got \""
                          << spec << "\"\n";
                return 1;
            }
            doc["generators"].push_back({{"name", spec.substr(0, at)}, {"degree", degree}});
        }
        config = doc.dump();
    }

    CStr out;
    if (dlops_unstable_report(config.c_str(), &out.s) != DLOPS_OK) return report_error();
    if (as_json) {
        std::cout << out.str() << "\n";
        return 0;
    }
    auto doc = json::parse(out.str());
    std::cout << "free generators through degree " << doc["n_max"].get<int>() << ":\n";
    for (const auto& g : doc["generators"])
        std::cout << "  " << std::setw(4) << g["degree"].get<int>() << "  "
                  << g["word"].get<std::string>() << "\n";
    std::cout << "dimensions by degree:";
    for (const auto& d : doc["poincare"]) std::cout << " " << d.get<int>();
    std::cout << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Symbolic engine for mod-p operations on graded-commutative algebras"};
    app.set_version_flag("--version", dlops_version());
    app.require_subcommand(1);

    std::string expr, context, config_path;
    std::vector<std::string> names, gen_specs;
    int p = 2, bound = 0, n_max = 10;
    bool right = false, as_json = false, parallel = false, list = false;

    auto* eval = app.add_subcommand("eval", "Evaluate an expression to printed normal form");
    eval->add_option("expr", expr, "Expression in the operation grammar")->required();
    eval->add_option("--context", context, "Built-in context name or config file path");
    eval->add_option("--p", p, "Prime for the default dual-algebra context")
        ->check(CLI::PositiveNumber);
    eval->add_option("--bound", bound, "Degree bound (0 selects the engine default)");
    eval->add_flag("--right", right, "Evaluate the right-sided action");
    eval->add_flag("--json", as_json, "Emit JSON");

    auto* scenario = app.add_subcommand("scenario", "Run named verification scenarios");
    scenario->add_option("names", names, "Scenario names (default: all)");
    scenario->add_flag("--list", list, "List registered scenarios and exit");
    scenario->add_flag("--parallel", parallel, "Fan scenarios out across threads");
    scenario->add_flag("--json", as_json, "Emit the JSON report");

    auto* classify = app.add_subcommand("classify", "Extension-class counts and collapse verdicts");
    classify->add_option("--p", p, "Prime")->required()->check(CLI::PositiveNumber);
    classify->add_option("--n-max", n_max, "Largest degree to tabulate");
    classify->add_flag("--json", as_json, "Emit JSON");

    auto* unstable = app.add_subcommand("unstable", "Free unstable-algebra generators and dimensions");
    unstable->add_option("--p", p, "Prime")->check(CLI::PositiveNumber);
    unstable->add_option("--n-max", n_max, "Largest degree to report");
    unstable->add_option("--gen", gen_specs, "Input generator as name@degree (repeatable)");
    unstable->add_option("--config", config_path, "JSON config file instead of flags");
    unstable->add_flag("--json", as_json, "Emit JSON");

    CLI11_PARSE(app, argc, argv);

    if (*eval) return run_eval(expr, context, p, bound, right, as_json);
    if (*scenario) return run_scenario_cmd(names, list, parallel, as_json);
    if (*classify) return run_classify(p, n_max, as_json);
    if (*unstable) return run_unstable(p, n_max, gen_specs, config_path, as_json);
    return 1;
}
