#pragma once
#include <string>
#include <vector>

namespace dlops {

// One checked equality inside a scenario; pass means expected == actual.
struct Assertion {
    std::string name;
    std::string expected;
    std::string actual;
    std::string provenance; // "reference" | "derived" | "trivial" | "config"
    bool pass = false;
};

struct ScenarioReport {
    std::string name;
    std::string title;
    std::vector<Assertion> assertions;
    bool all_pass = true;
};

// Registered scenario names in their canonical run order.
std::vector<std::string> scenario_names();
bool scenario_exists(const std::string& name);

// Runs one scenario; unknown names throw DomainError.  Reports are
// deterministic: identical builds produce identical assertion lists.
ScenarioReport run_scenario(const std::string& name);

// Runs the given scenarios (all registered ones when names is empty), in
// registry order; parallel fans the work out across threads.
std::vector<ScenarioReport> run_scenarios(std::vector<std::string> names, bool parallel);

// Stable JSON renderings (schema dlops-report/1, insertion-ordered keys, no
// timing data, byte-identical across runs).
std::string report_json(const ScenarioReport& rep, int indent = 2);
std::string reports_json(const std::vector<ScenarioReport>& reps, int indent = 2);

} // namespace dlops
