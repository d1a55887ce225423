#include "doctest.h"

#include "core/scenario.hpp"
#include "core/errors.hpp"

#include <algorithm>
#include <set>
#include <string>

using namespace dlops;

TEST_CASE("scenario registry lists every scenario in a stable order") {
    const std::vector<std::string> expected = {
        "example-fp-p2",
        "example-fp-odd",
        "dual-steenrod-identities",
        "lemma-lowest-generator",
        "tor-exterior",
        "classify-table",
        "transfer-theorem7",
        "rewrite-properties",
        "empty",
    };
    CHECK(scenario_names() == expected);
    for (const auto& name : expected) CHECK(scenario_exists(name));
    CHECK_FALSE(scenario_exists("no-such-scenario"));
}

TEST_CASE("every registered scenario passes all of its assertions") {
    for (const auto& name : scenario_names()) {
        CAPTURE(name);
        ScenarioReport rep = run_scenario(name);
        CHECK(rep.name == name);
        CHECK(rep.all_pass);
        for (const auto& a : rep.assertions) {
            CAPTURE(a.name);
            CHECK(a.pass);
            CHECK(a.expected == a.actual);
        }
    }
}

TEST_CASE("unknown scenario names are rejected") {
    CHECK_THROWS_AS(run_scenario("no-such-scenario"), DomainError);
    CHECK_THROWS_AS(run_scenarios({"empty", "bogus"}, false), DomainError);
}

TEST_CASE("the empty scenario carries no assertions and passes") {
    ScenarioReport rep = run_scenario("empty");
    CHECK(rep.assertions.empty());
    CHECK(rep.all_pass);
}

TEST_CASE("assertion provenance is drawn from the fixed vocabulary") {
    const std::set<std::string> allowed = {"reference", "derived", "trivial", "config"};
    for (const auto& rep : run_scenarios({}, false))
        for (const auto& a : rep.assertions) {
            CAPTURE(rep.name);
            CAPTURE(a.name);
            CHECK(allowed.count(a.provenance) == 1);
        }
}

TEST_CASE("reports are deterministic and carry the schema tag") {
    auto first = run_scenarios({}, false);
    auto second = run_scenarios({}, false);
    std::string a = reports_json(first);
    std::string b = reports_json(second);
    CHECK(a == b);
    CHECK(a.find("\"schema\": \"dlops-report/1\"") != std::string::npos);
    // The payload is time-free so identical runs serialize to identical bytes.
    CHECK(a.find("time") == std::string::npos);
    CHECK(a.find("duration") == std::string::npos);

    std::string single1 = report_json(run_scenario("classify-table"));
    std::string single2 = report_json(run_scenario("classify-table"));
    CHECK(single1 == single2);
    CHECK(single1.find("\"schema\": \"dlops-report/1\"") != std::string::npos);
}

TEST_CASE("parallel execution returns the same reports as sequential") {
    auto seq = run_scenarios({}, false);
    auto par = run_scenarios({}, true);
    REQUIRE(seq.size() == par.size());
    CHECK(reports_json(seq) == reports_json(par));

    auto subset_seq = run_scenarios({"empty", "classify-table"}, false);
    auto subset_par = run_scenarios({"classify-table", "empty"}, true);
    REQUIRE(subset_seq.size() == 2);
    REQUIRE(subset_par.size() == 2);
    // Results come back in request order regardless of completion order.
    CHECK(subset_seq[0].name == "empty");
    CHECK(subset_par[0].name == "classify-table");
    CHECK(report_json(subset_seq[1]) == report_json(subset_par[0]));
}

TEST_CASE("report JSON exposes each assertion's fields") {
    ScenarioReport rep = run_scenario("classify-table");
    std::string text = report_json(rep);
    CHECK(text.find("\"name\": \"classify-table\"") != std::string::npos);
    CHECK(text.find("\"all_pass\": true") != std::string::npos);
    CHECK(text.find("\"provenance\"") != std::string::npos);
    CHECK(text.find("\"expected\"") != std::string::npos);
    CHECK(text.find("\"actual\"") != std::string::npos);
    CHECK(text.find("\"pass\": true") != std::string::npos);
}
