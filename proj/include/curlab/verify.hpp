#pragma once

#include <string>
#include <vector>

#include "curlab/battery.hpp"
#include "curlab/serialize.hpp"

namespace curlab {

struct Assertion {
    std::string name;
    bool pass = false;
    Json detail;  // counterexample payload on failure, case counts otherwise
};

struct SuiteResult {
    std::string suite;
    std::string scenario_id;
    std::vector<Assertion> assertions;
    bool all_pass() const;
};

/// Canonical suite names, in execution order.
std::vector<std::string> suite_names();

/// Resolves a suite name or one of its shorthand aliases. Throws ConfigError.
std::string canonical_suite_name(const std::string& name);

/// Runs one suite (or "all") over a scenario battery.
std::vector<SuiteResult> run_suite(const std::string& suite,
                                   const std::vector<BatteryEntry>& battery);

Json suite_results_to_json(const std::vector<SuiteResult>& results);

}  // namespace curlab
