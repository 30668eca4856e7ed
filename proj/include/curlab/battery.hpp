#pragma once

#include <string>
#include <vector>

#include "curlab/model.hpp"

namespace curlab {

struct BatteryEntry {
    std::string id;
    Scenario scenario;
};

/// Pseudo-random truth table derived from a fixed seed (SplitMix64 bits).
SocialFunction random_truth_table(int n_agents, std::uint64_t seed);

/// The in-repo scenario battery: five two-agent social functions, each at
/// price weights 1/10, 1/5 and 3/5, covering all four combinations of
/// (helpless center?) x (fanatic agent?).
std::vector<BatteryEntry> standard_battery();

/// Scenario from the battery by id, e.g. "parity3:w=1/10".
const Scenario& battery_scenario(const std::string& id);

}  // namespace curlab
