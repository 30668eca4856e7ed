#pragma once

#include <string>

#include <json.hpp>

#include "curlab/equilibrium.hpp"
#include "curlab/montecarlo.hpp"

namespace curlab {

using Json = nlohmann::json;

// Rationals serialize as "num/den" strings throughout.

Json strategy_to_json(const Strategy& s);
Strategy strategy_from_json(const Json& j);

Json profile_to_json(const StrategyProfile& profile);
StrategyProfile profile_from_json(const Json& j);

/// Profile text format: "p,q;p,q;..." with rationals as num/den or integers.
StrategyProfile parse_profile(const std::string& text, int n_agents);
std::string format_profile(const StrategyProfile& profile);

Json price_function_to_json(const PriceFunction& pf);
PriceFunction price_function_from_json(const Json& j);

Json scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const Json& j);
Scenario load_scenario_file(const std::string& path);

Json certificate_to_json(const EquilibriumCertificate& cert);
Json uniqueness_report_to_json(const UniquenessReport& report);
Json equivalence_report_to_json(const EquivalenceReport& report);

/// Line-delimited trial records followed by one summary line. `exact` holds
/// the exact expected profits the summary reports deltas against.
std::string transcript_to_jsonl(const Transcript& transcript, const std::vector<Rat>& exact);

Json rat_json(const Rat& value);

}  // namespace curlab
