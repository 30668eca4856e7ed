#include "curlab/verify.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "curlab/equilibrium.hpp"
#include "curlab/errors.hpp"

namespace curlab {

namespace {

// Recorder for one (suite, scenario) pair. An assertion aggregates a family
// of exact checks; the first failing case is kept as the counterexample.
class Recorder {
public:
    Recorder(std::string suite, std::string scenario_id)
        : result_{std::move(suite), std::move(scenario_id), {}} {}

    void begin(const std::string& name) {
        result_.assertions.push_back({name, true, Json{{"cases", 0}}});
    }

    void require(bool ok, const std::function<Json()>& counterexample) {
        Assertion& a = result_.assertions.back();
        a.detail["cases"] = a.detail["cases"].get<int>() + 1;
        if (!ok && a.pass) {
            a.pass = false;
            a.detail["counterexample"] = counterexample();
        }
    }

    SuiteResult take() { return std::move(result_); }

private:
    SuiteResult result_;
};

StrategyProfile pattern_profile(int n, const Strategy& first, const Strategy& rest) {
    StrategyProfile profile = uniform_profile(n, rest);
    profile.agent(1) = first;
    return profile;
}

// Mixed evaluation points used by the profit / monotonicity suites.
std::vector<StrategyProfile> sample_profiles(int n) {
    return {
        uniform_profile(n, truthful_strategy()),
        uniform_profile(n, zero_information_strategy(rat(1, 2))),
        pattern_profile(n, truthful_strategy(), {rat(3, 5), rat(3, 5)}),
        pattern_profile(n, {rat(9, 10), rat(1, 10)}, zero_information_strategy(rat(1, 2))),
        pattern_profile(n, {rat(1, 4), rat(3, 4)}, {rat(2, 3), rat(1, 3)}),
    };
}

// All profiles over a small strategy alphabet; 5^N points.
std::vector<StrategyProfile> small_profile_set(int n) {
    const std::vector<Strategy> alphabet = {
        truthful_strategy(),          zero_information_strategy(rat(0, 1)),
        zero_information_strategy(rat(1, 2)), {rat(3, 4), rat(1, 4)},
        {rat(1, 4), rat(3, 4)},
    };
    std::vector<StrategyProfile> out;
    std::vector<std::size_t> counter(static_cast<std::size_t>(n), 0);
    StrategyProfile profile = uniform_profile(n, alphabet.front());
    while (true) {
        out.push_back(profile);
        std::size_t pos = 0;
        while (pos < counter.size()) {
            if (++counter[pos] < alphabet.size()) {
                profile.strategies[pos] = alphabet[counter[pos]];
                break;
            }
            counter[pos] = 0;
            profile.strategies[pos] = alphabet[0];
            ++pos;
        }
        if (pos == counter.size()) break;
    }
    return out;
}

// All profiles on the exhaustive G=2 subgrid; 9^N points.
std::vector<StrategyProfile> subgrid_profiles(int n) {
    const std::vector<Strategy> strategies = StrategyGrid{2}.strategies();
    std::vector<StrategyProfile> out;
    std::vector<std::size_t> counter(static_cast<std::size_t>(n), 0);
    StrategyProfile profile = uniform_profile(n, strategies.front());
    while (true) {
        out.push_back(profile);
        std::size_t pos = 0;
        while (pos < counter.size()) {
            if (++counter[pos] < strategies.size()) {
                profile.strategies[pos] = strategies[counter[pos]];
                break;
            }
            counter[pos] = 0;
            profile.strategies[pos] = strategies[0];
            ++pos;
        }
        if (pos == counter.size()) break;
    }
    return out;
}

std::vector<Rat> garble_levels() {
    return {rat(1, 2), rat(3, 4), rat(1, 1)};
}

std::vector<std::vector<Rat>> noise_vectors(int n) {
    const std::vector<Rat> levels = garble_levels();
    std::vector<std::vector<Rat>> out;
    std::vector<std::size_t> counter(static_cast<std::size_t>(n) + 1, 0);
    while (true) {
        std::vector<Rat> z;
        for (const auto c : counter) z.push_back(levels[c]);
        out.push_back(std::move(z));
        std::size_t pos = 0;
        while (pos < counter.size()) {
            if (++counter[pos] < levels.size()) break;
            counter[pos] = 0;
            ++pos;
        }
        if (pos == counter.size()) break;
    }
    return out;
}

std::vector<Protocol> comparison_protocols(int n) {
    std::vector<Protocol> out = {make_fmin(), make_fmax(), make_competitive(),
                                 make_fair_competitive(), improve(make_fmin())};
    out.push_back(garble(make_fmax(), std::vector<Rat>(static_cast<std::size_t>(n) + 1, rat(3, 4))));
    return out;
}

Json case_json(const std::string& scenario_id, const StrategyProfile& profile,
               const std::string& protocol, int agent) {
    return Json{{"scenario", scenario_id},
                {"profile", format_profile(profile)},
                {"protocol", protocol},
                {"agent", agent}};
}

using SuiteFn = std::function<SuiteResult(const BatteryEntry&)>;

SuiteResult suite_profit_formula(const BatteryEntry& entry) {
    Recorder rec("profit-formula", entry.id);
    const Scenario& scenario = entry.scenario;
    const auto profiles = sample_profiles(scenario.n_agents);
    const auto protocols = comparison_protocols(scenario.n_agents);

    rec.begin("max-posterior, naive and guess-rule profit routes agree");
    for (const auto& profile : profiles) {
        for (const auto& protocol : protocols) {
            for (int i = 1; i <= scenario.n_agents; ++i) {
                const Rat fast = expected_profit(scenario, profile, protocol, i);
                const Rat naive = expected_profit_naive(scenario, profile, protocol, i);
                const Rat direct = expected_profit_guess_rule(scenario, profile, protocol, i);
                rec.require(fast == naive && fast == direct, [&] {
                    Json j = case_json(entry.id, profile, protocol.name, i);
                    j["max_posterior"] = rat_to_string(fast);
                    j["naive"] = rat_to_string(naive);
                    j["guess_rule"] = rat_to_string(direct);
                    return j;
                });
            }
        }
    }

    rec.begin("all-noise profit is profile-independent and equals the baseline");
    const Protocol fmin = make_fmin();
    for (const auto& profile : profiles) {
        for (int i = 1; i <= scenario.n_agents; ++i) {
            const Rat value = expected_profit(scenario, profile, fmin, i);
            const Rat base = baseline_profit(scenario, i);
            rec.require(value == base, [&] {
                Json j = case_json(entry.id, profile, fmin.name, i);
                j["profit"] = rat_to_string(value);
                j["baseline"] = rat_to_string(base);
                return j;
            });
        }
    }
    return rec.take();
}

SuiteResult suite_garbling(const BatteryEntry& entry) {
    Recorder rec("garbling", entry.id);
    const Scenario& scenario = entry.scenario;
    const std::vector<Protocol> bases = {make_fmax(), make_competitive(), make_fair_competitive()};
    const auto profiles = sample_profiles(scenario.n_agents);
    const auto noises = noise_vectors(scenario.n_agents);

    rec.begin("profit never increases under garbled replies");
    for (const auto& base : bases) {
        for (const auto& profile : profiles) {
            for (const auto& z : noises) {
                const Protocol garbled = garble(base, z);
                for (int i = 1; i <= scenario.n_agents; ++i) {
                    const Rat before = expected_profit(scenario, profile, base, i);
                    const Rat after = expected_profit(scenario, profile, garbled, i);
                    rec.require(before >= after, [&] {
                        Json j = case_json(entry.id, profile, garbled.name, i);
                        j["base_profit"] = rat_to_string(before);
                        j["garbled_profit"] = rat_to_string(after);
                        return j;
                    });
                }
            }
        }
    }
    return rec.take();
}

SuiteResult suite_better_than_nothing(const BatteryEntry& entry) {
    Recorder rec("better-than-nothing", entry.id);
    const Scenario& scenario = entry.scenario;
    const std::vector<Protocol> protocols = {make_fmax(), make_fmin(), make_competitive(),
                                             make_fair_competitive()};
    rec.begin("profit lies between the own-bit baseline and the profit constant");
    for (const auto& profile : subgrid_profiles(scenario.n_agents)) {
        for (const auto& protocol : protocols) {
            for (int i = 1; i <= scenario.n_agents; ++i) {
                const Rat value = expected_profit(scenario, profile, protocol, i);
                const Rat lower = baseline_profit(scenario, i);
                const Rat upper = scenario.profit_of(i);
                rec.require(lower <= value && value <= upper, [&] {
                    Json j = case_json(entry.id, profile, protocol.name, i);
                    j["profit"] = rat_to_string(value);
                    j["baseline"] = rat_to_string(lower);
                    j["profit_constant"] = rat_to_string(upper);
                    return j;
                });
            }
        }
    }
    return rec.take();
}

SuiteResult suite_improvement(const BatteryEntry& entry) {
    Recorder rec("improvement", entry.id);
    const Scenario& scenario = entry.scenario;
    std::vector<Protocol> bases = {make_fmin(), make_fmax(), make_competitive(),
                                   make_fair_competitive()};
    bases.push_back(
        garble(make_fmax(), std::vector<Rat>(static_cast<std::size_t>(scenario.n_agents) + 1, rat(3, 4))));

    rec.begin("revealing the center's bit to committed agents never hurts them");
    for (const auto& base : bases) {
        const Protocol improved = improve(base);
        for (const auto& profile : small_profile_set(scenario.n_agents)) {
            for (int i = 1; i <= scenario.n_agents; ++i) {
                const Rat before = utility(scenario, profile, base, i);
                const Rat after = utility(scenario, profile, improved, i);
                rec.require(after >= before, [&] {
                    Json j = case_json(entry.id, profile, improved.name, i);
                    j["base_utility"] = rat_to_string(before);
                    j["improved_utility"] = rat_to_string(after);
                    return j;
                });
            }
        }
    }
    return rec.take();
}

SuiteResult suite_zero_info_equilibrium(const BatteryEntry& entry) {
    Recorder rec("zero-info-equilibrium", entry.id);
    const Scenario& scenario = entry.scenario;
    const bool helpless = is_helpless(scenario);
    const EquilibriumCertificate cert = is_grid_equilibrium(
        scenario, uniform_profile(scenario.n_agents, zero_information_strategy(rat(1, 2))),
        make_competitive(), StrategyGrid{10});
    rec.begin("the zero-information profile is an equilibrium exactly when the center is helpless");
    rec.require(cert.verdict.is_equilibrium == helpless, [&] {
        return Json{{"scenario", entry.id},
                    {"helpless", helpless},
                    {"certificate", certificate_to_json(cert)}};
    });
    return rec.take();
}

SuiteResult suite_classification(const BatteryEntry& entry) {
    Recorder rec("classification", entry.id);
    const Scenario& scenario = entry.scenario;
    const auto equilibria = enumerate_equilibria(scenario, make_competitive(), StrategyGrid{4},
                                                 CandidatePolicy::Exhaustive);
    rec.begin("every exhaustive equilibrium is all-truthful or all-zero-information");
    for (const auto& cert : equilibria) {
        rec.require(cert.profile.all_truthful() || cert.profile.all_zero_information(), [&] {
            return Json{{"scenario", entry.id}, {"certificate", certificate_to_json(cert)}};
        });
    }
    return rec.take();
}

SuiteResult suite_truthful_deviations(const BatteryEntry& entry) {
    Recorder rec("truthful-deviations", entry.id);
    const Scenario& scenario = entry.scenario;
    const Protocol competitive = make_competitive();
    const StrategyProfile truthful = uniform_profile(scenario.n_agents, truthful_strategy());
    const auto grid_strategies = StrategyGrid{10}.strategies();

    rec.begin("against truthful opponents, leaving truthfulness strictly favors zero information");
    for (int i = 1; i <= scenario.n_agents; ++i) {
        StrategyProfile profile = truthful;
        profile.agent(i) = zero_information_strategy(rat(0, 1));
        const Rat zero_info_utility = utility(scenario, profile, competitive, i);
        for (const Strategy& s : grid_strategies) {
            if (s.is_truthful() || s.is_zero_information()) continue;
            profile.agent(i) = s;
            const Rat value = utility(scenario, profile, competitive, i);
            rec.require(value < zero_info_utility, [&] {
                Json j = case_json(entry.id, profile, competitive.name, i);
                j["deviation_utility"] = rat_to_string(value);
                j["zero_information_utility"] = rat_to_string(zero_info_utility);
                return j;
            });
        }
    }

    rec.begin("all zero-information deviations from truthful opponents are worth the same");
    for (int i = 1; i <= scenario.n_agents; ++i) {
        StrategyProfile profile = truthful;
        profile.agent(i) = zero_information_strategy(rat(0, 1));
        const Rat reference = utility(scenario, profile, competitive, i);
        for (const Strategy& s : grid_strategies) {
            if (!s.is_zero_information()) continue;
            profile.agent(i) = s;
            const Rat value = utility(scenario, profile, competitive, i);
            rec.require(value == reference, [&] {
                Json j = case_json(entry.id, profile, competitive.name, i);
                j["utility"] = rat_to_string(value);
                j["reference"] = rat_to_string(reference);
                return j;
            });
        }
    }
    return rec.take();
}

SuiteResult suite_existence(const BatteryEntry& entry) {
    Recorder rec("existence", entry.id);
    const Scenario& scenario = entry.scenario;
    bool any_fanatic = false;
    for (int i = 1; i <= scenario.n_agents; ++i) any_fanatic = any_fanatic || is_fanatic(scenario, i);
    const EquilibriumCertificate cert =
        is_grid_equilibrium(scenario, uniform_profile(scenario.n_agents, truthful_strategy()),
                            make_competitive(), StrategyGrid{10});
    rec.begin("truthfulness is an equilibrium exactly when no agent is fanatic");
    rec.require(cert.verdict.is_equilibrium == !any_fanatic, [&] {
        return Json{{"scenario", entry.id},
                    {"any_fanatic", any_fanatic},
                    {"certificate", certificate_to_json(cert)}};
    });
    return rec.take();
}

SuiteResult suite_optimality(const BatteryEntry& entry) {
    Recorder rec("optimality", entry.id);
    const Scenario& scenario = entry.scenario;
    const StrategyProfile truthful = uniform_profile(scenario.n_agents, truthful_strategy());
    const StrategyGrid grid{10};
    const bool competitive_truthful =
        is_grid_equilibrium(scenario, truthful, make_competitive(), grid).verdict.is_equilibrium;

    rec.begin("a truthful equilibrium anywhere implies one in the competitive protocol");
    for (const auto& protocol : comparison_protocols(scenario.n_agents)) {
        const bool truthful_eq =
            is_grid_equilibrium(scenario, truthful, protocol, grid).verdict.is_equilibrium;
        rec.require(!truthful_eq || competitive_truthful, [&] {
            return Json{{"scenario", entry.id},
                        {"protocol", protocol.name},
                        {"competitive_truthful", competitive_truthful}};
        });
    }
    return rec.take();
}

SuiteResult suite_unique_truthful(const BatteryEntry& entry) {
    Recorder rec("unique-truthful", entry.id);
    const Scenario& scenario = entry.scenario;
    bool any_fanatic = false;
    for (int i = 1; i <= scenario.n_agents; ++i) any_fanatic = any_fanatic || is_fanatic(scenario, i);
    const bool helpless = is_helpless(scenario);
    const auto equilibria = enumerate_equilibria(scenario, make_competitive(), StrategyGrid{4},
                                                 CandidatePolicy::Exhaustive);

    if (!helpless && !any_fanatic) {
        rec.begin("a useful center and no fanatics leave exactly the truthful equilibrium");
        rec.require(equilibria.size() == 1 && equilibria.front().profile.all_truthful(), [&] {
            Json certs = Json::array();
            for (const auto& cert : equilibria) certs.push_back(certificate_to_json(cert));
            return Json{{"scenario", entry.id}, {"equilibria", certs}};
        });
    }
    if (helpless) {
        rec.begin("a helpless center always admits zero-information equilibria");
        const bool has_zero_info =
            std::any_of(equilibria.begin(), equilibria.end(), [](const EquilibriumCertificate& c) {
                return c.profile.all_zero_information();
            });
        rec.require(has_zero_info, [&] { return Json{{"scenario", entry.id}}; });
    }
    return rec.take();
}

SuiteResult suite_equivalence(const BatteryEntry& entry) {
    Recorder rec("equivalence", entry.id);
    const EquivalenceReport report = check_equivalence(entry.scenario, StrategyGrid{4});
    rec.begin("competitive and fair competitive protocols have identical equilibrium sets");
    rec.require(report.identical,
                [&] { return Json{{"scenario", entry.id},
                                  {"report", equivalence_report_to_json(report)}}; });
    return rec.take();
}

const std::map<std::string, SuiteFn>& suite_table() {
    static const std::map<std::string, SuiteFn> table = {
        {"profit-formula", suite_profit_formula},
        {"garbling", suite_garbling},
        {"better-than-nothing", suite_better_than_nothing},
        {"improvement", suite_improvement},
        {"zero-info-equilibrium", suite_zero_info_equilibrium},
        {"classification", suite_classification},
        {"truthful-deviations", suite_truthful_deviations},
        {"existence", suite_existence},
        {"optimality", suite_optimality},
        {"unique-truthful", suite_unique_truthful},
        {"equivalence", suite_equivalence},
    };
    return table;
}

const std::map<std::string, std::string>& alias_table() {
    static const std::map<std::string, std::string> table = {
        {"lemma1", "profit-formula"},     {"comparison", "garbling"},
        {"lemma3", "zero-info-equilibrium"}, {"lemma4", "classification"},
        {"lemma6", "truthful-deviations"},   {"corollary5", "optimality"},
        {"corollary6", "existence"},         {"corollary7", "unique-truthful"},
        {"equivalence-theorem", "equivalence"},
    };
    return table;
}

}  // namespace

bool SuiteResult::all_pass() const {
    return std::all_of(assertions.begin(), assertions.end(),
                       [](const Assertion& a) { return a.pass; });
}

std::vector<std::string> suite_names() {
    return {"profit-formula",  "garbling",       "better-than-nothing", "improvement",
            "zero-info-equilibrium", "classification", "truthful-deviations", "existence",
            "optimality",      "unique-truthful", "equivalence"};
}

std::string canonical_suite_name(const std::string& name) {
    if (name == "all") return name;
    if (suite_table().count(name)) return name;
    const auto alias = alias_table().find(name);
    if (alias != alias_table().end()) return alias->second;
    throw ConfigError("unknown verification suite: '" + name + "'");
}

std::vector<SuiteResult> run_suite(const std::string& suite,
                                   const std::vector<BatteryEntry>& battery) {
    const std::string canonical = canonical_suite_name(suite);
    std::vector<std::string> to_run;
    if (canonical == "all") {
        to_run = suite_names();
    } else {
        to_run.push_back(canonical);
    }
    std::vector<SuiteResult> results;
    for (const std::string& name : to_run) {
        const SuiteFn& fn = suite_table().at(name);
        for (const BatteryEntry& entry : battery) results.push_back(fn(entry));
    }
    return results;
}

Json suite_results_to_json(const std::vector<SuiteResult>& results) {
    Json out = Json::array();
    for (const SuiteResult& result : results) {
        Json assertions = Json::array();
        for (const Assertion& a : result.assertions)
            assertions.push_back(Json{{"name", a.name}, {"pass", a.pass}, {"detail", a.detail}});
        out.push_back(Json{{"suite", result.suite},
                           {"scenario", result.scenario_id},
                           {"pass", result.all_pass()},
                           {"assertions", assertions}});
    }
    return out;
}

}  // namespace curlab
