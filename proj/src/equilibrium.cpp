#include "curlab/equilibrium.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "curlab/errors.hpp"

namespace curlab {

namespace {

struct KernelLess {
    bool operator()(const ReplyKernel& a, const ReplyKernel& b) const {
        const int c = cmp(a.a00, b.a00);
        if (c != 0) return c < 0;
        return cmp(a.a01, b.a01) < 0;
    }
};

struct RowLess {
    bool operator()(const std::vector<ReplyKernel>& a, const std::vector<ReplyKernel>& b) const {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), KernelLess{});
    }
};

// Profit keyed by the plan row. Valid while the opponents' strategies stay
// fixed: the agent's own strategy enters her profit only through the row.
class RowProfitCache {
public:
    RowProfitCache(const Scenario& scenario, int agent) : scenario_(scenario), agent_(agent) {}

    const Rat& profit(const StrategyProfile& profile, const std::vector<ReplyKernel>& row) {
        auto it = cache_.find(row);
        if (it == cache_.end())
            it = cache_.emplace(row, expected_profit_for_row(scenario_, profile, row, agent_)).first;
        return it->second;
    }

private:
    const Scenario& scenario_;
    int agent_;
    std::map<std::vector<ReplyKernel>, Rat, RowLess> cache_;
};

// Deviation tie-break: smaller q first, then smaller p.
bool deviation_precedes(const Strategy& a, const Strategy& b) {
    const int c = cmp(a.q, b.q);
    if (c != 0) return c < 0;
    return cmp(a.p, b.p) < 0;
}

Rat deviation_utility(const Scenario& scenario, StrategyProfile& profile, const Protocol& protocol,
                      int agent, const Strategy& candidate, RowProfitCache& cache) {
    const Strategy original = profile.agent(agent);
    profile.agent(agent) = candidate;
    const ReplyPlan plan = protocol.plan_of(scenario, profile);
    const Rat value =
        cache.profit(profile, plan.row(agent)) - price(scenario.price_of(agent), candidate);
    profile.agent(agent) = original;
    return value;
}

// First grid deviation gaining more than `slack`, if any.
std::optional<Strategy> find_refutation(const Scenario& scenario, StrategyProfile& profile,
                                        const Protocol& protocol, int agent,
                                        const std::vector<Strategy>& grid_strategies,
                                        const Rat& slack) {
    RowProfitCache cache(scenario, agent);
    const Rat base = deviation_utility(scenario, profile, protocol, agent, profile.agent(agent), cache);
    for (const Strategy& candidate : grid_strategies) {
        if (deviation_utility(scenario, profile, protocol, agent, candidate, cache) > base + slack)
            return candidate;
    }
    return std::nullopt;
}

std::string profile_key(const StrategyProfile& profile) {
    std::string key;
    for (const Strategy& s : profile.strategies)
        key += rat_to_string(s.p) + "," + rat_to_string(s.q) + ";";
    return key;
}

std::size_t checked_candidate_count(std::size_t per_agent, int n_agents, std::size_t cap) {
    if (per_agent > cap) return cap + 1;
    std::size_t count = 1;
    for (int i = 0; i < n_agents; ++i) {
        count *= per_agent;
        if (count > cap) return cap + 1;
    }
    return count;
}

}  // namespace

std::vector<Strategy> StrategyGrid::strategies() const {
    if (denominator < 1) throw ParameterError("grid denominator must be positive");
    std::vector<Strategy> out;
    out.reserve(static_cast<std::size_t>(denominator + 1) * (denominator + 1));
    for (int a = 0; a <= denominator; ++a)
        for (int b = 0; b <= denominator; ++b)
            out.push_back({rat(a, denominator), rat(b, denominator)});
    return out;
}

BestResponse best_response_gain(const Scenario& scenario, const StrategyProfile& profile,
                                const Protocol& protocol, int agent, const StrategyGrid& grid) {
    StrategyProfile working = profile;
    RowProfitCache cache(scenario, agent);
    const Rat base =
        deviation_utility(scenario, working, protocol, agent, profile.agent(agent), cache);

    std::optional<Rat> best;
    Strategy argmax;
    std::vector<Strategy> argmax_set;
    for (const Strategy& candidate : grid.strategies()) {
        const Rat value = deviation_utility(scenario, working, protocol, agent, candidate, cache);
        if (!best || value > *best) {
            best = value;
            argmax = candidate;
            argmax_set.assign(1, candidate);
        } else if (value == *best) {
            argmax_set.push_back(candidate);
            if (deviation_precedes(candidate, argmax)) argmax = candidate;
        }
    }
    return {*best - base, argmax, std::move(argmax_set)};
}

EquilibriumCertificate is_grid_equilibrium(const Scenario& scenario, const StrategyProfile& profile,
                                           const Protocol& protocol, const StrategyGrid& grid,
                                           const Rat& slack) {
    if (sgn(slack) < 0) throw ParameterError("equilibrium slack must be nonnegative");
    EquilibriumCertificate cert;
    cert.profile = profile;
    cert.protocol_name = protocol.name;
    cert.grid = grid;
    cert.verdict.is_equilibrium = true;
    for (int i = 1; i <= scenario.n_agents; ++i) {
        BestResponse br = best_response_gain(scenario, profile, protocol, i, grid);
        if (br.gain > slack && cert.verdict.is_equilibrium) {
            cert.verdict.is_equilibrium = false;
            cert.verdict.refuting_agent = i;
            cert.verdict.refuting_deviation = br.argmax;
        }
        cert.gains.push_back(br.gain);
    }
    return cert;
}

std::vector<EquilibriumCertificate> enumerate_equilibria(const Scenario& scenario,
                                                         const Protocol& protocol,
                                                         const StrategyGrid& grid,
                                                         CandidatePolicy policy,
                                                         std::size_t candidate_cap,
                                                         const Rat& slack) {
    if (sgn(slack) < 0) throw ParameterError("equilibrium slack must be nonnegative");
    const std::vector<Strategy> grid_strategies = grid.strategies();
    std::vector<StrategyProfile> candidates;

    if (policy == CandidatePolicy::Exhaustive) {
        const std::size_t count =
            checked_candidate_count(grid_strategies.size(), scenario.n_agents, candidate_cap);
        if (count > candidate_cap)
            throw BudgetError("exhaustive enumeration needs more than " +
                              std::to_string(candidate_cap) + " candidate profiles");
        StrategyProfile profile = uniform_profile(scenario.n_agents, grid_strategies.front());
        std::vector<std::size_t> counter(static_cast<std::size_t>(scenario.n_agents), 0);
        while (true) {
            candidates.push_back(profile);
            std::size_t pos = 0;
            while (pos < counter.size()) {
                if (++counter[pos] < grid_strategies.size()) {
                    profile.strategies[pos] = grid_strategies[counter[pos]];
                    break;
                }
                counter[pos] = 0;
                profile.strategies[pos] = grid_strategies[0];
                ++pos;
            }
            if (pos == counter.size()) break;
        }
    } else {
        std::set<std::string> seen;
        const auto add = [&](const StrategyProfile& profile) {
            if (seen.insert(profile_key(profile)).second) candidates.push_back(profile);
        };
        add(uniform_profile(scenario.n_agents, truthful_strategy()));
        for (const Strategy& s : grid_strategies)
            if (s.is_zero_information())
                add(uniform_profile(scenario.n_agents, s));
        // Coarse subgrid over all agents.
        const StrategyGrid coarse{2};
        const std::vector<Strategy> coarse_strategies = coarse.strategies();
        const std::size_t count =
            checked_candidate_count(coarse_strategies.size(), scenario.n_agents, candidate_cap);
        if (count > candidate_cap)
            throw BudgetError("structured enumeration needs more than " +
                              std::to_string(candidate_cap) + " candidate profiles");
        std::vector<std::size_t> counter(static_cast<std::size_t>(scenario.n_agents), 0);
        StrategyProfile profile = uniform_profile(scenario.n_agents, coarse_strategies.front());
        while (true) {
            add(profile);
            std::size_t pos = 0;
            while (pos < counter.size()) {
                if (++counter[pos] < coarse_strategies.size()) {
                    profile.strategies[pos] = coarse_strategies[counter[pos]];
                    break;
                }
                counter[pos] = 0;
                profile.strategies[pos] = coarse_strategies[0];
                ++pos;
            }
            if (pos == counter.size()) break;
        }
    }

    std::vector<EquilibriumCertificate> equilibria;
    for (StrategyProfile& candidate : candidates) {
        bool refuted = false;
        for (int i = 1; i <= scenario.n_agents && !refuted; ++i)
            refuted = find_refutation(scenario, candidate, protocol, i, grid_strategies, slack)
                          .has_value();
        if (!refuted)
            equilibria.push_back(is_grid_equilibrium(scenario, candidate, protocol, grid, slack));
    }
    return equilibria;
}

bool is_fanatic(const Scenario& scenario, int agent) {
    // Both sides of the defining inequality collapse to closed forms: full
    // information at the truthful profile is worth c_i, and the all-noise
    // protocol pays the own-bit baseline at every profile.
    const Rat truthful_price = price(scenario.price_of(agent), truthful_strategy());
    return truthful_price > scenario.profit_of(agent) - baseline_profit(scenario, agent);
}

bool is_helpless(const Scenario& scenario) {
    for (const auto& pf : scenario.prices)
        if (pf.form != PriceForm::PowerOfGap)
            throw InvalidPriceFunctionError(
                "helplessness requires continuous power-of-gap agent prices");
    for (int i = 1; i <= scenario.n_agents; ++i)
        if (center_bonus_profit(scenario, i) != baseline_profit(scenario, i)) return false;
    return true;
}

bool UniquenessReport::consistent() const {
    return truthful_iff_no_fanatic && zero_information_iff_helpless && classification_holds;
}

UniquenessReport check_uniqueness(const Scenario& scenario, const StrategyGrid& check_grid,
                                  int enumeration_grid) {
    UniquenessReport report;
    const Protocol competitive = make_competitive();

    for (int i = 1; i <= scenario.n_agents; ++i)
        report.fanatic.push_back(is_fanatic(scenario, i) ? 1 : 0);
    report.helpless = is_helpless(scenario);

    report.truthful_certificate = is_grid_equilibrium(
        scenario, uniform_profile(scenario.n_agents, truthful_strategy()), competitive, check_grid);
    report.zero_information_certificate = is_grid_equilibrium(
        scenario, uniform_profile(scenario.n_agents, zero_information_strategy(Rat(1, 2))),
        competitive, check_grid);

    report.enumeration_grid = enumeration_grid;
    report.equilibria =
        enumerate_equilibria(scenario, competitive, StrategyGrid{enumeration_grid},
                             CandidatePolicy::Exhaustive);

    const bool any_fanatic =
        std::any_of(report.fanatic.begin(), report.fanatic.end(), [](std::uint8_t f) { return f; });
    report.truthful_iff_no_fanatic = report.truthful_certificate.verdict.is_equilibrium == !any_fanatic;
    report.zero_information_iff_helpless =
        report.zero_information_certificate.verdict.is_equilibrium == report.helpless;
    report.classification_holds =
        std::all_of(report.equilibria.begin(), report.equilibria.end(),
                    [](const EquilibriumCertificate& cert) {
                        return cert.profile.all_truthful() || cert.profile.all_zero_information();
                    });
    return report;
}

EquivalenceReport check_equivalence(const Scenario& scenario, const StrategyGrid& grid) {
    EquivalenceReport report;
    report.competitive =
        enumerate_equilibria(scenario, make_competitive(), grid, CandidatePolicy::Exhaustive);
    report.fair_competitive =
        enumerate_equilibria(scenario, make_fair_competitive(), grid, CandidatePolicy::Exhaustive);
    report.identical = report.competitive.size() == report.fair_competitive.size();
    if (report.identical) {
        for (std::size_t i = 0; i < report.competitive.size(); ++i) {
            if (report.competitive[i].profile != report.fair_competitive[i].profile ||
                report.competitive[i].verdict != report.fair_competitive[i].verdict) {
                report.identical = false;
                break;
            }
        }
    }
    return report;
}

}  // namespace curlab
