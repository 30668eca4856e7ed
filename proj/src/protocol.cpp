#include "curlab/protocol.hpp"

#include <optional>
#include <utility>

#include "curlab/errors.hpp"

namespace curlab {

namespace {

// Index of the unique agent with the strictly highest relative price among
// `candidates`, or nullopt on a tie at the top (or no candidates).
std::optional<int> strict_argmax(const Scenario& scenario, const StrategyProfile& profile,
                                 PriceMode mode, const std::vector<int>& candidates) {
    const auto compare = [&](int i, int j) {
        const PriceFunction& pi =
            mode == PriceMode::Model ? scenario.price_of(i) : PriceFunction::indicator();
        const PriceFunction& pj =
            mode == PriceMode::Model ? scenario.price_of(j) : PriceFunction::indicator();
        return compare_relative_price(pi, profile.agent(i), pj, profile.agent(j));
    };
    std::optional<int> best;
    bool tie = false;
    for (const int i : candidates) {
        if (!best) {
            best = i;
            tie = false;
            continue;
        }
        const int c = compare(i, *best);
        if (c > 0) {
            best = i;
            tie = false;
        } else if (c == 0) {
            tie = true;
        }
    }
    if (!best || tie) return std::nullopt;
    return best;
}

std::vector<int> all_agents(int n) {
    std::vector<int> out;
    for (int i = 1; i <= n; ++i) out.push_back(i);
    return out;
}

void require_multi_agent(const Scenario& scenario, const char* what) {
    if (scenario.n_agents < 2)
        throw UnsupportedArityError(std::string(what) +
                                    " requires at least two agents; use the n1 protocol for N=1");
}

}  // namespace

Rat ReplyKernel::reply_prob(int message, int reply) const {
    if ((message != 0 && message != 1) || (reply != 0 && reply != 1))
        throw ParameterError("message and reply must be bits");
    const Rat& zero_prob = message == 0 ? a00 : a01;
    return reply == 0 ? zero_prob : Rat(1) - zero_prob;
}

const std::vector<ReplyKernel>& ReplyPlan::row(int agent) const {
    if (agent < 1 || static_cast<std::size_t>(agent) > rows.size())
        throw ParameterError("agent index out of range: " + std::to_string(agent));
    return rows[static_cast<std::size_t>(agent) - 1];
}

std::vector<ReplyKernel>& ReplyPlan::row(int agent) {
    return const_cast<std::vector<ReplyKernel>&>(
        static_cast<const ReplyPlan&>(*this).row(agent));
}

std::vector<ReplyKernel> constant_row(int n_agents, const ReplyKernel& kernel) {
    return std::vector<ReplyKernel>(static_cast<std::size_t>(n_agents) + 1, kernel);
}

ReplyPlan constant_plan(int n_agents, const ReplyKernel& kernel) {
    ReplyPlan plan;
    plan.rows.assign(static_cast<std::size_t>(n_agents), constant_row(n_agents, kernel));
    return plan;
}

Protocol make_fmax() {
    return {"fmax", [](const Scenario& scenario, const StrategyProfile&) {
                return constant_plan(scenario.n_agents, ReplyKernel::pass_through());
            }};
}

Protocol make_fmin() {
    return {"fmin", [](const Scenario& scenario, const StrategyProfile&) {
                return constant_plan(scenario.n_agents, ReplyKernel::uniform());
            }};
}

Protocol make_competitive(PriceMode mode) {
    const std::string name = mode == PriceMode::Model ? "competitive" : "competitive-indicator";
    return {name, [mode](const Scenario& scenario, const StrategyProfile& profile) {
                require_multi_agent(scenario, "the competitive protocol");
                if (profile.n_agents() != static_cast<std::size_t>(scenario.n_agents))
                    throw DimensionError("profile size does not match scenario");
                // Case order matters: all-truthful grants everyone the messages even
                // though it is an N-way tie at relative price 1.
                if (profile.all_truthful())
                    return constant_plan(scenario.n_agents, ReplyKernel::pass_through());
                const auto winner =
                    strict_argmax(scenario, profile, mode, all_agents(scenario.n_agents));
                ReplyPlan plan = constant_plan(scenario.n_agents, ReplyKernel::uniform());
                if (winner)
                    plan.row(*winner) = constant_row(scenario.n_agents, ReplyKernel::pass_through());
                return plan;
            }};
}

Protocol make_fair_competitive(PriceMode mode) {
    const std::string name =
        mode == PriceMode::Model ? "fair-competitive" : "fair-competitive-indicator";
    return {name, [mode](const Scenario& scenario, const StrategyProfile& profile) {
                require_multi_agent(scenario, "the fair competitive protocol");
                if (profile.n_agents() != static_cast<std::size_t>(scenario.n_agents))
                    throw DimensionError("profile size does not match scenario");
                std::vector<int> non_truthful;
                for (int i = 1; i <= scenario.n_agents; ++i)
                    if (!profile.agent(i).is_truthful()) non_truthful.push_back(i);
                const auto winner = strict_argmax(scenario, profile, mode, non_truthful);
                ReplyPlan plan = constant_plan(scenario.n_agents, ReplyKernel::uniform());
                for (int i = 1; i <= scenario.n_agents; ++i) {
                    const bool gets_messages =
                        profile.agent(i).is_truthful() ||
                        (winner && *winner == i && non_truthful.size() >= 2);
                    if (gets_messages)
                        plan.row(i) = constant_row(scenario.n_agents, ReplyKernel::pass_through());
                }
                return plan;
            }};
}

Protocol make_n1() {
    return {"n1", [](const Scenario& scenario, const StrategyProfile& profile) {
                if (scenario.n_agents != 1)
                    throw UnsupportedArityError("the n1 protocol is defined for exactly one agent");
                if (profile.n_agents() != 1)
                    throw DimensionError("profile size does not match scenario");
                ReplyPlan plan = constant_plan(1, ReplyKernel::uniform());
                if (profile.agent(1).is_truthful()) plan.row(1)[0] = ReplyKernel::pass_through();
                plan.row(1)[1] = ReplyKernel::pass_through();  // her own message
                return plan;
            }};
}

Protocol improve(Protocol base) {
    auto base_plan = std::move(base.plan_of);
    return {"improve:" + base.name,
            [base_plan](const Scenario& scenario, const StrategyProfile& profile) {
                ReplyPlan plan = base_plan(scenario, profile);
                for (int i = 1; i <= scenario.n_agents; ++i)
                    if (!profile.agent(i).is_zero_information())
                        plan.row(i)[0] = ReplyKernel::pass_through();
                return plan;
            }};
}

ReplyKernel garble_kernel(const ReplyKernel& kernel, const Rat& z) {
    const auto mix = [&z](const Rat& a) -> Rat { return z * a + (Rat(1) - z) * (Rat(1) - a); };
    return {mix(kernel.a00), mix(kernel.a01)};
}

Protocol garble(Protocol base, std::vector<Rat> noise) {
    std::string suffix;
    for (std::size_t k = 0; k < noise.size(); ++k) {
        if (noise[k] < Rat(1, 2) || noise[k] > 1)
            throw ParameterError("garble noise entries must lie in [1/2, 1]");
        suffix += (k == 0 ? "" : ",") + rat_to_string(noise[k]);
    }
    auto base_plan = std::move(base.plan_of);
    return {"garble:" + base.name + ":" + suffix,
            [base_plan, noise](const Scenario& scenario, const StrategyProfile& profile) {
                if (noise.size() != static_cast<std::size_t>(scenario.n_agents) + 1)
                    throw DimensionError("garble needs one noise entry per reply coordinate");
                ReplyPlan plan = base_plan(scenario, profile);
                for (auto& row : plan.rows)
                    for (std::size_t k = 0; k < row.size(); ++k)
                        row[k] = garble_kernel(row[k], noise[k]);
                return plan;
            }};
}

Protocol protocol_by_name(const std::string& name) {
    if (name == "competitive") return make_competitive();
    if (name == "fair-competitive") return make_fair_competitive();
    if (name == "fmax") return make_fmax();
    if (name == "fmin") return make_fmin();
    if (name == "n1") return make_n1();
    if (name.starts_with("improve:")) return improve(protocol_by_name(name.substr(8)));
    if (name.starts_with("garble:")) {
        const auto split = name.rfind(':');
        if (split == 6) throw ConfigError("garble needs a base protocol and a noise list");
        const std::string base = name.substr(7, split - 7);
        const std::string list = name.substr(split + 1);
        std::vector<Rat> noise;
        std::size_t pos = 0;
        while (pos <= list.size()) {
            const auto comma = list.find(',', pos);
            const std::string token =
                list.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            try {
                noise.push_back(rat_from_string(token));
            } catch (const ParseError& e) {
                throw ConfigError(std::string("bad garble noise entry: ") + e.what());
            }
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        return garble(protocol_by_name(base), std::move(noise));
    }
    throw ConfigError("unknown protocol: '" + name + "'");
}

std::vector<std::string> builtin_protocol_names() {
    return {"competitive", "fair-competitive", "fmax", "fmin", "n1"};
}

}  // namespace curlab
