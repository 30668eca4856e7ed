#include "curlab/inference.hpp"

#include <array>
#include <optional>

#include "curlab/errors.hpp"

namespace curlab {

namespace {

Rat max_posterior_term(const Rat& p_one) {
    return p_one >= Rat(1, 2) ? p_one : Rat(1) - p_one;
}

const Strategy& subject_of(const StrategyProfile& profile, int coordinate) {
    static const Strategy center = center_channel();
    return coordinate == 0 ? center : profile.agent(coordinate);
}

void check_row(const Scenario& scenario, const StrategyProfile& profile,
               const std::vector<ReplyKernel>& row, int agent) {
    if (profile.n_agents() != static_cast<std::size_t>(scenario.n_agents))
        throw DimensionError("profile size does not match scenario");
    if (row.size() != static_cast<std::size_t>(scenario.n_agents) + 1)
        throw DimensionError("plan row must have N+1 kernels");
    if (agent < 1 || agent > scenario.n_agents)
        throw ParameterError("agent index out of range: " + std::to_string(agent));
}

}  // namespace

Rat coordinate_posterior(const ReplyKernel& kernel, const Strategy& subject, int reply) {
    // P(f | b) = sum over m of P(f | m) P(m | b), uniform prior on b.
    const auto reply_given_bit = [&](int bit) -> Rat {
        return kernel.reply_prob(0, reply) * message_prob(subject, bit) +
               kernel.reply_prob(1, reply) * (Rat(1) - message_prob(subject, bit));
    };
    const Rat likely1 = reply_given_bit(1);
    const Rat marginal = likely1 + reply_given_bit(0);
    if (marginal == 0)
        throw ImpossibleEvidenceError("reply " + std::to_string(reply) +
                                      " has zero probability under this kernel");
    return likely1 / marginal;
}

PosteriorVector posterior_vector(const Scenario& scenario, const StrategyProfile& profile,
                                 const std::vector<ReplyKernel>& plan_row, int agent, int own_bit,
                                 int own_message, const std::vector<std::uint8_t>& reply) {
    check_row(scenario, profile, plan_row, agent);
    if (reply.size() != plan_row.size()) throw DimensionError("reply length must be N+1");
    if (own_bit != 0 && own_bit != 1) throw ParameterError("own bit must be 0 or 1");
    (void)own_message;  // part of the information set, uninformative beyond b_i
    PosteriorVector out;
    out.v.reserve(plan_row.size());
    for (std::size_t k = 0; k < plan_row.size(); ++k) {
        if (k == static_cast<std::size_t>(agent)) {
            out.v.push_back(Rat(own_bit));
        } else {
            out.v.push_back(
                coordinate_posterior(plan_row[k], subject_of(profile, static_cast<int>(k)), reply[k]));
        }
    }
    return out;
}

Rat g_posterior(const SocialFunction& g, const PosteriorVector& v) {
    if (g.table.size() != (std::size_t{1} << v.size()))
        throw DimensionError("posterior vector length does not match the truth table");
    const std::size_t n = v.size();
    Rat total(0);
    for (std::size_t idx = 0; idx < g.table.size(); ++idx) {
        if (!g.table[idx]) continue;
        Rat term(1);
        for (std::size_t k = 0; k < n && term != 0; ++k) {
            const bool bit = (idx >> (n - 1 - k)) & 1u;
            term *= bit ? v.v[k] : Rat(1) - v.v[k];
        }
        total += term;
    }
    return total;
}

GuessDistribution guess_from_posterior(const Rat& p_one) {
    const int c = cmp(p_one, Rat(1, 2));
    if (c > 0) return {Rat(0), Rat(1)};
    if (c < 0) return {Rat(1), Rat(0)};
    return {Rat(1, 2), Rat(1, 2)};
}

GuessDistribution guess(const SocialFunction& g, const PosteriorVector& v) {
    return guess_from_posterior(g_posterior(g, v));
}

bool dominates(const PosteriorVector& v1, const PosteriorVector& v2) {
    if (v1.size() != v2.size()) throw DimensionError("posterior vectors differ in length");
    for (std::size_t k = 0; k < v1.size(); ++k)
        if (abs(v1.v[k] - Rat(1, 2)) < abs(v2.v[k] - Rat(1, 2))) return false;
    return true;
}

void enumerate_outcomes(const Scenario& scenario, const StrategyProfile& profile,
                        const std::vector<ReplyKernel>& plan_row, int agent,
                        const std::function<void(const Outcome&)>& visit) {
    check_row(scenario, profile, plan_row, agent);
    const int n = scenario.n_agents;
    const std::size_t coords = static_cast<std::size_t>(n) + 1;

    Outcome outcome;
    outcome.m.assign(coords, 0);
    outcome.f.assign(coords, 0);

    Rat prior(1);
    prior /= static_cast<long>(std::size_t{1} << coords);

    std::function<void(std::size_t, const Rat&)> fill_replies = [&](std::size_t k, const Rat& w) {
        if (k == coords) {
            outcome.weight = w;
            visit(outcome);
            return;
        }
        for (int f = 0; f <= 1; ++f) {
            const Rat pf = plan_row[k].reply_prob(outcome.m[k], f);
            if (pf == 0) continue;
            outcome.f[k] = static_cast<std::uint8_t>(f);
            fill_replies(k + 1, w * pf);
        }
    };

    std::function<void(std::size_t, const Rat&)> fill_messages = [&](std::size_t k, const Rat& w) {
        if (k == coords) {
            fill_replies(0, w);
            return;
        }
        for (int m = 0; m <= 1; ++m) {
            const Rat zero_prob = message_prob(subject_of(profile, static_cast<int>(k)),
                                               outcome.b[k]);
            const Rat pm = m == 0 ? zero_prob : Rat(1) - zero_prob;
            if (pm == 0) continue;
            outcome.m[k] = static_cast<std::uint8_t>(m);
            fill_messages(k + 1, w * pm);
        }
    };

    for (std::size_t idx = 0; idx < (std::size_t{1} << coords); ++idx) {
        outcome.b = BitVector::from_index(coords, idx);
        fill_messages(0, prior);
    }
}

Rat expected_profit_for_row(const Scenario& scenario, const StrategyProfile& profile,
                            const std::vector<ReplyKernel>& plan_row, int agent) {
    check_row(scenario, profile, plan_row, agent);
    const int n = scenario.n_agents;
    const std::size_t coords = static_cast<std::size_t>(n) + 1;

    // Coordinates that can move the posterior. Constant kernels pin the
    // posterior to 1/2 and the agent's own coordinate is pinned to her bit,
    // so both sum out of the reply enumeration.
    std::vector<std::size_t> active;
    for (std::size_t k = 0; k < coords; ++k)
        if (k != static_cast<std::size_t>(agent) && !plan_row[k].is_constant()) active.push_back(k);

    // Posteriors depend on (coordinate, reply) only; compute each at most once.
    std::vector<std::array<std::optional<Rat>, 2>> posterior_cache(coords);
    const auto posterior_of = [&](std::size_t k, int f) -> const Rat& {
        auto& slot = posterior_cache[k][static_cast<std::size_t>(f)];
        if (!slot)
            slot = coordinate_posterior(plan_row[k], subject_of(profile, static_cast<int>(k)), f);
        return *slot;
    };

    PosteriorVector v;
    v.v.assign(coords, Rat(1, 2));

    Rat prior(1);
    prior /= static_cast<long>(std::size_t{1} << coords);

    Rat total(0);
    BitVector b;

    std::function<void(std::size_t, const Rat&)> over_active = [&](std::size_t ai, const Rat& w) {
        if (ai == active.size()) {
            total += w * max_posterior_term(g_posterior(scenario.g, v));
            return;
        }
        const std::size_t k = active[ai];
        const Strategy& subject = subject_of(profile, static_cast<int>(k));
        for (int m = 0; m <= 1; ++m) {
            const Rat zero_prob = message_prob(subject, b[k]);
            const Rat pm = m == 0 ? zero_prob : Rat(1) - zero_prob;
            if (pm == 0) continue;
            for (int f = 0; f <= 1; ++f) {
                const Rat pf = plan_row[k].reply_prob(m, f);
                if (pf == 0) continue;
                v.v[k] = posterior_of(k, f);
                over_active(ai + 1, w * pm * pf);
            }
        }
        v.v[k] = Rat(1, 2);
    };

    for (std::size_t idx = 0; idx < (std::size_t{1} << coords); ++idx) {
        b = BitVector::from_index(coords, idx);
        v.v[static_cast<std::size_t>(agent)] = Rat(static_cast<int>(b[static_cast<std::size_t>(agent)]));
        over_active(0, prior);
    }
    return scenario.profit_of(agent) * total;
}

Rat expected_profit(const Scenario& scenario, const StrategyProfile& profile,
                    const Protocol& protocol, int agent) {
    const ReplyPlan plan = protocol.plan_of(scenario, profile);
    return expected_profit_for_row(scenario, profile, plan.row(agent), agent);
}

Rat expected_profit_naive(const Scenario& scenario, const StrategyProfile& profile,
                          const Protocol& protocol, int agent) {
    const ReplyPlan plan = protocol.plan_of(scenario, profile);
    const auto& row = plan.row(agent);
    Rat total(0);
    enumerate_outcomes(scenario, profile, row, agent, [&](const Outcome& outcome) {
        const PosteriorVector v =
            posterior_vector(scenario, profile, row, agent,
                             outcome.b[static_cast<std::size_t>(agent)],
                             outcome.m[static_cast<std::size_t>(agent)], outcome.f);
        total += outcome.weight * max_posterior_term(g_posterior(scenario.g, v));
    });
    return scenario.profit_of(agent) * total;
}

Rat expected_profit_guess_rule(const Scenario& scenario, const StrategyProfile& profile,
                               const Protocol& protocol, int agent) {
    const ReplyPlan plan = protocol.plan_of(scenario, profile);
    const auto& row = plan.row(agent);
    Rat total(0);
    enumerate_outcomes(scenario, profile, row, agent, [&](const Outcome& outcome) {
        const PosteriorVector v =
            posterior_vector(scenario, profile, row, agent,
                             outcome.b[static_cast<std::size_t>(agent)],
                             outcome.m[static_cast<std::size_t>(agent)], outcome.f);
        const GuessDistribution d = guess(scenario.g, v);
        const Rat correct = eval_social_function(scenario.g, outcome.b) == 1 ? d.p_one : d.p_zero;
        total += outcome.weight * correct;
    });
    return scenario.profit_of(agent) * total;
}

Rat utility(const Scenario& scenario, const StrategyProfile& profile, const Protocol& protocol,
            int agent) {
    return expected_profit(scenario, profile, protocol, agent) -
           price(scenario.price_of(agent), profile.agent(agent));
}

namespace {

// c_i * E[max_v P(g = v | conditioning bits)] where `fixed` pins coordinates.
Rat conditional_best_guess_profit(const Scenario& scenario, int agent,
                                  const std::vector<std::size_t>& conditioning) {
    const std::size_t coords = static_cast<std::size_t>(scenario.n_agents) + 1;
    const std::size_t cells = std::size_t{1} << conditioning.size();
    Rat total(0);
    for (std::size_t cell = 0; cell < cells; ++cell) {
        long ones = 0;
        long count = 0;
        for (std::size_t idx = 0; idx < (std::size_t{1} << coords); ++idx) {
            const BitVector b = BitVector::from_index(coords, idx);
            bool match = true;
            for (std::size_t j = 0; j < conditioning.size() && match; ++j) {
                const auto want = (cell >> (conditioning.size() - 1 - j)) & 1u;
                match = b[conditioning[j]] == want;
            }
            if (!match) continue;
            ++count;
            ones += eval_social_function(scenario.g, b);
        }
        const Rat p_one = Rat(ones) / count;
        total += max_posterior_term(p_one) / static_cast<long>(cells);
    }
    return scenario.profit_of(agent) * total;
}

}  // namespace

Rat baseline_profit(const Scenario& scenario, int agent) {
    if (agent < 1 || agent > scenario.n_agents)
        throw ParameterError("agent index out of range: " + std::to_string(agent));
    return conditional_best_guess_profit(scenario, agent, {static_cast<std::size_t>(agent)});
}

Rat center_bonus_profit(const Scenario& scenario, int agent) {
    if (agent < 1 || agent > scenario.n_agents)
        throw ParameterError("agent index out of range: " + std::to_string(agent));
    return conditional_best_guess_profit(scenario, agent, {static_cast<std::size_t>(agent), 0});
}

}  // namespace curlab
