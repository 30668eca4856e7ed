#pragma once

#include <functional>

#include "curlab/protocol.hpp"

namespace curlab {

/// One realization of (bits, messages, replies to a single agent) with its
/// joint probability.
struct Outcome {
    BitVector b;
    std::vector<std::uint8_t> m;  // length N+1, m[0] == b[0]
    std::vector<std::uint8_t> f;  // the reply to the agent under study
    Rat weight;
};

/// The per-coordinate posteriors an agent holds after seeing her reply:
/// v_k = P(b_k = 1 | f_k, m_i, b_i).
struct PosteriorVector {
    std::vector<Rat> v;
    std::size_t size() const { return v.size(); }
    bool operator==(const PosteriorVector&) const = default;
};

struct GuessDistribution {
    Rat p_zero;
    Rat p_one;
    bool operator==(const GuessDistribution&) const = default;
};

/// Bayes posterior P(b = 1 | reply) for one coordinate, under a uniform prior
/// on the subject's bit. Throws ImpossibleEvidenceError when the observed
/// reply has zero marginal probability.
Rat coordinate_posterior(const ReplyKernel& kernel, const Strategy& subject, int reply);

/// Full posterior vector for `agent` holding (b_i, m_i) and the reply vector.
/// Coordinate `agent` is pinned to her own bit; coordinate 0 uses the center's
/// identity channel.
PosteriorVector posterior_vector(const Scenario& scenario, const StrategyProfile& profile,
                                 const std::vector<ReplyKernel>& plan_row, int agent, int own_bit,
                                 int own_message, const std::vector<std::uint8_t>& reply);

/// P(g = 1) under independent coordinates with marginals v.
Rat g_posterior(const SocialFunction& g, const PosteriorVector& v);

GuessDistribution guess_from_posterior(const Rat& p_one);
GuessDistribution guess(const SocialFunction& g, const PosteriorVector& v);

/// True iff every coordinate of v1 is at least as far from 1/2 as in v2.
bool dominates(const PosteriorVector& v1, const PosteriorVector& v2);

/// Enumerates the full sample space seen by one agent under a fixed plan row,
/// visiting every outcome of positive probability. Weights sum to exactly 1.
void enumerate_outcomes(const Scenario& scenario, const StrategyProfile& profile,
                        const std::vector<ReplyKernel>& plan_row, int agent,
                        const std::function<void(const Outcome&)>& visit);

/// Exact expected profit c_i * E[max posterior on g]. Coordinates whose
/// kernel is constant (and the agent's own coordinate) are summed out
/// analytically; tests pin this against the naive triple enumeration.
Rat expected_profit(const Scenario& scenario, const StrategyProfile& profile,
                    const Protocol& protocol, int agent);

/// Same value computed for an explicit plan row.
Rat expected_profit_for_row(const Scenario& scenario, const StrategyProfile& profile,
                            const std::vector<ReplyKernel>& plan_row, int agent);

/// Reference path: literal enumeration of every (b, m, f) outcome.
Rat expected_profit_naive(const Scenario& scenario, const StrategyProfile& profile,
                          const Protocol& protocol, int agent);

/// Second route: expectation of the randomized guess rule's payoff, with the
/// fair-coin branch on exact posterior ties.
Rat expected_profit_guess_rule(const Scenario& scenario, const StrategyProfile& profile,
                               const Protocol& protocol, int agent);

/// expected_profit minus the price of the agent's own strategy.
Rat utility(const Scenario& scenario, const StrategyProfile& profile, const Protocol& protocol,
            int agent);

/// c_i * E[max_v P(g = v | b_i)]: profit of the best guess from one's own bit.
Rat baseline_profit(const Scenario& scenario, int agent);

/// c_i * E[max_v P(g = v | b_i, b_0)]: best guess from one's own bit plus the
/// center's bit.
Rat center_bonus_profit(const Scenario& scenario, int agent);

}  // namespace curlab
