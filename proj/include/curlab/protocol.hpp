#pragma once

#include <functional>
#include <string>
#include <vector>

#include "curlab/model.hpp"

namespace curlab {

/// 2x2 stochastic channel from a subject's message to one reply coordinate.
struct ReplyKernel {
    Rat a00;  // P(f = 0 | m = 0)
    Rat a01;  // P(f = 0 | m = 1)

    static ReplyKernel pass_through() { return {Rat(1), Rat(0)}; }
    static ReplyKernel uniform() { return {Rat(1, 2), Rat(1, 2)}; }
    /// Reply independent of the message; the coordinate carries no information.
    bool is_constant() const { return a00 == a01; }
    Rat reply_prob(int message, int reply) const;
    bool operator==(const ReplyKernel&) const = default;
};

/// Kernel matrix: one row per agent (1-based), coordinates 0..N per row.
struct ReplyPlan {
    std::vector<std::vector<ReplyKernel>> rows;

    std::size_t n_agents() const { return rows.size(); }
    const std::vector<ReplyKernel>& row(int agent) const;
    std::vector<ReplyKernel>& row(int agent);
    bool operator==(const ReplyPlan&) const = default;
};

ReplyPlan constant_plan(int n_agents, const ReplyKernel& kernel);
std::vector<ReplyKernel> constant_row(int n_agents, const ReplyKernel& kernel);

/// Whether protocol decisions read the model prices or the 0/1 indicator
/// substitute.
enum class PriceMode { Model, Indicator };

/// Named deterministic map from a committed profile to a reply plan.
struct Protocol {
    std::string name;
    std::function<ReplyPlan(const Scenario&, const StrategyProfile&)> plan_of;
};

Protocol make_fmax();
Protocol make_fmin();
Protocol make_competitive(PriceMode mode = PriceMode::Model);
Protocol make_fair_competitive(PriceMode mode = PriceMode::Model);
/// Single-agent protocol: the center's bit is shared iff the agent is truthful.
Protocol make_n1();
/// Coordinate 0 becomes pass-through for every agent outside the
/// zero-information set; everything else is kept from the base plan.
Protocol improve(Protocol base);
/// Composes every kernel with a binary symmetric channel of stay-probability
/// noise[k] per coordinate; each noise entry must lie in [1/2, 1].
Protocol garble(Protocol base, std::vector<Rat> noise);
ReplyKernel garble_kernel(const ReplyKernel& kernel, const Rat& z);

/// Resolves "competitive", "fair-competitive", "fmax", "fmin", "n1",
/// "improve:<name>" and "garble:<name>:<z0,z1,...>". Throws ConfigError.
Protocol protocol_by_name(const std::string& name);

/// The base protocol names understood by protocol_by_name.
std::vector<std::string> builtin_protocol_names();

}  // namespace curlab
