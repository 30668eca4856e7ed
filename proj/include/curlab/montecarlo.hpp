#pragma once

#include <cstdint>

#include "curlab/inference.hpp"

namespace curlab {

struct RunConfig {
    Scenario scenario;
    StrategyProfile profile;
    std::string protocol_name;
    std::uint64_t trials = 1;
    std::uint64_t seed = 0;
};

struct TrialRecord {
    BitVector b;
    std::vector<std::uint8_t> m;
    std::vector<std::vector<std::uint8_t>> replies;  // per agent, length N+1
    std::vector<std::uint8_t> guesses;               // per agent
    std::vector<Rat> payoffs;                        // 0 or c_i
};

/// Empirical conditional message frequencies for one agent.
struct MessageStats {
    std::uint64_t bit0_trials = 0;
    std::uint64_t bit0_msg0 = 0;
    std::uint64_t bit1_trials = 0;
    std::uint64_t bit1_msg0 = 0;
};

struct Transcript {
    RunConfig config;
    std::vector<TrialRecord> trials;
    std::vector<std::uint64_t> correct_count;  // per agent
    std::vector<Rat> empirical_mean;           // per agent, exact c_i * hits / trials
    std::vector<MessageStats> message_stats;   // per agent
};

/// Runs the literal game flow: draw bits, draw messages from the committed
/// strategies, draw each reply coordinate from the plan the protocol selects
/// at the committed profile, guess by exact Bayes (fair coin on exact ties),
/// pay on correctness. A deterministic function of the seed.
Transcript simulate(const RunConfig& config);

}  // namespace curlab
