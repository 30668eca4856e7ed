#pragma once

#include <cstdint>
#include <vector>

#include "curlab/inference.hpp"

namespace curlab {

/// Rational strategy grid {(a/G, b/G) : 0 <= a, b <= G}.
struct StrategyGrid {
    int denominator = 10;
    std::vector<Strategy> strategies() const;
    bool operator==(const StrategyGrid&) const = default;
};

struct BestResponse {
    Rat gain;
    Strategy argmax;
    std::vector<Strategy> argmax_set;
};

struct Verdict {
    bool is_equilibrium = false;
    int refuting_agent = 0;  // 1-based; 0 when no refutation exists
    Strategy refuting_deviation;
    bool operator==(const Verdict&) const = default;
};

/// Exact statement that no grid deviation improves any agent, or a concrete
/// refutation.
struct EquilibriumCertificate {
    StrategyProfile profile;
    std::string protocol_name;
    StrategyGrid grid;
    std::vector<Rat> gains;
    Verdict verdict;
};

enum class CandidatePolicy { Exhaustive, Structured };

/// Maximal utility gain of `agent` over all grid deviations, holding the
/// rest of the profile fixed. Ties in the argmax prefer smaller q, then
/// smaller p.
BestResponse best_response_gain(const Scenario& scenario, const StrategyProfile& profile,
                                const Protocol& protocol, int agent, const StrategyGrid& grid);

/// The verdict is grid-equilibrium iff every gain is at most `slack`
/// (exactly zero by default; a nonnegative slack is for exploratory runs).
EquilibriumCertificate is_grid_equilibrium(const Scenario& scenario, const StrategyProfile& profile,
                                           const Protocol& protocol, const StrategyGrid& grid,
                                           const Rat& slack = Rat(0));

/// Certificates for every candidate profile that is a grid equilibrium.
/// Exhaustive scans all grid profiles; Structured scans the all-truthful
/// profile, the zero-information family, and a coarse subgrid.
std::vector<EquilibriumCertificate> enumerate_equilibria(const Scenario& scenario,
                                                         const Protocol& protocol,
                                                         const StrategyGrid& grid,
                                                         CandidatePolicy policy,
                                                         std::size_t candidate_cap = 200000,
                                                         const Rat& slack = Rat(0));

/// True when the agent's truthful price exceeds the profit gap between full
/// information and her own-bit baseline, so no protocol can buy her honesty.
bool is_fanatic(const Scenario& scenario, int agent);

/// True when the center's bit adds nothing to any single agent's best guess,
/// so zero-information profiles are equilibria everywhere.
bool is_helpless(const Scenario& scenario);

struct UniquenessReport {
    std::vector<std::uint8_t> fanatic;  // per agent, 1-based offset by one
    bool helpless = false;
    EquilibriumCertificate truthful_certificate;
    EquilibriumCertificate zero_information_certificate;
    std::vector<EquilibriumCertificate> equilibria;
    int enumeration_grid = 4;
    bool truthful_iff_no_fanatic = false;
    bool zero_information_iff_helpless = false;
    bool classification_holds = false;
    bool consistent() const;
};

/// Structural flags, the two anchor certificates, exhaustive enumeration and
/// the consistency verdicts for one scenario.
UniquenessReport check_uniqueness(const Scenario& scenario, const StrategyGrid& check_grid,
                                  int enumeration_grid = 4);

struct EquivalenceReport {
    std::vector<EquilibriumCertificate> competitive;
    std::vector<EquilibriumCertificate> fair_competitive;
    bool identical = false;
};

/// Exhaustive equilibrium sets of the competitive and fair competitive
/// protocols, with a set-equality verdict.
EquivalenceReport check_equivalence(const Scenario& scenario, const StrategyGrid& grid);

}  // namespace curlab
