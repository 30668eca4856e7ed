#include <doctest.h>

#include <algorithm>

#include "curlab/battery.hpp"
#include "curlab/equilibrium.hpp"
#include "curlab/errors.hpp"
#include "oracles.hpp"

using namespace curlab;

namespace {

const Scenario& gstar_low() { return battery_scenario("gstar:w=1/10"); }
const Scenario& parity_low() { return battery_scenario("parity3:w=1/10"); }
const Scenario& parity_mid() { return battery_scenario("parity3:w=1/5"); }
const Scenario& parity_high() { return battery_scenario("parity3:w=3/5"); }

StrategyProfile all_truthful(int n = 2) { return uniform_profile(n, truthful_strategy()); }
StrategyProfile all_half(int n = 2) {
    return uniform_profile(n, zero_information_strategy(rat(1, 2)));
}

int count_zero_information(const std::vector<EquilibriumCertificate>& certs) {
    return static_cast<int>(
        std::count_if(certs.begin(), certs.end(), [](const EquilibriumCertificate& c) {
            return c.profile.all_zero_information();
        }));
}

bool contains_truthful(const std::vector<EquilibriumCertificate>& certs) {
    return std::any_of(certs.begin(), certs.end(), [](const EquilibriumCertificate& c) {
        return c.profile.all_truthful();
    });
}

}  // namespace

TEST_CASE("the strategy grid covers the anchor strategies") {
    const std::vector<Strategy> strategies = StrategyGrid{10}.strategies();
    CHECK(strategies.size() == 121);
    const auto has = [&](const Strategy& s) {
        return std::find(strategies.begin(), strategies.end(), s) != strategies.end();
    };
    CHECK(has(truthful_strategy()));
    CHECK(has(Strategy{rat(0), rat(1)}));
    for (int c = 0; c <= 10; ++c) CHECK(has(zero_information_strategy(rat(c, 10))));
    CHECK_THROWS_AS(StrategyGrid{0}.strategies(), ParameterError);
}

TEST_CASE("best response gains at the anchor profiles") {
    const Protocol comp = make_competitive();
    const StrategyGrid grid{10};

    SUBCASE("truthful profile is a fixed point when the weight is small") {
        for (int i = 1; i <= 2; ++i) {
            const BestResponse br = best_response_gain(gstar_low(), all_truthful(), comp, i, grid);
            CHECK(br.gain == rat(0));
            CHECK(br.argmax == truthful_strategy());
        }
    }
    SUBCASE("a useful center makes zero-information unravel") {
        const BestResponse br = best_response_gain(gstar_low(), all_half(), comp, 1, grid);
        CHECK(br.gain == rat(6, 25));
        CHECK(br.argmax == Strategy{rat(1, 10), rat(0)});
        CHECK(br.argmax.gap() == rat(1, 10));
    }
    SUBCASE("under all-noise replies the best move is to stop paying") {
        const Protocol fmin = make_fmin();
        const StrategyProfile profile{{{rat(3, 4), rat(1, 4)}, truthful_strategy()}};
        const BestResponse br = best_response_gain(parity_mid(), profile, fmin, 1, grid);
        CHECK(br.gain == price(parity_mid().price_of(1), profile.agent(1)));
        CHECK(br.argmax.is_zero_information());
        CHECK(br.argmax == Strategy{rat(0), rat(0)});
    }
}

TEST_CASE("equilibrium certificates") {
    const Protocol comp = make_competitive();
    const StrategyGrid grid{10};

    SUBCASE("truthful profile of a useful center is certified") {
        const EquilibriumCertificate cert =
            is_grid_equilibrium(gstar_low(), all_truthful(), comp, grid);
        CHECK(cert.verdict.is_equilibrium);
        for (const Rat& gain : cert.gains) CHECK(gain <= 0);
    }
    SUBCASE("zero-information profile of a useful center is refuted") {
        const EquilibriumCertificate cert =
            is_grid_equilibrium(gstar_low(), all_half(), comp, grid);
        CHECK_FALSE(cert.verdict.is_equilibrium);
        CHECK(cert.verdict.refuting_agent == 1);
        CHECK(cert.verdict.refuting_deviation == Strategy{rat(1, 10), rat(0)});
        CHECK(cert.gains[0] == rat(6, 25));
    }
    SUBCASE("a helpless center keeps the zero-information profile stable") {
        const EquilibriumCertificate cert =
            is_grid_equilibrium(parity_low(), all_half(), comp, grid);
        CHECK(cert.verdict.is_equilibrium);
    }
}

TEST_CASE("exhaustive enumeration matches the two-class picture") {
    const Protocol comp = make_competitive();
    const StrategyGrid grid{4};

    SUBCASE("useful center, small weight: only truthfulness survives") {
        const auto certs = enumerate_equilibria(gstar_low(), comp, grid,
                                                CandidatePolicy::Exhaustive);
        REQUIRE(certs.size() == 1);
        CHECK(certs.front().profile.all_truthful());
    }
    SUBCASE("helpless center, small weight: truthfulness plus the zero-information family") {
        const auto certs = enumerate_equilibria(parity_low(), comp, grid,
                                                CandidatePolicy::Exhaustive);
        CHECK(certs.size() == 26);
        CHECK(contains_truthful(certs));
        CHECK(count_zero_information(certs) == 25);
    }
    SUBCASE("helpless center, fanatic weight: only the zero-information family") {
        const auto certs = enumerate_equilibria(parity_high(), comp, grid,
                                                CandidatePolicy::Exhaustive);
        CHECK(certs.size() == 25);
        CHECK_FALSE(contains_truthful(certs));
        CHECK(count_zero_information(certs) == 25);
    }
    SUBCASE("structured policy finds the same anchor classes") {
        const auto certs = enumerate_equilibria(parity_low(), comp, StrategyGrid{10},
                                                CandidatePolicy::Structured);
        CHECK(contains_truthful(certs));
        // the zero-information representatives plus the coarse subgrid combinations
        CHECK(count_zero_information(certs) >= 11);
        CHECK(static_cast<std::size_t>(count_zero_information(certs)) + 1 == certs.size());
    }
    SUBCASE("candidate budgets are enforced") {
        const Scenario three = make_scenario(
            SocialFunction::builtin("majority", 3),
            std::vector<PriceFunction>(3, PriceFunction::power_of_gap(rat(1, 10), rat(1))),
            std::vector<Rat>(3, rat(1)));
        CHECK_THROWS_AS(enumerate_equilibria(three, comp, StrategyGrid{10},
                                             CandidatePolicy::Exhaustive),
                        BudgetError);
    }
}

TEST_CASE("certificates accept off-grid committed profiles") {
    // the profile need not live on the deviation grid
    const StrategyProfile off_grid{{zero_information_strategy(rat(11, 20)),
                                    zero_information_strategy(rat(9, 20))}};
    const EquilibriumCertificate stable =
        is_grid_equilibrium(parity_low(), off_grid, make_competitive(), StrategyGrid{10});
    CHECK(stable.verdict.is_equilibrium);

    const StrategyProfile committed{{{rat(13, 20), rat(7, 20)},
                                     zero_information_strategy(rat(1, 2))}};
    const EquilibriumCertificate refuted =
        is_grid_equilibrium(parity_low(), committed, make_competitive(), StrategyGrid{10});
    CHECK_FALSE(refuted.verdict.is_equilibrium);
    CHECK(refuted.verdict.refuting_agent == 1);
    // dropping to zero information keeps the baseline profit and saves the price
    CHECK(refuted.gains[0] == price(parity_low().price_of(1), committed.agent(1)));
}

TEST_CASE("a nonnegative slack widens the equilibrium verdict") {
    const Protocol comp = make_competitive();
    const StrategyGrid grid{10};
    // the zero-information profile of a useful center is refuted by gain 6/25
    CHECK_FALSE(is_grid_equilibrium(gstar_low(), all_half(), comp, grid, rat(1, 5))
                    .verdict.is_equilibrium);
    CHECK(is_grid_equilibrium(gstar_low(), all_half(), comp, grid, rat(6, 25))
              .verdict.is_equilibrium);
    // slack 6/25 admits the zero-information family (best G=4 deviation gains
    // 9/40) along with further near-equilibria, and keeps the exact set
    const auto exact_set = enumerate_equilibria(gstar_low(), comp, StrategyGrid{4},
                                                CandidatePolicy::Exhaustive);
    const auto with_slack = enumerate_equilibria(gstar_low(), comp, StrategyGrid{4},
                                                 CandidatePolicy::Exhaustive, 200000, rat(6, 25));
    CHECK(contains_truthful(with_slack));
    CHECK(count_zero_information(with_slack) == 25);
    CHECK(with_slack.size() > exact_set.size());
    for (const auto& cert : exact_set) {
        CHECK(std::any_of(with_slack.begin(), with_slack.end(),
                          [&](const EquilibriumCertificate& c) {
                              return c.profile == cert.profile;
                          }));
    }
    CHECK_THROWS_AS(is_grid_equilibrium(gstar_low(), all_half(), comp, grid, rat(-1, 5)),
                    ParameterError);
}

TEST_CASE("fanatic agents by the closed form") {
    const auto scenario = [](const char* builtin, const Rat& w) {
        const PriceFunction pf = PriceFunction::power_of_gap(w, rat(1));
        return make_scenario(SocialFunction::builtin(builtin, 2), {pf, pf}, {rat(1), rat(1)});
    };
    CHECK(is_fanatic(scenario("majority", rat(3, 10)), 1));
    CHECK_FALSE(is_fanatic(scenario("majority", rat(1, 5)), 1));
    CHECK(is_fanatic(scenario("parity", rat(3, 5)), 2));
    CHECK_FALSE(is_fanatic(scenario("parity", rat(1, 2)), 2));
}

TEST_CASE("fanatic closed form agrees with the definitional minimization") {
    // The all-noise protocol's profit is profile independent, so the
    // definition's universal quantifier collapses to the baseline.
    for (const auto& entry : standard_battery()) {
        const Scenario& scenario = entry.scenario;
        const Protocol fmin = make_fmin();
        const Protocol fmax = make_fmax();
        for (int i = 1; i <= scenario.n_agents; ++i) {
            Rat min_noise_profit = scenario.profit_of(i);
            for (const Strategy& s1 : StrategyGrid{2}.strategies()) {
                for (const Strategy& s2 : StrategyGrid{2}.strategies()) {
                    const StrategyProfile profile{{s1, s2}};
                    min_noise_profit =
                        std::min(min_noise_profit, expected_profit(scenario, profile, fmin, i));
                }
            }
            CHECK(min_noise_profit == baseline_profit(scenario, i));
            const Rat full_info =
                expected_profit(scenario, uniform_profile(2, truthful_strategy()), fmax, i);
            CHECK(full_info == scenario.profit_of(i));
            const bool definitional = price(scenario.price_of(i), truthful_strategy()) >
                                      full_info - min_noise_profit;
            CHECK(definitional == is_fanatic(scenario, i));
        }
    }
}

TEST_CASE("helplessness by bonus-equals-baseline") {
    CHECK(is_helpless(parity_low()));
    CHECK(is_helpless(battery_scenario("majority3:w=1/10")));
    CHECK_FALSE(is_helpless(gstar_low()));
    CHECK_FALSE(is_helpless(battery_scenario("dictator0:w=1/10")));

    Scenario indicator_priced = parity_low();
    indicator_priced.prices[0] = PriceFunction::indicator();
    CHECK_THROWS_AS(is_helpless(indicator_priced), InvalidPriceFunctionError);
}

TEST_CASE("helplessness matches the zero-information certificate on the battery") {
    for (const auto& entry : standard_battery()) {
        const EquilibriumCertificate cert = is_grid_equilibrium(
            entry.scenario, all_half(entry.scenario.n_agents), make_competitive(), StrategyGrid{10});
        CHECK(is_helpless(entry.scenario) == cert.verdict.is_equilibrium);
    }
}

TEST_CASE("uniqueness reports") {
    SUBCASE("useful center, no fanatics") {
        const UniquenessReport report = check_uniqueness(gstar_low(), StrategyGrid{10});
        CHECK_FALSE(report.helpless);
        CHECK(report.fanatic == std::vector<std::uint8_t>{0, 0});
        CHECK(report.truthful_certificate.verdict.is_equilibrium);
        CHECK_FALSE(report.zero_information_certificate.verdict.is_equilibrium);
        CHECK(report.equilibria.size() == 1);
        CHECK(report.consistent());
    }
    SUBCASE("helpless center, no fanatics") {
        const UniquenessReport report = check_uniqueness(parity_low(), StrategyGrid{10});
        CHECK(report.helpless);
        CHECK(report.fanatic == std::vector<std::uint8_t>{0, 0});
        CHECK(report.truthful_certificate.verdict.is_equilibrium);
        CHECK(report.zero_information_certificate.verdict.is_equilibrium);
        CHECK(report.equilibria.size() == 26);
        CHECK(report.consistent());
    }
    SUBCASE("helpless center, fanatic agents") {
        const UniquenessReport report = check_uniqueness(parity_high(), StrategyGrid{10});
        CHECK(report.helpless);
        CHECK(report.fanatic == std::vector<std::uint8_t>{1, 1});
        CHECK_FALSE(report.truthful_certificate.verdict.is_equilibrium);
        CHECK(report.zero_information_certificate.verdict.is_equilibrium);
        CHECK(report.equilibria.size() == 25);
        CHECK(report.consistent());
    }
}

TEST_CASE("equivalence reports across the weight range") {
    for (const char* id : {"gstar:w=1/10", "parity3:w=1/10", "parity3:w=3/5"}) {
        const EquivalenceReport report =
            check_equivalence(battery_scenario(id), StrategyGrid{4});
        CHECK(report.identical);
    }
}

TEST_CASE("at truthful opponents every committed deviation loses to zero information") {
    const Scenario& scenario = gstar_low();
    const Protocol comp = make_competitive();
    StrategyProfile profile = all_truthful();
    profile.agent(1) = zero_information_strategy(rat(0));
    const Rat zero_info = utility(scenario, profile, comp, 1);
    for (const Strategy& s : StrategyGrid{10}.strategies()) {
        if (s.is_truthful() || s.is_zero_information()) continue;
        profile.agent(1) = s;
        CHECK(utility(scenario, profile, comp, 1) < zero_info);
    }
}

TEST_CASE("zero-information strategies are interchangeable everywhere") {
    const Scenario& scenario = gstar_low();
    const std::vector<Rat> cs = {rat(0), rat(1, 4), rat(1, 2), rat(1)};
    for (const Protocol& protocol :
         {make_fmin(), make_fmax(), make_competitive(), make_fair_competitive()}) {
        StrategyProfile profile{{{rat(3, 4), rat(1, 4)}, zero_information_strategy(cs[0])}};
        std::vector<Rat> reference;
        for (int i = 1; i <= 2; ++i)
            reference.push_back(utility(scenario, profile, protocol, i));
        const BestResponse reference_br =
            best_response_gain(scenario, profile, protocol, 1, StrategyGrid{4});
        for (const Rat& c : cs) {
            profile.agent(2) = zero_information_strategy(c);
            for (int i = 1; i <= 2; ++i)
                CHECK(utility(scenario, profile, protocol, i) == reference[i - 1]);
            const BestResponse br =
                best_response_gain(scenario, profile, protocol, 1, StrategyGrid{4});
            CHECK(br.gain == reference_br.gain);
            CHECK(br.argmax == reference_br.argmax);
            CHECK(br.argmax_set == reference_br.argmax_set);
        }
    }
}

TEST_CASE("indicator-price substitution preserves the two equilibrium classes") {
    // Over the continuum the substitution changes nothing: a winner at any
    // positive gap undercuts her own price while keeping the indicator rank.
    // Grid certificates quantize that undercut, so the indicator variant can
    // pick up extra equilibria whose winner sits at the smallest positive grid
    // gap. The class-anchored statements survive exactly, and every extra
    // certificate is of that one quantization shape.
    for (const auto& entry : standard_battery()) {
        const Scenario& scenario = entry.scenario;
        const StrategyGrid grid{4};
        const Protocol model = make_competitive();
        const Protocol indicator = make_competitive(PriceMode::Indicator);

        for (const StrategyProfile& anchor :
             {all_truthful(), all_half(),
              uniform_profile(2, zero_information_strategy(rat(0)))}) {
            CHECK(is_grid_equilibrium(scenario, anchor, model, grid).verdict.is_equilibrium ==
                  is_grid_equilibrium(scenario, anchor, indicator, grid).verdict.is_equilibrium);
        }

        const auto with_model = enumerate_equilibria(scenario, model, grid,
                                                     CandidatePolicy::Exhaustive);
        const auto with_indicator =
            enumerate_equilibria(scenario, indicator, grid, CandidatePolicy::Exhaustive);

        // Model equilibria form a subset of the indicator ones...
        for (const auto& cert : with_model) {
            const bool found = std::any_of(
                with_indicator.begin(), with_indicator.end(),
                [&](const EquilibriumCertificate& c) { return c.profile == cert.profile; });
            CHECK(found);
        }
        // ...and every extra one is a minimal-gap winner over zero-information
        // opponents, the profile whose refutation lives off the grid.
        const Rat min_gap = rat(1, grid.denominator);
        for (const auto& cert : with_indicator) {
            const bool in_model = std::any_of(
                with_model.begin(), with_model.end(),
                [&](const EquilibriumCertificate& c) { return c.profile == cert.profile; });
            if (in_model) continue;
            int committed = 0;
            bool winner_at_min_gap = false;
            for (const Strategy& s : cert.profile.strategies) {
                if (s.is_zero_information()) continue;
                ++committed;
                winner_at_min_gap = s.gap() == min_gap;
            }
            CHECK(committed == 1);
            CHECK(winner_at_min_gap);
        }
    }
}
