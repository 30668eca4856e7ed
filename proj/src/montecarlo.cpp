#include "curlab/montecarlo.hpp"

#include <map>
#include <tuple>
#include <utility>

#include "curlab/errors.hpp"
#include "curlab/rng.hpp"

namespace curlab {

namespace {

// One (trial, role) random stream. Draws are counted so rejection sampling
// stays deterministic and order-independent across roles.
class Stream {
public:
    Stream(std::uint64_t seed, std::uint64_t trial, std::uint64_t role)
        : key_(derive_stream(seed, trial, role)) {}

    std::uint64_t next() { return stream_draw(key_, counter_++); }

    /// Uniform integer in [0, bound) via bit rejection; exact for any mpz bound.
    Int below(const Int& bound) {
        const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
        const std::size_t words = (bits + 63) / 64;
        while (true) {
            Int value(0);
            for (std::size_t w = 0; w < words; ++w) {
                value <<= 64;
                std::uint64_t block = next();
                if (w == 0 && bits % 64 != 0) block &= (std::uint64_t{1} << (bits % 64)) - 1;
                value += Int(static_cast<unsigned long>(block >> 32)) << 32;
                value += static_cast<unsigned long>(block & 0xFFFFFFFFULL);
            }
            if (value < bound) return value;
        }
    }

    /// Exact Bernoulli draw with the given rational probability.
    bool bernoulli(const Rat& probability) {
        if (!is_probability(probability)) throw ParameterError("Bernoulli probability outside [0,1]");
        return below(Int(probability.get_den())) < probability.get_num();
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace

Transcript simulate(const RunConfig& config) {
    config.scenario.validate();
    if (config.trials < 1) throw ConfigError("trials must be at least 1");
    if (config.profile.n_agents() != static_cast<std::size_t>(config.scenario.n_agents))
        throw ConfigError("profile size does not match scenario");
    const Protocol protocol = protocol_by_name(config.protocol_name);

    const Scenario& scenario = config.scenario;
    const int n = scenario.n_agents;
    const std::size_t coords = static_cast<std::size_t>(n) + 1;

    // The plan is fixed once the profile is committed.
    const ReplyPlan plan = protocol.plan_of(scenario, config.profile);

    Transcript transcript;
    transcript.config = config;
    transcript.trials.reserve(config.trials);
    transcript.correct_count.assign(static_cast<std::size_t>(n), 0);
    transcript.message_stats.assign(static_cast<std::size_t>(n), {});

    // Guess distributions depend on (agent, own bit, reply vector) only;
    // resolved lazily through the exact inference machinery.
    std::map<std::tuple<int, int, std::vector<std::uint8_t>>, GuessDistribution> guess_cache;
    const auto guess_of = [&](int agent, int own_bit, int own_message,
                              const std::vector<std::uint8_t>& reply) {
        const auto key = std::make_tuple(agent, own_bit, reply);
        auto it = guess_cache.find(key);
        if (it == guess_cache.end()) {
            const PosteriorVector v = posterior_vector(scenario, config.profile, plan.row(agent),
                                                       agent, own_bit, own_message, reply);
            it = guess_cache.emplace(key, guess(scenario.g, v)).first;
        }
        return it->second;
    };

    for (std::uint64_t trial = 0; trial < config.trials; ++trial) {
        TrialRecord record;
        record.b.bits.resize(coords);
        record.m.resize(coords);

        for (std::size_t k = 0; k < coords; ++k) {
            Stream s(config.seed, trial, role_id(DrawKind::Bit, 0, k));
            record.b.bits[k] = s.bernoulli(Rat(1, 2)) ? 1 : 0;
        }
        record.m[0] = record.b[0];
        for (int i = 1; i <= n; ++i) {
            Stream s(config.seed, trial, role_id(DrawKind::Message, 0, static_cast<std::uint64_t>(i)));
            const Rat zero_prob = message_prob(config.profile.agent(i), record.b[static_cast<std::size_t>(i)]);
            record.m[static_cast<std::size_t>(i)] = s.bernoulli(zero_prob) ? 0 : 1;
        }
        record.replies.assign(static_cast<std::size_t>(n), std::vector<std::uint8_t>(coords, 0));
        for (int i = 1; i <= n; ++i) {
            for (std::size_t k = 0; k < coords; ++k) {
                Stream s(config.seed, trial,
                         role_id(DrawKind::Reply, static_cast<std::uint64_t>(i), k));
                const Rat zero_prob = plan.row(i)[k].reply_prob(record.m[k], 0);
                record.replies[static_cast<std::size_t>(i) - 1][k] = s.bernoulli(zero_prob) ? 0 : 1;
            }
        }

        const int true_value = eval_social_function(scenario.g, record.b);
        for (int i = 1; i <= n; ++i) {
            const int own_bit = record.b[static_cast<std::size_t>(i)];
            const GuessDistribution d = guess_of(i, own_bit, record.m[static_cast<std::size_t>(i)],
                                                 record.replies[static_cast<std::size_t>(i) - 1]);
            int choice;
            if (d.p_one == 1) {
                choice = 1;
            } else if (d.p_one == 0) {
                choice = 0;
            } else {
                Stream s(config.seed, trial, role_id(DrawKind::Guess, static_cast<std::uint64_t>(i)));
                choice = s.bernoulli(d.p_one) ? 1 : 0;
            }
            record.guesses.push_back(static_cast<std::uint8_t>(choice));
            const bool correct = choice == true_value;
            record.payoffs.push_back(correct ? scenario.profit_of(i) : Rat(0));
            if (correct) ++transcript.correct_count[static_cast<std::size_t>(i) - 1];

            MessageStats& stats = transcript.message_stats[static_cast<std::size_t>(i) - 1];
            const bool msg0 = record.m[static_cast<std::size_t>(i)] == 0;
            if (own_bit == 0) {
                ++stats.bit0_trials;
                if (msg0) ++stats.bit0_msg0;
            } else {
                ++stats.bit1_trials;
                if (msg0) ++stats.bit1_msg0;
            }
        }
        transcript.trials.push_back(std::move(record));
    }

    for (int i = 1; i <= n; ++i) {
        Rat mean = scenario.profit_of(i) *
                   Rat(static_cast<unsigned long>(transcript.correct_count[static_cast<std::size_t>(i) - 1]));
        mean /= Rat(static_cast<unsigned long>(config.trials));
        transcript.empirical_mean.push_back(mean);
    }
    return transcript;
}

}  // namespace curlab
