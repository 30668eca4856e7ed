#include "curlab/battery.hpp"

#include "curlab/errors.hpp"
#include "curlab/rng.hpp"

namespace curlab {

SocialFunction random_truth_table(int n_agents, std::uint64_t seed) {
    if (n_agents < 1) throw ParameterError("social function needs at least one agent");
    const std::size_t size = std::size_t{1} << (n_agents + 1);
    std::vector<std::uint8_t> table(size);
    const std::uint64_t stream = derive_stream(seed, 0, 0);
    for (std::size_t idx = 0; idx < size; ++idx)
        table[idx] = static_cast<std::uint8_t>(stream_draw(stream, idx) & 1u);
    return SocialFunction::from_table(n_agents, std::move(table));
}

namespace {

constexpr std::uint64_t kRandomTableSeed = 0x5EED;

Scenario two_agent_scenario(SocialFunction g, const Rat& weight) {
    const PriceFunction pf = PriceFunction::power_of_gap(weight, Rat(1));
    return make_scenario(std::move(g), {pf, pf}, {Rat(1), Rat(1)});
}

std::vector<BatteryEntry> build_battery() {
    struct Base {
        std::string name;
        SocialFunction g;
    };
    const std::vector<Base> bases = {
        {"parity3", SocialFunction::builtin("parity", 2)},
        {"majority3", SocialFunction::builtin("majority", 2)},
        {"dictator0", SocialFunction::builtin("dictator:0", 2)},
        {"gstar", SocialFunction::builtin("and-xor-center", 2)},
        {"rand3", random_truth_table(2, kRandomTableSeed)},
    };
    const std::vector<Rat> weights = {rat(1, 10), rat(1, 5), rat(3, 5)};

    std::vector<BatteryEntry> battery;
    for (const Base& base : bases)
        for (const Rat& w : weights)
            battery.push_back({base.name + ":w=" + rat_to_string(w), two_agent_scenario(base.g, w)});
    return battery;
}

}  // namespace

std::vector<BatteryEntry> standard_battery() {
    static const std::vector<BatteryEntry> battery = build_battery();
    return battery;
}

const Scenario& battery_scenario(const std::string& id) {
    static const std::vector<BatteryEntry> battery = standard_battery();
    for (const BatteryEntry& entry : battery)
        if (entry.id == id) return entry.scenario;
    throw ConfigError("unknown battery scenario: '" + id + "'");
}

}  // namespace curlab
