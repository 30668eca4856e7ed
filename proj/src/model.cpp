#include "curlab/model.hpp"

#include <algorithm>

#include "curlab/errors.hpp"

namespace curlab {

BitVector BitVector::from_index(std::size_t length, std::size_t index) {
    BitVector b;
    b.bits.resize(length);
    for (std::size_t k = 0; k < length; ++k)
        b.bits[k] = static_cast<std::uint8_t>((index >> (length - 1 - k)) & 1u);
    return b;
}

std::size_t BitVector::index() const {
    std::size_t idx = 0;
    for (const auto bit : bits) idx = (idx << 1) | bit;
    return idx;
}

std::string BitVector::to_string() const {
    std::string out;
    out.reserve(bits.size());
    for (const auto bit : bits) out.push_back(bit ? '1' : '0');
    return out;
}

Rat Strategy::gap() const {
    return abs(p - q);
}

Strategy truthful_strategy() {
    return {Rat(1), Rat(0)};
}

Strategy zero_information_strategy(const Rat& c) {
    return {c, c};
}

Strategy center_channel() {
    return truthful_strategy();
}

Strategy make_strategy(Rat p, Rat q) {
    if (!is_probability(p) || !is_probability(q))
        throw ParameterError("strategy probabilities must lie in [0,1]");
    return {std::move(p), std::move(q)};
}

Rat message_prob(const Strategy& s, int bit) {
    if (bit != 0 && bit != 1) throw ParameterError("bit must be 0 or 1");
    return bit == 0 ? s.p : s.q;
}

const Strategy& StrategyProfile::agent(int i) const {
    if (i < 1 || static_cast<std::size_t>(i) > strategies.size())
        throw ParameterError("agent index out of range: " + std::to_string(i));
    return strategies[static_cast<std::size_t>(i) - 1];
}

Strategy& StrategyProfile::agent(int i) {
    return const_cast<Strategy&>(static_cast<const StrategyProfile&>(*this).agent(i));
}

bool StrategyProfile::all_truthful() const {
    return std::all_of(strategies.begin(), strategies.end(),
                       [](const Strategy& s) { return s.is_truthful(); });
}

bool StrategyProfile::all_zero_information() const {
    return std::all_of(strategies.begin(), strategies.end(),
                       [](const Strategy& s) { return s.is_zero_information(); });
}

StrategyProfile uniform_profile(int n_agents, const Strategy& s) {
    StrategyProfile profile;
    profile.strategies.assign(static_cast<std::size_t>(n_agents), s);
    return profile;
}

SocialFunction SocialFunction::from_table(int n_agents, std::vector<std::uint8_t> table) {
    if (n_agents < 1) throw ParameterError("social function needs at least one agent");
    const std::size_t expected = std::size_t{1} << (n_agents + 1);
    if (table.size() != expected)
        throw DimensionError("truth table must have 2^(N+1) entries, got " +
                             std::to_string(table.size()));
    for (const auto v : table)
        if (v > 1) throw ParameterError("truth table entries must be 0 or 1");
    return {n_agents, std::move(table)};
}

SocialFunction SocialFunction::from_table_string(int n_agents, const std::string& bits) {
    std::vector<std::uint8_t> table;
    table.reserve(bits.size());
    for (const char c : bits) {
        if (c != '0' && c != '1') throw ParseError("truth table string must contain only 0/1");
        table.push_back(c == '1' ? 1 : 0);
    }
    return from_table(n_agents, std::move(table));
}

SocialFunction SocialFunction::builtin(const std::string& name, int n_agents) {
    if (n_agents < 1) throw ParameterError("social function needs at least one agent");
    const std::size_t size = std::size_t{1} << (n_agents + 1);
    std::vector<std::uint8_t> table(size);

    const auto colon = name.find(':');
    const std::string head = name.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : name.substr(colon + 1);

    const auto fill = [&](auto&& fn) {
        for (std::size_t idx = 0; idx < size; ++idx)
            table[idx] = fn(BitVector::from_index(static_cast<std::size_t>(n_agents) + 1, idx)) ? 1 : 0;
    };

    if (head == "parity" && arg.empty()) {
        fill([](const BitVector& b) {
            int x = 0;
            for (std::size_t k = 0; k < b.size(); ++k) x ^= b[k];
            return x == 1;
        });
    } else if (head == "majority" && arg.empty()) {
        // Strict majority of the N+1 bits.
        fill([](const BitVector& b) {
            std::size_t ones = 0;
            for (std::size_t k = 0; k < b.size(); ++k) ones += b[k];
            return 2 * ones > b.size();
        });
    } else if (head == "and-xor-center" && arg.empty()) {
        fill([](const BitVector& b) {
            int all = 1;
            for (std::size_t k = 1; k < b.size(); ++k) all &= b[k];
            return (b[0] ^ all) == 1;
        });
    } else if (head == "dictator") {
        std::size_t k = 0;
        try {
            k = static_cast<std::size_t>(std::stoul(arg));
        } catch (const std::exception&) {
            throw ParseError("dictator builtin needs a coordinate: dictator:<k>");
        }
        if (k > static_cast<std::size_t>(n_agents))
            throw ParameterError("dictator coordinate out of range");
        fill([k](const BitVector& b) { return b[k] == 1; });
    } else if (head == "constant") {
        if (arg != "0" && arg != "1") throw ParseError("constant builtin needs constant:<0|1>");
        const std::uint8_t v = arg == "1" ? 1 : 0;
        std::fill(table.begin(), table.end(), v);
    } else {
        throw ParseError("unknown social function builtin: '" + name + "'");
    }
    return {n_agents, std::move(table)};
}

std::string SocialFunction::table_string() const {
    std::string out;
    out.reserve(table.size());
    for (const auto v : table) out.push_back(v ? '1' : '0');
    return out;
}

SocialFunction SocialFunction::complemented() const {
    SocialFunction g = *this;
    for (auto& v : g.table) v = v ? 0 : 1;
    return g;
}

int eval_social_function(const SocialFunction& g, const BitVector& b) {
    if (b.size() != static_cast<std::size_t>(g.n_agents) + 1)
        throw DimensionError("bit vector length " + std::to_string(b.size()) +
                             " does not match N+1 = " + std::to_string(g.n_agents + 1));
    return g.table[b.index()];
}

PriceFunction PriceFunction::power_of_gap(Rat weight, Rat exponent) {
    if (sgn(weight) <= 0) throw ParameterError("price weight must be positive");
    if (sgn(exponent) <= 0) throw ParameterError("price exponent must be positive");
    return {PriceForm::PowerOfGap, std::move(weight), std::move(exponent)};
}

PriceFunction PriceFunction::indicator() {
    return {PriceForm::Indicator, Rat(1), Rat(1)};
}

Rat price(const PriceFunction& pf, const Strategy& s) {
    if (pf.form == PriceForm::Indicator) return s.is_zero_information() ? Rat(0) : Rat(1);
    return pf.weight * rat_pow(s.gap(), pf.exponent);
}

Rat relative_price(const PriceFunction& pf, const Strategy& s) {
    const Rat truthful_price = price(pf, truthful_strategy());
    if (truthful_price == 0)
        throw InvalidPriceFunctionError("truthful strategy has zero price; relative price undefined");
    return price(pf, s) / truthful_price;
}

int compare_relative_price(const PriceFunction& pf1, const Strategy& s1, const PriceFunction& pf2,
                           const Strategy& s2) {
    // Relative prices: |p-q|^alpha for power-of-gap, 0/1 for the indicator.
    const auto indicator_level = [](const Strategy& s) { return s.is_zero_information() ? Rat(0) : Rat(1); };
    if (pf1.form == PriceForm::Indicator && pf2.form == PriceForm::Indicator)
        return cmp(indicator_level(s1), indicator_level(s2));
    if (pf1.form == PriceForm::Indicator)
        return compare_pow(indicator_level(s1), Rat(1), s2.gap(), pf2.exponent);
    if (pf2.form == PriceForm::Indicator)
        return compare_pow(s1.gap(), pf1.exponent, indicator_level(s2), Rat(1));
    return compare_pow(s1.gap(), pf1.exponent, s2.gap(), pf2.exponent);
}

void Scenario::validate() const {
    if (n_agents < 1) throw ParameterError("scenario needs at least one agent");
    if (g.n_agents != n_agents) throw DimensionError("social function arity does not match n_agents");
    if (g.table.size() != (std::size_t{1} << (n_agents + 1)))
        throw DimensionError("social function table has the wrong size");
    if (prices.size() != static_cast<std::size_t>(n_agents))
        throw DimensionError("need one price function per agent");
    if (profits.size() != static_cast<std::size_t>(n_agents))
        throw DimensionError("need one profit constant per agent");
    for (const auto& pf : prices) {
        if (pf.form != PriceForm::PowerOfGap)
            throw InvalidPriceFunctionError("agent prices must be power-of-gap (continuous)");
        if (sgn(pf.weight) <= 0 || sgn(pf.exponent) <= 0)
            throw ParameterError("price weight and exponent must be positive");
    }
    for (const auto& c : profits)
        if (sgn(c) <= 0) throw ParameterError("profit constants must be positive");
}

const PriceFunction& Scenario::price_of(int agent) const {
    if (agent < 1 || agent > n_agents)
        throw ParameterError("agent index out of range: " + std::to_string(agent));
    return prices[static_cast<std::size_t>(agent) - 1];
}

const Rat& Scenario::profit_of(int agent) const {
    if (agent < 1 || agent > n_agents)
        throw ParameterError("agent index out of range: " + std::to_string(agent));
    return profits[static_cast<std::size_t>(agent) - 1];
}

Scenario make_scenario(SocialFunction g, std::vector<PriceFunction> prices, std::vector<Rat> profits) {
    Scenario scenario{g.n_agents, std::move(g), std::move(prices), std::move(profits)};
    scenario.validate();
    return scenario;
}

}  // namespace curlab
