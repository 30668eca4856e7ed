#include "curlab/serialize.hpp"

#include <fstream>
#include <sstream>

#include "curlab/errors.hpp"

namespace curlab {

namespace {

Rat rat_field(const Json& j, const char* what) {
    if (!j.is_string()) throw ParseError(std::string(what) + " must be a \"num/den\" string");
    return rat_from_string(j.get<std::string>());
}

Rat probability_field(const Json& j, const char* what) {
    const Rat value = rat_field(j, what);
    if (!is_probability(value)) throw ParseError(std::string(what) + " must lie in [0,1]");
    return value;
}

}  // namespace

Json rat_json(const Rat& value) {
    return rat_to_string(value);
}

Json strategy_to_json(const Strategy& s) {
    return Json{{"p", rat_json(s.p)}, {"q", rat_json(s.q)}};
}

Strategy strategy_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("p") || !j.contains("q"))
        throw ParseError("strategy must be an object with p and q");
    return {probability_field(j.at("p"), "p"), probability_field(j.at("q"), "q")};
}

Json profile_to_json(const StrategyProfile& profile) {
    Json out = Json::array();
    for (const Strategy& s : profile.strategies) out.push_back(strategy_to_json(s));
    return out;
}

StrategyProfile profile_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("profile must be an array of strategies");
    StrategyProfile profile;
    for (const Json& item : j) profile.strategies.push_back(strategy_from_json(item));
    return profile;
}

StrategyProfile parse_profile(const std::string& text, int n_agents) {
    StrategyProfile profile;
    std::stringstream stream(text);
    std::string part;
    while (std::getline(stream, part, ';')) {
        const auto comma = part.find(',');
        if (comma == std::string::npos)
            throw ParseError("strategy must be 'p,q', got '" + part + "'");
        const Rat p = rat_from_string(part.substr(0, comma));
        const Rat q = rat_from_string(part.substr(comma + 1));
        if (!is_probability(p) || !is_probability(q))
            throw ParseError("strategy probabilities must lie in [0,1]: '" + part + "'");
        profile.strategies.push_back({p, q});
    }
    if (profile.strategies.size() != static_cast<std::size_t>(n_agents))
        throw ParseError("expected " + std::to_string(n_agents) + " strategies, got " +
                         std::to_string(profile.strategies.size()));
    return profile;
}

std::string format_profile(const StrategyProfile& profile) {
    std::string out;
    for (std::size_t i = 0; i < profile.strategies.size(); ++i) {
        if (i) out += ";";
        out += rat_to_string(profile.strategies[i].p) + "," + rat_to_string(profile.strategies[i].q);
    }
    return out;
}

Json price_function_to_json(const PriceFunction& pf) {
    if (pf.form == PriceForm::Indicator) return Json{{"form", "indicator"}};
    return Json{{"weight", rat_json(pf.weight)}, {"exponent", rat_json(pf.exponent)}};
}

PriceFunction price_function_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("price function must be an object");
    const std::string form = j.value("form", "power-of-gap");
    if (form == "indicator") return PriceFunction::indicator();
    if (form != "power-of-gap") throw ParseError("unknown price form: '" + form + "'");
    if (!j.contains("weight") || !j.contains("exponent"))
        throw ParseError("power-of-gap price needs weight and exponent");
    return PriceFunction::power_of_gap(rat_field(j.at("weight"), "weight"),
                                       rat_field(j.at("exponent"), "exponent"));
}

Json scenario_to_json(const Scenario& scenario) {
    Json prices = Json::array();
    for (const PriceFunction& pf : scenario.prices) prices.push_back(price_function_to_json(pf));
    Json profits = Json::array();
    for (const Rat& c : scenario.profits) profits.push_back(rat_json(c));
    return Json{{"n_agents", scenario.n_agents},
                {"social_function", Json{{"table", scenario.g.table_string()}}},
                {"prices", prices},
                {"profits", profits}};
}

Scenario scenario_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("scenario must be a JSON object");
    if (!j.contains("n_agents") || !j.at("n_agents").is_number_integer())
        throw ParseError("scenario needs an integer n_agents");
    const int n = j.at("n_agents").get<int>();

    if (!j.contains("social_function")) throw ParseError("scenario needs a social_function");
    const Json& gj = j.at("social_function");
    SocialFunction g;
    if (gj.contains("builtin")) {
        g = SocialFunction::builtin(gj.at("builtin").get<std::string>(), n);
    } else if (gj.contains("table")) {
        g = SocialFunction::from_table_string(n, gj.at("table").get<std::string>());
    } else {
        throw ParseError("social_function needs either a builtin name or a table");
    }

    if (!j.contains("prices") || !j.at("prices").is_array())
        throw ParseError("scenario needs a prices array");
    std::vector<PriceFunction> prices;
    for (const Json& item : j.at("prices")) prices.push_back(price_function_from_json(item));

    if (!j.contains("profits") || !j.at("profits").is_array())
        throw ParseError("scenario needs a profits array");
    std::vector<Rat> profits;
    for (const Json& item : j.at("profits")) profits.push_back(rat_field(item, "profit"));

    Scenario scenario{n, std::move(g), std::move(prices), std::move(profits)};
    scenario.validate();
    return scenario;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open scenario file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        throw ParseError("invalid JSON in " + path + ": " + e.what());
    }
    return scenario_from_json(j);
}

Json certificate_to_json(const EquilibriumCertificate& cert) {
    Json verdict;
    if (cert.verdict.is_equilibrium) {
        verdict = Json{{"kind", "grid-equilibrium"}};
    } else {
        verdict = Json{{"kind", "refuted-by"},
                       {"agent", cert.verdict.refuting_agent},
                       {"deviation", strategy_to_json(cert.verdict.refuting_deviation)}};
    }
    Json gains = Json::array();
    for (const Rat& g : cert.gains) gains.push_back(rat_json(g));
    return Json{{"profile", profile_to_json(cert.profile)},
                {"protocol", cert.protocol_name},
                {"grid", cert.grid.denominator},
                {"gains", gains},
                {"verdict", verdict}};
}

Json uniqueness_report_to_json(const UniquenessReport& report) {
    Json fanatic = Json::array();
    for (const auto f : report.fanatic) fanatic.push_back(f != 0);
    Json equilibria = Json::array();
    for (const EquilibriumCertificate& cert : report.equilibria)
        equilibria.push_back(certificate_to_json(cert));
    return Json{{"fanatic", fanatic},
                {"helpless", report.helpless},
                {"truthful_certificate", certificate_to_json(report.truthful_certificate)},
                {"zero_information_certificate",
                 certificate_to_json(report.zero_information_certificate)},
                {"equilibria", equilibria},
                {"enumeration_grid", report.enumeration_grid},
                {"checks",
                 Json{{"truthful_iff_no_fanatic", report.truthful_iff_no_fanatic},
                      {"zero_information_iff_helpless", report.zero_information_iff_helpless},
                      {"classification", report.classification_holds}}},
                {"consistent", report.consistent()}};
}

Json equivalence_report_to_json(const EquivalenceReport& report) {
    Json a = Json::array();
    for (const auto& cert : report.competitive) a.push_back(certificate_to_json(cert));
    Json b = Json::array();
    for (const auto& cert : report.fair_competitive) b.push_back(certificate_to_json(cert));
    return Json{{"competitive", a}, {"fair_competitive", b}, {"identical", report.identical}};
}

std::string transcript_to_jsonl(const Transcript& transcript, const std::vector<Rat>& exact) {
    std::string out;
    for (std::size_t t = 0; t < transcript.trials.size(); ++t) {
        const TrialRecord& record = transcript.trials[t];
        Json replies = Json::array();
        for (const auto& reply : record.replies) {
            std::string bits;
            for (const auto f : reply) bits.push_back(f ? '1' : '0');
            replies.push_back(bits);
        }
        Json guesses = Json::array();
        for (const auto g : record.guesses) guesses.push_back(static_cast<int>(g));
        Json payoffs = Json::array();
        for (const Rat& v : record.payoffs) payoffs.push_back(rat_json(v));
        std::string m;
        for (const auto bit : record.m) m.push_back(bit ? '1' : '0');
        const Json line{{"trial", t},          {"b", record.b.to_string()}, {"m", m},
                        {"f", replies},        {"guesses", guesses},        {"payoffs", payoffs}};
        out += line.dump() + "\n";
    }

    Json means = Json::array();
    Json means_decimal = Json::array();
    Json exact_values = Json::array();
    Json deltas = Json::array();
    Json frequencies = Json::array();
    for (std::size_t i = 0; i < transcript.empirical_mean.size(); ++i) {
        means.push_back(rat_json(transcript.empirical_mean[i]));
        means_decimal.push_back(rat_to_decimal(transcript.empirical_mean[i]));
        if (i < exact.size()) {
            exact_values.push_back(rat_json(exact[i]));
            deltas.push_back(rat_to_decimal(transcript.empirical_mean[i] - exact[i]));
        }
        const MessageStats& stats = transcript.message_stats[i];
        const auto frequency = [](std::uint64_t hits, std::uint64_t total) {
            return total == 0 ? Json(nullptr)
                              : Json(rat_to_string(Rat(static_cast<unsigned long>(hits)) /
                                                   Rat(static_cast<unsigned long>(total))));
        };
        frequencies.push_back(Json{{"agent", i + 1},
                                   {"msg0_given_bit0", frequency(stats.bit0_msg0, stats.bit0_trials)},
                                   {"msg0_given_bit1", frequency(stats.bit1_msg0, stats.bit1_trials)}});
    }
    Json summary{{"summary",
                  Json{{"trials", transcript.config.trials},
                       {"seed", transcript.config.seed},
                       {"protocol", transcript.config.protocol_name},
                       {"profile", format_profile(transcript.config.profile)},
                       {"empirical_mean", means},
                       {"empirical_mean_decimal", means_decimal},
                       {"exact", exact_values},
                       {"delta_decimal", deltas},
                       {"message_frequencies", frequencies}}}};
    out += summary.dump() + "\n";
    return out;
}

}  // namespace curlab
