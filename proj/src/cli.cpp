#include "curlab/cli.hpp"

#include <algorithm>
#include <filesystem>

#include "curlab/errors.hpp"

namespace curlab {

namespace {

bool is_usage_error(const Error& e) {
    return dynamic_cast<const ParseError*>(&e) != nullptr ||
           dynamic_cast<const ConfigError*>(&e) != nullptr ||
           dynamic_cast<const ParameterError*>(&e) != nullptr ||
           dynamic_cast<const DimensionError*>(&e) != nullptr ||
           dynamic_cast<const InvalidPriceFunctionError*>(&e) != nullptr;
}

CommandResult failure(const Error& e) {
    const Json j{{"error", e.what()}};
    return {is_usage_error(e) ? 2 : 1, j.dump() + "\n"};
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (const char c : field) {
        if (c == '"') out += '"';
        out.push_back(c);
    }
    out += "\"";
    return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ",";
        out += csv_escape(fields[i]);
    }
    return out + "\n";
}

}  // namespace

OutputFormat parse_format(const std::string& name) {
    if (name == "json") return OutputFormat::JsonFormat;
    if (name == "csv") return OutputFormat::CsvFormat;
    throw ConfigError("unknown output format: '" + name + "'");
}

CommandResult run_eval(const EvalArgs& args) {
    try {
        const Scenario scenario = load_scenario_file(args.scenario_file);
        const StrategyProfile profile = parse_profile(args.profile, scenario.n_agents);
        const Protocol protocol = protocol_by_name(args.protocol);

        std::vector<Rat> profit, cost, util;
        for (int i = 1; i <= scenario.n_agents; ++i) {
            profit.push_back(expected_profit(scenario, profile, protocol, i));
            cost.push_back(price(scenario.price_of(i), profile.agent(i)));
            util.push_back(profit.back() - cost.back());
        }

        if (args.format == OutputFormat::CsvFormat) {
            std::string out = csv_row({"agent", "profit", "profit_decimal", "price",
                                       "price_decimal", "utility", "utility_decimal"});
            for (int i = 1; i <= scenario.n_agents; ++i) {
                const std::size_t k = static_cast<std::size_t>(i) - 1;
                out += csv_row({std::to_string(i), rat_to_string(profit[k]), rat_to_decimal(profit[k]),
                                rat_to_string(cost[k]), rat_to_decimal(cost[k]),
                                rat_to_string(util[k]), rat_to_decimal(util[k])});
            }
            return {0, out};
        }

        Json agents = Json::array();
        for (int i = 1; i <= scenario.n_agents; ++i) {
            const std::size_t k = static_cast<std::size_t>(i) - 1;
            agents.push_back(Json{
                {"agent", i},
                {"profit", Json{{"exact", rat_to_string(profit[k])}, {"decimal", rat_to_decimal(profit[k])}}},
                {"price", Json{{"exact", rat_to_string(cost[k])}, {"decimal", rat_to_decimal(cost[k])}}},
                {"utility",
                 Json{{"exact", rat_to_string(util[k])}, {"decimal", rat_to_decimal(util[k])}}}});
        }
        const Json out{{"scenario", args.scenario_file},
                       {"protocol", protocol.name},
                       {"profile", format_profile(profile)},
                       {"agents", agents}};
        return {0, out.dump(2) + "\n"};
    } catch (const Error& e) {
        return failure(e);
    }
}

CommandResult run_check(const CheckArgs& args) {
    try {
        const Scenario scenario = load_scenario_file(args.scenario_file);
        const UniquenessReport report = check_uniqueness(scenario, StrategyGrid{args.grid});
        Json out = uniqueness_report_to_json(report);
        out["scenario"] = args.scenario_file;
        out["grid"] = args.grid;
        if (args.format == OutputFormat::CsvFormat) {
            std::string csv = csv_row({"field", "value"});
            csv += csv_row({"helpless", report.helpless ? "true" : "false"});
            for (std::size_t i = 0; i < report.fanatic.size(); ++i)
                csv += csv_row({"fanatic_agent_" + std::to_string(i + 1),
                                report.fanatic[i] ? "true" : "false"});
            csv += csv_row({"truthful_equilibrium",
                            report.truthful_certificate.verdict.is_equilibrium ? "true" : "false"});
            csv += csv_row({"zero_information_equilibrium",
                            report.zero_information_certificate.verdict.is_equilibrium ? "true" : "false"});
            csv += csv_row({"equilibria_found", std::to_string(report.equilibria.size())});
            csv += csv_row({"consistent", report.consistent() ? "true" : "false"});
            return {report.consistent() ? 0 : 1, csv};
        }
        return {report.consistent() ? 0 : 1, out.dump(2) + "\n"};
    } catch (const Error& e) {
        return failure(e);
    }
}

CommandResult run_equilibria(const EquilibriaArgs& args) {
    try {
        const Scenario scenario = load_scenario_file(args.scenario_file);
        const Protocol protocol = protocol_by_name(args.protocol);
        const auto policy =
            args.exhaustive ? CandidatePolicy::Exhaustive : CandidatePolicy::Structured;
        const auto certificates =
            enumerate_equilibria(scenario, protocol, StrategyGrid{args.grid}, policy);

        if (args.format == OutputFormat::CsvFormat) {
            std::string out = csv_row({"profile", "protocol", "grid", "verdict"});
            for (const auto& cert : certificates)
                out += csv_row({format_profile(cert.profile), cert.protocol_name,
                                std::to_string(cert.grid.denominator), "grid-equilibrium"});
            return {0, out};
        }
        Json list = Json::array();
        for (const auto& cert : certificates) list.push_back(certificate_to_json(cert));
        const Json out{{"scenario", args.scenario_file},
                       {"protocol", protocol.name},
                       {"grid", args.grid},
                       {"policy", args.exhaustive ? "exhaustive" : "structured"},
                       {"count", certificates.size()},
                       {"certificates", list}};
        return {0, out.dump(2) + "\n"};
    } catch (const Error& e) {
        return failure(e);
    }
}

CommandResult run_simulate(const SimulateArgs& args) {
    try {
        RunConfig config;
        config.scenario = load_scenario_file(args.scenario_file);
        config.profile = parse_profile(args.profile, config.scenario.n_agents);
        config.protocol_name = args.protocol;
        config.trials = args.trials;
        config.seed = args.seed;

        const Protocol protocol = protocol_by_name(args.protocol);
        const Transcript transcript = simulate(config);
        std::vector<Rat> exact;
        for (int i = 1; i <= config.scenario.n_agents; ++i)
            exact.push_back(expected_profit(config.scenario, config.profile, protocol, i));

        if (args.format == OutputFormat::CsvFormat) {
            std::string out = csv_row({"agent", "empirical_mean", "exact", "delta_decimal"});
            for (std::size_t i = 0; i < transcript.empirical_mean.size(); ++i)
                out += csv_row({std::to_string(i + 1), rat_to_string(transcript.empirical_mean[i]),
                                rat_to_string(exact[i]),
                                rat_to_decimal(transcript.empirical_mean[i] - exact[i])});
            return {0, out};
        }
        return {0, transcript_to_jsonl(transcript, exact)};
    } catch (const Error& e) {
        return failure(e);
    }
}

std::vector<BatteryEntry> battery_from_dir(const std::string& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw ConfigError("not a directory: " + dir);
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw ConfigError("no .json scenario files in " + dir);
    std::vector<BatteryEntry> battery;
    for (const auto& file : files)
        battery.push_back({file.stem().string(), load_scenario_file(file.string())});
    return battery;
}

CommandResult run_verify(const VerifyArgs& args) {
    std::vector<SuiteResult> results;
    try {
        const std::vector<BatteryEntry> battery =
            args.scenario_dir ? battery_from_dir(*args.scenario_dir) : standard_battery();
        results = run_suite(args.suite, battery);
    } catch (const Error& e) {
        return failure(e);
    }
    const bool all_pass = std::all_of(results.begin(), results.end(),
                                      [](const SuiteResult& r) { return r.all_pass(); });
    if (args.format == OutputFormat::CsvFormat) {
        std::string out = csv_row({"suite", "scenario", "assertion", "pass", "cases"});
        for (const auto& result : results)
            for (const auto& assertion : result.assertions)
                out += csv_row({result.suite, result.scenario_id, assertion.name,
                                assertion.pass ? "true" : "false",
                                assertion.detail.value("cases", Json(0)).dump()});
        return {all_pass ? 0 : 1, out};
    }
    const Json out{{"results", suite_results_to_json(results)}, {"pass", all_pass}};
    return {all_pass ? 0 : 1, out.dump(2) + "\n"};
}

}  // namespace curlab
