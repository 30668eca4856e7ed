#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "curlab/cli.hpp"
#include "curlab/errors.hpp"

namespace {

int emit(const curlab::CommandResult& result, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << result.output;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "cannot write to " << out_path << "\n";
            return 2;
        }
        out << result.output;
    }
    return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact equilibrium laboratory for the privacy-aware data-curation game"};
    app.require_subcommand(1);

    std::string scenario_file, profile, protocol, out_path, suite, scenario_dir;
    std::string format = "json";
    int grid = 10;
    bool exhaustive = false;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "Write output to a file instead of stdout");
        cmd->add_option("--format", format, "Output format: json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
    };

    auto* eval = app.add_subcommand("eval", "Evaluate profits, prices and utilities at a profile");
    eval->add_option("--scenario", scenario_file, "Scenario file")->required();
    eval->add_option("--profile", profile, "Strategy profile, e.g. \"1/1,0/1;1/2,1/2\"")->required();
    eval->add_option("--protocol", protocol, "Protocol name")->required();
    add_common(eval);

    auto* check = app.add_subcommand("check", "Structural flags, anchor certificates and consistency checks");
    check->add_option("--scenario", scenario_file, "Scenario file")->required();
    check->add_option("--grid", grid, "Deviation grid denominator");
    add_common(check);

    auto* equilibria = app.add_subcommand("equilibria", "Enumerate grid equilibria");
    equilibria->add_option("--scenario", scenario_file, "Scenario file")->required();
    equilibria->add_option("--protocol", protocol, "Protocol name")->required();
    equilibria->add_option("--grid", grid, "Grid denominator");
    equilibria->add_flag("--exhaustive", exhaustive, "Scan every grid profile");
    add_common(equilibria);

    auto* simulate = app.add_subcommand("simulate", "Run seeded trials of the game flow");
    simulate->add_option("--scenario", scenario_file, "Scenario file")->required();
    simulate->add_option("--profile", profile, "Strategy profile")->required();
    simulate->add_option("--protocol", protocol, "Protocol name")->required();
    simulate->add_option("--trials", trials, "Number of trials");
    simulate->add_option("--seed", seed, "Random seed");
    add_common(simulate);

    auto* verify = app.add_subcommand("verify", "Run a verification suite over the scenario battery");
    verify->add_option("suite", suite, "Suite name or 'all'")->required();
    verify->add_option("--scenarios", scenario_dir, "Directory of scenario files (default: built-in battery)");
    add_common(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    curlab::CommandResult result;
    try {
        const curlab::OutputFormat fmt = curlab::parse_format(format);
        if (eval->parsed()) {
            result = curlab::run_eval({scenario_file, profile, protocol, fmt});
        } else if (check->parsed()) {
            result = curlab::run_check({scenario_file, grid, fmt});
        } else if (equilibria->parsed()) {
            result = curlab::run_equilibria({scenario_file, protocol, grid, exhaustive, fmt});
        } else if (simulate->parsed()) {
            result = curlab::run_simulate({scenario_file, profile, protocol, trials, seed, fmt});
        } else if (verify->parsed()) {
            std::optional<std::string> dir;
            if (!scenario_dir.empty()) dir = scenario_dir;
            result = curlab::run_verify({suite, dir, fmt});
        }
    } catch (const curlab::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return emit(result, out_path);
}
