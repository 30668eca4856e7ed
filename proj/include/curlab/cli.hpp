#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "curlab/verify.hpp"

namespace curlab {

struct CommandResult {
    int exit_code = 0;
    std::string output;
};

enum class OutputFormat { JsonFormat, CsvFormat };
OutputFormat parse_format(const std::string& name);  // ConfigError on unknown names

struct EvalArgs {
    std::string scenario_file;
    std::string profile;
    std::string protocol;
    OutputFormat format = OutputFormat::JsonFormat;
};

struct CheckArgs {
    std::string scenario_file;
    int grid = 10;
    OutputFormat format = OutputFormat::JsonFormat;
};

struct EquilibriaArgs {
    std::string scenario_file;
    std::string protocol;
    int grid = 10;
    bool exhaustive = false;
    OutputFormat format = OutputFormat::JsonFormat;
};

struct SimulateArgs {
    std::string scenario_file;
    std::string profile;
    std::string protocol;
    std::uint64_t trials = 1000;
    std::uint64_t seed = 0;
    OutputFormat format = OutputFormat::JsonFormat;
};

struct VerifyArgs {
    std::string suite;
    std::optional<std::string> scenario_dir;  // standard battery when absent
    OutputFormat format = OutputFormat::JsonFormat;
};

// Exit codes: 0 all pass, 1 failed assertion or runtime failure, 2 usage error.
CommandResult run_eval(const EvalArgs& args);
CommandResult run_check(const CheckArgs& args);
CommandResult run_equilibria(const EquilibriaArgs& args);
CommandResult run_simulate(const SimulateArgs& args);
CommandResult run_verify(const VerifyArgs& args);

/// Battery loaded from every .json file in a directory, ids from filenames.
std::vector<BatteryEntry> battery_from_dir(const std::string& dir);

}  // namespace curlab
