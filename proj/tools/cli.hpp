#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace amex::cli {

struct CliConfig {
    std::string command;  // run | sweep | coverage | oracle
    std::string env;      // chain | chainloop | frozenlake | grammar | synthetic | badreward
    std::optional<int> k;
    std::optional<int> horizon;
    std::string map_file;
    std::string grammar_file;
    std::string dataset_file;
    std::optional<int> branching;
    std::optional<int> depth;
    std::vector<std::string> variants;
    std::vector<std::int64_t> n_sims;
    int seeds = 1;
    double c = 1.4142135623730951;
    std::optional<double> gamma;  // per-env default when unset
    int rollout_cap = 512;
    int max_expansions = 25;
    std::uint64_t global_seed = 0;
    std::string out_path;
    std::string dot_path;
    bool no_timing = false;

    double effective_gamma() const;
};

// Parses argv into a validated config.  Throws amex::UsageError on bad input;
// --help is reported through the return value (nullopt) after printing.
std::optional<CliConfig> parse_args(const std::vector<std::string>& args);

int dispatch(const CliConfig& cfg);

// Full entry point: parse + dispatch with the documented exit codes
// (0 success, 1 runtime failure, 2 usage error).
int cli_main(int argc, const char* const* argv);

}  // namespace amex::cli
