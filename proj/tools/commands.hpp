#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dataset.hpp"
#include "iacm/approximation.hpp"
#include "iacm/discovery.hpp"
#include "iacm/synthgen.hpp"

namespace iacm::cli {

enum class OutputFormat { Table, Json };

struct RunConfig {
    std::string command;
    std::string input;
    std::string x_column = "x";
    std::string y_column = "y";
    std::optional<std::string> z_column;
    std::optional<std::string> env_column;
    std::optional<std::size_t> b_x;
    std::optional<std::size_t> b_y;
    std::optional<std::size_t> b_z;
    PreprocessMode preprocess = PreprocessMode::None;
    ErrorMode error_mode = ErrorMode::Local;
    double epsilon = 0.01;
    std::string model = "x_to_y";
    std::size_t lag = 0;
    std::uint64_t seed = 0;
    double alpha = 0.0;
    bool monotone_path = true;
    bool anm_objectives = false;
    OutputFormat output = OutputFormat::Table;

    // bench only
    std::vector<RangeConfig> ranges;
    std::size_t n_models = 200;
    std::size_t n_samples = 1000;
    std::size_t threads = 1;
    bool unlabelled = false;
};

enum ExitCode : int { kOk = 0, kDataError = 1, kUsageError = 2 };

/// Category columns after encoding, time-lag shifting and tag validation.
struct Dataset {
    std::vector<int> xs;
    std::vector<int> ys;
    std::vector<int> zs;  // empty without a Z column
    std::size_t b_x = 2;
    std::size_t b_y = 2;
    std::size_t b_z = 2;
    bool has_env = false;
    std::vector<TagKind> tags;  // per row when has_env
    std::vector<int> keys;      // category of the intervened variable per row
};

Dataset load_dataset(const RunConfig& cfg);

DiscoveryConfig discovery_config(const RunConfig& cfg);

/// Runs one subcommand; reports go to `out`, diagnostics to `err`. Verdicts of
/// any kind exit with kOk.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

} // namespace iacm::cli
