// iacm: causal-model approximation, probabilities of causation and bivariate
// causal discovery on categorical CSV data.

#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace iacm;
using namespace iacm::cli;

namespace {

void add_data_options(CLI::App* app, RunConfig& cfg) {
    app->add_option("input", cfg.input, "CSV file with a header row")->required();
    app->add_option("--x", cfg.x_column, "X column (name or 0-based index)");
    app->add_option("--y", cfg.y_column, "Y column (name or 0-based index)");
    app->add_option("--env", cfg.env_column, "environment column: obs, do:<v>, do:x=<v>, do:y=<v>, do:z=<v>");
    app->add_option("--bx", cfg.b_x, "range size of X (default: 2 for binary columns, else 3)")
        ->check(CLI::Range(2, 64));
    app->add_option("--by", cfg.b_y, "range size of Y")->check(CLI::Range(2, 64));
    app->add_option("--lag", cfg.lag, "time lag T: pair x_t with y_{t+T}");
}

// Enum-valued options are read as text and converted once parsing is done.
struct TextOptions {
    std::string preprocess = "none";
    std::string error_mode = "local";
    std::string output = "table";
};

void add_method_options(CLI::App* app, RunConfig& cfg, TextOptions& text) {
    app->add_option("--preprocess", text.preprocess, "none | split | split-and-balance")
        ->check(CLI::IsMember({"none", "split", "split-and-balance"}));
    app->add_option("--error-mode", text.error_mode, "local | global")->check(CLI::IsMember({"local", "global"}));
    app->add_option("--seed", cfg.seed, "seed for the split modes and the benchmark");
    app->add_option("--alpha", cfg.alpha, "pseudo-count added to every cell");
}

void add_output_option(CLI::App* app, TextOptions& text) {
    app->add_option("--output", text.output, "table | json")->check(CLI::IsMember({"table", "json"}));
}

void add_discovery_options(CLI::App* app, RunConfig& cfg) {
    app->add_option("--epsilon", cfg.epsilon, "tolerance below which both directions count as equal");
    app->add_flag("!--no-monotone", cfg.monotone_path, "skip the monotone/PNS path on binary data");
    app->add_flag("--anm-objectives", cfg.anm_objectives, "binary data: best of the four ANM-penalized objectives");
}

// "2x2,3x3" times "additive,multiplicative".
std::vector<RangeConfig> range_grid(const std::string& ranges, const std::string& noises) {
    std::vector<RangeConfig> out;
    std::stringstream rs(ranges);
    for (std::string r; std::getline(rs, r, ',');) {
        const auto sep = r.find('x');
        if (sep == std::string::npos) throw CLI::ValidationError("--ranges", "expected BXxBY, got '" + r + "'");
        const std::size_t bx = std::stoul(r.substr(0, sep));
        const std::size_t by = std::stoul(r.substr(sep + 1));
        std::stringstream ns(noises);
        for (std::string n; std::getline(ns, n, ',');) out.push_back({bx, by, parse_noise_kind(n)});
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Approximate categorical data to causal models and infer causal direction"};
    app.require_subcommand(1);
    RunConfig cfg;
    TextOptions text;

    auto* discover = app.add_subcommand("discover", "infer the causal direction between X and Y");
    add_data_options(discover, cfg);
    add_method_options(discover, cfg, text);
    add_discovery_options(discover, cfg);
    add_output_option(discover, text);

    auto* causation = app.add_subcommand("causation", "PN, PS and PNS of binary X for binary Y");
    add_data_options(causation, cfg);
    add_method_options(causation, cfg, text);
    add_output_option(causation, text);

    auto* approx = app.add_subcommand("approx", "approximation error of one causal model");
    add_data_options(approx, cfg);
    add_method_options(approx, cfg, text);
    add_output_option(approx, text);
    approx->add_option("--model", cfg.model, "x_to_y, y_to_x, x_to_y_mono_inc, ..., anm_s1..anm_s4, z_chain, ...");
    approx->add_option("--z", cfg.z_column, "Z column for the trivariate models");
    approx->add_option("--bz", cfg.b_z, "range size of Z")->check(CLI::Range(2, 64));

    std::string ranges = "2x2,3x3";
    std::string noises = "additive,multiplicative";
    auto* bench = app.add_subcommand("bench", "discovery accuracy on synthetic SCMs");
    add_method_options(bench, cfg, text);
    add_discovery_options(bench, cfg);
    add_output_option(bench, text);
    bench->add_option("--ranges", ranges, "comma-separated BXxBY range configurations");
    bench->add_option("--noise", noises, "comma-separated noise kinds: additive, multiplicative");
    bench->add_option("--models", cfg.n_models, "SCMs per configuration");
    bench->add_option("--samples", cfg.n_samples, "observational samples per SCM");
    bench->add_option("--threads", cfg.threads, "worker threads (0: all cores)");
    bench->add_flag("--unlabelled", cfg.unlabelled, "drop environment labels and re-split rows with --preprocess");

    try {
        app.parse(argc, argv);
        if (bench->parsed()) cfg.ranges = range_grid(ranges, noises);
        cfg.preprocess = parse_preprocess_mode(text.preprocess);
        cfg.error_mode = parse_error_mode(text.error_mode);
        cfg.output = text.output == "json" ? OutputFormat::Json : OutputFormat::Table;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsageError;
    }

    for (CLI::App* sub : app.get_subcommands()) cfg.command = sub->get_name();
    return run_command(cfg, std::cout, std::cerr);
}
