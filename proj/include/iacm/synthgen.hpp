#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "iacm/approximation.hpp"
#include "iacm/discovery.hpp"

namespace iacm {

enum class NoiseKind { Additive, Multiplicative };

std::string_view to_string(NoiseKind kind);
NoiseKind parse_noise_kind(std::string_view text);

/// Y := f(X) + N or Y := f(X) * N, both modulo b_y; X := N_X.
struct ScmConfig {
    std::size_t b_x = 2;
    std::size_t b_y = 2;
    NoiseKind noise_kind = NoiseKind::Additive;
    std::vector<int> f;        // f[x] in [0, b_y)
    std::vector<double> p_x;   // over [0, b_x)
    std::vector<double> p_n;   // over [0, b_y)
    std::size_t n_obs = 1000;
    std::size_t n_int_per_value = 500;
    std::uint64_t seed = 0;

    void validate() const;
};

int apply_mechanism(NoiseKind kind, int fx, int noise, std::size_t b_y);

/// Uniform draw from the tables [0,b_x) -> [0,b_y) that take at least two values.
std::vector<int> random_nonconstant_function(std::size_t b_x, std::size_t b_y, std::mt19937_64& rng);

/// Flat Dirichlet draw over k outcomes.
std::vector<double> sample_dirichlet(std::size_t k, std::mt19937_64& rng);

/// A random SCM with n_int_per_value = n_obs / b_x.
ScmConfig random_scm(std::size_t b_x, std::size_t b_y, NoiseKind kind, std::size_t n_obs, std::mt19937_64& rng);

/// Observational rows (env = -1) followed by one block per cause value a with
/// X fixed to a (env = a). The ground truth is always X -> Y.
std::vector<TimedSample> sample_scm(const ScmConfig& cfg);

/// Discovery on generated rows: env = a rows are explicit do(X = a) data for
/// the forward direction; with nothing intervened on Y the reverse direction
/// uses uniform fallbacks.
DiscoveryVerdict discover_labelled(std::span<const TimedSample> rows, std::size_t b_x, std::size_t b_y,
                                   const DiscoveryConfig& config = {});

struct RangeConfig {
    std::size_t b_x = 2;
    std::size_t b_y = 2;
    NoiseKind noise_kind = NoiseKind::Additive;

    friend bool operator==(const RangeConfig&, const RangeConfig&) = default;
};

struct BenchmarkRow {
    RangeConfig range;
    std::size_t correct = 0;
    std::size_t wrong = 0;
    std::size_t no_decision = 0;

    std::size_t total() const { return correct + wrong + no_decision; }
    double percent(std::size_t count) const;

    friend bool operator==(const BenchmarkRow&, const BenchmarkRow&) = default;
};

struct BenchmarkReport {
    std::string method = "iacm";
    std::size_t n_models = 0;
    std::size_t n_samples = 0;
    std::uint64_t seed = 0;
    std::vector<BenchmarkRow> rows;

    friend bool operator==(const BenchmarkReport&, const BenchmarkReport&) = default;
};

struct BenchmarkOptions {
    std::size_t n_models = 200;
    std::size_t n_samples = 1000;
    std::uint64_t seed = 0;
    // 0 picks the hardware concurrency.
    std::size_t threads = 1;
    // Feed the generated environment blocks to discovery as explicit
    // interventions on X. When false, the labels are dropped and the rows go
    // through discovery.preprocess like any unlabelled data set.
    bool labelled = true;
    DiscoveryConfig discovery;
};

/// One discovery run per generated SCM. Instance i of configuration c draws
/// from its own stream seeded by (seed, c * n_models + i), so the report does
/// not depend on the thread count.
BenchmarkReport run_benchmark(std::span<const RangeConfig> ranges, const BenchmarkOptions& options);

/// Aligned text table with one "correct,wrong,none" percentage cell per row.
std::string format_table(const BenchmarkReport& report);

} // namespace iacm
