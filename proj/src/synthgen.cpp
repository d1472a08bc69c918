#include "iacm/synthgen.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "iacm/errors.hpp"

namespace iacm {

namespace {

void check_distribution(const std::vector<double>& p, std::size_t k, const char* name) {
    if (p.size() != k) {
        throw ContractViolation(std::string(name) + " has the wrong number of outcomes");
    }
    double sum = 0.0;
    for (double v : p) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw ContractViolation(std::string(name) + " has a negative entry");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw ContractViolation(std::string(name) + " does not sum to 1");
}

std::vector<TimedSample> run_instance(const RangeConfig& range, const BenchmarkOptions& options, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    std::mt19937_64 rng(seq);
    return sample_scm(random_scm(range.b_x, range.b_y, range.noise_kind, options.n_samples, rng));
}

Decision discover_unlabelled(const std::vector<TimedSample>& rows, const RangeConfig& range,
                             const DiscoveryConfig& cfg) {
    std::vector<int> xs(rows.size());
    std::vector<int> ys(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        xs[i] = rows[i].x;
        ys[i] = rows[i].y;
    }
    return discover(xs, ys, range.b_x, range.b_y, cfg).decision;
}

std::string percent_cell(const BenchmarkRow& row) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.0f,%.0f,%.0f", row.percent(row.correct), row.percent(row.wrong),
                  row.percent(row.no_decision));
    return buf;
}

} // namespace

std::string_view to_string(NoiseKind kind) { return kind == NoiseKind::Additive ? "additive" : "multiplicative"; }

NoiseKind parse_noise_kind(std::string_view text) {
    if (text == "additive") return NoiseKind::Additive;
    if (text == "multiplicative") return NoiseKind::Multiplicative;
    throw std::invalid_argument("unknown noise kind '" + std::string(text) + "'");
}

void ScmConfig::validate() const {
    if (b_x < 2 || b_y < 2) throw ContractViolation("SCM ranges must be at least 2");
    if (f.size() != b_x) throw ContractViolation("function table must have b_x entries");
    for (int v : f) {
        if (v < 0 || static_cast<std::size_t>(v) >= b_y) throw ContractViolation("function value out of range");
    }
    if (std::all_of(f.begin(), f.end(), [&](int v) { return v == f.front(); })) {
        throw ContractViolation("function table must not be constant");
    }
    check_distribution(p_x, b_x, "p_x");
    check_distribution(p_n, b_y, "p_n");
}

int apply_mechanism(NoiseKind kind, int fx, int noise, std::size_t b_y) {
    const int b = static_cast<int>(b_y);
    return kind == NoiseKind::Additive ? (fx + noise) % b : (fx * noise) % b;
}

std::vector<int> random_nonconstant_function(std::size_t b_x, std::size_t b_y, std::mt19937_64& rng) {
    if (b_x < 2 || b_y < 2) throw ContractViolation("non-constant functions need ranges of at least 2");
    std::uniform_int_distribution<int> value(0, static_cast<int>(b_y) - 1);
    std::vector<int> f(b_x);
    for (;;) {
        for (int& v : f) v = value(rng);
        if (std::any_of(f.begin(), f.end(), [&](int v) { return v != f.front(); })) return f;
    }
}

std::vector<double> sample_dirichlet(std::size_t k, std::mt19937_64& rng) {
    std::exponential_distribution<double> gamma1(1.0);
    std::vector<double> p(k);
    double sum = 0.0;
    for (double& v : p) sum += v = gamma1(rng);
    for (double& v : p) v /= sum;
    return p;
}

ScmConfig random_scm(std::size_t b_x, std::size_t b_y, NoiseKind kind, std::size_t n_obs, std::mt19937_64& rng) {
    ScmConfig cfg;
    cfg.b_x = b_x;
    cfg.b_y = b_y;
    cfg.noise_kind = kind;
    cfg.f = random_nonconstant_function(b_x, b_y, rng);
    cfg.p_x = sample_dirichlet(b_x, rng);
    cfg.p_n = sample_dirichlet(b_y, rng);
    cfg.n_obs = n_obs;
    cfg.n_int_per_value = n_obs / b_x;
    cfg.seed = rng();
    return cfg;
}

std::vector<TimedSample> sample_scm(const ScmConfig& cfg) {
    cfg.validate();
    std::mt19937_64 rng(cfg.seed);
    std::discrete_distribution<int> draw_x(cfg.p_x.begin(), cfg.p_x.end());
    std::discrete_distribution<int> draw_n(cfg.p_n.begin(), cfg.p_n.end());
    auto effect = [&](int x) {
        return apply_mechanism(cfg.noise_kind, cfg.f[static_cast<std::size_t>(x)], draw_n(rng), cfg.b_y);
    };

    std::vector<TimedSample> rows;
    rows.reserve(cfg.n_obs + cfg.b_x * cfg.n_int_per_value);
    for (std::size_t i = 0; i < cfg.n_obs; ++i) {
        const int x = draw_x(rng);
        rows.push_back({x, effect(x), -1});
    }
    for (std::size_t a = 0; a < cfg.b_x; ++a) {
        const int x = static_cast<int>(a);
        for (std::size_t i = 0; i < cfg.n_int_per_value; ++i) rows.push_back({x, effect(x), x});
    }
    return rows;
}

DiscoveryVerdict discover_labelled(std::span<const TimedSample> rows, std::size_t b_x, std::size_t b_y,
                                   const DiscoveryConfig& config) {
    std::vector<Sample> observational;
    std::vector<std::vector<int>> do_x(b_x);
    for (const TimedSample& r : rows) {
        if (r.env < 0) {
            observational.push_back({r.x, r.y});
        } else if (static_cast<std::size_t>(r.env) < b_x) {
            do_x[static_cast<std::size_t>(r.env)].push_back(r.y);
        } else {
            throw ContractViolation("environment tag out of range");
        }
    }
    const EmpiricalInputs forward = make_empirical_inputs(observational, do_x, b_x, b_y, config.alpha);
    const EmpiricalInputs reverse = make_empirical_inputs(swap_roles(observational), {}, b_y, b_x, config.alpha);
    return discover_from_inputs(forward, reverse, config);
}

double BenchmarkRow::percent(std::size_t count) const {
    const std::size_t n = total();
    return n == 0 ? 0.0 : 100.0 * static_cast<double>(count) / static_cast<double>(n);
}

BenchmarkReport run_benchmark(std::span<const RangeConfig> ranges, const BenchmarkOptions& options) {
    if (options.n_models < 1) throw ContractViolation("benchmark needs at least one model per configuration");
    const std::size_t total = ranges.size() * options.n_models;
    std::vector<Decision> decisions(total, Decision::NoDecision);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t idx = next++; idx < total; idx = next++) {
            try {
                const RangeConfig& range = ranges[idx / options.n_models];
                const auto rows = run_instance(range, options, idx);
                decisions[idx] = options.labelled
                                     ? discover_labelled(rows, range.b_x, range.b_y, options.discovery).decision
                                     : discover_unlabelled(rows, range, options.discovery);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = total;
            }
        }
    };

    std::size_t threads = options.threads == 0 ? std::thread::hardware_concurrency() : options.threads;
    threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(total, 1));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    BenchmarkReport report;
    report.n_models = options.n_models;
    report.n_samples = options.n_samples;
    report.seed = options.seed;
    for (std::size_t c = 0; c < ranges.size(); ++c) {
        BenchmarkRow row{ranges[c]};
        for (std::size_t i = 0; i < options.n_models; ++i) {
            switch (decisions[c * options.n_models + i]) {
                case Decision::XtoY: ++row.correct; break;
                case Decision::YtoX: ++row.wrong; break;
                case Decision::NoDecision: ++row.no_decision; break;
            }
        }
        report.rows.push_back(row);
    }
    return report;
}

std::string format_table(const BenchmarkReport& report) {
    std::vector<std::array<std::string, 3>> cells{{"b_x,b_y", "noise", "correct,wrong,none"}};
    for (const BenchmarkRow& row : report.rows) {
        cells.push_back({std::to_string(row.range.b_x) + "," + std::to_string(row.range.b_y),
                         std::string(to_string(row.range.noise_kind)), percent_cell(row)});
    }
    std::array<std::size_t, 3> width{};
    for (const auto& line : cells) {
        for (std::size_t k = 0; k < 3; ++k) width[k] = std::max(width[k], line[k].size());
    }
    std::string out;
    for (const auto& line : cells) {
        for (std::size_t k = 0; k < 3; ++k) {
            out += line[k];
            if (k + 1 < 3) out += std::string(width[k] - line[k].size() + 2, ' ');
        }
        out += '\n';
    }
    return out;
}

} // namespace iacm
