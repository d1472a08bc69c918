#include "commands.hpp"

#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "dataset.hpp"
#include "iacm/errors.hpp"
#include "reports.hpp"

namespace iacm::cli {

namespace {

using nlohmann::json;

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::vector<std::string> raw_column(const CsvTable& table, const std::string& name) {
    return column_values(table, column_index(table, name));
}

EmpiricalInputs explicit_inputs(const Dataset& d, Variable cause, double alpha) {
    const bool by_x = cause == Variable::X;
    const TagKind kind = by_x ? TagKind::DoX : TagKind::DoY;
    const std::size_t b_cause = by_x ? d.b_x : d.b_y;
    const std::size_t b_effect = by_x ? d.b_y : d.b_x;
    std::vector<Sample> observational;
    std::vector<std::vector<int>> interventional(b_cause);
    for (std::size_t i = 0; i < d.xs.size(); ++i) {
        const int c = by_x ? d.xs[i] : d.ys[i];
        const int e = by_x ? d.ys[i] : d.xs[i];
        if (d.tags[i] == TagKind::Observational) {
            observational.push_back({c, e});
        } else if (d.tags[i] == kind) {
            interventional[static_cast<std::size_t>(d.keys[i])].push_back(e);
        }
    }
    if (observational.empty()) throw InsufficientData("no observational rows (environment 'obs')");
    return make_empirical_inputs(observational, interventional, b_cause, b_effect, alpha);
}

EmpiricalInputs split_inputs(const Dataset& d, const RunConfig& cfg, Variable cause) {
    std::vector<Sample> rows(d.xs.size());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = {d.xs[i], d.ys[i]};
    const EnvSplit split = preprocess(rows, cfg.preprocess, cause, d.b_x, d.b_y, cfg.seed);
    return cause == Variable::X ? make_inputs(split, d.b_x, d.b_y, cfg.alpha)
                                : make_inputs(split, d.b_y, d.b_x, cfg.alpha);
}

EmpiricalInputs bivariate_inputs(const Dataset& d, const RunConfig& cfg, Variable cause) {
    return d.has_env ? explicit_inputs(d, cause, cfg.alpha) : split_inputs(d, cfg, cause);
}

const std::vector<int>& codes_of(const Dataset& d, char var) {
    switch (var) {
        case 'X': return d.xs;
        case 'Y': return d.ys;
        case 'Z':
            if (d.zs.empty()) throw InputError("this model needs a Z column (--z)");
            return d.zs;
    }
    throw ContractViolation(std::string("unknown layout variable ") + var);
}

TagKind tag_for(char var) {
    switch (var) {
        case 'X': return TagKind::DoX;
        case 'Y': return TagKind::DoY;
        case 'Z': return TagKind::DoZ;
    }
    throw ContractViolation(std::string("unknown intervention variable ") + var);
}

// Empirical distributions for every block of `layout`, read off the tagged
// rows. Axis names start with the variable they observe ("Y|do(X=1)").
BlockInputs layout_inputs(const Dataset& d, const ModelLayout& layout, double alpha,
                          std::vector<std::string>& fallbacks) {
    auto block_distribution = [&](const ConstraintBlock& block, auto&& selected) -> std::optional<DiscreteDistribution> {
        std::vector<const std::vector<int>*> columns;
        std::vector<std::size_t> sizes;
        for (std::size_t axis : block.axes) {
            columns.push_back(&codes_of(d, layout.axes[axis].name.front()));
            sizes.push_back(layout.axes[axis].size);
        }
        const Shape shape(sizes);
        std::vector<double> counts(shape.cells(), alpha);
        std::size_t n = 0;
        std::vector<std::size_t> coords(sizes.size());
        for (std::size_t i = 0; i < d.xs.size(); ++i) {
            if (!selected(i)) continue;
            for (std::size_t k = 0; k < columns.size(); ++k) coords[k] = static_cast<std::size_t>((*columns[k])[i]);
            counts[shape.flat_index(coords)] += 1.0;
            ++n;
        }
        if (n == 0) return std::nullopt;
        const double total = static_cast<double>(n) + alpha * static_cast<double>(shape.cells());
        for (double& c : counts) c /= total;
        return DiscreteDistribution(shape, std::move(counts));
    };

    auto observed = block_distribution(layout.observed, [&](std::size_t i) {
        return d.tags[i] == TagKind::Observational;
    });
    if (!observed) throw InsufficientData("no observational rows (environment 'obs')");

    BlockInputs inputs{*observed, {}};
    for (const ConstraintBlock& env : layout.environments) {
        // Labels read "do(V=v)".
        const TagKind kind = tag_for(env.label.at(3));
        const int value = std::stoi(env.label.substr(5, env.label.size() - 6));
        auto dist = block_distribution(env, [&](std::size_t i) { return d.tags[i] == kind && d.keys[i] == value; });
        if (!dist) {
            std::vector<std::size_t> sizes;
            for (std::size_t axis : env.axes) sizes.push_back(layout.axes[axis].size);
            dist = DiscreteDistribution::uniform(Shape(sizes));
            fallbacks.push_back(env.label);
        }
        inputs.environments.push_back(*dist);
    }
    return inputs;
}

std::vector<std::string> fallback_labels(const EmpiricalInputs& inputs, const CausalModelSpec& spec) {
    std::vector<std::string> labels;
    const ModelLayout layout = model_layout(spec);
    for (std::size_t a = 0; a < inputs.fallback_used.size(); ++a) {
        if (inputs.fallback_used[a]) labels.push_back(layout.environments[a].label);
    }
    return labels;
}

template <typename Report>
void emit(const RunConfig& cfg, const Report& report, std::ostream& out) {
    if (cfg.output == OutputFormat::Json) {
        out << json(report).dump(2) << '\n';
    } else {
        out << render_text(report);
    }
}

void require_rows(const Dataset& d) {
    if (d.xs.size() < 4) {
        throw InsufficientData("need at least 4 rows, got " + std::to_string(d.xs.size()));
    }
}

int cmd_discover(const RunConfig& cfg, std::ostream& out) {
    const Dataset d = load_dataset(cfg);
    require_rows(d);
    const DiscoveryConfig config = discovery_config(cfg);
    const DiscoveryVerdict verdict =
        d.has_env ? discover_from_inputs(explicit_inputs(d, Variable::X, cfg.alpha),
                                         explicit_inputs(d, Variable::Y, cfg.alpha), config)
                  : discover(d.xs, d.ys, d.b_x, d.b_y, config);
    emit(cfg, verdict, out);
    return kOk;
}

int cmd_causation(const RunConfig& cfg, std::ostream& out) {
    const Dataset d = load_dataset(cfg);
    if (d.b_x != 2 || d.b_y != 2) {
        throw UnsupportedModel("causation: binary only (X and Y need range 2, got " + std::to_string(d.b_x) + " and " +
                               std::to_string(d.b_y) + ")");
    }
    require_rows(d);
    const CausationReport report =
        calc_causal_probabilities(bivariate_inputs(d, cfg, Variable::X), cfg.error_mode, Direction::XtoY);
    emit(cfg, report, out);
    return kOk;
}

int cmd_approx(const RunConfig& cfg, std::ostream& out) {
    const Dataset d = load_dataset(cfg);
    require_rows(d);
    const CausalModelSpec spec = parse_variant(cfg.model, d.b_x, d.b_y, d.b_z);
    spec.validate();
    ApproxReport report;
    if (d.has_env) {
        std::vector<std::string> fallbacks;
        const BlockInputs inputs = layout_inputs(d, model_layout(spec), cfg.alpha, fallbacks);
        report = make_approx_report(spec, iacm(inputs, spec, cfg.error_mode), fallbacks);
    } else {
        if (is_trivariate(spec.variant)) {
            throw InputError("trivariate models need an environment column (--env)");
        }
        const EmpiricalInputs inputs =
            bivariate_inputs(d, cfg, is_reverse(spec.variant) ? Variable::Y : Variable::X);
        report = make_approx_report(spec, iacm(inputs, spec, cfg.error_mode), fallback_labels(inputs, spec));
    }
    emit(cfg, report, out);
    return kOk;
}

int cmd_bench(const RunConfig& cfg, std::ostream& out) {
    BenchmarkOptions options;
    options.n_models = cfg.n_models;
    options.n_samples = cfg.n_samples;
    options.seed = cfg.seed;
    options.threads = cfg.threads;
    options.labelled = !cfg.unlabelled;
    options.discovery = discovery_config(cfg);
    std::vector<RangeConfig> ranges = cfg.ranges;
    if (ranges.empty()) {
        ranges = {{2, 2, NoiseKind::Additive}, {2, 2, NoiseKind::Multiplicative},
                  {3, 3, NoiseKind::Additive}, {3, 3, NoiseKind::Multiplicative}};
    }
    const BenchmarkReport report = run_benchmark(ranges, options);
    if (cfg.output == OutputFormat::Json) {
        out << json(report).dump(2) << '\n';
    } else {
        out << format_table(report);
    }
    return kOk;
}

void validate_usage(const RunConfig& cfg) {
    if (cfg.command != "discover" && cfg.command != "causation" && cfg.command != "approx" &&
        cfg.command != "bench") {
        throw UsageError("unknown command '" + cfg.command + "'");
    }
    if (cfg.command != "bench" && cfg.input.empty()) throw UsageError("missing input CSV path");
    if (!(cfg.epsilon > 0.0)) throw UsageError("--epsilon must be positive");
    if (cfg.alpha < 0.0) throw UsageError("--alpha must be nonnegative");
    if (cfg.command == "bench" && cfg.n_models < 1) throw UsageError("--models must be at least 1");
    if (cfg.command == "approx") {
        try {
            parse_variant(cfg.model, 2, 2, 2);
        } catch (const UnsupportedModel& e) {
            throw UsageError(e.what());
        }
    }
}

} // namespace

Dataset load_dataset(const RunConfig& cfg) {
    const CsvTable table = read_csv_file(cfg.input);
    const std::vector<std::string> raw_x = raw_column(table, cfg.x_column);
    const std::vector<std::string> raw_y = raw_column(table, cfg.y_column);
    std::vector<std::string> raw_z;
    if (cfg.z_column) raw_z = raw_column(table, *cfg.z_column);

    Dataset d;
    const EncodedColumn x = encode_column(raw_x, cfg.b_x);
    const EncodedColumn y = encode_column(raw_y, cfg.b_y);
    d.xs = x.codes;
    d.ys = y.codes;
    d.b_x = x.bins;
    d.b_y = y.bins;
    if (cfg.z_column) {
        const EncodedColumn z = encode_column(raw_z, cfg.b_z);
        d.zs = z.codes;
        d.b_z = z.bins;
    }

    const std::size_t n = table.rows.size();
    if (cfg.env_column) {
        d.has_env = true;
        const std::vector<std::string> raw_env = raw_column(table, *cfg.env_column);
        d.tags.resize(n);
        d.keys.assign(n, -1);
        for (std::size_t i = 0; i < n; ++i) {
            const EnvTag tag = parse_env_tag(raw_env[i]);
            d.tags[i] = tag.kind;
            const std::vector<std::string>* raw = nullptr;
            const std::vector<int>* codes = nullptr;
            switch (tag.kind) {
                case TagKind::Observational: continue;
                case TagKind::DoX: raw = &raw_x; codes = &d.xs; break;
                case TagKind::DoY: raw = &raw_y; codes = &d.ys; break;
                case TagKind::DoZ:
                    if (!cfg.z_column) throw InputError("row " + std::to_string(i + 1) + ": do:z tag without --z");
                    raw = &raw_z;
                    codes = &d.zs;
                    break;
            }
            if (!same_cell_value((*raw)[i], tag.value)) {
                throw InputError("row " + std::to_string(i + 1) + ": environment '" + raw_env[i] +
                                 "' does not match the intervened value '" + (*raw)[i] + "'");
            }
            d.keys[i] = (*codes)[i];
        }
    }

    if (cfg.lag > 0) {
        // Pair x_t (with its z, tag and key) with y_{t+lag}; env carries t.
        std::vector<TimedSample> timed(n);
        for (std::size_t t = 0; t < n; ++t) timed[t] = {d.xs[t], d.ys[t], static_cast<int>(t)};
        const std::vector<TimedSample> shifted = shift_for_time_lag(timed, cfg.lag);
        Dataset lagged = d;
        lagged.xs.clear();
        lagged.ys.clear();
        lagged.zs.clear();
        lagged.tags.clear();
        lagged.keys.clear();
        for (const TimedSample& s : shifted) {
            const auto t = static_cast<std::size_t>(s.env);
            lagged.xs.push_back(s.x);
            lagged.ys.push_back(s.y);
            if (!d.zs.empty()) lagged.zs.push_back(d.zs[t]);
            if (d.has_env) {
                lagged.tags.push_back(d.tags[t]);
                lagged.keys.push_back(d.keys[t]);
            }
        }
        return lagged;
    }
    return d;
}

DiscoveryConfig discovery_config(const RunConfig& cfg) {
    DiscoveryConfig c;
    c.epsilon = cfg.epsilon;
    c.preprocess = cfg.preprocess;
    c.error_mode = cfg.error_mode;
    c.monotone_path = cfg.monotone_path;
    c.anm_objectives = cfg.anm_objectives;
    c.alpha = cfg.alpha;
    c.seed = cfg.seed;
    return c;
}

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        validate_usage(cfg);
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsageError;
    }
    try {
        if (cfg.command == "discover") return cmd_discover(cfg, out);
        if (cfg.command == "causation") return cmd_causation(cfg, out);
        if (cfg.command == "approx") return cmd_approx(cfg, out);
        return cmd_bench(cfg, out);
    } catch (const InsufficientData& e) {
        err << "insufficient data: " << e.what() << '\n';
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
    }
    return kDataError;
}

} // namespace iacm::cli
