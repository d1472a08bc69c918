#include "iacm/discovery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "iacm/errors.hpp"
#include "iacm/models.hpp"

namespace iacm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// PNS values closer than this count as equal on the monotone path.
constexpr double kPnsTieTolerance = 1e-9;

struct DirectionEvaluation {
    double error = kInf;
    std::optional<double> pns;
};

bool is_binary(const EmpiricalInputs& inputs) {
    return inputs.joint.shape().sizes() == std::vector<std::size_t>{2, 2};
}

double plain_error(const EmpiricalInputs& inputs, ErrorMode mode) {
    const std::size_t b_cause = inputs.joint.shape().axis_size(0);
    const std::size_t b_effect = inputs.joint.shape().axis_size(1);
    return iacm(inputs, {ModelVariant::XtoY, b_cause, b_effect}, mode).error();
}

double anm_error(const EmpiricalInputs& inputs, ErrorMode mode) {
    double best = kInf;
    for (int k = 1; k <= 4; ++k) {
        CausalModelSpec spec{ModelVariant::AnmObjective, 2, 2, 2, k};
        best = std::min(best, iacm(inputs, spec, mode).error());
    }
    return best;
}

DirectionEvaluation monotone_evaluation(const EmpiricalInputs& inputs, ErrorMode mode, Direction dir) {
    try {
        const CausationReport report = calc_causal_probabilities(inputs, mode, dir);
        return {report.error(), report.probabilities.pns};
    } catch (const DegenerateModel&) {
        return {};
    }
}

Decision by_smaller_error(double d_xy, double d_yx) { return d_xy < d_yx ? Decision::XtoY : Decision::YtoX; }

std::vector<Sample> gather(std::span<const Sample> rows, const std::vector<std::size_t>& idx) {
    std::vector<Sample> out;
    out.reserve(idx.size());
    for (std::size_t i : idx) out.push_back(rows[i]);
    return out;
}

EnvSplit preprocess_by_cause(std::span<const Sample> rows, PreprocessMode mode, std::size_t b_cause,
                             std::uint64_t seed) {
    EnvSplit split;
    split.interventional.assign(b_cause, {});
    if (mode == PreprocessMode::None) {
        const std::size_t n_obs = (rows.size() + 1) / 2;
        split.observational.assign(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(n_obs));
        for (std::size_t i = n_obs; i < rows.size(); ++i) {
            split.interventional[static_cast<std::size_t>(rows[i].x)].push_back(rows[i].y);
        }
        return split;
    }

    std::vector<std::vector<std::size_t>> groups(b_cause);
    for (std::size_t i = 0; i < rows.size(); ++i) groups[static_cast<std::size_t>(rows[i].x)].push_back(i);

    std::mt19937_64 rng(seed);
    std::vector<std::vector<Sample>> int_parts(b_cause);
    for (std::size_t a = 0; a < b_cause; ++a) {
        std::vector<std::size_t>& g = groups[a];
        std::shuffle(g.begin(), g.end(), rng);
        const std::size_t n_obs = (g.size() + 1) / 2;
        for (std::size_t k = 0; k < g.size(); ++k) {
            if (k < n_obs) {
                split.observational.push_back(rows[g[k]]);
            } else {
                int_parts[a].push_back(rows[g[k]]);
            }
        }
    }

    if (mode == PreprocessMode::SplitAndBalance) {
        std::size_t target = 0;
        for (const auto& part : int_parts) target = std::max(target, part.size());
        for (std::size_t a = 0; a < b_cause; ++a) {
            const std::vector<Sample> source = int_parts[a].empty() ? gather(rows, groups[a]) : int_parts[a];
            if (source.empty()) continue;
            std::uniform_int_distribution<std::size_t> pick(0, source.size() - 1);
            int_parts[a].clear();
            for (std::size_t k = 0; k < target; ++k) int_parts[a].push_back(source[pick(rng)]);
        }
    }
    for (std::size_t a = 0; a < b_cause; ++a) {
        for (const Sample& s : int_parts[a]) split.interventional[a].push_back(s.y);
    }
    return split;
}

} // namespace

std::string_view to_string(PreprocessMode mode) {
    switch (mode) {
        case PreprocessMode::None: return "none";
        case PreprocessMode::Split: return "split";
        case PreprocessMode::SplitAndBalance: return "split-and-balance";
    }
    return "unknown";
}

PreprocessMode parse_preprocess_mode(std::string_view text) {
    if (text == "none") return PreprocessMode::None;
    if (text == "split") return PreprocessMode::Split;
    if (text == "split-and-balance" || text == "split_and_balance") return PreprocessMode::SplitAndBalance;
    throw std::invalid_argument("unknown preprocessing mode '" + std::string(text) + "'");
}

std::string_view to_string(Decision d) {
    switch (d) {
        case Decision::XtoY: return "x->y";
        case Decision::YtoX: return "y->x";
        case Decision::NoDecision: return "none";
    }
    return "unknown";
}

Decision parse_decision(std::string_view text) {
    if (text == "x->y") return Decision::XtoY;
    if (text == "y->x") return Decision::YtoX;
    if (text == "none") return Decision::NoDecision;
    throw std::invalid_argument("unknown decision '" + std::string(text) + "'");
}

EnvSplit preprocess(std::span<const Sample> rows, PreprocessMode mode, Variable direction, std::size_t b_x,
                    std::size_t b_y, std::uint64_t seed) {
    if (rows.empty()) {
        throw InsufficientData("preprocess: no rows");
    }
    for (const Sample& s : rows) {
        if (s.x < 0 || s.y < 0 || static_cast<std::size_t>(s.x) >= b_x || static_cast<std::size_t>(s.y) >= b_y) {
            throw ContractViolation("category out of range in preprocess");
        }
    }
    if (direction == Variable::Y) {
        const std::vector<Sample> swapped = swap_roles(rows);
        return preprocess_by_cause(swapped, mode, b_y, seed);
    }
    return preprocess_by_cause(rows, mode, b_x, seed);
}

EmpiricalInputs make_inputs(const EnvSplit& split, std::size_t b_cause, std::size_t b_effect, double alpha) {
    return make_empirical_inputs(split.observational, split.interventional, b_cause, b_effect, alpha);
}

bool monotone_preferred(const EmpiricalInputs& inputs, ErrorMode mode, double epsilon) {
    if (!is_binary(inputs)) {
        throw UnsupportedModel("monotone models require binary X and Y");
    }
    const double inc = iacm(inputs, {ModelVariant::XtoYMonoInc, 2, 2}, mode).error();
    const double dec = iacm(inputs, {ModelVariant::XtoYMonoDec, 2, 2}, mode).error();
    const double best = std::min(inc, dec);
    if (!std::isfinite(best)) return false;
    return best <= plain_error(inputs, mode) + epsilon;
}

DiscoveryVerdict discover_from_inputs(const EmpiricalInputs& forward, const EmpiricalInputs& reverse,
                                      const DiscoveryConfig& config) {
    forward.validate();
    reverse.validate();
    if (forward.joint.shape().axis_size(0) != reverse.joint.shape().axis_size(1) ||
        forward.joint.shape().axis_size(1) != reverse.joint.shape().axis_size(0)) {
        throw ContractViolation("forward and reverse inputs must be transposed orientations of the same ranges");
    }
    DiscoveryVerdict verdict;
    verdict.epsilon = config.epsilon;
    const bool binary = is_binary(forward);
    const ErrorMode mode = config.error_mode;

    if (binary && config.monotone_path && monotone_preferred(forward, mode, config.epsilon) &&
        monotone_preferred(reverse, mode, config.epsilon)) {
        const DirectionEvaluation xy = monotone_evaluation(forward, mode, Direction::XtoY);
        const DirectionEvaluation yx = monotone_evaluation(reverse, mode, Direction::YtoX);
        verdict.used_monotone_path = true;
        verdict.d_xy = xy.error;
        verdict.d_yx = yx.error;
        verdict.pns_xy = xy.pns;
        verdict.pns_yx = yx.pns;
        if (std::abs(xy.error - yx.error) < config.epsilon) {
            if (xy.pns && yx.pns && std::abs(*xy.pns - *yx.pns) > kPnsTieTolerance) {
                verdict.decision = *xy.pns > *yx.pns ? Decision::XtoY : Decision::YtoX;
            } else {
                verdict.decision = Decision::NoDecision;
            }
            return verdict;
        }
    } else {
        const bool anm = binary && config.anm_objectives;
        verdict.d_xy = anm ? anm_error(forward, mode) : plain_error(forward, mode);
        verdict.d_yx = anm ? anm_error(reverse, mode) : plain_error(reverse, mode);
        if (std::abs(verdict.d_xy - verdict.d_yx) < config.epsilon) {
            verdict.decision = Decision::NoDecision;
            return verdict;
        }
    }

    if (std::isinf(verdict.d_xy) && std::isinf(verdict.d_yx)) {
        verdict.decision = Decision::NoDecision;
        return verdict;
    }
    verdict.decision = by_smaller_error(verdict.d_xy, verdict.d_yx);
    return verdict;
}

DiscoveryVerdict discover(std::span<const int> xs, std::span<const int> ys, std::size_t b_x, std::size_t b_y,
                          const DiscoveryConfig& config) {
    if (xs.size() != ys.size()) {
        throw ContractViolation("x and y columns differ in length");
    }
    if (xs.size() < 4) {
        throw InsufficientData("discovery needs at least 4 rows, got " + std::to_string(xs.size()));
    }
    std::vector<Sample> rows(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) rows[i] = {xs[i], ys[i]};
    const EnvSplit data_x = preprocess(rows, config.preprocess, Variable::X, b_x, b_y, config.seed);
    const EnvSplit data_y = preprocess(rows, config.preprocess, Variable::Y, b_x, b_y, config.seed);
    return discover_from_inputs(make_inputs(data_x, b_x, b_y, config.alpha), make_inputs(data_y, b_y, b_x, config.alpha),
                                config);
}

} // namespace iacm
