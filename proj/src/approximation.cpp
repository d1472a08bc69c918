#include "iacm/approximation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "iacm/errors.hpp"

namespace iacm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Largest LP (columns) accepted for any layout.
constexpr std::size_t kMaxLpColumns = std::size_t{1} << 16;
// Support mass at or below this is treated as zero.
constexpr double kDegenerateMass = 1e-12;

std::vector<std::size_t> block_sizes(const ModelLayout& layout, const ConstraintBlock& block) {
    std::vector<std::size_t> sizes;
    for (std::size_t axis : block.axes) sizes.push_back(layout.axes[axis].size);
    return sizes;
}

std::size_t constraint_rows(const ModelLayout& layout) {
    std::size_t rows = 1;
    for (const ConstraintBlock& env : layout.environments) rows += Shape(block_sizes(layout, env)).cells() - 1;
    rows += Shape(block_sizes(layout, layout.observed)).cells() - 1;
    return rows;
}

void check_block(const ModelLayout& layout, const ConstraintBlock& block, const DiscreteDistribution& dist) {
    if (dist.shape().sizes() != block_sizes(layout, block)) {
        throw ContractViolation("input distribution for block '" + block.label + "' has the wrong shape");
    }
}

} // namespace

std::string_view to_string(ErrorMode mode) { return mode == ErrorMode::Global ? "global" : "local"; }

ErrorMode parse_error_mode(std::string_view text) {
    if (text == "global") return ErrorMode::Global;
    if (text == "local") return ErrorMode::Local;
    throw std::invalid_argument("unknown error mode '" + std::string(text) + "'");
}

void EmpiricalInputs::validate() const {
    if (joint.shape().rank() != 2) {
        throw ContractViolation("joint distribution must be over two axes");
    }
    const std::size_t b_cause = joint.shape().axis_size(0);
    const std::size_t b_effect = joint.shape().axis_size(1);
    if (interventional.size() != b_cause) {
        throw ContractViolation("expected " + std::to_string(b_cause) + " interventional distributions, got " +
                                std::to_string(interventional.size()));
    }
    for (const DiscreteDistribution& d : interventional) {
        if (d.shape().rank() != 1 || d.shape().axis_size(0) != b_effect) {
            throw ContractViolation("interventional distribution has the wrong range");
        }
    }
    if (!fallback_used.empty() && fallback_used.size() != b_cause) {
        throw ContractViolation("fallback flags must match the number of interventions");
    }
}

BlockInputs to_block_inputs(const EmpiricalInputs& inputs) {
    inputs.validate();
    return BlockInputs{inputs.joint, inputs.interventional};
}

EmpiricalInputs make_empirical_inputs(std::span<const Sample> observational,
                                      const std::vector<std::vector<int>>& interventional, std::size_t b_cause,
                                      std::size_t b_effect, double alpha) {
    if (interventional.size() > b_cause) {
        throw ContractViolation("more interventional blocks than cause values");
    }
    EmpiricalInputs inputs{empirical_joint(observational, b_cause, b_effect, alpha), {}, {}};
    for (std::size_t a = 0; a < b_cause; ++a) {
        if (a < interventional.size() && !interventional[a].empty()) {
            inputs.interventional.push_back(empirical_marginal(interventional[a], b_effect, alpha));
            inputs.fallback_used.push_back(false);
        } else {
            inputs.interventional.push_back(DiscreteDistribution::uniform(Shape({b_effect})));
            inputs.fallback_used.push_back(true);
        }
    }
    return inputs;
}

DenseMatrix constraint_matrix(const ModelLayout& layout) {
    const Shape& shape = layout.shape;
    DenseMatrix A(constraint_rows(layout), shape.cells(), 0.0);
    for (std::size_t f = 0; f < shape.cells(); ++f) A(0, f) = 1.0;

    std::size_t offset = 1;
    auto fill_block = [&](const ConstraintBlock& block) {
        const Shape block_shape(block_sizes(layout, block));
        const std::size_t used = block_shape.cells() - 1;
        for (std::size_t f = 0; f < shape.cells(); ++f) {
            std::size_t k = 0;
            for (std::size_t j = 0; j < block.axes.size(); ++j) {
                k += shape.coord(f, block.axes[j]) * block_shape.stride(j);
            }
            if (k < used) A(offset + k, f) = 1.0;
        }
        offset += used;
    };
    for (const ConstraintBlock& env : layout.environments) fill_block(env);
    fill_block(layout.observed);
    return A;
}

std::vector<double> constraint_vector(const ModelLayout& layout, const BlockInputs& inputs) {
    if (inputs.environments.size() != layout.environments.size()) {
        throw ContractViolation("expected " + std::to_string(layout.environments.size()) +
                                " environment distributions, got " + std::to_string(inputs.environments.size()));
    }
    std::vector<double> c{1.0};
    auto append = [&c](const DiscreteDistribution& d) {
        const auto mass = d.mass();
        c.insert(c.end(), mass.begin(), mass.end() - 1);
    };
    for (std::size_t e = 0; e < layout.environments.size(); ++e) {
        check_block(layout, layout.environments[e], inputs.environments[e]);
        append(inputs.environments[e]);
    }
    check_block(layout, layout.observed, inputs.observed);
    append(inputs.observed);
    return c;
}

DenseMatrix create_constraint_matrix(std::size_t b_x, std::size_t b_y) {
    if (b_x < 2 || b_x > 4 || b_y < 2 || b_y > 4) {
        throw UnsupportedModel("constraint matrix supports range sizes 2..4");
    }
    return constraint_matrix(model_layout({ModelVariant::XtoY, b_x, b_y}));
}

std::vector<double> get_constraint_distribution(const EmpiricalInputs& inputs) {
    inputs.validate();
    const std::size_t b_x = inputs.joint.shape().axis_size(0);
    const std::size_t b_y = inputs.joint.shape().axis_size(1);
    return constraint_vector(model_layout({ModelVariant::XtoY, b_x, b_y}), to_block_inputs(inputs));
}

ApproximationResult iacm(const BlockInputs& inputs, const CausalModelSpec& spec, ErrorMode mode,
                         const LpOptions& options) {
    spec.validate();
    if (is_bivariate(spec.variant) && (spec.b_x > 4 || spec.b_y > 4)) {
        throw UnsupportedModel("approximation supports range sizes up to 4");
    }
    SupportSet support = build_support(spec);
    const ModelLayout& layout = support.layout;
    if (layout.shape.cells() > kMaxLpColumns) {
        throw UnsupportedModel("model space of " + std::to_string(layout.shape.cells()) + " cells is too large");
    }

    LpProblem problem{constraint_matrix(layout), constraint_vector(layout, inputs), support.objective_coeffs};
    LpSolution solution = solve(problem, options);
    if (solution.status == LpStatus::Infeasible) {
        throw InfeasibleConstraints("empirical marginals are mutually inconsistent");
    }
    if (solution.status != LpStatus::Optimal) {
        throw std::runtime_error("linear program failed: " + std::string(to_string(solution.status)));
    }

    ApproximationResult result{DiscreteDistribution(layout.shape, solution.p), std::nullopt};
    result.mode = mode;
    result.s_value = solution.objective;
    const auto p_hat = result.p_hat.mass();

    double mass = 0.0;
    for (std::size_t i = 0; i < p_hat.size(); ++i) {
        if (support.member[i]) mass += p_hat[i];
    }
    result.support_mass = mass;
    if (mass <= kDegenerateMass) {
        result.global_error = kInf;
        result.local_error = kInf;
        return result;
    }

    std::vector<double> tilde(p_hat.size(), 0.0);
    for (std::size_t i = 0; i < p_hat.size(); ++i) {
        if (support.member[i]) tilde[i] = p_hat[i] / mass;
    }
    result.p_tilde = DiscreteDistribution(layout.shape, std::move(tilde));
    result.global_error = mass >= 1.0 ? 0.0 : -std::log(mass);

    const MarginalSelector observed(layout.observed.axes);
    result.local_error = kl_divergence(marginalize(*result.p_tilde, observed), marginalize(result.p_hat, observed));
    return result;
}

ApproximationResult iacm(const EmpiricalInputs& inputs, const CausalModelSpec& spec, ErrorMode mode,
                         const LpOptions& options) {
    if (!is_bivariate(spec.variant)) {
        throw UnsupportedModel("bivariate inputs given for a trivariate model");
    }
    inputs.validate();
    const bool reverse = is_reverse(spec.variant);
    const std::size_t b_cause = reverse ? spec.b_y : spec.b_x;
    const std::size_t b_effect = reverse ? spec.b_x : spec.b_y;
    if (inputs.joint.shape().axis_size(0) != b_cause || inputs.joint.shape().axis_size(1) != b_effect) {
        throw ContractViolation("input ranges do not match the model ranges");
    }
    return iacm(to_block_inputs(inputs), spec, mode, options);
}

const DiscreteDistribution& require_projection(const ApproximationResult& result) {
    if (!result.p_tilde) {
        throw DegenerateModel("model support receives no probability mass");
    }
    return *result.p_tilde;
}

std::vector<Sample> shift_for_time_lag(std::span<const Sample> rows, std::size_t lag) {
    if (lag >= rows.size()) {
        throw InsufficientData("time lag " + std::to_string(lag) + " leaves no rows out of " +
                               std::to_string(rows.size()));
    }
    std::vector<Sample> out;
    out.reserve(rows.size() - lag);
    for (std::size_t t = 0; t + lag < rows.size(); ++t) out.push_back({rows[t].x, rows[t + lag].y});
    return out;
}

std::vector<TimedSample> shift_for_time_lag(std::span<const TimedSample> rows, std::size_t lag) {
    if (lag >= rows.size()) {
        throw InsufficientData("time lag " + std::to_string(lag) + " leaves no rows out of " +
                               std::to_string(rows.size()));
    }
    std::vector<TimedSample> out;
    out.reserve(rows.size() - lag);
    for (std::size_t t = 0; t + lag < rows.size(); ++t) out.push_back({rows[t].x, rows[t + lag].y, rows[t].env});
    return out;
}

LagScan scan_time_lag(std::span<const TimedSample> rows, std::size_t b_x, std::size_t b_y, std::size_t max_lag,
                      ErrorMode mode) {
    LagScan scan;
    double best = kInf;
    for (std::size_t lag = 0; lag <= max_lag; ++lag) {
        const std::vector<TimedSample> shifted = shift_for_time_lag(rows, lag);
        std::vector<Sample> observational;
        std::vector<std::vector<int>> interventional(b_x);
        for (const TimedSample& r : shifted) {
            if (r.env < 0) {
                observational.push_back({r.x, r.y});
            } else {
                if (static_cast<std::size_t>(r.env) >= b_x) throw ContractViolation("environment out of range");
                interventional[static_cast<std::size_t>(r.env)].push_back(r.y);
            }
        }
        const EmpiricalInputs inputs = make_empirical_inputs(observational, interventional, b_x, b_y);
        const double err = iacm(inputs, {ModelVariant::XtoY, b_x, b_y}, mode).error();
        scan.errors.push_back(err);
        if (err < best) {
            best = err;
            scan.best_lag = lag;
        }
    }
    return scan;
}

} // namespace iacm
