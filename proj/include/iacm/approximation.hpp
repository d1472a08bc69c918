#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "iacm/distribution.hpp"
#include "iacm/lp.hpp"
#include "iacm/models.hpp"

namespace iacm {

enum class ErrorMode { Global, Local };

std::string_view to_string(ErrorMode mode);
ErrorMode parse_error_mode(std::string_view text);

/// Empirical distributions of a bivariate problem, oriented cause-first:
/// `joint` is over [b_cause, b_effect] and `interventional[a]` is the effect
/// distribution under do(cause = a).
struct EmpiricalInputs {
    DiscreteDistribution joint;
    std::vector<DiscreteDistribution> interventional;
    // interventional[a] was substituted by a uniform distribution because no
    // data for do(cause = a) was available.
    std::vector<bool> fallback_used;

    void validate() const;
};

/// Inputs for an arbitrary layout: one distribution per constraint block,
/// each over the axes of that block in layout order.
struct BlockInputs {
    DiscreteDistribution observed;
    std::vector<DiscreteDistribution> environments;
};

BlockInputs to_block_inputs(const EmpiricalInputs& inputs);

/// Builds cause-first inputs from raw categories. `interventional[a]` holds the
/// effect values observed under do(cause = a); an empty or missing entry is
/// replaced by the uniform distribution and flagged.
EmpiricalInputs make_empirical_inputs(std::span<const Sample> observational,
                                      const std::vector<std::vector<int>>& interventional, std::size_t b_cause,
                                      std::size_t b_effect, double alpha = 0.0);

struct ApproximationResult {
    DiscreteDistribution p_hat;
    // Empty when the model support can receive no mass (s_value == 0).
    std::optional<DiscreteDistribution> p_tilde;
    double s_value = 0.0;       // objective value at p_hat
    double support_mass = 0.0;  // p_hat mass inside the support (== s_value for indicator objectives)
    double global_error = 0.0;  // -log(support_mass) = D(p_tilde || p_hat)
    double local_error = 0.0;   // D of the observed-block marginals
    ErrorMode mode = ErrorMode::Local;

    double error() const { return mode == ErrorMode::Global ? global_error : local_error; }
    bool degenerate() const { return !p_tilde.has_value(); }
};

/// 0/1 matrix of the marginal constraints for `layout`: a row of ones, then
/// each environment block's cells in order (last cell dropped), then the
/// observed block's cells (last cell dropped).
DenseMatrix constraint_matrix(const ModelLayout& layout);

/// Right-hand side matching constraint_matrix(layout).
std::vector<double> constraint_vector(const ModelLayout& layout, const BlockInputs& inputs);

/// Constraint matrix of the X->Y model, b_x(2 b_y - 1) rows by b_x b_y^(b_x+1)
/// columns. Ranges are limited to 2..4.
DenseMatrix create_constraint_matrix(std::size_t b_x, std::size_t b_y);
std::vector<double> get_constraint_distribution(const EmpiricalInputs& inputs);

/// Projects the empirical inputs onto the model: maximizes the model objective
/// over all joints consistent with the inputs, then re-weights the maximizer
/// onto the model support.
///
/// Throws InfeasibleConstraints when the inputs cannot be matched by any joint.
/// A model whose support receives zero mass is reported through
/// ApproximationResult::degenerate() with infinite errors.
ApproximationResult iacm(const BlockInputs& inputs, const CausalModelSpec& spec, ErrorMode mode = ErrorMode::Local,
                         const LpOptions& options = {});
ApproximationResult iacm(const EmpiricalInputs& inputs, const CausalModelSpec& spec,
                         ErrorMode mode = ErrorMode::Local, const LpOptions& options = {});

/// Throws DegenerateModel when the result carries no projection.
const DiscreteDistribution& require_projection(const ApproximationResult& result);

/// Row of a time-ordered record; `env` is -1 for observational rows and the
/// intervened cause value otherwise.
struct TimedSample {
    int x = 0;
    int y = 0;
    int env = -1;
    friend bool operator==(const TimedSample&, const TimedSample&) = default;
};

/// Pairs x_t with y_{t+lag}. Throws InsufficientData when lag >= rows.size().
std::vector<Sample> shift_for_time_lag(std::span<const Sample> rows, std::size_t lag);
/// Same pairing; the environment of the cause row travels with it.
std::vector<TimedSample> shift_for_time_lag(std::span<const TimedSample> rows, std::size_t lag);

struct LagScan {
    std::vector<double> errors;  // errors[T] for T = 0..max_lag
    std::size_t best_lag = 0;
};

/// Approximates X->Y for every lag in 0..max_lag and reports the lag with the
/// smallest error (first one on ties).
LagScan scan_time_lag(std::span<const TimedSample> rows, std::size_t b_x, std::size_t b_y, std::size_t max_lag,
                      ErrorMode mode = ErrorMode::Local);

} // namespace iacm
