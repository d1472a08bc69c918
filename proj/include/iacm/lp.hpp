#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace iacm {

/// Row-major dense matrix.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

    std::vector<double> multiply(std::span<const double> v) const;

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// max c'p  s.t.  A p = b,  p >= 0
struct LpProblem {
    DenseMatrix A;
    std::vector<double> b;
    std::vector<double> c;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, NumericalFailure };

std::string_view to_string(LpStatus status);

struct LpOptions {
    double pivot_tolerance = 1e-10;
    double feasibility_tolerance = 1e-7;
    // Consecutive degenerate pivots tolerated under the largest-coefficient
    // rule before switching to Bland's rule for the rest of the phase.
    std::size_t degeneracy_limit = 50;
    std::size_t max_iterations = 100000;
};

struct LpSolution {
    LpStatus status = LpStatus::NumericalFailure;
    std::vector<double> p;  // valid iff status == Optimal
    double objective = 0.0;
    std::size_t iterations = 0;
    double max_residual = 0.0;
    double min_component = 0.0;
};

/// Two-phase dense simplex. Deterministic: identical inputs give identical
/// output vectors.
LpSolution solve(const LpProblem& problem, const LpOptions& options = {});

struct FeasibilityReport {
    double max_residual = 0.0;  // max_i |(A p - b)_i|
    double min_component = 0.0;
    bool feasible(double tolerance = 1e-7) const {
        return max_residual <= tolerance && min_component >= -1e-9;
    }
};

FeasibilityReport feasibility_check(const LpProblem& problem, std::span<const double> p);

} // namespace iacm
