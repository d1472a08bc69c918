#include "iacm/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "iacm/errors.hpp"

namespace iacm {

std::vector<double> DenseMatrix::multiply(std::span<const double> v) const {
    if (v.size() != cols_) {
        throw ContractViolation("matrix-vector size mismatch");
    }
    std::vector<double> out(rows_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r) {
        const double* row_ptr = data_.data() + r * cols_;
        double acc = 0.0;
        for (std::size_t c = 0; c < cols_; ++c) acc += row_ptr[c] * v[c];
        out[r] = acc;
    }
    return out;
}

std::string_view to_string(LpStatus status) {
    switch (status) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
        case LpStatus::NumericalFailure: return "numerical_failure";
    }
    return "unknown";
}

FeasibilityReport feasibility_check(const LpProblem& problem, std::span<const double> p) {
    if (p.size() != problem.A.cols() || problem.b.size() != problem.A.rows()) {
        throw ContractViolation("feasibility_check: dimension mismatch");
    }
    FeasibilityReport report;
    const std::vector<double> ap = problem.A.multiply(p);
    for (std::size_t i = 0; i < ap.size(); ++i) {
        report.max_residual = std::max(report.max_residual, std::abs(ap[i] - problem.b[i]));
    }
    report.min_component = p.empty() ? 0.0 : *std::min_element(p.begin(), p.end());
    return report;
}

namespace {

enum class PhaseResult { Optimal, Unbounded, IterationLimit };

class Tableau {
public:
    Tableau(const LpProblem& problem, const LpOptions& options)
        : m_(problem.A.rows()),
          n_(problem.A.cols()),
          width_(n_ + m_ + 1),
          options_(options),
          t_(m_ * width_, 0.0),
          basis_(m_) {
        for (std::size_t i = 0; i < m_; ++i) {
            const double sign = problem.b[i] < 0.0 ? -1.0 : 1.0;
            for (std::size_t j = 0; j < n_; ++j) at(i, j) = sign * problem.A(i, j);
            at(i, n_ + i) = 1.0;
            at(i, rhs()) = sign * problem.b[i];
            basis_[i] = n_ + i;
        }
    }

    std::size_t iterations() const { return iterations_; }

    // Maximizes cost'x over columns [0, allowed_end) entering the basis.
    PhaseResult run_phase(const std::vector<double>& cost, std::size_t allowed_end) {
        cost_ = cost;
        reduced_.assign(width_ - 1, 0.0);
        for (std::size_t j = 0; j + 1 < width_; ++j) {
            double d = cost_[j];
            for (std::size_t i = 0; i < m_; ++i) d -= cost_[basis_[i]] * at(i, j);
            reduced_[j] = d;
        }

        bool bland = false;
        std::size_t degenerate_run = 0;
        while (true) {
            if (iterations_ >= options_.max_iterations) return PhaseResult::IterationLimit;

            std::size_t entering = allowed_end;
            double best = options_.pivot_tolerance;
            for (std::size_t j = 0; j < allowed_end; ++j) {
                if (reduced_[j] > best) {
                    entering = j;
                    if (bland) break;
                    best = reduced_[j];
                }
            }
            if (entering == allowed_end) return PhaseResult::Optimal;

            std::size_t leaving = m_;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m_; ++i) {
                const double a = at(i, entering);
                if (a <= options_.pivot_tolerance) continue;
                const double ratio = std::max(at(i, rhs()), 0.0) / a;
                if (leaving == m_) {
                    best_ratio = ratio;
                    leaving = i;
                    continue;
                }
                const double tie = 1e-12 * std::max(1.0, best_ratio);
                if (ratio < best_ratio - tie) {
                    best_ratio = ratio;
                    leaving = i;
                } else if (ratio <= best_ratio + tie && basis_[i] < basis_[leaving]) {
                    leaving = i;
                }
            }
            if (leaving == m_) return PhaseResult::Unbounded;

            if (best_ratio <= 1e-12) {
                if (++degenerate_run > options_.degeneracy_limit) bland = true;
            } else {
                degenerate_run = 0;
            }
            pivot(leaving, entering);
        }
    }

    void pivot(std::size_t r, std::size_t e) {
        ++iterations_;
        double* prow = &t_[r * width_];
        const double inv = 1.0 / prow[e];
        for (std::size_t j = 0; j < width_; ++j) prow[j] *= inv;
        prow[e] = 1.0;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r) continue;
            double* row = &t_[i * width_];
            const double f = row[e];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < width_; ++j) row[j] -= f * prow[j];
            row[e] = 0.0;
        }
        if (!reduced_.empty()) {
            const double f = reduced_[e];
            if (f != 0.0) {
                for (std::size_t j = 0; j + 1 < width_; ++j) reduced_[j] -= f * prow[j];
                reduced_[e] = 0.0;
            }
        }
        basis_[r] = e;
    }

    double artificial_sum() const {
        double s = 0.0;
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] >= n_) s += std::max(at(i, rhs()), 0.0);
        }
        return s;
    }

    // Pivots zero-level artificials out of the basis where a structural column
    // can replace them; rows where none can are redundant and stay as they are.
    void expel_artificials() {
        reduced_.clear();
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_) continue;
            std::size_t best = n_;
            double best_abs = options_.pivot_tolerance;
            for (std::size_t j = 0; j < n_; ++j) {
                const double a = std::abs(at(i, j));
                if (a > best_abs) {
                    best_abs = a;
                    best = j;
                }
            }
            if (best < n_) pivot(i, best);
        }
    }

    std::vector<double> primal() const {
        std::vector<double> x(n_, 0.0);
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_) x[basis_[i]] = at(i, rhs());
        }
        return x;
    }

    std::vector<std::size_t> structural_basis() const {
        std::vector<std::size_t> cols;
        for (std::size_t b : basis_) {
            if (b < n_) cols.push_back(b);
        }
        std::sort(cols.begin(), cols.end());
        return cols;
    }

private:
    double& at(std::size_t i, std::size_t j) { return t_[i * width_ + j]; }
    double at(std::size_t i, std::size_t j) const { return t_[i * width_ + j]; }
    std::size_t rhs() const { return width_ - 1; }

    std::size_t m_;
    std::size_t n_;
    std::size_t width_;
    LpOptions options_;
    std::vector<double> t_;
    std::vector<std::size_t> basis_;
    std::vector<double> cost_;
    std::vector<double> reduced_;
    std::size_t iterations_ = 0;
};

// Recomputes the basic variables from the original data by Gaussian
// elimination on A restricted to the basic columns; removes drift accumulated
// over the tableau updates.
std::vector<double> refine_basic_solution(const LpProblem& problem, const std::vector<std::size_t>& basic_cols) {
    const std::size_t m = problem.A.rows();
    const std::size_t k = basic_cols.size();
    std::vector<std::vector<double>> aug(m, std::vector<double>(k + 1));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < k; ++j) aug[i][j] = problem.A(i, basic_cols[j]);
        aug[i][k] = problem.b[i];
    }
    std::vector<std::size_t> pivot_row(k, m);
    std::size_t row = 0;
    for (std::size_t col = 0; col < k && row < m; ++col) {
        std::size_t best = row;
        for (std::size_t i = row + 1; i < m; ++i) {
            if (std::abs(aug[i][col]) > std::abs(aug[best][col])) best = i;
        }
        if (std::abs(aug[best][col]) < 1e-12) return {};
        std::swap(aug[row], aug[best]);
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row || aug[i][col] == 0.0) continue;
            const double f = aug[i][col] / aug[row][col];
            for (std::size_t j = col; j <= k; ++j) aug[i][j] -= f * aug[row][j];
        }
        pivot_row[col] = row++;
    }
    std::vector<double> x(problem.A.cols(), 0.0);
    for (std::size_t col = 0; col < k; ++col) {
        const auto& r = aug[pivot_row[col]];
        x[basic_cols[col]] = r[k] / r[col];
    }
    return x;
}

} // namespace

LpSolution solve(const LpProblem& problem, const LpOptions& options) {
    const std::size_t m = problem.A.rows();
    const std::size_t n = problem.A.cols();
    if (problem.b.size() != m || problem.c.size() != n) {
        throw ContractViolation("LP dimensions inconsistent: A is " + std::to_string(m) + "x" + std::to_string(n) +
                                ", b has " + std::to_string(problem.b.size()) + ", c has " +
                                std::to_string(problem.c.size()));
    }
    LpSolution solution;
    Tableau tableau(problem, options);

    std::vector<double> phase1_cost(n + m, 0.0);
    std::fill(phase1_cost.begin() + static_cast<std::ptrdiff_t>(n), phase1_cost.end(), -1.0);
    PhaseResult r = tableau.run_phase(phase1_cost, n + m);
    solution.iterations = tableau.iterations();
    if (r != PhaseResult::Optimal) {
        solution.status = LpStatus::NumericalFailure;
        return solution;
    }
    if (tableau.artificial_sum() > options.feasibility_tolerance) {
        solution.status = LpStatus::Infeasible;
        return solution;
    }
    tableau.expel_artificials();

    std::vector<double> phase2_cost(n + m, 0.0);
    std::copy(problem.c.begin(), problem.c.end(), phase2_cost.begin());
    r = tableau.run_phase(phase2_cost, n);
    solution.iterations = tableau.iterations();
    if (r == PhaseResult::Unbounded) {
        solution.status = LpStatus::Unbounded;
        return solution;
    }
    if (r != PhaseResult::Optimal) {
        solution.status = LpStatus::NumericalFailure;
        return solution;
    }

    std::vector<double> p = tableau.primal();
    FeasibilityReport report = feasibility_check(problem, p);
    std::vector<double> refined = refine_basic_solution(problem, tableau.structural_basis());
    if (!refined.empty()) {
        FeasibilityReport refined_report = feasibility_check(problem, refined);
        if (refined_report.max_residual <= report.max_residual && refined_report.min_component >= -1e-9) {
            p = std::move(refined);
        }
    }
    for (double& v : p) {
        if (v < 0.0 && v >= -1e-9) v = 0.0;
    }
    report = feasibility_check(problem, p);
    solution.max_residual = report.max_residual;
    solution.min_component = report.min_component;
    if (!report.feasible(options.feasibility_tolerance)) {
        solution.status = LpStatus::NumericalFailure;
        return solution;
    }
    double objective = 0.0;
    for (std::size_t j = 0; j < n; ++j) objective += problem.c[j] * p[j];
    solution.p = std::move(p);
    solution.objective = objective;
    solution.status = LpStatus::Optimal;
    return solution;
}

} // namespace iacm
