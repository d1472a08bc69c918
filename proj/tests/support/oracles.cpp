#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/distributions/chi_squared.hpp>

namespace oracle {

std::vector<Cell> enumerate_cells(const std::vector<std::size_t>& sizes) {
    std::vector<Cell> out;
    Cell c(sizes.size(), 0);
    for (;;) {
        out.push_back(c);
        std::size_t k = sizes.size();
        for (;;) {
            if (k == 0) return out;
            --k;
            if (++c[k] < sizes[k]) break;
            c[k] = 0;
        }
    }
}

std::vector<double> marginalize(const std::vector<double>& mass, const std::vector<std::size_t>& sizes,
                                const std::vector<std::size_t>& keep) {
    std::vector<std::size_t> kept_sizes;
    for (std::size_t a : keep) kept_sizes.push_back(sizes[a]);
    const std::vector<Cell> kept_cells = enumerate_cells(kept_sizes);
    const std::vector<Cell> cells = enumerate_cells(sizes);
    std::vector<double> out(kept_cells.size(), 0.0);
    for (std::size_t k = 0; k < kept_cells.size(); ++k) {
        for (std::size_t f = 0; f < cells.size(); ++f) {
            bool match = true;
            for (std::size_t j = 0; j < keep.size(); ++j) match = match && cells[f][keep[j]] == kept_cells[k][j];
            if (match) out[k] += mass[f];
        }
    }
    return out;
}

std::optional<double> kl(const std::vector<double>& p, const std::vector<double>& q) {
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0.0) continue;
        if (q[i] == 0.0) return std::nullopt;
        d += p[i] * std::log(p[i] / q[i]);
    }
    return d;
}

bool bivariate_allowed(const Cell& c) {
    const std::size_t x = c[0];
    const std::size_t y = c[1];
    return c[2 + x] == y;
}

bool increasing_allowed(const Cell& c) {
    // Forbids the counterfactual pair (y_0, y_1) = (1, 0).
    return bivariate_allowed(c) && !(c[2] == 1 && c[3] == 0);
}

bool decreasing_allowed(const Cell& c) {
    // Forbids the counterfactual pair (y_0, y_1) = (0, 1).
    return bivariate_allowed(c) && !(c[2] == 0 && c[3] == 1);
}

namespace {

// Axis positions shared by the trivariate layouts.
struct TriAxes {
    std::size_t x = 0;
    std::size_t y = 1;
    std::optional<std::size_t> z;
    std::size_t first_env = 2;
};

TriAxes tri_axes(bool hidden) {
    TriAxes t;
    if (!hidden) {
        t.z = 2;
        t.first_env = 3;
    }
    return t;
}

bool z_is(const Cell& c, const TriAxes& t, std::size_t a) { return !t.z || c[*t.z] == a; }

} // namespace

bool confounder_forbidden(const Cell& c, std::size_t bx, std::size_t by, std::size_t bz, bool hidden) {
    const TriAxes t = tri_axes(hidden);
    for (std::size_t a = 0; a < bz; ++a) {
        const std::size_t xa_axis = t.first_env + 2 * a;
        const std::size_t ya_axis = xa_axis + 1;
        for (std::size_t xa = 0; xa < bx; ++xa) {
            for (std::size_t ya = 0; ya < by; ++ya) {
                const bool base = c[t.x] == xa && c[t.y] == ya && z_is(c, t, a);
                if (!base) continue;
                for (std::size_t xbar = 0; xbar < bx; ++xbar) {
                    if (xbar != xa && c[xa_axis] == xbar && c[ya_axis] == ya) return true;
                }
                for (std::size_t ybar = 0; ybar < by; ++ybar) {
                    if (ybar != ya && c[xa_axis] == xa && c[ya_axis] == ybar) return true;
                }
            }
        }
    }
    return false;
}

bool chain_forbidden(const Cell& c, std::size_t bx, std::size_t by, std::size_t bz, bool hidden) {
    const TriAxes t = tri_axes(hidden);
    const std::size_t first_y = t.first_env + bz;
    for (std::size_t a = 0; a < bz; ++a) {
        const std::size_t xa_axis = t.first_env + a;
        for (std::size_t xa = 0; xa < bx; ++xa) {
            const std::size_t yx_axis = first_y + xa;
            for (std::size_t y = 0; y < by; ++y) {
                const bool base = c[t.x] == xa && c[t.y] == y && z_is(c, t, a);
                if (!base) continue;
                for (std::size_t xbar = 0; xbar < bx; ++xbar) {
                    if (xbar != xa && c[xa_axis] == xbar && c[yx_axis] == y) return true;
                }
                for (std::size_t ybar = 0; ybar < by; ++ybar) {
                    if (ybar != y && c[xa_axis] == xa && c[yx_axis] == ybar) return true;
                }
            }
        }
    }
    return false;
}

bool collider_forbidden(const Cell& c, std::size_t bx, std::size_t by, std::size_t bz, bool hidden) {
    const TriAxes t = tri_axes(hidden);
    const std::size_t first_yb = t.first_env + bz;
    for (std::size_t a = 0; a < bz; ++a) {
        const std::size_t ya_axis = t.first_env + a;
        for (std::size_t b = 0; b < bx; ++b) {
            const std::size_t yb_axis = first_yb + b;
            for (std::size_t y = 0; y < by; ++y) {
                const bool base = c[t.x] == b && c[t.y] == y && z_is(c, t, a);
                if (!base) continue;
                for (std::size_t ybar = 0; ybar < by; ++ybar) {
                    if (ybar == y) continue;
                    if (c[ya_axis] == y && c[yb_axis] == ybar) return true;
                    if (c[ya_axis] == ybar && c[yb_axis] == y) return true;
                    if (c[ya_axis] == ybar && c[yb_axis] == ybar) return true;
                }
            }
        }
    }
    return false;
}

std::vector<std::vector<double>> bivariate_constraints(std::size_t bx, std::size_t by) {
    std::vector<std::size_t> sizes{bx, by};
    for (std::size_t a = 0; a < bx; ++a) sizes.push_back(by);
    const std::vector<Cell> cells = enumerate_cells(sizes);
    std::vector<std::vector<double>> rows;
    rows.emplace_back(cells.size(), 1.0);
    for (std::size_t a = 0; a < bx; ++a) {
        for (std::size_t v = 0; v + 1 < by; ++v) {
            std::vector<double> row(cells.size(), 0.0);
            for (std::size_t f = 0; f < cells.size(); ++f) row[f] = cells[f][2 + a] == v ? 1.0 : 0.0;
            rows.push_back(row);
        }
    }
    for (std::size_t x = 0; x < bx; ++x) {
        for (std::size_t y = 0; y < by; ++y) {
            if (x == bx - 1 && y == by - 1) continue;
            std::vector<double> row(cells.size(), 0.0);
            for (std::size_t f = 0; f < cells.size(); ++f) row[f] = cells[f][0] == x && cells[f][1] == y ? 1.0 : 0.0;
            rows.push_back(row);
        }
    }
    return rows;
}

std::optional<std::vector<double>> solve_square(std::vector<std::vector<double>> a, std::vector<double> b) {
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        }
        if (std::abs(a[piv][col]) < 1e-11) return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
        x[i] = s / a[i][i];
    }
    return x;
}

std::optional<BasisOptimum> lp_by_enumeration(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                                              const std::vector<double>& c) {
    const std::size_t m = a.size();
    const std::size_t n = c.size();
    std::optional<BasisOptimum> best;
    std::vector<bool> choose(n, false);
    std::fill(choose.begin(), choose.begin() + static_cast<std::ptrdiff_t>(m), true);
    do {
        std::vector<std::size_t> cols;
        for (std::size_t j = 0; j < n; ++j) {
            if (choose[j]) cols.push_back(j);
        }
        std::vector<std::vector<double>> sq(m, std::vector<double>(m));
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t k = 0; k < m; ++k) sq[i][k] = a[i][cols[k]];
        }
        const auto xb = solve_square(sq, b);
        if (!xb) continue;
        if (std::any_of(xb->begin(), xb->end(), [](double v) { return v < -1e-9; })) continue;
        std::vector<double> x(n, 0.0);
        double obj = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            x[cols[k]] = std::max((*xb)[k], 0.0);
            obj += c[cols[k]] * x[cols[k]];
        }
        if (!best) best = BasisOptimum{};
        ++best->feasible_bases;
        if (best->feasible_bases == 1 || obj > best->objective) {
            best->objective = obj;
            best->x = x;
        }
    } while (std::prev_permutation(choose.begin(), choose.end()));
    return best;
}

std::vector<double> scm_joint(const std::vector<int>& f, const std::vector<double>& p_x, const std::vector<double>& p_n,
                              bool multiplicative) {
    const std::size_t bx = p_x.size();
    const std::size_t by = p_n.size();
    std::vector<double> joint(bx * by, 0.0);
    for (std::size_t x = 0; x < bx; ++x) {
        for (std::size_t n = 0; n < by; ++n) {
            const std::size_t fx = static_cast<std::size_t>(f[x]);
            const std::size_t y = multiplicative ? (fx * n) % by : (fx + n) % by;
            joint[x * by + y] += p_x[x] * p_n[n];
        }
    }
    return joint;
}

double chi_squared_quantile(double dof, double upper_tail) {
    return boost::math::quantile(boost::math::complement(boost::math::chi_squared(dof), upper_tail));
}

} // namespace oracle

namespace gen {

std::vector<double> simplex(std::size_t k, std::mt19937_64& rng, double sparsity) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> p(k);
    for (;;) {
        double sum = 0.0;
        for (double& v : p) {
            v = u(rng) < sparsity ? 0.0 : -std::log(1.0 - u(rng));
            sum += v;
        }
        if (sum > 0.0) {
            for (double& v : p) v /= sum;
            return p;
        }
    }
}

std::size_t range(std::size_t lo, std::size_t hi, std::mt19937_64& rng) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

} // namespace gen
