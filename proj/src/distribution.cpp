#include "iacm/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "iacm/errors.hpp"

namespace iacm {

Shape::Shape(std::vector<std::size_t> axis_sizes) : sizes_(std::move(axis_sizes)) {
    if (sizes_.empty()) {
        throw ContractViolation("Shape needs at least one axis");
    }
    strides_.assign(sizes_.size(), 1);
    cells_ = 1;
    for (std::size_t i = sizes_.size(); i-- > 0;) {
        if (sizes_[i] == 0) {
            throw ContractViolation("Shape axis " + std::to_string(i) + " has size 0");
        }
        strides_[i] = cells_;
        cells_ *= sizes_[i];
    }
}

std::size_t Shape::flat_index(std::span<const std::size_t> coords) const {
    if (coords.size() != sizes_.size()) {
        throw ContractViolation("coordinate tuple has wrong rank");
    }
    std::size_t flat = 0;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] >= sizes_[i]) {
            throw ContractViolation("coordinate out of range on axis " + std::to_string(i));
        }
        flat += coords[i] * strides_[i];
    }
    return flat;
}

std::vector<std::size_t> Shape::coords(std::size_t flat) const {
    std::vector<std::size_t> out(sizes_.size());
    for (std::size_t i = 0; i < sizes_.size(); ++i) {
        out[i] = (flat / strides_[i]) % sizes_[i];
    }
    return out;
}

DiscreteDistribution::DiscreteDistribution(Shape shape, std::vector<double> mass)
    : shape_(std::move(shape)), mass_(std::move(mass)) {
    if (mass_.size() != shape_.cells()) {
        throw ContractViolation("mass vector length " + std::to_string(mass_.size()) +
                                " does not match shape with " + std::to_string(shape_.cells()) + " cells");
    }
    double total = 0.0;
    for (double& m : mass_) {
        if (!std::isfinite(m) || m < -1e-12) {
            throw ContractViolation("probability mass must be finite and nonnegative");
        }
        if (m < 0.0) m = 0.0;
        total += m;
    }
    if (std::abs(total - 1.0) > kRenormalizeLimit) {
        throw ContractViolation("probability mass sums to " + std::to_string(total) + ", expected 1");
    }
    if (total != 1.0) {
        for (double& m : mass_) m /= total;
    }
}

DiscreteDistribution DiscreteDistribution::uniform(Shape shape) {
    const std::size_t n = shape.cells();
    return DiscreteDistribution(std::move(shape), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

DiscreteDistribution DiscreteDistribution::point_mass(Shape shape, std::size_t flat_index) {
    if (flat_index >= shape.cells()) {
        throw ContractViolation("point mass index out of range");
    }
    std::vector<double> mass(shape.cells(), 0.0);
    mass[flat_index] = 1.0;
    return DiscreteDistribution(std::move(shape), std::move(mass));
}

MarginalSelector::MarginalSelector(std::vector<std::size_t> axes) : axes_(std::move(axes)) {
    if (axes_.empty()) {
        throw ContractViolation("marginal selector must keep at least one axis");
    }
    for (std::size_t i = 1; i < axes_.size(); ++i) {
        if (axes_[i] <= axes_[i - 1]) {
            throw ContractViolation("marginal selector axes must be strictly increasing");
        }
    }
}

DiscreteDistribution marginalize(const DiscreteDistribution& p, const MarginalSelector& sel) {
    const Shape& shape = p.shape();
    if (sel.axes().back() >= shape.rank()) {
        throw ContractViolation("marginal selector axis out of range");
    }
    std::vector<std::size_t> kept_sizes;
    kept_sizes.reserve(sel.axes().size());
    for (std::size_t axis : sel.axes()) kept_sizes.push_back(shape.axis_size(axis));
    Shape target(kept_sizes);

    std::vector<double> out(target.cells(), 0.0);
    const auto mass = p.mass();
    for (std::size_t flat = 0; flat < mass.size(); ++flat) {
        if (mass[flat] == 0.0) continue;
        std::size_t t = 0;
        for (std::size_t k = 0; k < sel.axes().size(); ++k) {
            t += shape.coord(flat, sel.axes()[k]) * target.stride(k);
        }
        out[t] += mass[flat];
    }
    return DiscreteDistribution(std::move(target), std::move(out));
}

double kl_divergence(const DiscreteDistribution& p, const DiscreteDistribution& q) {
    if (!(p.shape() == q.shape())) {
        throw ContractViolation("kl_divergence requires distributions over the same shape");
    }
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double pi = p[i];
        if (pi == 0.0) continue;
        const double qi = q[i];
        if (qi == 0.0) return std::numeric_limits<double>::infinity();
        d += pi * std::log(pi / qi);
    }
    return std::max(d, 0.0);
}

DiscreteDistribution empirical_joint(std::span<const Sample> rows, std::size_t b_x, std::size_t b_y, double alpha) {
    if (rows.empty()) {
        throw InsufficientData("empirical_joint: no rows");
    }
    if (alpha < 0.0) {
        throw ContractViolation("smoothing alpha must be nonnegative");
    }
    std::vector<double> counts(b_x * b_y, alpha);
    for (const Sample& s : rows) {
        if (s.x < 0 || s.y < 0 || static_cast<std::size_t>(s.x) >= b_x || static_cast<std::size_t>(s.y) >= b_y) {
            throw ContractViolation("category (" + std::to_string(s.x) + ", " + std::to_string(s.y) +
                                    ") out of range");
        }
        counts[static_cast<std::size_t>(s.x) * b_y + static_cast<std::size_t>(s.y)] += 1.0;
    }
    const double total = static_cast<double>(rows.size()) + alpha * static_cast<double>(counts.size());
    for (double& c : counts) c /= total;
    return DiscreteDistribution(Shape({b_x, b_y}), std::move(counts));
}

DiscreteDistribution empirical_marginal(std::span<const int> values, std::size_t bins, double alpha) {
    if (values.empty()) {
        throw InsufficientData("empirical_marginal: no values");
    }
    if (alpha < 0.0) {
        throw ContractViolation("smoothing alpha must be nonnegative");
    }
    std::vector<double> counts(bins, alpha);
    for (int v : values) {
        if (v < 0 || static_cast<std::size_t>(v) >= bins) {
            throw ContractViolation("category " + std::to_string(v) + " out of range");
        }
        counts[static_cast<std::size_t>(v)] += 1.0;
    }
    const double total = static_cast<double>(values.size()) + alpha * static_cast<double>(bins);
    for (double& c : counts) c /= total;
    return DiscreteDistribution(Shape({bins}), std::move(counts));
}

Discretization discretize_equal_frequency(std::span<const double> values, int bins) {
    if (bins < 2) {
        throw ContractViolation("discretization needs at least 2 bins");
    }
    if (values.empty()) {
        throw InsufficientData("discretization: no values");
    }
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    std::vector<int> raw(n);
    std::size_t group_start = 0;
    for (std::size_t r = 0; r < n; ++r) {
        if (r > 0 && values[order[r]] != values[order[r - 1]]) group_start = r;
        raw[order[r]] = static_cast<int>(group_start * static_cast<std::size_t>(bins) / n);
    }

    // Compact so labels are consecutive even when ties swallowed a bin.
    std::vector<int> remap(static_cast<std::size_t>(bins), -1);
    int next = 0;
    for (std::size_t r = 0; r < n; ++r) {
        int& slot = remap[static_cast<std::size_t>(raw[order[r]])];
        if (slot < 0) slot = next++;
    }
    Discretization out;
    out.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.labels[i] = remap[static_cast<std::size_t>(raw[i])];
    out.distinct_labels = next;
    out.degraded = next < bins;
    return out;
}

} // namespace iacm
