#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace iacm {

/// Mixed-radix product space. Axis 0 is the most significant digit of the
/// flat index, so a binary space with axes (x, y, y0, y1) has cell 0b0110 at
/// flat index 6.
class Shape {
public:
    Shape() = default;
    explicit Shape(std::vector<std::size_t> axis_sizes);

    std::size_t rank() const { return sizes_.size(); }
    std::size_t axis_size(std::size_t axis) const { return sizes_.at(axis); }
    std::size_t stride(std::size_t axis) const { return strides_.at(axis); }
    std::size_t cells() const { return cells_; }
    const std::vector<std::size_t>& sizes() const { return sizes_; }

    std::size_t flat_index(std::span<const std::size_t> coords) const;
    std::vector<std::size_t> coords(std::size_t flat) const;
    // Coordinate of one axis without materializing the whole tuple.
    std::size_t coord(std::size_t flat, std::size_t axis) const {
        return (flat / strides_[axis]) % sizes_[axis];
    }

    friend bool operator==(const Shape&, const Shape&) = default;

private:
    std::vector<std::size_t> sizes_;
    std::vector<std::size_t> strides_;
    std::size_t cells_ = 0;
};

inline constexpr double kNormalizationTolerance = 1e-9;
inline constexpr double kRenormalizeLimit = 1e-6;

/// Dense probability vector over a Shape. Immutable after construction.
///
/// Construction validates the mass: entries must be nonnegative (values in
/// [-1e-12, 0) are treated as rounding and set to zero) and the total must be
/// within 1e-6 of one, after which the vector is rescaled to sum to one.
class DiscreteDistribution {
public:
    DiscreteDistribution(Shape shape, std::vector<double> mass);

    static DiscreteDistribution uniform(Shape shape);
    static DiscreteDistribution point_mass(Shape shape, std::size_t flat_index);

    const Shape& shape() const { return shape_; }
    std::span<const double> mass() const { return mass_; }
    double operator[](std::size_t flat) const { return mass_[flat]; }
    double at(std::span<const std::size_t> coords) const { return mass_[shape_.flat_index(coords)]; }
    std::size_t size() const { return mass_.size(); }

    friend bool operator==(const DiscreteDistribution&, const DiscreteDistribution&) = default;

private:
    Shape shape_;
    std::vector<double> mass_;
};

/// Ordered subset of axes kept by a marginalization.
class MarginalSelector {
public:
    explicit MarginalSelector(std::vector<std::size_t> axes);
    const std::vector<std::size_t>& axes() const { return axes_; }

private:
    std::vector<std::size_t> axes_;
};

DiscreteDistribution marginalize(const DiscreteDistribution& p, const MarginalSelector& sel);

/// Relative entropy D(p || q) in nats, with 0 log(0/q) = 0. Returns +inf when
/// some cell has p > 0 and q = 0.
double kl_divergence(const DiscreteDistribution& p, const DiscreteDistribution& q);

/// One observed (cause, effect) pair of category labels.
struct Sample {
    int x = 0;
    int y = 0;
    friend bool operator==(const Sample&, const Sample&) = default;
};

/// Relative frequencies over [b_x, b_y]. With alpha > 0 every cell receives
/// alpha pseudo-counts before normalization.
DiscreteDistribution empirical_joint(std::span<const Sample> rows, std::size_t b_x, std::size_t b_y,
                                     double alpha = 0.0);

/// Relative frequencies of a single categorical column over [bins].
DiscreteDistribution empirical_marginal(std::span<const int> values, std::size_t bins, double alpha = 0.0);

struct Discretization {
    std::vector<int> labels;
    int distinct_labels = 0;
    // Fewer than the requested number of labels could be emitted (ties).
    bool degraded = false;
};

/// Equal-frequency (quantile) binning. Each group of equal values is labelled
/// by the quantile bin of its first stable rank, so ties never straddle bins.
/// Labels are compacted to 0..distinct_labels-1.
Discretization discretize_equal_frequency(std::span<const double> values, int bins);

} // namespace iacm
