#pragma once

// Builders that turn a model-space joint into the empirical inputs it
// induces. Used to produce instances that are feasible by construction.

#include <random>
#include <vector>

#include "iacm/approximation.hpp"
#include "iacm/distribution.hpp"
#include "oracles.hpp"

namespace fixture {

/// Joint over (x, y, y_0, ..., y_{bx-1}) drawn from the simplex.
inline iacm::DiscreteDistribution random_model_joint(std::size_t bx, std::size_t by, std::mt19937_64& rng,
                                                     double sparsity = 0.0) {
    std::vector<std::size_t> sizes{bx, by};
    for (std::size_t a = 0; a < bx; ++a) sizes.push_back(by);
    iacm::Shape shape(sizes);
    return iacm::DiscreteDistribution(shape, gen::simplex(shape.cells(), rng, sparsity));
}

/// Observational joint and interventional marginals read off a model joint.
inline iacm::EmpiricalInputs inputs_from_model_joint(const iacm::DiscreteDistribution& p) {
    const std::size_t bx = p.shape().axis_size(0);
    iacm::EmpiricalInputs in{iacm::marginalize(p, iacm::MarginalSelector({0, 1})), {}, {}};
    for (std::size_t a = 0; a < bx; ++a) {
        in.interventional.push_back(iacm::marginalize(p, iacm::MarginalSelector({2 + a})));
    }
    in.fallback_used.assign(bx, false);
    return in;
}

/// Inputs with an arbitrary joint and arbitrary interventional marginals.
/// Always feasible: the product of the interventional marginals with the
/// joint is a witness.
inline iacm::EmpiricalInputs random_inputs(std::size_t bx, std::size_t by, std::mt19937_64& rng,
                                           double sparsity = 0.0) {
    iacm::EmpiricalInputs in{iacm::DiscreteDistribution(iacm::Shape({bx, by}), gen::simplex(bx * by, rng, sparsity)),
                             {},
                             {}};
    for (std::size_t a = 0; a < bx; ++a) {
        in.interventional.emplace_back(iacm::Shape({by}), gen::simplex(by, rng, sparsity));
    }
    in.fallback_used.assign(bx, false);
    return in;
}

inline iacm::EmpiricalInputs uniform_inputs(std::size_t bx, std::size_t by) {
    iacm::EmpiricalInputs in{iacm::DiscreteDistribution::uniform(iacm::Shape({bx, by})), {}, {}};
    for (std::size_t a = 0; a < bx; ++a) in.interventional.push_back(iacm::DiscreteDistribution::uniform(iacm::Shape({by})));
    in.fallback_used.assign(bx, false);
    return in;
}

/// Binary inputs of a noiseless mechanism: P(X=1) = q and Y = X (or 1 - X).
inline iacm::EmpiricalInputs deterministic_inputs(bool flipped, double q = 0.5) {
    using iacm::DiscreteDistribution;
    using iacm::Shape;
    const std::size_t y0 = flipped ? 1 : 0;
    const std::size_t y1 = flipped ? 0 : 1;
    std::vector<double> joint(4, 0.0);
    joint[0 * 2 + y0] = 1.0 - q;
    joint[1 * 2 + y1] = q;
    iacm::EmpiricalInputs in{DiscreteDistribution(Shape({2, 2}), joint),
                             {DiscreteDistribution::point_mass(Shape({2}), y0),
                              DiscreteDistribution::point_mass(Shape({2}), y1)},
                             {false, false}};
    return in;
}

} // namespace fixture
