#pragma once

#include <optional>
#include <string_view>

#include "iacm/approximation.hpp"
#include "iacm/distribution.hpp"

namespace iacm {

enum class Direction { XtoY, YtoX };
enum class MonotoneKind { Increasing, Decreasing };

std::string_view to_string(Direction d);
std::string_view to_string(MonotoneKind k);

/// PN and PS are undefined (empty) when their denominator vanishes; PNS is
/// always defined.
struct CausalProbabilities {
    std::optional<double> pn;
    std::optional<double> ps;
    double pns = 0.0;

    friend bool operator==(const CausalProbabilities&, const CausalProbabilities&) = default;
};

/// PN/PS/PNS of cause value 1 for effect value 1 under an increasing monotone
/// model. `p_tilde` is over the binary cause-first space [2,2,2,2].
CausalProbabilities probabilities_increasing(const DiscreteDistribution& p_tilde);

/// PN/PS/PNS of cause value 0 for effect value 1 under a decreasing monotone
/// model.
CausalProbabilities probabilities_decreasing(const DiscreteDistribution& p_tilde);

struct CausationReport {
    Direction direction_assumed = Direction::XtoY;
    MonotoneKind monotone_kind = MonotoneKind::Increasing;
    CausalProbabilities probabilities;
    double error_increasing = 0.0;
    double error_decreasing = 0.0;
    ErrorMode error_mode = ErrorMode::Local;

    // Error of the selected monotone model.
    double error() const {
        return monotone_kind == MonotoneKind::Increasing ? error_increasing : error_decreasing;
    }

    friend bool operator==(const CausationReport&, const CausationReport&) = default;
};

/// Approximates the binary inputs to the increasing and the decreasing
/// monotone model and evaluates the probabilities of causation on the better
/// projection (ties go to the increasing model). Inputs are cause-first;
/// `assumed` only labels the report.
///
/// Throws DegenerateModel when neither monotone model admits any mass.
CausationReport calc_causal_probabilities(const EmpiricalInputs& inputs, ErrorMode mode = ErrorMode::Local,
                                          Direction assumed = Direction::XtoY);

} // namespace iacm
