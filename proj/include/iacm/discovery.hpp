#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "iacm/approximation.hpp"
#include "iacm/causation.hpp"
#include "iacm/distribution.hpp"

namespace iacm {

enum class PreprocessMode { None, Split, SplitAndBalance };

std::string_view to_string(PreprocessMode mode);
PreprocessMode parse_preprocess_mode(std::string_view text);

enum class Variable { X, Y };

/// Observational rows plus per-value interventional effect samples, oriented
/// cause-first: when the split was made with respect to Y, `observational`
/// holds (y, x) pairs and `interventional[b]` holds x values seen with Y = b.
struct EnvSplit {
    std::vector<Sample> observational;
    std::vector<std::vector<int>> interventional;
};

/// Splits unlabelled rows into observational and interventional sets with
/// respect to `direction`.
///
///  - None: first half observational (the extra row of an odd count goes
///    there), second half interventional keyed by the direction variable.
///  - Split: rows are grouped by the direction variable's value; each group is
///    shuffled and halved without replacement into observational and
///    interventional parts.
///  - SplitAndBalance: as Split, then every interventional part is resampled
///    with replacement up to the size of the largest one.
///
/// Splitting with respect to Y is the X-wise split of the column-swapped rows.
EnvSplit preprocess(std::span<const Sample> rows, PreprocessMode mode, Variable direction, std::size_t b_x,
                    std::size_t b_y, std::uint64_t seed = 0);

EmpiricalInputs make_inputs(const EnvSplit& split, std::size_t b_cause, std::size_t b_effect, double alpha = 0.0);

struct DiscoveryConfig {
    double epsilon = 0.01;
    PreprocessMode preprocess = PreprocessMode::None;
    ErrorMode error_mode = ErrorMode::Local;
    // Binary data may be decided through the monotone models and PNS.
    bool monotone_path = true;
    // Binary data: use the best of the four ANM-penalized objectives instead of
    // the plain invariance objective on the general path.
    bool anm_objectives = false;
    double alpha = 0.0;
    std::uint64_t seed = 0;
};

enum class Decision { XtoY, YtoX, NoDecision };

std::string_view to_string(Decision d);
Decision parse_decision(std::string_view text);

struct DiscoveryVerdict {
    Decision decision = Decision::NoDecision;
    double d_xy = 0.0;
    double d_yx = 0.0;
    std::optional<double> pns_xy;
    std::optional<double> pns_yx;
    bool used_monotone_path = false;
    double epsilon = 0.0;

    friend bool operator==(const DiscoveryVerdict&, const DiscoveryVerdict&) = default;
};

/// min(D_inc, D_dec) <= D_plain + epsilon on binary cause-first inputs.
bool monotone_preferred(const EmpiricalInputs& inputs, ErrorMode mode = ErrorMode::Local, double epsilon = 0.01);

/// Decides the direction from already-built inputs: `forward` is oriented
/// X-first, `reverse` Y-first.
DiscoveryVerdict discover_from_inputs(const EmpiricalInputs& forward, const EmpiricalInputs& reverse,
                                      const DiscoveryConfig& config = {});

/// Full pipeline on two aligned category columns.
DiscoveryVerdict discover(std::span<const int> xs, std::span<const int> ys, std::size_t b_x, std::size_t b_y,
                          const DiscoveryConfig& config = {});

} // namespace iacm
