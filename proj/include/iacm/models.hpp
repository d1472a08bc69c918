#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "iacm/distribution.hpp"

namespace iacm {

enum class ModelVariant {
    XtoY,
    YtoX,
    XtoYMonoInc,
    XtoYMonoDec,
    YtoXMonoInc,
    YtoXMonoDec,
    AnmObjective,  // S1..S4, selected by CausalModelSpec::anm_objective
    ZConfounder,
    ZConfounderHidden,
    ZChain,
    ZChainHidden,
    ZCollider,
    ZColliderHidden,
};

struct CausalModelSpec {
    ModelVariant variant = ModelVariant::XtoY;
    std::size_t b_x = 2;
    std::size_t b_y = 2;
    std::size_t b_z = 2;  // trivariate variants only
    int anm_objective = 0;  // 1..4 for AnmObjective

    // Throws UnsupportedModel for invalid (variant, range) combinations.
    void validate() const;
};

bool is_bivariate(ModelVariant v);
bool is_trivariate(ModelVariant v);
bool is_reverse(ModelVariant v);  // the cause axis is Y

// Stable CLI-facing names: "x_to_y", "anm_s3", "z_chain_hidden", ...
std::string variant_name(const CausalModelSpec& spec);
CausalModelSpec parse_variant(std::string_view name, std::size_t b_x, std::size_t b_y, std::size_t b_z = 2);

struct Axis {
    std::string name;
    std::size_t size = 0;
};

/// A block of axes whose joint is pinned by one empirical distribution.
struct ConstraintBlock {
    std::string label;
    std::vector<std::size_t> axes;
};

/// Variables V of a model and how the empirical data constrains them.
///
/// Bivariate layouts are cause-first: (cause, effect, effect|do(cause=0), ...).
/// For Y->X variants the cause is Y, so the layout has sizes
/// [b_y, b_x, b_x, ..., b_x] and expects inputs built from column-swapped data.
struct ModelLayout {
    std::vector<Axis> axes;
    Shape shape;
    ConstraintBlock observed;
    std::vector<ConstraintBlock> environments;
};

ModelLayout model_layout(const CausalModelSpec& spec);

struct SupportSet {
    ModelLayout layout;
    Shape shape;
    std::vector<bool> member;
    std::vector<double> objective_coeffs;

    std::size_t member_count() const;
};

SupportSet build_support(const CausalModelSpec& spec);
std::vector<double> build_objective(const CausalModelSpec& spec);

/// Relabeling recipe that lets the X->Y machinery evaluate Y->X: exchange the
/// two columns of every row.
std::vector<Sample> swap_roles(std::span<const Sample> rows);

} // namespace iacm
