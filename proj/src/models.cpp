#include "iacm/models.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <string>

#include "iacm/errors.hpp"

namespace iacm {

namespace {

// Dense spaces beyond this are rejected instead of allocated.
constexpr std::size_t kMaxCells = std::size_t{1} << 22;

std::size_t checked_cells(const std::vector<std::size_t>& sizes) {
    std::size_t cells = 1;
    for (std::size_t s : sizes) {
        if (cells > kMaxCells / s) {
            throw UnsupportedModel("model space exceeds " + std::to_string(kMaxCells) + " cells");
        }
        cells *= s;
    }
    return cells;
}

std::string do_label(const std::string& var, const std::string& cause, std::size_t value) {
    return var + "|do(" + cause + "=" + std::to_string(value) + ")";
}

ModelLayout bivariate_layout(std::size_t b_cause, std::size_t b_effect, bool reverse) {
    const std::string cause = reverse ? "Y" : "X";
    const std::string effect = reverse ? "X" : "Y";
    ModelLayout layout;
    layout.axes.push_back({cause, b_cause});
    layout.axes.push_back({effect, b_effect});
    for (std::size_t a = 0; a < b_cause; ++a) {
        layout.axes.push_back({do_label(effect, cause, a), b_effect});
        layout.environments.push_back({"do(" + cause + "=" + std::to_string(a) + ")", {2 + a}});
    }
    layout.observed = {"observational", {0, 1}};
    return layout;
}

ModelLayout trivariate_layout(ModelVariant v, std::size_t bx, std::size_t by, std::size_t bz) {
    const bool hidden = v == ModelVariant::ZConfounderHidden || v == ModelVariant::ZChainHidden ||
                        v == ModelVariant::ZColliderHidden;
    ModelLayout layout;
    layout.axes.push_back({"X", bx});
    layout.axes.push_back({"Y", by});
    if (!hidden) layout.axes.push_back({"Z", bz});
    layout.observed = {"observational", hidden ? std::vector<std::size_t>{0, 1} : std::vector<std::size_t>{0, 1, 2}};

    auto add_env = [&](std::string label, std::vector<Axis> axes) {
        ConstraintBlock block{std::move(label), {}};
        for (Axis& axis : axes) {
            block.axes.push_back(layout.axes.size());
            layout.axes.push_back(std::move(axis));
        }
        layout.environments.push_back(std::move(block));
    };
    auto env_name = [](const std::string& cause, std::size_t value) {
        return "do(" + cause + "=" + std::to_string(value) + ")";
    };

    switch (v) {
        case ModelVariant::ZConfounder:
        case ModelVariant::ZConfounderHidden:
            for (std::size_t a = 0; a < bz; ++a) {
                add_env(env_name("Z", a), {{do_label("X", "Z", a), bx}, {do_label("Y", "Z", a), by}});
            }
            break;
        case ModelVariant::ZChain:
        case ModelVariant::ZChainHidden:
            for (std::size_t a = 0; a < bz; ++a) add_env(env_name("Z", a), {{do_label("X", "Z", a), bx}});
            for (std::size_t b = 0; b < bx; ++b) add_env(env_name("X", b), {{do_label("Y", "X", b), by}});
            break;
        case ModelVariant::ZCollider:
        case ModelVariant::ZColliderHidden:
            for (std::size_t a = 0; a < bz; ++a) add_env(env_name("Z", a), {{do_label("Y", "Z", a), by}});
            for (std::size_t b = 0; b < bx; ++b) add_env(env_name("X", b), {{do_label("Y", "X", b), by}});
            break;
        default:
            throw UnsupportedModel("not a trivariate variant");
    }
    return layout;
}

// Coefficients of S1..S4 over the binary cells xyy0y1 (flat index = bit string).
constexpr std::array<std::array<double, 16>, 4> kAnmCoefficients = {{
    //  0000 0001 0010 0011 0100 0101 0110 0111 1000 1001 1010 1011 1100 1101 1110 1111
    {{2, 2, 0, 0, 0, 0, 1, 1, 1, 0, 1, 0, 0, 0, 0, 0}},
    {{0, 0, 0, 0, 0, 0, 1, 1, 1, 0, 1, 0, 0, 2, 0, 2}},
    {{1, 1, 0, 0, 0, 0, 2, 2, 0, 0, 0, 0, 0, 1, 0, 1}},
    {{1, 1, 0, 0, 0, 0, 0, 0, 2, 0, 2, 0, 0, 1, 0, 1}},
}};

using Coords = std::vector<std::size_t>;

// Cell predicate for the plain invariance support: the interventional copy at
// the observed cause value must agree with the observed effect.
bool invariance_member(const Coords& c) { return c[2 + c[0]] == c[1]; }

// The zero patterns below are the trivariate characterizations; a cell is in
// the support iff it matches none of them.
bool confounder_zero(std::size_t x, std::size_t y, std::size_t xa, std::size_t ya) {
    return (xa != x && ya == y) || (xa == x && ya != y);
}

bool collider_zero(std::size_t y, std::size_t ya, std::size_t yb) {
    return (ya == y && yb != y) || (ya != y && yb == y) || (ya != y && yb != y && ya == yb);
}

std::function<bool(const Coords&)> trivariate_predicate(ModelVariant v, std::size_t bz) {
    switch (v) {
        case ModelVariant::ZConfounder:
            return [](const Coords& c) {
                const std::size_t a = c[2];
                return !confounder_zero(c[0], c[1], c[3 + 2 * a], c[4 + 2 * a]);
            };
        case ModelVariant::ZConfounderHidden:
            return [bz](const Coords& c) {
                for (std::size_t a = 0; a < bz; ++a) {
                    if (confounder_zero(c[0], c[1], c[2 + 2 * a], c[3 + 2 * a])) return false;
                }
                return true;
            };
        case ModelVariant::ZChain:
            return [bz](const Coords& c) {
                const std::size_t x = c[0];
                const std::size_t xa = c[3 + c[2]];
                const std::size_t yx = c[3 + bz + x];
                return !confounder_zero(x, c[1], xa, yx);
            };
        case ModelVariant::ZChainHidden:
            return [bz](const Coords& c) {
                const std::size_t x = c[0];
                const std::size_t yx = c[2 + bz + x];
                for (std::size_t a = 0; a < bz; ++a) {
                    if (confounder_zero(x, c[1], c[2 + a], yx)) return false;
                }
                return true;
            };
        case ModelVariant::ZCollider:
            return [bz](const Coords& c) {
                return !collider_zero(c[1], c[3 + c[2]], c[3 + bz + c[0]]);
            };
        case ModelVariant::ZColliderHidden:
            return [bz](const Coords& c) {
                const std::size_t yb = c[2 + bz + c[0]];
                for (std::size_t a = 0; a < bz; ++a) {
                    if (collider_zero(c[1], c[2 + a], yb)) return false;
                }
                return true;
            };
        default:
            break;
    }
    throw UnsupportedModel("not a trivariate variant");
}

} // namespace

bool is_bivariate(ModelVariant v) { return !is_trivariate(v); }

bool is_trivariate(ModelVariant v) {
    switch (v) {
        case ModelVariant::ZConfounder:
        case ModelVariant::ZConfounderHidden:
        case ModelVariant::ZChain:
        case ModelVariant::ZChainHidden:
        case ModelVariant::ZCollider:
        case ModelVariant::ZColliderHidden:
            return true;
        default:
            return false;
    }
}

bool is_reverse(ModelVariant v) {
    return v == ModelVariant::YtoX || v == ModelVariant::YtoXMonoInc || v == ModelVariant::YtoXMonoDec;
}

void CausalModelSpec::validate() const {
    if (b_x < 2 || b_y < 2) {
        throw UnsupportedModel("range sizes must be at least 2");
    }
    switch (variant) {
        case ModelVariant::XtoYMonoInc:
        case ModelVariant::XtoYMonoDec:
        case ModelVariant::YtoXMonoInc:
        case ModelVariant::YtoXMonoDec:
            if (b_x != 2 || b_y != 2) throw UnsupportedModel("monotone models require binary X and Y");
            break;
        case ModelVariant::AnmObjective:
            if (b_x != 2 || b_y != 2) throw UnsupportedModel("ANM objectives require binary X and Y");
            if (anm_objective < 1 || anm_objective > 4) throw UnsupportedModel("ANM objective index must be 1..4");
            break;
        default:
            if (is_trivariate(variant) && b_z < 2) throw UnsupportedModel("range of Z must be at least 2");
            break;
    }
}

std::string variant_name(const CausalModelSpec& spec) {
    switch (spec.variant) {
        case ModelVariant::XtoY: return "x_to_y";
        case ModelVariant::YtoX: return "y_to_x";
        case ModelVariant::XtoYMonoInc: return "x_to_y_mono_inc";
        case ModelVariant::XtoYMonoDec: return "x_to_y_mono_dec";
        case ModelVariant::YtoXMonoInc: return "y_to_x_mono_inc";
        case ModelVariant::YtoXMonoDec: return "y_to_x_mono_dec";
        case ModelVariant::AnmObjective: return "anm_s" + std::to_string(spec.anm_objective);
        case ModelVariant::ZConfounder: return "z_confounder";
        case ModelVariant::ZConfounderHidden: return "z_confounder_hidden";
        case ModelVariant::ZChain: return "z_chain";
        case ModelVariant::ZChainHidden: return "z_chain_hidden";
        case ModelVariant::ZCollider: return "z_collider";
        case ModelVariant::ZColliderHidden: return "z_collider_hidden";
    }
    return "unknown";
}

CausalModelSpec parse_variant(std::string_view name, std::size_t b_x, std::size_t b_y, std::size_t b_z) {
    static const std::array<std::pair<std::string_view, ModelVariant>, 12> kNames = {{
        {"x_to_y", ModelVariant::XtoY},
        {"y_to_x", ModelVariant::YtoX},
        {"x_to_y_mono_inc", ModelVariant::XtoYMonoInc},
        {"x_to_y_mono_dec", ModelVariant::XtoYMonoDec},
        {"y_to_x_mono_inc", ModelVariant::YtoXMonoInc},
        {"y_to_x_mono_dec", ModelVariant::YtoXMonoDec},
        {"z_confounder", ModelVariant::ZConfounder},
        {"z_confounder_hidden", ModelVariant::ZConfounderHidden},
        {"z_chain", ModelVariant::ZChain},
        {"z_chain_hidden", ModelVariant::ZChainHidden},
        {"z_collider", ModelVariant::ZCollider},
        {"z_collider_hidden", ModelVariant::ZColliderHidden},
    }};
    CausalModelSpec spec{ModelVariant::XtoY, b_x, b_y, b_z, 0};
    if (name.size() == 6 && name.substr(0, 5) == "anm_s" && name[5] >= '1' && name[5] <= '4') {
        spec.variant = ModelVariant::AnmObjective;
        spec.anm_objective = name[5] - '0';
        return spec;
    }
    for (const auto& [key, variant] : kNames) {
        if (key == name) {
            spec.variant = variant;
            return spec;
        }
    }
    throw UnsupportedModel("unknown model '" + std::string(name) + "'");
}

ModelLayout model_layout(const CausalModelSpec& spec) {
    spec.validate();
    ModelLayout layout = is_trivariate(spec.variant)
                             ? trivariate_layout(spec.variant, spec.b_x, spec.b_y, spec.b_z)
                         : is_reverse(spec.variant) ? bivariate_layout(spec.b_y, spec.b_x, true)
                                                    : bivariate_layout(spec.b_x, spec.b_y, false);
    std::vector<std::size_t> sizes;
    for (const Axis& axis : layout.axes) sizes.push_back(axis.size);
    checked_cells(sizes);
    layout.shape = Shape(sizes);
    return layout;
}

std::size_t SupportSet::member_count() const {
    return static_cast<std::size_t>(std::count(member.begin(), member.end(), true));
}

SupportSet build_support(const CausalModelSpec& spec) {
    SupportSet support;
    support.layout = model_layout(spec);
    support.shape = support.layout.shape;
    const std::size_t cells = support.shape.cells();
    support.member.assign(cells, false);
    support.objective_coeffs.assign(cells, 0.0);

    if (spec.variant == ModelVariant::AnmObjective) {
        const auto& coeffs = kAnmCoefficients[static_cast<std::size_t>(spec.anm_objective - 1)];
        for (std::size_t i = 0; i < cells; ++i) {
            support.objective_coeffs[i] = coeffs[i];
            support.member[i] = coeffs[i] > 0.0;
        }
        return support;
    }

    std::function<bool(const Coords&)> predicate;
    switch (spec.variant) {
        case ModelVariant::XtoY:
        case ModelVariant::YtoX:
            predicate = invariance_member;
            break;
        case ModelVariant::XtoYMonoInc:
        case ModelVariant::YtoXMonoInc:
            // Increasing: (y0, y1) = (1, 0) is impossible.
            predicate = [](const Coords& c) { return invariance_member(c) && !(c[2] == 1 && c[3] == 0); };
            break;
        case ModelVariant::XtoYMonoDec:
        case ModelVariant::YtoXMonoDec:
            predicate = [](const Coords& c) { return invariance_member(c) && !(c[2] == 0 && c[3] == 1); };
            break;
        default:
            predicate = trivariate_predicate(spec.variant, spec.b_z);
            break;
    }
    for (std::size_t i = 0; i < cells; ++i) {
        const bool in = predicate(support.shape.coords(i));
        support.member[i] = in;
        support.objective_coeffs[i] = in ? 1.0 : 0.0;
    }
    return support;
}

std::vector<double> build_objective(const CausalModelSpec& spec) { return build_support(spec).objective_coeffs; }

std::vector<Sample> swap_roles(std::span<const Sample> rows) {
    std::vector<Sample> out;
    out.reserve(rows.size());
    for (const Sample& s : rows) out.push_back({s.y, s.x});
    return out;
}

} // namespace iacm
