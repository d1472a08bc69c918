#include "iacm/causation.hpp"

#include <vector>

#include "iacm/errors.hpp"

namespace iacm {

namespace {

// Observational and interventional quantities of a binary cause-first joint.
struct BinaryView {
    double joint[2][2] = {};   // P(X = x, Y = y)
    double do_y1[2] = {};      // P^{do(x = a)}(Y = 1)
    double p_y1 = 0.0;         // P(Y = 1)

    explicit BinaryView(const DiscreteDistribution& p) {
        if (p.shape().sizes() != std::vector<std::size_t>{2, 2, 2, 2}) {
            throw ContractViolation("probabilities of causation need a distribution over [2,2,2,2]");
        }
        for (std::size_t f = 0; f < 16; ++f) {
            const std::size_t x = (f >> 3) & 1;
            const std::size_t y = (f >> 2) & 1;
            joint[x][y] += p[f];
            if ((f >> 1) & 1) do_y1[0] += p[f];
            if (f & 1) do_y1[1] += p[f];
        }
        p_y1 = joint[0][1] + joint[1][1];
    }
};

std::optional<double> ratio(double num, double den) {
    if (den <= 0.0) return std::nullopt;
    return num / den;
}

} // namespace

std::string_view to_string(Direction d) { return d == Direction::XtoY ? "x->y" : "y->x"; }

std::string_view to_string(MonotoneKind k) { return k == MonotoneKind::Increasing ? "increasing" : "decreasing"; }

CausalProbabilities probabilities_increasing(const DiscreteDistribution& p_tilde) {
    const BinaryView v(p_tilde);
    CausalProbabilities out;
    out.pn = ratio(v.p_y1 - v.do_y1[0], v.joint[1][1]);
    out.ps = ratio(v.do_y1[1] - v.p_y1, v.joint[0][0]);
    out.pns = v.do_y1[1] - v.do_y1[0];
    return out;
}

CausalProbabilities probabilities_decreasing(const DiscreteDistribution& p_tilde) {
    const BinaryView v(p_tilde);
    const double p_y0 = 1.0 - v.p_y1;
    const double do1_y0 = 1.0 - v.do_y1[1];
    const double do0_y0 = 1.0 - v.do_y1[0];
    CausalProbabilities out;
    out.pn = ratio(do1_y0 - p_y0, v.joint[0][1]);
    out.ps = ratio(p_y0 - do0_y0, v.joint[1][0]);
    out.pns = v.do_y1[0] - v.do_y1[1];
    return out;
}

CausationReport calc_causal_probabilities(const EmpiricalInputs& inputs, ErrorMode mode, Direction assumed) {
    inputs.validate();
    if (inputs.joint.shape().sizes() != std::vector<std::size_t>{2, 2}) {
        throw UnsupportedModel("probabilities of causation are defined for binary X and Y only");
    }
    const ApproximationResult inc = iacm(inputs, {ModelVariant::XtoYMonoInc, 2, 2}, mode);
    const ApproximationResult dec = iacm(inputs, {ModelVariant::XtoYMonoDec, 2, 2}, mode);
    if (inc.degenerate() && dec.degenerate()) {
        throw DegenerateModel("no monotone model fits the data");
    }

    CausationReport report;
    report.direction_assumed = assumed;
    report.error_mode = mode;
    report.error_increasing = inc.error();
    report.error_decreasing = dec.error();
    if (!inc.degenerate() && report.error_increasing <= report.error_decreasing) {
        report.monotone_kind = MonotoneKind::Increasing;
        report.probabilities = probabilities_increasing(*inc.p_tilde);
    } else {
        report.monotone_kind = MonotoneKind::Decreasing;
        report.probabilities = probabilities_decreasing(require_projection(dec));
    }
    return report;
}

} // namespace iacm
