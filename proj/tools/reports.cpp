#include "reports.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace iacm {

using nlohmann::json;

namespace {

json extended(double v) {
    if (std::isinf(v) && v > 0) return nullptr;
    return v;
}

double read_extended(const json& j) {
    return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> read_optional(const json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<double>();
}

Direction parse_direction(const std::string& s) {
    if (s == "x->y") return Direction::XtoY;
    if (s == "y->x") return Direction::YtoX;
    throw std::invalid_argument("unknown direction '" + s + "'");
}

MonotoneKind parse_monotone_kind(const std::string& s) {
    if (s == "increasing") return MonotoneKind::Increasing;
    if (s == "decreasing") return MonotoneKind::Decreasing;
    throw std::invalid_argument("unknown monotone kind '" + s + "'");
}

std::string text_optional(const std::optional<double>& v) { return v ? format_number(*v) : "undefined"; }

void line(std::string& out, const std::string& key, const std::string& value) {
    out += key;
    out += std::string(key.size() < 20 ? 20 - key.size() : 1, ' ');
    out += value;
    out += '\n';
}

} // namespace

std::string format_number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

ApproxReport make_approx_report(const CausalModelSpec& spec, const ApproximationResult& result,
                                std::vector<std::string> fallback_blocks) {
    ApproxReport r;
    r.model = variant_name(spec);
    r.error_mode = result.mode;
    r.shape = result.p_hat.shape().sizes();
    r.s_value = result.s_value;
    r.support_mass = result.support_mass;
    r.global_error = result.global_error;
    r.local_error = result.local_error;
    r.degenerate = result.degenerate();
    r.fallback_blocks = std::move(fallback_blocks);
    r.p_hat.assign(result.p_hat.mass().begin(), result.p_hat.mass().end());
    if (result.p_tilde) r.p_tilde = std::vector<double>(result.p_tilde->mass().begin(), result.p_tilde->mass().end());
    return r;
}

void to_json(json& j, const DiscoveryVerdict& v) {
    j = json{{"decision", std::string(to_string(v.decision))},
             {"d_xy", extended(v.d_xy)},
             {"d_yx", extended(v.d_yx)},
             {"epsilon", v.epsilon},
             {"pns_xy", optional_number(v.pns_xy)},
             {"pns_yx", optional_number(v.pns_yx)},
             {"used_monotone_path", v.used_monotone_path}};
}

void from_json(const json& j, DiscoveryVerdict& v) {
    v.decision = parse_decision(j.at("decision").get<std::string>());
    v.d_xy = read_extended(j.at("d_xy"));
    v.d_yx = read_extended(j.at("d_yx"));
    v.epsilon = j.at("epsilon").get<double>();
    v.pns_xy = read_optional(j.at("pns_xy"));
    v.pns_yx = read_optional(j.at("pns_yx"));
    v.used_monotone_path = j.at("used_monotone_path").get<bool>();
}

void to_json(json& j, const CausationReport& r) {
    j = json{{"direction_assumed", std::string(to_string(r.direction_assumed))},
             {"monotone_kind", std::string(to_string(r.monotone_kind))},
             {"pn", optional_number(r.probabilities.pn)},
             {"ps", optional_number(r.probabilities.ps)},
             {"pns", r.probabilities.pns},
             {"error_increasing", extended(r.error_increasing)},
             {"error_decreasing", extended(r.error_decreasing)},
             {"error_mode", std::string(to_string(r.error_mode))}};
}

void from_json(const json& j, CausationReport& r) {
    r.direction_assumed = parse_direction(j.at("direction_assumed").get<std::string>());
    r.monotone_kind = parse_monotone_kind(j.at("monotone_kind").get<std::string>());
    r.probabilities.pn = read_optional(j.at("pn"));
    r.probabilities.ps = read_optional(j.at("ps"));
    r.probabilities.pns = j.at("pns").get<double>();
    r.error_increasing = read_extended(j.at("error_increasing"));
    r.error_decreasing = read_extended(j.at("error_decreasing"));
    r.error_mode = parse_error_mode(j.at("error_mode").get<std::string>());
}

void to_json(json& j, const ApproxReport& r) {
    j = json{{"model", r.model},
             {"error_mode", std::string(to_string(r.error_mode))},
             {"shape", r.shape},
             {"s_value", r.s_value},
             {"support_mass", r.support_mass},
             {"global_error", extended(r.global_error)},
             {"local_error", extended(r.local_error)},
             {"error", extended(r.error())},
             {"degenerate", r.degenerate},
             {"fallback_blocks", r.fallback_blocks},
             {"p_hat", r.p_hat},
             {"p_tilde", r.p_tilde ? json(*r.p_tilde) : json(nullptr)}};
}

void from_json(const json& j, ApproxReport& r) {
    r.model = j.at("model").get<std::string>();
    r.error_mode = parse_error_mode(j.at("error_mode").get<std::string>());
    r.shape = j.at("shape").get<std::vector<std::size_t>>();
    r.s_value = j.at("s_value").get<double>();
    r.support_mass = j.at("support_mass").get<double>();
    r.global_error = read_extended(j.at("global_error"));
    r.local_error = read_extended(j.at("local_error"));
    r.degenerate = j.at("degenerate").get<bool>();
    r.fallback_blocks = j.at("fallback_blocks").get<std::vector<std::string>>();
    r.p_hat = j.at("p_hat").get<std::vector<double>>();
    const json& tilde = j.at("p_tilde");
    r.p_tilde = tilde.is_null() ? std::nullopt : std::optional(tilde.get<std::vector<double>>());
}

void to_json(json& j, const BenchmarkReport& r) {
    json rows = json::array();
    for (const BenchmarkRow& row : r.rows) {
        rows.push_back({{"b_x", row.range.b_x},
                        {"b_y", row.range.b_y},
                        {"noise", std::string(to_string(row.range.noise_kind))},
                        {"correct", row.correct},
                        {"wrong", row.wrong},
                        {"none", row.no_decision},
                        {"total", row.total()},
                        {"correct_pct", row.percent(row.correct)},
                        {"wrong_pct", row.percent(row.wrong)},
                        {"none_pct", row.percent(row.no_decision)}});
    }
    j = json{{"method", r.method}, {"n_models", r.n_models}, {"n_samples", r.n_samples}, {"seed", r.seed},
             {"rows", rows}};
}

void from_json(const json& j, BenchmarkReport& r) {
    r.method = j.at("method").get<std::string>();
    r.n_models = j.at("n_models").get<std::size_t>();
    r.n_samples = j.at("n_samples").get<std::size_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.rows.clear();
    for (const json& row : j.at("rows")) {
        BenchmarkRow b;
        b.range.b_x = row.at("b_x").get<std::size_t>();
        b.range.b_y = row.at("b_y").get<std::size_t>();
        b.range.noise_kind = parse_noise_kind(row.at("noise").get<std::string>());
        b.correct = row.at("correct").get<std::size_t>();
        b.wrong = row.at("wrong").get<std::size_t>();
        b.no_decision = row.at("none").get<std::size_t>();
        r.rows.push_back(b);
    }
}

std::string render_text(const DiscoveryVerdict& v) {
    std::string out;
    line(out, "decision", std::string(to_string(v.decision)));
    line(out, "d_xy", format_number(v.d_xy));
    line(out, "d_yx", format_number(v.d_yx));
    line(out, "epsilon", format_number(v.epsilon));
    line(out, "pns_xy", text_optional(v.pns_xy));
    line(out, "pns_yx", text_optional(v.pns_yx));
    line(out, "used_monotone_path", v.used_monotone_path ? "true" : "false");
    return out;
}

std::string render_text(const CausationReport& r) {
    std::string out;
    line(out, "direction_assumed", std::string(to_string(r.direction_assumed)));
    line(out, "monotone_kind", std::string(to_string(r.monotone_kind)));
    line(out, "pn", text_optional(r.probabilities.pn));
    line(out, "ps", text_optional(r.probabilities.ps));
    line(out, "pns", format_number(r.probabilities.pns));
    line(out, "error_increasing", format_number(r.error_increasing));
    line(out, "error_decreasing", format_number(r.error_decreasing));
    line(out, "error_mode", std::string(to_string(r.error_mode)));
    return out;
}

std::string render_text(const ApproxReport& r) {
    std::string out;
    std::string shape;
    for (std::size_t s : r.shape) shape += (shape.empty() ? "" : "x") + std::to_string(s);
    line(out, "model", r.model);
    line(out, "shape", shape);
    line(out, "s_value", format_number(r.s_value));
    line(out, "support_mass", format_number(r.support_mass));
    line(out, "global_error", format_number(r.global_error));
    line(out, "local_error", format_number(r.local_error));
    line(out, "error_mode", std::string(to_string(r.error_mode)));
    line(out, "degenerate", r.degenerate ? "true" : "false");
    if (!r.fallback_blocks.empty()) {
        std::string blocks;
        for (const std::string& b : r.fallback_blocks) blocks += (blocks.empty() ? "" : ", ") + b;
        line(out, "uniform_fallback", blocks);
    }
    return out;
}

} // namespace iacm
