#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "iacm/approximation.hpp"
#include "iacm/causation.hpp"
#include "iacm/discovery.hpp"
#include "iacm/models.hpp"
#include "iacm/synthgen.hpp"

namespace iacm {

/// Printable form of an approximation run; plain data so that it survives a
/// JSON round trip bit for bit.
struct ApproxReport {
    std::string model;
    ErrorMode error_mode = ErrorMode::Local;
    std::vector<std::size_t> shape;
    double s_value = 0.0;
    double support_mass = 0.0;
    double global_error = 0.0;
    double local_error = 0.0;
    bool degenerate = false;
    std::vector<std::string> fallback_blocks;
    std::vector<double> p_hat;
    std::optional<std::vector<double>> p_tilde;

    double error() const { return error_mode == ErrorMode::Global ? global_error : local_error; }

    friend bool operator==(const ApproxReport&, const ApproxReport&) = default;
};

ApproxReport make_approx_report(const CausalModelSpec& spec, const ApproximationResult& result,
                                std::vector<std::string> fallback_blocks = {});

// nlohmann::json hooks. Infinite errors are written as null.
void to_json(nlohmann::json& j, const DiscoveryVerdict& v);
void from_json(const nlohmann::json& j, DiscoveryVerdict& v);
void to_json(nlohmann::json& j, const CausationReport& r);
void from_json(const nlohmann::json& j, CausationReport& r);
void to_json(nlohmann::json& j, const ApproxReport& r);
void from_json(const nlohmann::json& j, ApproxReport& r);
void to_json(nlohmann::json& j, const BenchmarkReport& r);
void from_json(const nlohmann::json& j, BenchmarkReport& r);

/// Key/value listings with 6 significant digits.
std::string render_text(const DiscoveryVerdict& v);
std::string render_text(const CausationReport& r);
std::string render_text(const ApproxReport& r);

std::string format_number(double v);

} // namespace iacm
