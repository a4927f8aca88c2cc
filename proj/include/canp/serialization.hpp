#pragma once

#include <json.hpp>

#include "canp/metrology.hpp"
#include "canp/models.hpp"
#include "canp/operator_algebra.hpp"

/// {"re": x, "im": y}; a bare number is accepted as a real value on input.
template <>
struct nlohmann::adl_serializer<std::complex<double>> {
  static void to_json(json& j, const std::complex<double>& z);
  static void from_json(const json& j, std::complex<double>& z);
};

namespace canp {

/// Six complex pairs keyed "n", "aa", "adad", "a", "ad", "one". Missing keys read as zero.
void to_json(nlohmann::json& j, const QuadraticOperator& op);
void from_json(const nlohmann::json& j, QuadraticOperator& op);

void to_json(nlohmann::json& j, const MetrologyReport& r);

namespace models {
void to_json(nlohmann::json& j, const ModelParams& p);
/// {"variant": "qrm-frequency", "omega": 1.0, "g": 0.96, "lambda": ..., "gamma": ...}
void from_json(const nlohmann::json& j, ModelParams& p);
}  // namespace models

}  // namespace canp
