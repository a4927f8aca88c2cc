#include "canp/serialization.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "canp/errors.hpp"

void nlohmann::adl_serializer<std::complex<double>>::to_json(json& j, const std::complex<double>& z) {
  j = {{"re", z.real()}, {"im", z.imag()}};
}

void nlohmann::adl_serializer<std::complex<double>>::from_json(const json& j, std::complex<double>& z) {
  if (j.is_number()) {
    z = {j.get<double>(), 0.0};
    return;
  }
  if (!j.is_object()) throw canp::ConfigError("complex value must be a number or {\"re\", \"im\"}");
  z = {j.value("re", 0.0), j.value("im", 0.0)};
}

namespace canp {

namespace {
constexpr std::array<const char*, QuadraticOperator::kDim> kKeys{"n", "aa", "adad", "a", "ad", "one"};
}

void to_json(nlohmann::json& j, const QuadraticOperator& op) {
  j = nlohmann::json::object();
  const auto c = op.coefficients();
  for (std::size_t k = 0; k < c.size(); ++k) j[kKeys[k]] = c[k];
}

void from_json(const nlohmann::json& j, QuadraticOperator& op) {
  if (!j.is_object()) throw ConfigError("operator must be a JSON object");
  std::array<cplx, QuadraticOperator::kDim> c{};
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (j.contains(kKeys[k])) c[k] = j.at(kKeys[k]).get<cplx>();
  }
  for (const auto& [key, value] : j.items()) {
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
      throw ConfigError("unknown operator term '" + key + "'");
    }
  }
  op = QuadraticOperator::from_coefficients(c);
}

void to_json(nlohmann::json& j, const MetrologyReport& r) {
  j = {{"qfi_exact", r.qfi_exact},     {"qfi_asymptotic", r.qfi_asymptotic},
       {"qfi_direct_baseline", r.qfi_direct_baseline},
       {"ratio", r.ratio},             {"skew", r.skew},
       {"cfi_homodyne", r.cfi_homodyne}, {"meanP", r.meanP},
       {"varP", r.varP},               {"final_mean_photon", r.final_mean_photon}};
}

namespace models {

void to_json(nlohmann::json& j, const ModelParams& p) {
  j = {{"variant", std::string(to_string(p.variant))},
       {"omega", p.omega},
       {"g", p.g},
       {"lambda", p.lambda},
       {"gamma", p.gamma}};
}

void from_json(const nlohmann::json& j, ModelParams& p) {
  if (!j.is_object()) throw ConfigError("model must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key != "variant" && key != "omega" && key != "g" && key != "lambda" && key != "gamma") {
      throw ConfigError("unknown config key 'model." + key + "'");
    }
  }
  try {
    p.variant = parse_variant(j.at("variant").get<std::string>());
    p.omega = j.value("omega", 1.0);
    p.g = j.value("g", 0.0);
    p.lambda = j.value("lambda", 0.0);
    p.gamma = j.value("gamma", 2.0);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("model: ") + e.what());
  }
}

}  // namespace models

}  // namespace canp
