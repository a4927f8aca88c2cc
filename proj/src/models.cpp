#include "canp/models.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "canp/errors.hpp"

namespace canp::models {

namespace {
constexpr cplx kI{0.0, 1.0};
}

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::QrmFrequency:
      return "qrm-frequency";
    case Variant::QrmDisplacement:
      return "qrm-displacement";
    case Variant::LmgFrequency:
      return "lmg-frequency";
  }
  return "unknown";
}

Variant parse_variant(std::string_view name) {
  for (const Variant v : {Variant::QrmFrequency, Variant::QrmDisplacement, Variant::LmgFrequency}) {
    if (name == to_string(v)) return v;
  }
  throw ConfigError(fmt::format("unknown model variant '{}'", name));
}

ModelParams ModelParams::with_control(double x) const {
  ModelParams p = *this;
  (variant == Variant::LmgFrequency ? p.lambda : p.g) = x;
  return p;
}

QuadraticOperator qrm_effective(double omega, double g) {
  if (!(g >= 0.0 && g < 1.0)) throw OutOfPhase(fmt::format("qrm_effective: g = {} outside [0, 1)", g));
  if (!(omega > 0.0)) throw OutOfPhase(fmt::format("qrm_effective: omega = {} must be positive", omega));
  // (ad + a)^2 = a^2 + ad^2 + 2 ad a + 1
  const double q = omega * g * g / 4.0;
  return {.n = omega - 2.0 * q, .aa = -q, .adad = -q, .one = -q};
}

QuadraticOperator lmg_effective(double lambda, double gamma) {
  if (!(lambda >= 0.0 && lambda < 1.0) || !((gamma - lambda) * (1.0 - lambda) > 0.0)) {
    throw OutOfPhase(fmt::format("lmg_effective: (lambda, gamma) = ({}, {}) outside the normal phase", lambda, gamma));
  }
  // (ad - a)^2 = ad^2 + a^2 - 2 ad a - 1
  const double s = 0.5 * (gamma - 1.0);
  return {.n = 2.0 * lambda - (gamma + 1.0), .aa = s, .adad = s, .one = -0.5 * (gamma + 1.0)};
}

QuadraticOperator encoding_frequency() { return ops::number(); }

QuadraticOperator encoding_displacement() { return ops::position(); }

QuadraticOperator critical_hamiltonian(const ModelParams& p) {
  switch (p.variant) {
    case Variant::QrmFrequency:
    case Variant::QrmDisplacement:
      return qrm_effective(p.omega, p.g);
    case Variant::LmgFrequency:
      return lmg_effective(p.lambda, p.gamma);
  }
  throw ConfigError("critical_hamiltonian: bad variant");
}

QuadraticOperator encoding(const ModelParams& p) {
  return p.variant == Variant::QrmDisplacement ? encoding_displacement() : encoding_frequency();
}

double delta_closed_form(const ModelParams& p) {
  switch (p.variant) {
    case Variant::QrmFrequency:
      return 4.0 * p.omega * p.omega * (1.0 - p.g * p.g);
    case Variant::QrmDisplacement:
      return p.omega * p.omega * (1.0 - p.g * p.g);
    case Variant::LmgFrequency:
      return 16.0 * (p.gamma - p.lambda) * (1.0 - p.lambda);
  }
  throw ConfigError("delta_closed_form: bad variant");
}

QuadraticOperator qrm_published_C(double omega, double g) {
  const cplx c = kI * omega * g * g / 2.0;
  return {.aa = -c, .adad = c};
}

QuadraticOperator qrm_published_D(double omega, double g) {
  const double pre = g * g * omega * omega;
  const double sq = pre * (1.0 - g * g / 2.0);
  return {.n = -pre * g * g, .aa = sq, .adad = sq, .one = -pre * g * g / 2.0};
}

QuadraticOperator lmg_published_D(double lambda, double gamma) {
  const double pre = 2.0 * (gamma - 1.0);
  const double sq = pre * (1.0 + gamma - 2.0 * lambda);
  return {.n = 2.0 * pre * (1.0 - gamma), .aa = sq, .adad = sq, .one = pre * (1.0 - gamma)};
}

ProtocolSpec make_protocol(const ModelParams& p, double t_c, double t_theta, cplx alpha, double theta0) {
  return {.Hc = critical_hamiltonian(p),
          .Htheta = encoding(p),
          .t_c = t_c,
          .t_theta = t_theta,
          .alpha = alpha,
          .theta0 = theta0,
          .omega = p.variant == Variant::LmgFrequency ? 1.0 : p.omega};
}

ProtocolSpec protocol_at_half_period(const ModelParams& p, double t_theta, cplx alpha, double theta0) {
  const double delta = derive_critical_structure(critical_hamiltonian(p), encoding(p)).delta;
  return make_protocol(p, std::numbers::pi / std::sqrt(delta), t_theta, alpha, theta0);
}

}  // namespace canp::models
