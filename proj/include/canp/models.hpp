#pragma once

#include <string_view>

#include "canp/operator_algebra.hpp"
#include "canp/protocol.hpp"

namespace canp::models {

enum class Variant { QrmFrequency, QrmDisplacement, LmgFrequency };

std::string_view to_string(Variant v);
/// Accepts "qrm-frequency", "qrm-displacement", "lmg-frequency". Throws ConfigError.
Variant parse_variant(std::string_view name);

/// Parameters of the shipped critical models. Only the fields of the chosen
/// variant are read: (omega, g) for the Rabi presets, (lambda, gamma) for LMG.
struct ModelParams {
  Variant variant = Variant::QrmFrequency;
  double omega = 1.0;
  double g = 0.0;
  double lambda = 0.0;
  double gamma = 2.0;

  /// Value of the variant's control parameter (g or lambda).
  [[nodiscard]] double control() const { return variant == Variant::LmgFrequency ? lambda : g; }
  [[nodiscard]] ModelParams with_control(double x) const;
};

/// Normal-phase effective Rabi Hamiltonian
///   omega a^dag a - (omega g^2 / 4)(a^dag + a)^2
/// with the qubit constant -omega_0/2 dropped. Throws OutOfPhase unless 0 <= g < 1.
QuadraticOperator qrm_effective(double omega, double g);

/// Bosonised LMG Hamiltonian 2 lambda a^dag a + [gamma (a^dag - a)^2 - (a + a^dag)^2]/2.
/// Throws OutOfPhase unless 0 <= lambda < 1 and (gamma - lambda)(1 - lambda) > 0.
/// The low-excitation condition <a^dag a> << N has no N here and is not enforced.
QuadraticOperator lmg_effective(double lambda, double gamma);

/// a^dag a
QuadraticOperator encoding_frequency();
/// (a^dag + a)/sqrt(2)
QuadraticOperator encoding_displacement();

QuadraticOperator critical_hamiltonian(const ModelParams& p);
QuadraticOperator encoding(const ModelParams& p);

/// Closed-form critical parameter: 4 w^2 (1-g^2), w^2 (1-g^2) or 16 (gamma-lambda)(1-lambda).
double delta_closed_form(const ModelParams& p);

/// Published operators, kept as regression constants for the derived structure.
QuadraticOperator qrm_published_C(double omega, double g);
QuadraticOperator qrm_published_D(double omega, double g);
QuadraticOperator lmg_published_D(double lambda, double gamma);

/// Protocol for the model with t_c = pi / sqrt(Delta).
ProtocolSpec protocol_at_half_period(const ModelParams& p, double t_theta, cplx alpha, double theta0 = 0.0);
ProtocolSpec make_protocol(const ModelParams& p, double t_c, double t_theta, cplx alpha, double theta0 = 0.0);

}  // namespace canp::models
