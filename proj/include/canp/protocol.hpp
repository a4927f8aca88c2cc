#pragma once

#include "canp/operator_algebra.hpp"

namespace canp {

/// One instance of the preparation-then-encoding protocol
///   |psi(theta)> = exp(-i theta t_theta Htheta) exp(-i t_c Hc) |alpha>.
struct ProtocolSpec {
  QuadraticOperator Hc;
  QuadraticOperator Htheta;
  double t_c = 0.0;
  double t_theta = 0.0;
  cplx alpha{};
  double theta0 = 0.0;
  double omega = 1.0;

  [[nodiscard]] double total_time() const { return t_c + t_theta; }
};

/// Throws ConfigError on negative durations or T = 0, NotHermitian on non-Hermitian Hamiltonians.
void validate(const ProtocolSpec& spec);

}  // namespace canp
