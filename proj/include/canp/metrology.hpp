#pragma once

#include <functional>
#include <utility>

#include "canp/gaussian.hpp"
#include "canp/models.hpp"
#include "canp/operator_algebra.hpp"
#include "canp/protocol.hpp"

namespace canp {

inline constexpr double kDefaultDtheta = 1e-4;

/// Everything the protocol yields at one spec. Field names are the JSON keys.
struct MetrologyReport {
  double qfi_exact = 0.0;
  double qfi_asymptotic = 0.0;
  double qfi_direct_baseline = 0.0;
  double ratio = 0.0;
  double skew = 0.0;
  double cfi_homodyne = 0.0;
  double meanP = 0.0;
  double varP = 0.0;
  double final_mean_photon = 0.0;
};

/// Critical structure of (Hc, Htheta). A commuting pair yields C = D = 0,
/// which makes the generator collapse to t_theta Htheta.
CriticalStructure structure_of(const ProtocolSpec& spec);

/// exp(-i t_c Hc)|alpha>
GaussianState prepared_state(const ProtocolSpec& spec);
/// exp(-i theta t_theta Htheta) exp(-i t_c Hc)|alpha>
GaussianState encoded_state(const ProtocolSpec& spec, double theta);

/// 4 Var[h] on |alpha>, with h the closed-form generator.
double qfi_exact(const ProtocolSpec& spec);

/// Leading term 4 t_theta^2 [(cos(sqrt(Delta) t_c) - 1)/Delta]^2 Var[D] on |alpha>.
double qfi_asymptotic(const ProtocolSpec& spec);

/// QFI of direct encoding for the whole time T with an energy-matched coherent probe.
///
/// The matched probe |alpha0> keeps the phase of alpha and has |alpha0|^2 equal to
/// the mean photon number of the final protocol state at theta0. Returns
/// 4 T^2 Var[Htheta] on |alpha0>, i.e. 4 T^2 |alpha0|^2 for frequency encoding and
/// 4 T^2 / 2 for displacement encoding.
double direct_baseline(const ProtocolSpec& spec);

/// qfi_exact / direct_baseline. Throws VacuumProbe for |alpha| < 1e-12.
double enhancement_ratio(const ProtocolSpec& spec);

/// Wigner-Yanase skew information of Htheta in the prepared pure state, i.e. Var[Htheta].
double skew_information(const ProtocolSpec& spec);

/// Classical Fisher information of homodyne P detection,
///   (d<P>)^2 / Var P + (d Var P)^2 / (2 Var P^2),
/// with Richardson-refined central differences of step dtheta around theta0.
double cfi_homodyne(const ProtocolSpec& spec, double dtheta = kDefaultDtheta);

struct DisplacementQfi {
  double asymptotic;  // 4 t_p^2 omega^2 sin^2(sqrt(Delta_p) t_c)/Delta_p Var[P]
  double exact;       // generic generator-variance path
};
/// Requires Htheta = (a^dag + a)/sqrt(2).
DisplacementQfi qfi_displacement(const ProtocolSpec& spec);

MetrologyReport report(const ProtocolSpec& spec, double dtheta = kDefaultDtheta);

/// Root of f on [lo, hi] by bisection to absolute `tol`. Throws NoSignChange.
double bisect_root(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-9);

/// Model control parameter (g or lambda) where R at t_c = pi/sqrt(Delta) crosses 1.
/// `family` supplies the variant and the fixed parameters. Throws NoSignChange.
double find_threshold(const models::ModelParams& family, double t_theta, cplx alpha,
                      std::pair<double, double> bracket);

}  // namespace canp
