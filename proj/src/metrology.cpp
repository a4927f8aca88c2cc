#include "canp/metrology.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/tools/roots.hpp>
#include <fmt/format.h>

#include "canp/errors.hpp"

namespace canp {

CriticalStructure structure_of(const ProtocolSpec& spec) {
  try {
    return derive_critical_structure(spec.Hc, spec.Htheta);
  } catch (const CommutingPair&) {
    return {};
  }
}

GaussianState prepared_state(const ProtocolSpec& spec) {
  validate(spec);
  return evolve(coherent(spec.alpha), spec.Hc, spec.t_c);
}

GaussianState encoded_state(const ProtocolSpec& spec, double theta) {
  return evolve(prepared_state(spec), spec.Htheta, theta * spec.t_theta);
}

double qfi_exact(const ProtocolSpec& spec) {
  validate(spec);
  const QuadraticOperator h = generator(spec.Htheta, structure_of(spec), spec.t_c, spec.t_theta);
  return 4.0 * variance_quadratic(coherent(spec.alpha), h);
}

double qfi_asymptotic(const ProtocolSpec& spec) {
  validate(spec);
  const CriticalStructure cs = structure_of(spec);
  const double k = propagation_coefficients(cs.delta, spec.t_c).cosine;
  return 4.0 * spec.t_theta * spec.t_theta * k * k * variance_quadratic(coherent(spec.alpha), cs.D);
}

double direct_baseline(const ProtocolSpec& spec) {
  const double photons = mean_photon(encoded_state(spec, spec.theta0));
  const double r = std::abs(spec.alpha);
  const cplx phase = r > 0.0 ? spec.alpha / r : cplx{1.0, 0.0};
  const GaussianState matched = coherent(std::sqrt(std::max(photons, 0.0)) * phase);
  const double T = spec.total_time();
  return 4.0 * T * T * variance_quadratic(matched, spec.Htheta);
}

double enhancement_ratio(const ProtocolSpec& spec) {
  if (std::abs(spec.alpha) < 1e-12) throw VacuumProbe("enhancement_ratio: requires a nonvacuum probe");
  return qfi_exact(spec) / direct_baseline(spec);
}

double skew_information(const ProtocolSpec& spec) {
  return variance_quadratic(prepared_state(spec), spec.Htheta);
}

double cfi_homodyne(const ProtocolSpec& spec, double dtheta) {
  if (!(dtheta >= 1e-6 && dtheta <= 1e-2)) throw std::invalid_argument("cfi_homodyne: dtheta outside [1e-6, 1e-2]");
  const GaussianState prepared = prepared_state(spec);
  const auto stats_at = [&](double theta) {
    return quadrature_stats(evolve(prepared, spec.Htheta, theta * spec.t_theta));
  };
  const double t0 = spec.theta0;
  const QuadratureStats m2 = stats_at(t0 - 2.0 * dtheta);
  const QuadratureStats m1 = stats_at(t0 - dtheta);
  const QuadratureStats p1 = stats_at(t0 + dtheta);
  const QuadratureStats p2 = stats_at(t0 + 2.0 * dtheta);
  const QuadratureStats at = stats_at(t0);

  const auto richardson = [dtheta](double fm2, double fm1, double fp1, double fp2) {
    const double d1 = (fp1 - fm1) / (2.0 * dtheta);
    const double d2 = (fp2 - fm2) / (4.0 * dtheta);
    return (4.0 * d1 - d2) / 3.0;
  };
  const double dmean = richardson(m2.meanP, m1.meanP, p1.meanP, p2.meanP);
  const double dvar = richardson(m2.varP, m1.varP, p1.varP, p2.varP);
  return dmean * dmean / at.varP + 0.5 * dvar * dvar / (at.varP * at.varP);
}

DisplacementQfi qfi_displacement(const ProtocolSpec& spec) {
  if (max_abs_diff(spec.Htheta, models::encoding_displacement()) > kCoefficientTol) {
    throw std::invalid_argument("qfi_displacement: Htheta must be (a^dag + a)/sqrt(2)");
  }
  const CriticalStructure cs = structure_of(spec);
  const double s = propagation_coefficients(cs.delta, spec.t_c).sine;
  const double var_p = quadrature_stats(coherent(spec.alpha)).varP;
  const double tp = spec.t_theta;
  return {.asymptotic = 4.0 * tp * tp * spec.omega * spec.omega * s * s * var_p, .exact = qfi_exact(spec)};
}

MetrologyReport report(const ProtocolSpec& spec, double dtheta) {
  MetrologyReport r;
  r.qfi_exact = qfi_exact(spec);
  r.qfi_asymptotic = qfi_asymptotic(spec);
  r.qfi_direct_baseline = direct_baseline(spec);
  r.ratio = r.qfi_exact / r.qfi_direct_baseline;
  r.skew = skew_information(spec);
  r.cfi_homodyne = cfi_homodyne(spec, dtheta);
  const GaussianState final_state = encoded_state(spec, spec.theta0);
  const QuadratureStats q = quadrature_stats(final_state);
  r.meanP = q.meanP;
  r.varP = q.varP;
  r.final_mean_photon = mean_photon(final_state);
  return r;
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi, double tol) {
  const double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (std::signbit(flo) == std::signbit(fhi)) {
    throw NoSignChange(fmt::format("no sign change on [{}, {}] (f = {}, {})", lo, hi, flo, fhi));
  }
  const auto [a, b] =
      boost::math::tools::bisect(f, lo, hi, [tol](double x, double y) { return std::abs(y - x) <= tol; });
  return 0.5 * (a + b);
}

double find_threshold(const models::ModelParams& family, double t_theta, cplx alpha,
                      std::pair<double, double> bracket) {
  const auto excess = [&](double x) {
    return enhancement_ratio(models::protocol_at_half_period(family.with_control(x), t_theta, alpha)) - 1.0;
  };
  return bisect_root(excess, bracket.first, bracket.second);
}

}  // namespace canp
