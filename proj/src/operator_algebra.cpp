#include "canp/operator_algebra.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "canp/errors.hpp"

namespace canp {

namespace {

constexpr cplx kI{0.0, 1.0};

double max_abs_of(const std::array<cplx, QuadraticOperator::kDim>& c) {
  double m = 0.0;
  for (const auto& x : c) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

double QuadraticOperator::max_abs() const { return max_abs_of(coefficients()); }

bool QuadraticOperator::is_hermitian(double tol) const {
  return std::abs(n.imag()) <= tol && std::abs(one.imag()) <= tol && std::abs(adad - std::conj(aa)) <= tol &&
         std::abs(ad - std::conj(a)) <= tol;
}

QuadraticOperator& QuadraticOperator::operator+=(const QuadraticOperator& o) {
  n += o.n;
  aa += o.aa;
  adad += o.adad;
  a += o.a;
  ad += o.ad;
  one += o.one;
  return *this;
}

QuadraticOperator& QuadraticOperator::operator-=(const QuadraticOperator& o) {
  n -= o.n;
  aa -= o.aa;
  adad -= o.adad;
  a -= o.a;
  ad -= o.ad;
  one -= o.one;
  return *this;
}

QuadraticOperator& QuadraticOperator::operator*=(cplx s) {
  n *= s;
  aa *= s;
  adad *= s;
  a *= s;
  ad *= s;
  one *= s;
  return *this;
}

double max_abs_diff(const QuadraticOperator& x, const QuadraticOperator& y) { return (x - y).max_abs(); }

namespace ops {
QuadraticOperator position() {
  const double s = 1.0 / std::sqrt(2.0);
  return {.a = s, .ad = s};
}
QuadraticOperator momentum() {
  const double s = 1.0 / std::sqrt(2.0);
  return {.a = -kI * s, .ad = kI * s};
}
}  // namespace ops

// Nonzero basis commutators:
//   [N, a^2] = -2a^2      [N, ad^2] = 2ad^2     [N, a] = -a     [N, ad] = ad
//   [a^2, ad^2] = 4N + 2  [a^2, ad] = 2a        [ad^2, a] = -2ad
//   [a, ad] = 1
QuadraticOperator commutator(const QuadraticOperator& A, const QuadraticOperator& B) {
  QuadraticOperator C;
  const cplx pair_aa_adad = A.aa * B.adad - A.adad * B.aa;
  C.n = 4.0 * pair_aa_adad;
  C.aa = -2.0 * (A.n * B.aa - A.aa * B.n);
  C.adad = 2.0 * (A.n * B.adad - A.adad * B.n);
  C.a = -(A.n * B.a - A.a * B.n) + 2.0 * (A.aa * B.ad - A.ad * B.aa);
  C.ad = (A.n * B.ad - A.ad * B.n) - 2.0 * (A.adad * B.a - A.a * B.adad);
  C.one = 2.0 * pair_aa_adad + (A.a * B.ad - A.ad * B.a);
  return C;
}

QuadraticOperator CriticalStructure::gamma() const {
  return (-kI * std::sqrt(delta)) * C + D;
}

CriticalStructure derive_critical_structure(const QuadraticOperator& Hc, const QuadraticOperator& Htheta) {
  if (!Hc.is_hermitian() || !Htheta.is_hermitian()) {
    throw NotHermitian("derive_critical_structure: Hc and Htheta must be Hermitian");
  }

  const QuadraticOperator ad1 = commutator(Hc, Htheta);
  const QuadraticOperator ad2 = commutator(Hc, ad1);
  const QuadraticOperator ad3 = commutator(Hc, ad2);

  const auto c1 = ad1.coefficients();
  const auto c3 = ad3.coefficients();
  const double scale1 = max_abs_of(c1);
  const double scale3 = max_abs_of(c3);
  if (scale1 <= kCoefficientTol * std::max(1.0, Hc.max_abs() * Htheta.max_abs())) {
    throw CommutingPair("derive_critical_structure: [Hc, Htheta] = 0, Delta undefined");
  }

  std::size_t lead = 0;
  for (std::size_t k = 1; k < c1.size(); ++k) {
    if (std::abs(c1[k]) > std::abs(c1[lead])) lead = k;
  }
  const cplx ratio = c3[lead] / c1[lead];
  const double delta = ratio.real();

  double worst = 0.0;
  for (std::size_t k = 0; k < c1.size(); ++k) worst = std::max(worst, std::abs(c3[k] - delta * c1[k]));
  const double denom = std::max(scale3, std::abs(delta) * scale1);
  const double residual = denom > 0.0 ? worst / denom : 0.0;

  if (residual > kConditionTol) {
    throw ConditionViolated(
        fmt::format("derive_critical_structure: ad^3 not proportional to ad (residual {:.3e})", residual));
  }
  if (delta < 0.0) {
    throw NegativeDelta(fmt::format("derive_critical_structure: proportionality constant {} < 0", delta));
  }

  return {.C = kI * ad1, .D = ad2, .delta = delta, .residual = residual};
}

PropagationCoefficients propagation_coefficients(double delta, double t_c) {
  const double x = delta * t_c * t_c;
  if (std::abs(x) < kSeriesSwitch) {
    // sin(y)/sqrt(D) = t (1 - x/6 + x^2/120 - x^3/5040)
    // (cos(y)-1)/D  = -t^2/2 (1 - x/12 + x^2/360 - x^3/20160),  y^2 = x
    const double s = t_c * (1.0 - x / 6.0 * (1.0 - x / 20.0 * (1.0 - x / 42.0)));
    const double k = -0.5 * t_c * t_c * (1.0 - x / 12.0 * (1.0 - x / 30.0 * (1.0 - x / 56.0)));
    return {s, k};
  }
  const double w = std::sqrt(delta);
  return {std::sin(w * t_c) / w, (std::cos(w * t_c) - 1.0) / delta};
}

QuadraticOperator generator(const QuadraticOperator& Htheta, const CriticalStructure& cs, double t_c,
                            double t_theta) {
  if (!(cs.residual < kConditionTol)) {
    throw ConditionViolated("generator: critical structure does not satisfy the algebraic condition");
  }
  const auto [s, k] = propagation_coefficients(cs.delta, t_c);
  return t_theta * (Htheta + s * cs.C + k * cs.D);
}

// With c_aa = u + i w and c_a = p + i q:
//   c_n N          = c_n (X^2 + P^2 - 1)/2
//   c_aa a^2 + h.c. = u (X^2 - P^2) - w (XP + PX)
//   c_a a + h.c.   = sqrt(2) p X - sqrt(2) q P
QuadratureForm to_quadrature_form(const QuadraticOperator& O) {
  if (!O.is_hermitian()) throw NotHermitian("to_quadrature_form: operator is not Hermitian");
  const double cn = O.n.real();
  const double u = O.aa.real();
  const double w = O.aa.imag();
  const double r2 = std::sqrt(2.0);
  QuadratureForm q;
  q.G << cn + 2.0 * u, -2.0 * w, -2.0 * w, cn - 2.0 * u;
  q.v << r2 * O.a.real(), -r2 * O.a.imag();
  q.c0 = O.one.real() - 0.5 * cn;
  return q;
}

QuadraticOperator from_quadrature_form(const QuadratureForm& q) {
  const double cn = 0.5 * (q.G(0, 0) + q.G(1, 1));
  const double gxp = 0.5 * (q.G(0, 1) + q.G(1, 0));
  const cplx caa{0.25 * (q.G(0, 0) - q.G(1, 1)), -0.5 * gxp};
  const double r2 = std::sqrt(2.0);
  const cplx ca{q.v(0) / r2, -q.v(1) / r2};
  return {.n = cn, .aa = caa, .adad = std::conj(caa), .a = ca, .ad = std::conj(ca), .one = q.c0 + 0.5 * cn};
}

}  // namespace canp
