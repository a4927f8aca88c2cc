#pragma once

#include <array>
#include <complex>
#include <cstddef>

#include <Eigen/Core>

namespace canp {

using cplx = std::complex<double>;

inline constexpr double kCoefficientTol = 1e-12;
inline constexpr double kConditionTol = 1e-8;
/// Below this value of Delta * t_c^2 the generator coefficients use Taylor series.
inline constexpr double kSeriesSwitch = 1e-6;

/// Element of the single-mode algebra spanned by {a^dag a, a^2, (a^dag)^2, a, a^dag, 1}.
///
/// Every Hamiltonian and derived operator of the protocol lives here; the
/// commutator closes on this six-dimensional space, so higher-order terms are
/// unrepresentable by construction.
struct QuadraticOperator {
  cplx n{};     // a^dag a
  cplx aa{};    // a^2
  cplx adad{};  // (a^dag)^2
  cplx a{};
  cplx ad{};
  cplx one{};

  static constexpr std::size_t kDim = 6;

  [[nodiscard]] std::array<cplx, kDim> coefficients() const { return {n, aa, adad, a, ad, one}; }
  [[nodiscard]] static QuadraticOperator from_coefficients(const std::array<cplx, kDim>& c) {
    return {c[0], c[1], c[2], c[3], c[4], c[5]};
  }

  [[nodiscard]] double max_abs() const;
  [[nodiscard]] bool is_hermitian(double tol = kCoefficientTol) const;
  [[nodiscard]] bool is_zero(double tol = kCoefficientTol) const { return max_abs() <= tol; }

  QuadraticOperator& operator+=(const QuadraticOperator& o);
  QuadraticOperator& operator-=(const QuadraticOperator& o);
  QuadraticOperator& operator*=(cplx s);

  friend QuadraticOperator operator+(QuadraticOperator l, const QuadraticOperator& r) { return l += r; }
  friend QuadraticOperator operator-(QuadraticOperator l, const QuadraticOperator& r) { return l -= r; }
  friend QuadraticOperator operator*(cplx s, QuadraticOperator o) { return o *= s; }
  friend QuadraticOperator operator*(QuadraticOperator o, cplx s) { return o *= s; }
  friend QuadraticOperator operator-(QuadraticOperator o) { return o *= -1.0; }
  friend bool operator==(const QuadraticOperator&, const QuadraticOperator&) = default;
};

/// Largest coefficientwise distance between two operators.
double max_abs_diff(const QuadraticOperator& x, const QuadraticOperator& y);

namespace ops {
inline QuadraticOperator number() { return {.n = 1.0}; }
inline QuadraticOperator identity() { return {.one = 1.0}; }
inline QuadraticOperator annihilation() { return {.a = 1.0}; }
inline QuadraticOperator creation() { return {.ad = 1.0}; }
/// X = (a + a^dag)/sqrt(2)
QuadraticOperator position();
/// P = i(a^dag - a)/sqrt(2)
QuadraticOperator momentum();
}  // namespace ops

/// [A, B] from [a, a^dag] = 1. Exact on the six-dimensional algebra.
QuadraticOperator commutator(const QuadraticOperator& A, const QuadraticOperator& B);

/// Derived triple (C, D, Delta) of a preparation/encoding pair.
struct CriticalStructure {
  QuadraticOperator C;  // i[Hc, Htheta]
  QuadraticOperator D;  // [Hc, [Hc, Htheta]]
  double delta = 0.0;
  double residual = 0.0;

  /// Gamma = -i sqrt(Delta) C + D, the eigen-operator of ad_Hc.
  [[nodiscard]] QuadraticOperator gamma() const;
};

/// Extracts Delta from ad^3_Hc(Htheta) = Delta * ad_Hc(Htheta).
///
/// This is equivalent to [Hc, Gamma] = sqrt(Delta) Gamma with
/// Gamma = -i sqrt(Delta) C + D, but has no circular dependence on Delta.
/// Delta is read off the dominant coefficient of ad_Hc(Htheta); the residual is
/// max_k |ad3_k - Delta ad1_k| normalised by max(|ad3|, Delta |ad1|).
///
/// Throws NotHermitian, CommutingPair, ConditionViolated or NegativeDelta.
CriticalStructure derive_critical_structure(const QuadraticOperator& Hc, const QuadraticOperator& Htheta);

/// sin(sqrt(Delta) t)/sqrt(Delta) and (cos(sqrt(Delta) t) - 1)/Delta, smooth through Delta = 0.
struct PropagationCoefficients {
  double sine;
  double cosine;
};
PropagationCoefficients propagation_coefficients(double delta, double t_c);

/// Local generator h = t_theta (Htheta + s C + k D) of parameter translations
/// for the protocol exp(-i theta t_theta Htheta) exp(-i t_c Hc).
QuadraticOperator generator(const QuadraticOperator& Htheta, const CriticalStructure& cs, double t_c, double t_theta);

/// O = 1/2 r^T G r + v^T r + c0 with r = (X, P) in symmetric ordering.
struct QuadratureForm {
  Eigen::Matrix2d G = Eigen::Matrix2d::Zero();
  Eigen::Vector2d v = Eigen::Vector2d::Zero();
  double c0 = 0.0;
};

/// Throws NotHermitian.
QuadratureForm to_quadrature_form(const QuadraticOperator& O);
QuadraticOperator from_quadrature_form(const QuadratureForm& q);

}  // namespace canp
