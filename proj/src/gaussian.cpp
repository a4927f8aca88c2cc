#include "canp/gaussian.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "canp/errors.hpp"

namespace canp {

Eigen::Matrix2d symplectic_form() {
  Eigen::Matrix2d omega;
  omega << 0.0, 1.0, -1.0, 0.0;
  return omega;
}

GaussianState AffineSymplecticMap::apply(const GaussianState& s) const {
  GaussianState out;
  out.mean = S * s.mean + d;
  out.cov = S * s.cov * S.transpose();
  // Keep the covariance exactly symmetric; the product above is only symmetric to rounding.
  out.cov = 0.5 * (out.cov + out.cov.transpose()).eval();
  return out;
}

// Heisenberg equations for H = 1/2 r^T G r + v^T r + c0:  dr/dt = Omega G r + Omega v.
AffineSymplecticMap symplectic_propagator(const QuadraticOperator& H, double t) {
  const QuadratureForm q = to_quadrature_form(H);
  const Eigen::Matrix2d omega = symplectic_form();
  Eigen::Matrix3d M = Eigen::Matrix3d::Zero();
  M.topLeftCorner<2, 2>() = omega * q.G * t;
  M.topRightCorner<2, 1>() = omega * q.v * t;
  const Eigen::Matrix3d E = M.exp();
  return {E.topLeftCorner<2, 2>(), E.topRightCorner<2, 1>()};
}

GaussianState coherent(cplx alpha) {
  GaussianState s;
  s.mean << std::sqrt(2.0) * alpha.real(), std::sqrt(2.0) * alpha.imag();
  return s;
}

GaussianState evolve(const GaussianState& s, const QuadraticOperator& H, double t) {
  return symplectic_propagator(H, t).apply(s);
}

double mean_photon(const GaussianState& s) {
  return 0.5 * (s.cov(0, 0) + s.cov(1, 1) + s.mean.squaredNorm() - 1.0);
}

double expectation(const GaussianState& s, const QuadraticOperator& O) {
  const QuadratureForm q = to_quadrature_form(O);
  return 0.5 * (q.G * s.cov).trace() + 0.5 * s.mean.dot(q.G * s.mean) + q.v.dot(s.mean) + q.c0;
}

// Write r = mu + delta and O = 1/2 delta^T G delta + b^T delta + const with b = G mu + v.
// For a Gaussian state the odd central moments vanish (also after reordering,
// since commutators only lower the degree by two), so the cross term drops and
//   Var[O] = Var[1/2 delta^T G delta] + b^T sigma b.
// Wick's theorem on the symmetrically ordered products plus the commutator
// [delta_j, delta_k] = i Omega_jk gives
//   Var[1/2 delta^T G delta] = 1/2 Tr(G sigma G sigma) + 1/8 Tr(G Omega G Omega).
// The second term is the ordering correction (-1/4 for G = I, making Var[N] = 0 in vacuum).
double variance_quadratic(const GaussianState& s, const QuadraticOperator& O) {
  const QuadratureForm q = to_quadrature_form(O);
  const Eigen::Matrix2d omega = symplectic_form();
  const Eigen::Vector2d b = q.G * s.mean + q.v;
  const Eigen::Matrix2d gs = q.G * s.cov;
  const Eigen::Matrix2d go = q.G * omega;
  return 0.5 * (gs * gs).trace() + 0.125 * (go * go).trace() + b.dot(s.cov * b);
}

QuadratureStats quadrature_stats(const GaussianState& s) { return {s.mean(1), s.cov(1, 1)}; }

double symplectic_defect(const Eigen::Matrix2d& S) {
  const Eigen::Matrix2d omega = symplectic_form();
  return (S * omega * S.transpose() - omega).cwiseAbs().maxCoeff();
}

double uncertainty_margin(const GaussianState& s) {
  const Eigen::Matrix2cd m = s.cov.cast<cplx>() + cplx{0.0, 0.5} * symplectic_form().cast<cplx>();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace canp
