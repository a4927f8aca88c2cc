#pragma once

#include <Eigen/Core>

#include "canp/operator_algebra.hpp"

namespace canp {

/// Single-mode Gaussian state: quadrature means and covariance
/// sigma_jk = <{r_j - mu_j, r_k - mu_k}>/2, so the vacuum has sigma = I/2.
struct GaussianState {
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  Eigen::Matrix2d cov = 0.5 * Eigen::Matrix2d::Identity();
};

/// Symplectic form for r = (X, P), [r_j, r_k] = i Omega_jk.
Eigen::Matrix2d symplectic_form();

/// Heisenberg action of exp(-i H t) on phase space: r -> S r + d.
struct AffineSymplecticMap {
  Eigen::Matrix2d S = Eigen::Matrix2d::Identity();
  Eigen::Vector2d d = Eigen::Vector2d::Zero();

  [[nodiscard]] GaussianState apply(const GaussianState& s) const;
};

/// exp(t [[Omega G, Omega v], [0, 0]]) split into its linear and affine parts.
/// Throws NotHermitian.
AffineSymplecticMap symplectic_propagator(const QuadraticOperator& H, double t);

GaussianState coherent(cplx alpha);
GaussianState evolve(const GaussianState& s, const QuadraticOperator& H, double t);

double mean_photon(const GaussianState& s);
double expectation(const GaussianState& s, const QuadraticOperator& O);
double variance_quadratic(const GaussianState& s, const QuadraticOperator& O);

struct QuadratureStats {
  double meanP;
  double varP;
};
QuadratureStats quadrature_stats(const GaussianState& s);

/// |S Omega S^T - Omega|_max
double symplectic_defect(const Eigen::Matrix2d& S);
/// Smallest eigenvalue of sigma + i Omega / 2; nonnegative for physical states.
double uncertainty_margin(const GaussianState& s);

}  // namespace canp
