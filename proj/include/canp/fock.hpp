#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "canp/gaussian.hpp"
#include "canp/operator_algebra.hpp"
#include "canp/protocol.hpp"

namespace canp::fock {

inline constexpr int kDefaultDim = 60;
inline constexpr int kMaxDim = 480;
inline constexpr double kTailTol = 1e-10;
inline constexpr int kTailLevels = 5;
inline constexpr double kDefaultDtheta = 1e-4;

/// Amplitudes in the truncated number basis |0>, ..., |dim-1>.
struct FockState {
  Eigen::VectorXcd amps;

  [[nodiscard]] int dim() const { return static_cast<int>(amps.size()); }
  [[nodiscard]] double norm() const { return amps.norm(); }
  /// Weight in the top kTailLevels levels.
  [[nodiscard]] double tail_mass() const;
};

/// Matrix of O in the truncated basis, from a|n> = sqrt(n)|n-1>.
Eigen::MatrixXcd build_matrix(const QuadraticOperator& O, int dim);

FockState coherent_fock(cplx alpha, int dim);

/// exp(-i H t) through one eigendecomposition of the Hermitian matrix, reusable across t.
class HermitianPropagator {
 public:
  explicit HermitianPropagator(const Eigen::MatrixXcd& H);
  HermitianPropagator(const QuadraticOperator& H, int dim);

  [[nodiscard]] FockState apply(const FockState& s, double t) const;
  [[nodiscard]] int dim() const { return static_cast<int>(energies_.size()); }

 private:
  Eigen::VectorXd energies_;
  Eigen::MatrixXcd vectors_;
};

/// Throws NotHermitian, TruncationNotConverged.
FockState evolve_fock(const FockState& s, const QuadraticOperator& H, double t);

/// Throws TruncationNotConverged when the tail-mass invariant fails.
void check_converged(const FockState& s);

cplx overlap(const FockState& x, const FockState& y);
double expectation(const FockState& s, const QuadraticOperator& O);
double variance(const FockState& s, const QuadraticOperator& O);
/// Quadrature means and symmetrised covariance, for comparison with the Gaussian engine.
GaussianState moments(const FockState& s);

/// States of the full protocol at several parameter values, from one pair of decompositions.
/// Truncation starts at `min_dim` and doubles up to kMaxDim until every state converges.
struct ProtocolRun {
  int dim = 0;
  FockState prepared;
  std::vector<FockState> encoded;
};
ProtocolRun run_protocol(const ProtocolSpec& spec, std::span<const double> thetas, int min_dim = kDefaultDim);

/// Fidelity-based QFI: 8 (1 - |<psi(theta0-d)|psi(theta0+d)>|) / (2d)^2 with one Richardson step.
double qfi_numeric(const ProtocolSpec& spec, double dtheta = kDefaultDtheta, int min_dim = kDefaultDim);

/// Wigner-Yanase skew information Tr[B K^2] - Tr[sqrt(B) K sqrt(B) K].
/// Throws NotPositive unless B is positive semidefinite with unit trace.
double skew_information_general(const Eigen::MatrixXcd& B, const Eigen::MatrixXcd& K);

}  // namespace canp::fock
