#include "canp/fock.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "canp/errors.hpp"

namespace canp::fock {

double FockState::tail_mass() const {
  const int d = dim();
  const int start = std::max(0, d - kTailLevels);
  return amps.segment(start, d - start).squaredNorm();
}

Eigen::MatrixXcd build_matrix(const QuadraticOperator& O, int dim) {
  if (dim < 2) throw std::invalid_argument("build_matrix: dim must be at least 2");
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) {
    const double dn = n;
    M(n, n) += O.n * dn + O.one;
    if (n >= 1) M(n - 1, n) += O.a * std::sqrt(dn);
    if (n >= 2) M(n - 2, n) += O.aa * std::sqrt(dn * (dn - 1.0));
    if (n + 1 < dim) M(n + 1, n) += O.ad * std::sqrt(dn + 1.0);
    if (n + 2 < dim) M(n + 2, n) += O.adad * std::sqrt((dn + 1.0) * (dn + 2.0));
  }
  return M;
}

FockState coherent_fock(cplx alpha, int dim) {
  FockState s;
  s.amps.resize(dim);
  cplx c = std::exp(-0.5 * std::norm(alpha));
  for (int n = 0; n < dim; ++n) {
    s.amps(n) = c;
    c *= alpha / std::sqrt(static_cast<double>(n + 1));
  }
  return s;
}

HermitianPropagator::HermitianPropagator(const Eigen::MatrixXcd& H) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  if (es.info() != Eigen::Success) throw Error("HermitianPropagator: eigendecomposition failed");
  energies_ = es.eigenvalues();
  vectors_ = es.eigenvectors();
}

HermitianPropagator::HermitianPropagator(const QuadraticOperator& H, int dim)
    : HermitianPropagator([&] {
        if (!H.is_hermitian()) throw NotHermitian("HermitianPropagator: operator is not Hermitian");
        return build_matrix(H, dim);
      }()) {}

FockState HermitianPropagator::apply(const FockState& s, double t) const {
  Eigen::VectorXcd c = vectors_.adjoint() * s.amps;
  for (Eigen::Index k = 0; k < c.size(); ++k) c(k) *= std::polar(1.0, -energies_(k) * t);
  return {vectors_ * c};
}

void check_converged(const FockState& s) {
  const double tail = s.tail_mass();
  if (!(tail < kTailTol)) {
    throw TruncationNotConverged(fmt::format("tail mass {:.3e} at dim {}", tail, s.dim()));
  }
}

FockState evolve_fock(const FockState& s, const QuadraticOperator& H, double t) {
  const FockState out = HermitianPropagator(H, s.dim()).apply(s, t);
  check_converged(out);
  return out;
}

cplx overlap(const FockState& x, const FockState& y) { return x.amps.dot(y.amps); }

double expectation(const FockState& s, const QuadraticOperator& O) {
  return s.amps.dot(build_matrix(O, s.dim()) * s.amps).real();
}

double variance(const FockState& s, const QuadraticOperator& O) {
  const Eigen::VectorXcd v = build_matrix(O, s.dim()) * s.amps;
  const double mean = s.amps.dot(v).real();
  return v.squaredNorm() - mean * mean;
}

GaussianState moments(const FockState& s) {
  const cplx i{0.0, 1.0};
  // X^2 = (a^2 + ad^2 + 2N + 1)/2,  P^2 = (2N + 1 - a^2 - ad^2)/2,  {X, P}/2 = i(ad^2 - a^2)/2
  const QuadraticOperator x2{.n = 1.0, .aa = 0.5, .adad = 0.5, .one = 0.5};
  const QuadraticOperator p2{.n = 1.0, .aa = -0.5, .adad = -0.5, .one = 0.5};
  const QuadraticOperator xp{.aa = -0.5 * i, .adad = 0.5 * i};
  GaussianState m;
  m.mean << expectation(s, ops::position()), expectation(s, ops::momentum());
  const double cxx = expectation(s, x2) - m.mean(0) * m.mean(0);
  const double cpp = expectation(s, p2) - m.mean(1) * m.mean(1);
  const double cxp = expectation(s, xp) - m.mean(0) * m.mean(1);
  m.cov << cxx, cxp, cxp, cpp;
  return m;
}

ProtocolRun run_protocol(const ProtocolSpec& spec, std::span<const double> thetas, int min_dim) {
  validate(spec);
  for (int dim = min_dim; dim <= kMaxDim; dim *= 2) {
    try {
      ProtocolRun run;
      run.dim = dim;
      const FockState probe = coherent_fock(spec.alpha, dim);
      check_converged(probe);
      run.prepared = HermitianPropagator(spec.Hc, dim).apply(probe, spec.t_c);
      check_converged(run.prepared);
      const HermitianPropagator encode(spec.Htheta, dim);
      for (const double theta : thetas) {
        run.encoded.push_back(encode.apply(run.prepared, theta * spec.t_theta));
        check_converged(run.encoded.back());
      }
      return run;
    } catch (const TruncationNotConverged&) {
      if (2 * dim > kMaxDim) throw;
    }
  }
  throw TruncationNotConverged(fmt::format("run_protocol: min_dim {} exceeds {}", min_dim, kMaxDim));
}

double qfi_numeric(const ProtocolSpec& spec, double dtheta, int min_dim) {
  if (!(dtheta >= 1e-6 && dtheta <= 1e-2)) throw std::invalid_argument("qfi_numeric: dtheta outside [1e-6, 1e-2]");
  const double t0 = spec.theta0;
  const std::array<double, 4> thetas{t0 - 2.0 * dtheta, t0 - dtheta, t0 + dtheta, t0 + 2.0 * dtheta};
  const ProtocolRun run = run_protocol(spec, thetas, min_dim);
  const auto fidelity_qfi = [](const FockState& lo, const FockState& hi, double h) {
    return 8.0 * (1.0 - std::abs(overlap(lo, hi))) / (4.0 * h * h);
  };
  const double f1 = fidelity_qfi(run.encoded[1], run.encoded[2], dtheta);
  const double f2 = fidelity_qfi(run.encoded[0], run.encoded[3], 2.0 * dtheta);
  return (4.0 * f1 - f2) / 3.0;
}

double skew_information_general(const Eigen::MatrixXcd& B, const Eigen::MatrixXcd& K) {
  if (B.rows() != B.cols() || K.rows() != K.cols() || B.rows() != K.rows()) {
    throw std::invalid_argument("skew_information_general: shape mismatch");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(B);
  const Eigen::VectorXd& w = es.eigenvalues();
  if (w.minCoeff() < -1e-10) throw NotPositive(fmt::format("density matrix eigenvalue {:.3e} < 0", w.minCoeff()));
  if (std::abs(w.sum() - 1.0) > 1e-10) throw NotPositive(fmt::format("density matrix trace {} != 1", w.sum()));
  // Eigenvalues at rounding level are zeroed: their square roots would otherwise
  // inject noise of order sqrt(eps) into a pure state's result.
  const double floor = static_cast<double>(w.size()) * std::numeric_limits<double>::epsilon() * w.maxCoeff();
  const Eigen::VectorXd root = w.unaryExpr([floor](double x) { return x > floor ? std::sqrt(x) : 0.0; });
  const Eigen::MatrixXcd k = es.eigenvectors().adjoint() * K * es.eigenvectors();
  // I = 1/2 sum_ij (sqrt(p_i) - sqrt(p_j))^2 |K_ij|^2
  double sum = 0.0;
  for (Eigen::Index i = 0; i < k.rows(); ++i) {
    for (Eigen::Index j = 0; j < i; ++j) sum += (root(i) - root(j)) * (root(i) - root(j)) * std::norm(k(i, j));
  }
  return sum;
}

}  // namespace canp::fock
