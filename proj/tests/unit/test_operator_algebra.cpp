#include <doctest.h>

#include <cmath>
#include <random>

#include "canp/errors.hpp"
#include "canp/fock.hpp"
#include "canp/models.hpp"
#include "canp/operator_algebra.hpp"

using namespace canp;
using doctest::Approx;

namespace {

QuadraticOperator random_operator(std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  std::array<cplx, QuadraticOperator::kDim> c;
  for (auto& x : c) x = {d(rng), d(rng)};
  return QuadraticOperator::from_coefficients(c);
}

QuadraticOperator random_hermitian(std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  const cplx aa{d(rng), d(rng)};
  const cplx a{d(rng), d(rng)};
  return {.n = d(rng), .aa = aa, .adad = std::conj(aa), .a = a, .ad = std::conj(a), .one = d(rng)};
}

}  // namespace

TEST_CASE("commutator of ladder identities") {
  const QuadraticOperator c = commutator(ops::number(), ops::annihilation());
  CHECK(max_abs_diff(c, -ops::annihilation()) < 1e-15);
  CHECK(max_abs_diff(commutator(ops::annihilation(), ops::creation()), ops::identity()) < 1e-15);
  CHECK(max_abs_diff(commutator(ops::position(), ops::momentum()), cplx{0, 1} * ops::identity()) < 1e-15);
}

TEST_CASE("commutator is antisymmetric and vanishes on equal arguments") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20; ++i) {
    const auto A = random_operator(rng);
    const auto B = random_operator(rng);
    CHECK(commutator(A, A).is_zero());
    CHECK(max_abs_diff(commutator(A, B), -commutator(B, A)) < 1e-12);
  }
}

TEST_CASE("Jacobi identity") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 50; ++i) {
    const auto A = random_operator(rng);
    const auto B = random_operator(rng);
    const auto C = random_operator(rng);
    const auto sum = commutator(A, commutator(B, C)) + commutator(B, commutator(C, A)) + commutator(C, commutator(A, B));
    CHECK(sum.max_abs() < 1e-11);
  }
}

TEST_CASE("i[A, B] of Hermitian operators is Hermitian") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const auto C = cplx{0, 1} * commutator(random_hermitian(rng), random_hermitian(rng));
    CHECK(C.is_hermitian(1e-12));
  }
}

TEST_CASE("commutator agrees with truncated matrix products away from the cutoff") {
  std::mt19937_64 rng(4);
  const int dim = 24;
  const int block = dim - 4;
  for (int i = 0; i < 10; ++i) {
    const auto A = random_operator(rng);
    const auto B = random_operator(rng);
    const Eigen::MatrixXcd mA = fock::build_matrix(A, dim);
    const Eigen::MatrixXcd mB = fock::build_matrix(B, dim);
    const Eigen::MatrixXcd product = mA * mB - mB * mA;
    const Eigen::MatrixXcd algebra = fock::build_matrix(commutator(A, B), dim);
    CHECK((product - algebra).topLeftCorner(block, block).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("C of the Rabi preset at g = 0.9") {
  const auto C = cplx{0, 1} * commutator(models::qrm_effective(1.0, 0.9), ops::number());
  CHECK(std::abs(C.adad - cplx{0, 0.405}) < 1e-12);
  CHECK(std::abs(C.aa - cplx{0, -0.405}) < 1e-12);
  CHECK(std::abs(C.n) + std::abs(C.a) + std::abs(C.ad) + std::abs(C.one) < 1e-15);
}

TEST_CASE("Delta extraction") {
  SUBCASE("Rabi frequency encoding") {
    const auto cs = derive_critical_structure(models::qrm_effective(1.0, 0.96), ops::number());
    CHECK(cs.delta == Approx(0.3136).epsilon(1e-12));
    CHECK(cs.residual < 1e-12);
  }
  SUBCASE("Rabi displacement encoding") {
    const auto cs = derive_critical_structure(models::qrm_effective(1.0, 0.9), ops::position());
    CHECK(cs.delta == Approx(0.19).epsilon(1e-12));
  }
  SUBCASE("LMG") {
    const auto cs = derive_critical_structure(models::lmg_effective(0.5, 2.0), ops::number());
    CHECK(cs.delta == Approx(12.0).epsilon(1e-12));
  }
  SUBCASE("commuting pair") {
    CHECK_THROWS_AS(derive_critical_structure(ops::number(), ops::number()), CommutingPair);
  }
  SUBCASE("non-Hermitian input") {
    CHECK_THROWS_AS(derive_critical_structure(ops::annihilation(), ops::number()), NotHermitian);
  }
  SUBCASE("inverted oscillator has negative Delta") {
    const QuadraticOperator inverted{.n = 1.0, .aa = -1.0, .adad = -1.0};  // X^2 coefficient negative
    CHECK_THROWS_AS(derive_critical_structure(inverted, ops::number()), NegativeDelta);
  }
  SUBCASE("cubic closure fails for a non-quadratic-like pair") {
    // P encoding under a displaced oscillator: ad^3 is not proportional to ad^1.
    const QuadraticOperator h{.n = 1.0, .aa = 0.3, .adad = 0.3, .a = 0.7, .ad = 0.7};
    const QuadraticOperator k{.n = 0.2, .a = cplx{0, -1}, .ad = cplx{0, 1}};
    CHECK_THROWS_AS(derive_critical_structure(h, k), ConditionViolated);
  }
}

TEST_CASE("Gamma is an eigen-operator of ad_Hc") {
  const auto Hc = models::qrm_effective(1.0, 0.8);
  const auto cs = derive_critical_structure(Hc, ops::number());
  const auto gamma = cs.gamma();
  CHECK(max_abs_diff(commutator(Hc, gamma), std::sqrt(cs.delta) * gamma) < 1e-12);
}

TEST_CASE("propagation coefficients") {
  SUBCASE("t_c = 0") {
    const auto p = propagation_coefficients(0.5, 0.0);
    CHECK(p.sine == 0.0);
    CHECK(p.cosine == 0.0);
  }
  SUBCASE("Delta -> 0 limit") {
    const auto p = propagation_coefficients(0.0, 2.0);
    CHECK(p.sine == Approx(2.0).epsilon(1e-15));
    CHECK(p.cosine == Approx(-2.0).epsilon(1e-15));
  }
  SUBCASE("continuous across the series switch") {
    const double t = 1.0;
    const double below = kSeriesSwitch * (1.0 - 1e-9);
    const double above = kSeriesSwitch * (1.0 + 1e-9);
    const auto a = propagation_coefficients(below, t);
    const auto b = propagation_coefficients(above, t);
    CHECK(a.sine == Approx(b.sine).epsilon(1e-12));
    CHECK(a.cosine == Approx(b.cosine).epsilon(1e-10));
  }
  SUBCASE("closed form away from zero") {
    const double delta = 0.3136, t = 3.0, r = std::sqrt(delta);
    const auto p = propagation_coefficients(delta, t);
    CHECK(p.sine == Approx(std::sin(r * t) / r).epsilon(1e-14));
    CHECK(p.cosine == Approx((std::cos(r * t) - 1.0) / delta).epsilon(1e-14));
  }
}

TEST_CASE("generator") {
  const auto Hc = models::qrm_effective(1.0, 0.96);
  const auto cs = derive_critical_structure(Hc, ops::number());
  CHECK(max_abs_diff(generator(ops::number(), cs, 0.0, 12.0), 12.0 * ops::number()) < 1e-15);
  const auto h = generator(ops::number(), cs, 3.0, 12.0);
  CHECK(h.is_hermitian());
  const auto p = propagation_coefficients(cs.delta, 3.0);
  CHECK(max_abs_diff(h, 12.0 * (ops::number() + p.sine * cs.C + p.cosine * cs.D)) < 1e-13);
}

TEST_CASE("quadrature form") {
  SUBCASE("number operator") {
    const auto q = to_quadrature_form(ops::number());
    CHECK((q.G - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(q.v.isZero());
    CHECK(q.c0 == Approx(-0.5));
  }
  SUBCASE("position") {
    const auto q = to_quadrature_form(ops::position());
    CHECK(q.G.isZero());
    CHECK(q.v(0) == Approx(1.0));
    CHECK(q.v(1) == Approx(0.0));
    CHECK(q.c0 == 0.0);
  }
  SUBCASE("Rabi preset") {
    for (const double g : {0.0, 0.5, 0.96}) {
      const auto q = to_quadrature_form(models::qrm_effective(1.0, g));
      CHECK(q.G(0, 0) == Approx(1.0 - g * g).epsilon(1e-14));
      CHECK(q.G(1, 1) == Approx(1.0).epsilon(1e-14));
      CHECK(q.G(0, 1) == 0.0);
      CHECK(q.v.isZero());
    }
  }
  SUBCASE("round trip on random Hermitian operators") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 20; ++i) {
      const auto H = random_hermitian(rng);
      CHECK(max_abs_diff(from_quadrature_form(to_quadrature_form(H)), H) < 1e-13);
    }
  }
  SUBCASE("rejects non-Hermitian") { CHECK_THROWS_AS(to_quadrature_form(ops::annihilation()), NotHermitian); }
}
