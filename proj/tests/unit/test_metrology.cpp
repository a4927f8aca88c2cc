#include <doctest.h>

#include <cmath>
#include <numbers>

#include "canp/errors.hpp"
#include "canp/fock.hpp"
#include "canp/metrology.hpp"
#include "canp/models.hpp"

using namespace canp;
using doctest::Approx;

namespace {

constexpr cplx kAlpha{0.3, 1.0};
constexpr double kPi = std::numbers::pi;

models::ModelParams qrm(double g) { return {.variant = models::Variant::QrmFrequency, .g = g}; }

ProtocolSpec qrm_protocol(double g, double t_c, double t_theta = 12.0, cplx alpha = kAlpha, double theta0 = 0.0) {
  return models::make_protocol(qrm(g), t_c, t_theta, alpha, theta0);
}

}  // namespace

TEST_CASE("exact QFI") {
  SUBCASE("direct encoding") { CHECK(qfi_exact(qrm_protocol(0.96, 0.0)) == Approx(627.84).epsilon(1e-12)); }
  SUBCASE("commuting preparation leaves the QFI unchanged") {
    CHECK(qfi_exact(qrm_protocol(0.0, 3.0)) == Approx(627.84).epsilon(1e-12));
  }
  SUBCASE("agrees with the Fock oracle") {
    const auto at_three = qrm_protocol(0.96, 3.0);
    CHECK(qfi_exact(at_three) == Approx(fock::qfi_numeric(at_three)).epsilon(1e-4));
    const auto at_tau = models::protocol_at_half_period(qrm(0.96), 12.0, kAlpha);
    CHECK(qfi_exact(at_tau) == Approx(fock::qfi_numeric(at_tau)).epsilon(1e-4));
  }
  SUBCASE("generator variance equals the QFI") {
    const auto spec = qrm_protocol(0.96, 3.0);
    const auto h = generator(spec.Htheta, structure_of(spec), spec.t_c, spec.t_theta);
    CHECK(4.0 * variance_quadratic(coherent(kAlpha), h) == Approx(qfi_exact(spec)).epsilon(1e-14));
  }
  SUBCASE("independent of theta0 for frequency encoding") {
    const double base = qfi_exact(qrm_protocol(0.9, 2.0));
    for (const double th : {-0.4, 0.1, 1.7}) CHECK(qfi_exact(qrm_protocol(0.9, 2.0, 12.0, kAlpha, th)) == Approx(base).epsilon(1e-10));
  }
}

TEST_CASE("asymptotic QFI") {
  CHECK(qfi_asymptotic(qrm_protocol(0.9, 0.0)) == 0.0);
  const auto tau = models::protocol_at_half_period(qrm(0.98), 12.0, kAlpha);
  CHECK(std::abs(qfi_asymptotic(tau) - qfi_exact(tau)) / qfi_exact(tau) < 0.1);
  SUBCASE("quartic short-time growth") {
    const double a = qfi_asymptotic(qrm_protocol(0.9, 1e-3));
    const double b = qfi_asymptotic(qrm_protocol(0.9, 1e-2));
    CHECK(std::log(b / a) / std::log(10.0) == Approx(4.0).epsilon(0.05 / 4.0));
  }
}

TEST_CASE("direct baseline and enhancement ratio") {
  CHECK(direct_baseline(qrm_protocol(0.9, 0.0)) == Approx(4.0 * 144.0 * 1.09));
  CHECK(direct_baseline(qrm_protocol(0.0, 3.0)) == Approx(4.0 * 225.0 * 1.09));
  const auto spec = qrm_protocol(0.96, 3.0);
  const double photons = mean_photon(prepared_state(spec));
  CHECK(direct_baseline(spec) == Approx(4.0 * 225.0 * photons).epsilon(1e-12));
  const std::array<double, 1> thetas{0.0};
  const auto run = fock::run_protocol(spec, thetas);
  CHECK(photons == Approx(fock::expectation(run.prepared, ops::number())).epsilon(1e-6));

  for (const double t_c : {0.5, 3.0, 10.0}) {
    const double r = enhancement_ratio(qrm_protocol(0.0, t_c));
    CHECK(r == Approx(144.0 / ((t_c + 12.0) * (t_c + 12.0))).epsilon(1e-12));
    CHECK(r < 1.0);
  }
  CHECK_THROWS_AS(enhancement_ratio(qrm_protocol(0.9, 1.0, 12.0, 0.0)), VacuumProbe);
}

TEST_CASE("skew information") {
  CHECK(skew_information(qrm_protocol(0.9, 0.0)) == Approx(1.09));
  for (const double g : {0.3, 0.9, 0.95}) {
    for (const double t_c : {0.7, 3.0, 9.0}) {
      const auto spec = qrm_protocol(g, t_c);
      CHECK(4.0 * 144.0 * skew_information(spec) == Approx(qfi_exact(spec)).epsilon(1e-9));
    }
  }
}

TEST_CASE("homodyne CFI") {
  SUBCASE("direct scheme with a real amplitude") {
    const double alpha = 0.8;
    const auto spec = qrm_protocol(0.9, 0.0, 12.0, alpha);
    CHECK(cfi_homodyne(spec) == Approx(4.0 * 144.0 * alpha * alpha).epsilon(1e-8));
  }
  SUBCASE("near-optimal at tau") {
    for (const double g : {0.90, 0.94, 0.98}) {
      const auto spec = models::protocol_at_half_period(qrm(g), 12.0, kAlpha);
      const double ratio = cfi_homodyne(spec) / qfi_exact(spec);
      CHECK(ratio >= 0.8);
      CHECK(ratio <= 1.0);
    }
  }
  SUBCASE("bounded by the QFI") {
    for (const double g : {0.0, 0.5, 0.95}) {
      for (const double t_c : {0.0, 1.0, 4.0, 11.0}) {
        const auto spec = qrm_protocol(g, t_c, 12.0, kAlpha, 0.2);
        CHECK(cfi_homodyne(spec) <= qfi_exact(spec) * (1.0 + 1e-6));
      }
    }
  }
}

TEST_CASE("displacement QFI") {
  const models::ModelParams m{.variant = models::Variant::QrmDisplacement, .g = 0.9};
  const double delta = models::delta_closed_form(m);
  CHECK(delta == Approx(0.19).epsilon(1e-14));
  SUBCASE("no preparation") {
    const auto q = qfi_displacement(models::make_protocol(m, 0.0, 12.0, kAlpha));
    CHECK(q.asymptotic == 0.0);
    CHECK(q.exact == Approx(2.0 * 144.0));
  }
  SUBCASE("quarter period") {
    const auto spec = models::make_protocol(m, kPi / (2.0 * std::sqrt(delta)), 12.0, kAlpha);
    const auto q = qfi_displacement(spec);
    CHECK(q.asymptotic == Approx(4.0 * 144.0 / delta * 0.5).epsilon(1e-12));
    CHECK(q.exact == Approx(fock::qfi_numeric(spec)).epsilon(1e-4));
    CHECK(direct_baseline(spec) == Approx(4.0 * spec.total_time() * spec.total_time() * 0.5));
  }
  SUBCASE("requires displacement encoding") {
    CHECK_THROWS(qfi_displacement(qrm_protocol(0.9, 1.0)));
  }
}

TEST_CASE("report bundles consistent values") {
  const auto spec = models::protocol_at_half_period(qrm(0.95), 12.0, kAlpha);
  const MetrologyReport r = report(spec);
  CHECK(r.qfi_exact == Approx(qfi_exact(spec)));
  CHECK(r.ratio == Approx(r.qfi_exact / r.qfi_direct_baseline));
  CHECK(4.0 * 144.0 * r.skew == Approx(r.qfi_exact).epsilon(1e-9));
  CHECK(r.cfi_homodyne <= r.qfi_exact);
  CHECK(r.varP > 0.0);
}

TEST_CASE("thresholds") {
  CHECK(bisect_root([](double x) { return x * x - 2.0; }, 0.0, 2.0) == Approx(std::sqrt(2.0)).epsilon(1e-9));
  CHECK_THROWS_AS(bisect_root([](double x) { return x * x + 1.0; }, -1.0, 1.0), NoSignChange);

  const double g_star = find_threshold(qrm(0.5), 12.0, kAlpha, {0.3, 0.8});
  CHECK(std::abs(g_star - 0.5058) <= 0.005);
  const double l_star =
      find_threshold({.variant = models::Variant::LmgFrequency, .lambda = 0.3, .gamma = 2.0}, 1.3, kAlpha, {0.2, 0.6});
  CHECK(std::abs(l_star - 0.3559) <= 0.005);
  CHECK_THROWS_AS(find_threshold(qrm(0.5), 12.0, kAlpha, {0.6, 0.9}), NoSignChange);
}
