#include <cmath>
#include <random>

#include "doctest.h"
#include "qfric/quadrature_suite.hpp"

using namespace qfric;
using doctest::Approx;

namespace {

constexpr double pi = constants::pi;

double rel_diff(double a, double b) { return std::abs(a - b) / std::abs(b); }

} // namespace

TEST_CASE("one-dimensional Gauss-Kronrod") {
  const double pts[] = {0.0, 1.0};
  const auto r = integrate_adaptive([](double x) { return std::exp(x); }, pts, {1e-12, 0.0, 200});
  CHECK(r.converged);
  CHECK(r.value == Approx(std::exp(1.0) - 1.0).epsilon(1e-13));
  CHECK(r.abs_error_estimate <= 1e-12 * r.value);

  const auto s = integrate_adaptive([](double x) { return std::sqrt(x); }, pts, {1e-10, 0.0, 500});
  CHECK(s.converged);
  CHECK(s.value == Approx(2.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("Gamma moment over the full plane") {
  const double z = 1e-8;
  const Kinematics kin(z, 100.0);
  auto f = [z](double k, double) { return k * k * std::exp(-2.0 * k * z); };
  for (double rel : {1e-6, 1e-8, 1e-10}) {
    const QuadratureResult r = integrate_halfplane(f, FullPlane{}, kin, rel, 0.0);
    CHECK(r.converged);
    const double radial = r.value * 4.0 * pi * pi / (2.0 * pi);
    CHECK(rel_diff(radial, 3.0 / (8.0 * std::pow(z, 4))) < rel);
    CHECK(r.abs_error_estimate <= rel * r.value);
  }
}

TEST_CASE("zero-frequency ohmic kernel on the forward half-plane") {
  const double z = 1e-8, v = 250.0;
  const Kinematics kin(z, v);
  auto f = [=](double k, double phi) { return k * v * std::cos(phi) * k * std::exp(-2.0 * k * z); };
  const QuadratureResult r = integrate_halfplane(f, HalfPlaneShifted{+1, 0.0, v}, kin);
  CHECK(rel_diff(r.value, 3.0 * v / (16.0 * pi * pi * std::pow(z, 4))) < 1e-8);

  const double oracle = oracle_grid_integrate(f, HalfPlaneShifted{+1, 0.0, v}, kin, 4096, 4096);
  CHECK(rel_diff(oracle, r.value) < 1e-6);
}

TEST_CASE("empty support short-circuits") {
  const Kinematics kin(1e-8, 0.0);
  int calls = 0;
  auto f = [&](double, double) {
    ++calls;
    return 1.0;
  };
  const QuadratureResult r = integrate_halfplane(f, HalfPlaneShifted{-1, 1e10, 0.0}, kin);
  CHECK(r.value == 0.0);
  CHECK(r.converged);
  CHECK(r.evaluations == 0);
  CHECK(calls == 0);
  CHECK(region_is_empty(CherenkovCone{1e10, 0.009 * constants::c, 100.0}));
  CHECK_FALSE(region_is_empty(CherenkovCone{1e10, 0.02 * constants::c, 100.0}));
}

TEST_CASE("oracle basics") {
  const double z = 1e-8;
  const Kinematics kin(z, 100.0);
  CHECK(oracle_grid_integrate([](double, double) { return 0.0; }, FullPlane{}, kin, 64, 64) == 0.0);
  CHECK_THROWS_AS(oracle_grid_integrate([](double, double) { return 1.0; }, FullPlane{}, kin, 32, 64), DomainError);

  // The sin^2 grading makes the rule spectrally accurate: the error falls from 64 to 128
  // points and is at rounding level from 512 upwards.
  auto f = [z](double k, double) { return k * k * std::exp(-2.0 * k * z); };
  const double exact = 3.0 / (16.0 * pi * std::pow(z, 4));
  const double e64 = rel_diff(oracle_grid_integrate(f, FullPlane{}, kin, 64, 64), exact);
  const double e128 = rel_diff(oracle_grid_integrate(f, FullPlane{}, kin, 128, 128), exact);
  CHECK(e128 < e64);
  for (int n : {512, 1024, 2048, 4096}) CHECK(rel_diff(oracle_grid_integrate(f, FullPlane{}, kin, n, n), exact) < 1e-13);
}

TEST_CASE("support of the backward Doppler half-plane") {
  // Indicator of {k v cos(phi) > w} weighted by exp(-2 k z): the radial integral is
  // exp(-2 k0 z)(2 k0 z + 1)/(4 z^2) with k0 = w / (v cos(phi)).
  const double z = 1e-8, v = 300.0;
  const Kinematics kin(z, v);
  for (double w_unit : {0.2, 2.0, 15.0}) {
    const double w = w_unit * v / z;
    const double phi_pts[] = {-pi / 2, 0.0, pi / 2};
    const auto angular = integrate_adaptive(
        [&](double phi) {
          const double cs = std::cos(phi);
          if (cs <= 0.0) return 0.0;
          const double k0z = w * z / (v * cs);
          return std::exp(-2.0 * k0z) * (2.0 * k0z + 1.0) / (4.0 * z * z);
        },
        phi_pts, {1e-12, 0.0, 2000});
    const double expected = angular.value / (4.0 * pi * pi);
    auto f = [z](double k, double) { return std::exp(-2.0 * k * z); };
    const QuadratureResult r = integrate_halfplane(f, HalfPlaneShifted{-1, w, v}, kin, 1e-9, 0.0);
    CHECK(rel_diff(r.value, expected) < 1e-8);
  }
}

TEST_CASE("region membership matches the Heaviside condition") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double v = 0.02 * constants::c;
  for (int i = 0; i < 10000; ++i) {
    const double k = u(rng) * 1e9;
    const double phi = (2.0 * u(rng) - 1.0) * pi;
    const double w = u(rng) * 1e16;
    CHECK(region_contains(HalfPlaneShifted{+1, w, v}, k, phi) == (k * v * std::cos(phi) + w > 0.0));
    CHECK(region_contains(HalfPlaneShifted{-1, w, v}, k, phi) == (k * v * std::cos(phi) - w > 0.0));
    const bool cone = k * (v * std::cos(phi) - constants::c / 100.0) > w;
    CHECK(region_contains(CherenkovCone{w, v, 100.0}, k, phi) == cone);
  }
}

TEST_CASE("tail cutoff beyond u = 40 is below the absolute tolerance") {
  const Kinematics kin(1.0, 0.5);
  auto f = [](double k, double phi) { return (1.0 + 0.3 * std::cos(phi)) * k * k * std::exp(-2.0 * k); };
  const double abs_tol = 1e-12;
  HalfPlaneOptions short_tail;
  short_tail.rel_tol = 1e-12;
  short_tail.abs_tol = abs_tol;
  short_tail.tail_span = 40.0;
  HalfPlaneOptions long_tail = short_tail;
  long_tail.tail_span = 80.0;
  for (const SupportRegion& region :
       {SupportRegion(FullPlane{}), SupportRegion(HalfPlaneShifted{+1, 0.3, 0.5}), SupportRegion(HalfPlaneShifted{-1, 0.3, 0.5})}) {
    const double a = integrate_halfplane(f, region, kin, short_tail).value;
    const double b = integrate_halfplane(f, region, kin, long_tail).value;
    CHECK(std::abs(a - b) < abs_tol);
  }
}

TEST_CASE("budget exhaustion carries the best estimate") {
  const Kinematics kin(1e-8, 100.0);
  auto f = [](double k, double phi) { return std::sqrt(std::abs(std::sin(40.0 * phi))) * std::exp(-2e-8 * k); };
  HalfPlaneOptions opts;
  opts.rel_tol = 1e-13;
  opts.max_evaluations = 5000;
  try {
    integrate_halfplane(f, FullPlane{}, kin, opts);
    FAIL("expected NoConvergence");
  } catch (const NoConvergence& e) {
    CHECK_FALSE(e.best().converged);
    CHECK(e.best().value > 0.0);
    CHECK(e.best().abs_error_estimate > 0.0);
  }
  CHECK_THROWS_AS(integrate_halfplane(f, FullPlane{}, kin, 1e-16, 0.0), DomainError);
  CHECK_THROWS_AS(integrate_halfplane(f, FullPlane{}, kin, 0.1, 0.0), DomainError);
}

TEST_CASE("converged results honour their error bound") {
  for (const SuiteCase& sc : physical_integrand_suite()) {
    CAPTURE(sc.name);
    HalfPlaneOptions opts;
    opts.rel_tol = 1e-9;
    opts.abs_tol = 0.0;
    const QuadratureResult r = integrate_halfplane_result(sc.f, sc.region, sc.kin, opts);
    CHECK(r.converged);
    CHECK(r.abs_error_estimate <= 1e-9 * std::abs(r.value));
  }
}

TEST_CASE("adaptive and oracle agree on the physical suite") {
  const auto suite = physical_integrand_suite();
  CHECK(suite.size() == 20);
  for (const SuiteCase& sc : suite) {
    CAPTURE(sc.name);
    HalfPlaneOptions opts;
    opts.rel_tol = 1e-10;
    opts.abs_tol = 0.0;
    const QuadratureResult r = integrate_halfplane_result(sc.f, sc.region, sc.kin, opts);
    REQUIRE(r.converged);
    const double oracle = oracle_grid_integrate(sc.f, sc.region, sc.kin, 1024, 1024);
    CHECK(rel_diff(r.value, oracle) < 1e-6);
  }
}
