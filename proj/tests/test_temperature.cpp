#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "qfric/temperature.hpp"

using namespace qfric;
using doctest::Approx;

namespace {

constexpr double c = constants::c;
constexpr double pi = constants::pi;
constexpr double hbar = constants::hbar;
constexpr double k_B = constants::k_B;
constexpr double wp = 1.37e16;
const double wsp = wp / std::sqrt(2.0);

SystemState drude_state(double v_over_c, double z_wsp_over_c = 0.1, double gamma_over_wsp = 1e-2) {
  const double z = z_wsp_over_c * c / wsp;
  return SystemState{Drude(wp, gamma_over_wsp * wsp), Kinematics(z, v_over_c * c),
                     DipoleModel(Vector3(3.33564e-30, 0.0, 0.0), 0.5 * wsp, Averaging::IsotropicAverage)};
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> w;
  for (int i = 0; i < points; ++i) w.push_back(lo * std::pow(hi / lo, i / double(points - 1)));
  return w;
}

std::vector<double> t_over_tf(const SystemState& st, const std::vector<double>& omegas) {
  std::vector<double> t;
  for (double w : omegas) t.push_back(effective_temperature(st, w).T_v / tf_scale(st.kin));
  return t;
}

} // namespace

TEST_CASE("T_F scale") {
  const Kinematics kin(1e-8, 340.0);
  const double t_f = tf_scale(kin);
  CHECK(t_f == Approx(0.130).epsilon(0.01));
  CHECK(t_f == Approx(hbar * 340.0 / (2.0 * k_B * 1e-8)).epsilon(1e-15));
  CHECK(k_B * t_f / (2.0 * pi * hbar) == Approx(2.7e9).epsilon(0.02));
  CHECK(tf_scale(Kinematics(1e-8, 0.0)) == 0.0);
}

TEST_CASE("effective temperature limits on the first figure curve") {
  const SystemState st = drude_state(1e-6);
  const double vz = st.kin.v() / st.kin.z_a();
  const double t_f = tf_scale(st.kin);
  const double low = effective_temperature(st, 1e-3 * vz).T_v / t_f;
  const double high = effective_temperature(st, 30.0 * vz).T_v / t_f;
  CHECK(rel_diff(low, 3.0 / pi) < 0.01);
  CHECK(rel_diff(high, 1.0) < 0.01);
  CHECK(rel_diff(high / low, pi / 3.0) < 0.01);

  SystemState rest = st;
  rest.kin = Kinematics(st.kin.z_a(), 0.0);
  for (double r : {1e-3, 0.5, 1.0, 5.0}) {
    const TemperaturePoint p = effective_temperature(rest, r * wsp);
    CHECK(p.T_v == 0.0);
    CHECK(p.N_v == 0.0);
    CHECK(p.sigma.sigma_minus == 0.0);
  }
}

TEST_CASE("temperature guards") {
  SigmaPair s;
  s.sigma0 = 1.0;
  s.sigma_plus = 1.0;
  s.sigma_minus = 3.0;
  s.log_sigma_minus = std::log(3.0);
  CHECK_THROWS_AS(temperature_from_sigma(1e10, s, 1e-6), InvariantViolation);
  s.sigma_minus = 2.0;
  s.log_sigma_minus = std::log(2.0) - 1e-9;
  CHECK_THROWS_AS(temperature_from_sigma(1e10, s, 1e-6), NoConvergence);
  s.sigma_minus = -1.0;
  CHECK_THROWS_AS(temperature_from_sigma(1e10, s, 1e-6), InvariantViolation);

  SystemState flipped = drude_state(1e-6);
  flipped.flip_sigma_minus = true;
  CHECK_THROWS_AS(effective_temperature(flipped, 1e11), InvariantViolation);
}

TEST_CASE("zero-frequency limit") {
  const SystemState st = drude_state(1e-6);
  const double t_f = tf_scale(st.kin);
  const LowFrequencyAnalysis lf = low_frequency_analysis(st);
  CHECK(rel_diff(lf.temperature / t_f, 3.0 / pi) < 0.01);
  CHECK(lf.richardson_change < 1e-3);
  CHECK(lf.slope > 0.0);

  SUBCASE("insensitive to the damping") {
    for (double g : {1e-6, 1e-3, 1e-1}) {
      CAPTURE(g);
      CHECK(rel_diff(low_frequency_limit(drude_state(1e-6, 0.1, g)) / t_f, 3.0 / pi) < 0.01);
    }
  }
  SUBCASE("independent of |d|") {
    SystemState scaled = st;
    scaled.dip = st.dip.scaled(1e-3);
    CHECK(rel_diff(low_frequency_limit(scaled), lf.temperature) < 1e-9);
  }
  SUBCASE("at rest") {
    SystemState rest = st;
    rest.kin = Kinematics(st.kin.z_a(), 0.0);
    CHECK(low_frequency_limit(rest) == 0.0);
  }
  SUBCASE("rejects non-ohmic configurations") {
    SystemState ci{ConstantIndex(3.0), st.kin, st.dip};
    CHECK_THROWS_AS(low_frequency_limit(ci), NotOhmicError);
    CHECK_THROWS_AS(low_frequency_limit(drude_state(1e-6, 0.1, 0.0)), NotOhmicError);
    SystemState full = st;
    full.mode = GreenMode::FullTensor;
    CHECK_THROWS_AS(low_frequency_limit(full), NotOhmicError);
  }
}

TEST_CASE("Cherenkov temperature") {
  // hbar (0.01 c) / (2 k_B 10 nm), 40-digit evaluation
  CHECK(cherenkov_temperature(100.0, Kinematics(1e-8, 0.02 * c)) == Approx(1144.942259603839).epsilon(1e-13));
  CHECK(cherenkov_temperature(100.0, Kinematics(1e-8, c / 100.0)) == 0.0);
  CHECK(cherenkov_temperature(100.0, Kinematics(1e-8, 0.009 * c)) == 0.0);
  CHECK_THROWS_AS(cherenkov_temperature(1.0, Kinematics(1e-8, 0.5 * c)), DomainError);

  const DipoleModel dip(Vector3(3.33564e-30, 0.0, 0.0), 1e15, Averaging::IsotropicAverage);
  SUBCASE("full tensor below threshold reports zero") {
    const SystemState st{ConstantIndex(100.0), Kinematics(1e-8, 0.009 * c), dip, GreenMode::FullTensor};
    const TemperaturePoint p = effective_temperature(st, 50.0 * c / (1e-8 * 100.0));
    CHECK(p.T_v == 0.0);
    CHECK(p.N_v == 0.0);
  }
  SUBCASE("full tensor above threshold approaches the closed form at large frequency") {
    const Kinematics kin(1e-8, 0.02 * c);
    const SystemState st{ConstantIndex(100.0), kin, dip, GreenMode::FullTensor};
    const double w = 200.0 * c / (100.0 * kin.z_a());
    CHECK(rel_diff(effective_temperature(st, w).T_v, cherenkov_temperature(100.0, kin)) < 0.05);
  }
  SUBCASE("just above threshold the cone integral still converges") {
    // v - c / n is 7e-4 of v, so k and n w' / c agree to nine digits on the cone
    const Kinematics kin(1e-8, 3e6);
    const SystemState st{ConstantIndex(100.0), kin, dip, GreenMode::FullTensor};
    const double w = 200.0 * c / (100.0 * kin.z_a());
    CHECK(rel_diff(effective_temperature(st, w).T_v, cherenkov_temperature(100.0, kin)) < 1e-3);
  }
}

TEST_CASE("transition rates") {
  SystemState st = drude_state(1e-6);
  const double vz = st.kin.v() / st.kin.z_a();
  st.dip = DipoleModel(st.dip.d(), 2.0 * vz, st.dip.averaging());
  const RatePair r = transition_rates(st);
  CHECK(r.gamma_down > r.gamma_up);
  CHECK(r.gamma_up > 0.0);
  CHECK(rel_diff(temperature_from_rates(st.dip.omega_a(), r), effective_temperature(st, st.dip.omega_a()).T_v) < 1e-12);

  const SystemState fig = drude_state(1e-6);
  const RatePair rf = transition_rates(fig);
  CHECK(std::log(rf.gamma_down) > rf.log_gamma_up);

  SystemState rest = st;
  rest.kin = Kinematics(st.kin.z_a(), 0.0);
  const RatePair r0 = transition_rates(rest);
  CHECK(r0.gamma_up == 0.0);
  CHECK(r0.gamma_down > 0.0);
  CHECK(temperature_from_rates(st.dip.omega_a(), r0) == 0.0);
}

TEST_CASE("Bose-Einstein reference") {
  CHECK(bose_einstein(1e12, 0.0) == 0.0);
  CHECK(bose_einstein(-1e12, 0.0) == -1.0);
  const double T = 3.7;
  const double w = k_B * T * std::log(2.0) / hbar;
  CHECK(bose_einstein(w, T) == Approx(1.0).epsilon(1e-14));
  for (double x : {1e9, 3e11, 5e13}) CHECK(-bose_einstein(-x, T) == Approx(bose_einstein(x, T) + 1.0).epsilon(1e-14));
  CHECK_THROWS_AS(bose_einstein(0.0, T), DomainError);
  CHECK_THROWS_AS(bose_einstein(1e12, -1.0), DomainError);
}

TEST_CASE("figure curves are flat within 10% of T_F") {
  for (double vc : {1e-6, 1e-3}) {
    const SystemState st = drude_state(vc);
    const double vz = st.kin.v() / st.kin.z_a();
    const auto grid = log_grid(std::min(1e-3 * wsp, 1e-2 * vz), 10.0 * wsp, 120);
    double worst = 0.0;
    for (double t : t_over_tf(st, grid)) worst = std::max(worst, std::abs(t - 1.0));
    CAPTURE(vc);
    CHECK(worst < 0.10);
  }
}

TEST_CASE("surface plasmon dip") {
  for (double vc : {1e-6, 1e-5, 1e-3}) {
    const SystemState st = drude_state(vc);
    const auto grid = log_grid(0.8 * wsp, 1.25 * wsp, 91);
    const auto t = t_over_tf(st, grid);
    const std::size_t i = std::min_element(t.begin(), t.end()) - t.begin();
    CAPTURE(vc);
    CHECK(i > 0);
    CHECK(i + 1 < t.size());
    CHECK(std::abs(grid[i] / wsp - 1.0) < 0.05);
  }
}

TEST_CASE("steepest feature away from the plasmon sits near v/z") {
  for (double vc : {1e-6, 1e-3}) {
    const SystemState st = drude_state(vc);
    const double vz = st.kin.v() / st.kin.z_a();
    const auto grid = log_grid(std::min(1e-3 * wsp, 1e-2 * vz), 10.0 * wsp, 300);
    const auto t = t_over_tf(st, grid);
    double steepest = 0.0, where = 0.0;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
      const double mid = std::sqrt(grid[i] * grid[i + 1]);
      if (mid > 0.7 * wsp && mid < 1.4 * wsp) continue;
      const double slope = std::abs(t[i + 1] - t[i]) / (grid[i + 1] - grid[i]);
      if (slope > steepest) {
        steepest = slope;
        where = mid;
      }
    }
    CAPTURE(vc);
    CHECK(where / vz > 1.0 / 3.0);
    CHECK(where / vz < 3.0);
  }
}

TEST_CASE("damping changes the curves by less than 5% of T_F") {
  const auto base = drude_state(1e-6);
  const double vz = base.kin.v() / base.kin.z_a();
  const auto grid = log_grid(std::min(1e-3 * wsp, 1e-2 * vz), 10.0 * wsp, 60);
  std::vector<std::vector<double>> curves;
  for (double g : {1e-6, 1e-3, 1e-1}) curves.push_back(t_over_tf(drude_state(1e-6, 0.1, g), grid));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double hi = std::max({curves[0][i], curves[1][i], curves[2][i]});
    const double lo = std::min({curves[0][i], curves[1][i], curves[2][i]});
    CAPTURE(grid[i] / wsp);
    CHECK(hi - lo < 0.05);
  }
}

// The ratio N_v / n(w, T_F) grows without bound in the Boltzmann tail: a few percent
// in T_v becomes a factor exp(2 w z / v * dT / T) in the occupation.
TEST_CASE("N_v within 15% of n(w, T_F) above 3 v/z" * doctest::should_fail()) {
  const SystemState st = drude_state(1e-6);
  const double vz = st.kin.v() / st.kin.z_a();
  const double t_f = tf_scale(st.kin);
  double worst = 0.0;
  for (double w : log_grid(3.0 * vz, 300.0 * vz, 40)) {
    const double n = bose_einstein(w, t_f);
    worst = std::max(worst, std::abs(effective_temperature(st, w).N_v / n - 1.0));
  }
  CHECK(worst < 0.15);
}

TEST_CASE("N_v matches n(w, T_F) in logarithm above 3 v/z") {
  const SystemState st = drude_state(1e-6);
  const double vz = st.kin.v() / st.kin.z_a();
  const double t_f = tf_scale(st.kin);
  for (double w : log_grid(3.0 * vz, 300.0 * vz, 40)) {
    const double ln_n = std::log(bose_einstein(w, t_f));
    const double ln_nv = std::log(effective_temperature(st, w).N_v);
    CAPTURE(w / vz);
    CHECK(std::abs(ln_nv / ln_n - 1.0) < 0.15);
  }
}
