#include "qfric/selftest.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "qfric/quadrature_suite.hpp"
#include "qfric/scan.hpp"

namespace qfric {

namespace {

using constants::c;
using constants::hbar;
using constants::pi;

double rel_diff(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Ohmic reference surface, slowest curve of the first figure panel.
SystemState reference_state(const SelftestOptions& opt) {
  SystemState st = to_system_state(figure2_curves('a', "").front().config);
  st.tol.rel *= opt.tolerance_scale;
  st.flip_sigma_minus = opt.inject_sigma_minus_flip;
  return st;
}

} // namespace

std::vector<CheckResult> run_selftest(const SelftestOptions& opt, std::ostream& out) {
  std::vector<CheckResult> results;
  auto record = [&](const std::string& name, double error, double threshold) {
    const bool ok = error < threshold;
    results.push_back({name, ok, error, threshold});
    char line[256];
    std::snprintf(line, sizeof line, "%s  %-44s error=%.3e  threshold=%.1e\n", ok ? "PASS" : "FAIL", name.c_str(), error,
                  threshold);
    out << line << std::flush;
  };
  auto guarded = [&](const std::string& name, double threshold, auto&& check) {
    try {
      record(name, check(), threshold);
    } catch (const std::exception& e) {
      results.push_back({name, false, INFINITY, threshold});
      out << "FAIL  " << name << "  (" << e.what() << ")\n";
    }
  };

  const double rel = 1e-8 * opt.tolerance_scale;
  const SystemState st = reference_state(opt);
  const double z = st.kin.z_a();
  const double v = st.kin.v();
  const double t_f = tf_scale(st.kin);

  guarded("gamma moment int k^3 exp(-2kz) dk", 10 * 1e-8, [&] {
    auto f = [z](double k, double) { return k * k * std::exp(-2.0 * k * z); };
    const double value = integrate_halfplane(f, FullPlane{}, st.kin, rel, 0.0).value * 2.0 * pi;
    return rel_diff(value, 3.0 / (8.0 * std::pow(z, 4)));
  });

  guarded("zero-frequency ohmic kernel", 10 * 1e-8, [&] {
    auto f = [z, v](double k, double phi) { return k * v * std::cos(phi) * k * std::exp(-2.0 * k * z); };
    const double value = integrate_halfplane(f, HalfPlaneShifted{+1, 0.0, v}, st.kin, rel, 0.0).value;
    return rel_diff(value, 3.0 * v / (16.0 * pi * pi * std::pow(z, 4)));
  });

  guarded("oracle vs adaptive, 20 integrands", 1e-6, [&] {
    double worst = 0.0;
    HalfPlaneOptions o;
    o.rel_tol = 1e-10 * opt.tolerance_scale;
    o.abs_tol = 0.0;
    for (const SuiteCase& sc : physical_integrand_suite()) {
      const double a = integrate_halfplane(sc.f, sc.region, sc.kin, o).value;
      const double g = oracle_grid_integrate(sc.f, sc.region, sc.kin, 1024, 1024);
      worst = std::max(worst, rel_diff(a, g));
    }
    return worst;
  });

  guarded("low-frequency limit T/T_F = 3/pi", 1e-5,
          [&] { return rel_diff(low_frequency_limit(st) / t_f, 3.0 / pi); });

  guarded("high-frequency limit T/T_F = 1 at 30 v/z", 1e-2,
          [&] { return rel_diff(effective_temperature(st, 30.0 * v / z).T_v / t_f, 1.0); });

  guarded("Cherenkov threshold, v = 0.009 c gives T = 0", 1e-300, [&] {
    SystemState ch{ConstantIndex(100.0), Kinematics(1e-8, 0.009 * c), st.dip, GreenMode::FullTensor, st.tol,
                   st.flip_sigma_minus};
    return effective_temperature(ch, 50.0 * c / (1e-8 * 100.0)).T_v;
  });

  guarded("Cherenkov temperature, v = 0.02 c", 5e-2, [&] {
    const Kinematics kin(1e-8, 0.02 * c);
    SystemState ch{ConstantIndex(100.0), kin, st.dip, GreenMode::FullTensor, st.tol, st.flip_sigma_minus};
    const double w = 200.0 * (kin.v() - c / 100.0) / kin.z_a();
    return rel_diff(effective_temperature(ch, w).T_v, cherenkov_temperature(100.0, kin));
  });

  // Im alpha_s from the full-plane self-energy against |alpha_s|^2 (Sigma0 + Sigma+ - Sigma-).
  guarded("polarizability identity Im a = |a|^2 Im Delta", 1e-4, [&] {
    const double wsp = make_reference_scales(st.material, st.kin, st.dip).omega_ref;
    double worst = 0.0;
    for (double r : {1e-3, 0.1, 0.5, 1.0, 3.0}) {
      const double w = r * wsp;
      const auto delta = surface_self_energy(st, w) + std::complex<double>(0.0, vacuum_sigma0(st.dip, w));
      const auto alpha = dressed_polarizability(st, w, delta);
      const SigmaPair s = sigma_pm(st, w);
      worst = std::max(worst, rel_diff(std::norm(alpha) * (s.sigma0 + s.sigma_plus - s.sigma_minus), alpha.imag()));
    }
    return worst;
  });

  // N(-w) from the spectrum and Im alpha_s at negative frequency, against N(w) + 1 from the Sigma ratio.
  guarded("reflection identity -N(-w) = N(w) + 1", 1e-4, [&] {
    double worst = 0.0;
    for (double r : {0.5, 1.0, 2.0}) {
      const double w = r * v / z;
      const auto alpha = dressed_polarizability(st, -w);
      const double spectrum = power_spectrum(st, -w);
      const double n_negative = spectrum / (hbar / pi * alpha.imag()) - 1.0;
      const double n_positive = occupation_from_sigma(sigma_pm(st, w));
      worst = std::max(worst, rel_diff(-n_negative, n_positive + 1.0));
    }
    return worst;
  });

  guarded("spectrum S = (hbar/pi)(N + 1) Im alpha", 1e-4, [&] {
    double worst = 0.0;
    for (double r : {0.5, 2.0, 10.0}) {
      const double w = r * v / z;
      const double n = occupation_from_sigma(sigma_pm(st, w));
      const double rhs = hbar / pi * (n + 1.0) * dressed_polarizability(st, w).imag();
      worst = std::max(worst, rel_diff(power_spectrum(st, w), rhs));
    }
    return worst;
  });

  return results;
}

} // namespace qfric
