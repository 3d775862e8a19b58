#include "qfric/temperature.hpp"

#include <algorithm>
#include <cmath>

namespace qfric {

using constants::hbar;
using constants::k_B;

TemperaturePoint temperature_from_sigma(double omega, const SigmaPair& s, double noise_floor) {
  TemperaturePoint p;
  p.omega = omega;
  p.sigma = s;
  if (s.sigma_minus < 0.0) throw InvariantViolation("effective_temperature: Sigma- is negative");
  if (s.sigma_minus == 0.0 && !std::isfinite(s.log_sigma_minus)) return p;

  const double ln_ratio = log_sigma_ratio(s);
  if (ln_ratio <= -noise_floor)
    throw InvariantViolation("effective_temperature: (Sigma0 + Sigma+) / Sigma- < 1");
  if (ln_ratio < noise_floor)
    throw NoConvergence("effective_temperature: Sigma ratio indistinguishable from 1", QuadratureResult{});
  p.T_v = hbar * omega / (k_B * ln_ratio);
  p.N_v = 1.0 / std::expm1(ln_ratio);
  return p;
}

TemperaturePoint effective_temperature(const SystemState& state, double omega) {
  return temperature_from_sigma(omega, sigma_pm(state, omega), 100.0 * state.tol.rel);
}

double tf_scale(const Kinematics& kin) noexcept { return hbar * kin.v() / (2.0 * k_B * kin.z_a()); }

LowFrequencyAnalysis low_frequency_analysis(const SystemState& state) {
  const auto* drude = std::get_if<Drude>(&state.material);
  if (state.mode != GreenMode::NearField || drude == nullptr || !(drude->gamma() > 0.0))
    throw NotOhmicError("low_frequency_limit: needs a Drude surface with gamma > 0 in near-field mode");

  LowFrequencyAnalysis out;
  const double v = state.kin.v();
  if (v == 0.0) return out;

  // The slope comes from a difference of nearly equal integrals, so tighten the rule.
  SystemState tight = state;
  tight.tol.rel = std::min(state.tol.rel, 1e-11);

  const double h = 1e-3 * v / state.kin.z_a();
  auto slope = [&](double step) {
    return (sigma_plus_any(tight, step) - sigma_plus_any(tight, -step)) / (2.0 * step);
  };
  const double coarse = slope(h);
  const double fine = slope(0.5 * h);
  out.slope = (4.0 * fine - coarse) / 3.0;
  out.step = h;
  out.richardson_change = std::abs(fine - coarse) / std::abs(out.slope);
  if (!(out.richardson_change < 1e-3))
    throw NoConvergence("low_frequency_limit: finite-difference slope not converged", QuadratureResult{});

  out.sigma_zero = sigma_plus_any(tight, 0.0);
  out.temperature = hbar / (2.0 * k_B) * out.sigma_zero / out.slope;
  return out;
}

double low_frequency_limit(const SystemState& state) { return low_frequency_analysis(state).temperature; }

double cherenkov_temperature(double n_eps, const Kinematics& kin) {
  if (!(n_eps > 1.0)) throw DomainError("cherenkov_temperature: n_eps must be > 1");
  return hbar / (2.0 * k_B * kin.z_a()) * std::max(0.0, kin.v() - constants::c / n_eps);
}

RatePair transition_rates(const SystemState& state) {
  const double wa = state.dip.omega_a();
  const SigmaPair s = sigma_pm(state, wa);
  const double prefactor = 2.0 * std::pow(2.0 * constants::pi, 3) / hbar;
  RatePair r;
  r.gamma_down = prefactor * (s.sigma0 + s.sigma_plus);
  r.gamma_up = prefactor * s.sigma_minus;
  r.log_gamma_up = std::log(prefactor) + s.log_sigma_minus;
  return r;
}

double temperature_from_rates(double omega, const RatePair& rates) {
  if (!std::isfinite(rates.log_gamma_up)) return 0.0;
  return hbar * omega / (k_B * (std::log(rates.gamma_down) - rates.log_gamma_up));
}

double bose_einstein(double omega, double T) {
  if (!(T >= 0.0)) throw DomainError("bose_einstein: T must be >= 0");
  if (omega == 0.0) throw DomainError("bose_einstein: omega must be nonzero");
  if (T == 0.0) return omega > 0.0 ? 0.0 : -1.0;
  return 1.0 / std::expm1(hbar * omega / (k_B * T));
}

} // namespace qfric
