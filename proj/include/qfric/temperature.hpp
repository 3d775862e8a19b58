#pragma once

#include "qfric/core.hpp"
#include "qfric/spectral.hpp"

namespace qfric {

struct TemperaturePoint {
  double omega = 0.0;
  double T_v = 0.0; // K
  double N_v = 0.0;
  SigmaPair sigma;
};

/// Motion-induced transition rates at omega_a, in s^-1 up to the common
/// (2 pi)^3 normalisation of the Sigma functions.
struct RatePair {
  double gamma_up = 0.0;   // ground -> excited, from Sigma^-
  double gamma_down = 0.0; // excited -> ground, from Sigma^(0) + Sigma^+
  double log_gamma_up = -std::numeric_limits<double>::infinity();
};

/// T_v = (hbar w / k_B) / ln[(Sigma^(0) + Sigma^+) / Sigma^-]; zero when Sigma^- vanishes.
/// `noise_floor` is the smallest log-ratio distinguishable from quadrature error.
TemperaturePoint temperature_from_sigma(double omega, const SigmaPair& s, double noise_floor);

TemperaturePoint effective_temperature(const SystemState& state, double omega);

/// T_F = hbar v / (2 k_B z_a).
double tf_scale(const Kinematics& kin) noexcept;

struct LowFrequencyAnalysis {
  double temperature = 0.0; // K
  double sigma_zero = 0.0;  // Sigma_v(0), J
  double slope = 0.0;       // d Sigma^+ / d omega at 0, J s
  double step = 0.0;        // finite-difference step h, rad/s
  double richardson_change = 0.0; // relative change of the slope between h and h/2
};

/// Zero-frequency limit (hbar / 2 k_B) Sigma_v(0) / sigma_v from a central
/// difference of Sigma^+ across omega = 0 with a Richardson step-halving check.
/// Requires a dissipative Drude surface in near-field mode.
LowFrequencyAnalysis low_frequency_analysis(const SystemState& state);
double low_frequency_limit(const SystemState& state);

/// (hbar / (2 k_B z_a)) max(0, v - c / n).
double cherenkov_temperature(double n_eps, const Kinematics& kin);

RatePair transition_rates(const SystemState& state);

/// (hbar w / k_B) / ln(gamma_down / gamma_up).
double temperature_from_rates(double omega, const RatePair& rates);

/// 1 / (exp(hbar w / k_B T) - 1). At T = 0 returns 0 for w > 0 and -1 for w < 0.
double bose_einstein(double omega, double T);

} // namespace qfric
