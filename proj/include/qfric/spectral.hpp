#pragma once

#include <complex>
#include <limits>

#include "qfric/core.hpp"
#include "qfric/greens.hpp"
#include "qfric/materials.hpp"
#include "qfric/quadrature.hpp"

namespace qfric {

enum class GreenMode { NearField, FullTensor };

/// Quadrature tolerances. `abs` is in units of sigma_ref.
struct Tolerances {
  double rel = 1e-8;
  double abs = 1e-30;
};

struct SystemState {
  Material material;
  Kinematics kin;
  DipoleModel dip;
  GreenMode mode = GreenMode::NearField;
  Tolerances tol{};
  /// Test hook: reports -Sigma^- so that consistency checks can be shown to fail.
  bool flip_sigma_minus = false;
};

/// z_a |omega| / c > 1 takes the quasi-static form outside its range of validity.
bool near_field_regime_warning(const SystemState& state, double omega) noexcept;

/// Sigma functions in joules. Sigma^- decays like exp(-2 omega z_a / v) and
/// underflows long before it stops mattering, so its logarithm is kept too.
struct SigmaPair {
  double sigma_plus = 0.0;
  double sigma_minus = 0.0;
  double sigma0 = 0.0;
  double log_sigma_minus = -std::numeric_limits<double>::infinity();
  // ln((Sigma0 + Sigma+) / Sigma-) formed from the |d|-free integrals; NaN when not set.
  double log_ratio = std::numeric_limits<double>::quiet_NaN();
};

/// ln((Sigma0 + Sigma+) / Sigma-), preferring the stored |d|-free value.
double log_sigma_ratio(const SigmaPair& s);

/// Sigma^+, Sigma^- and the vacuum term at omega > 0.
SigmaPair sigma_pm(const SystemState& state, double omega);

/// Sigma^+(omega) for any real omega (Sigma^+(-w) = Sigma^-(w)). Used by the
/// zero-frequency expansion.
double sigma_plus_any(const SystemState& state, double omega);

/// Surface part of Delta(omega): the full-plane integral of d . g(k, k.v + omega) . d, in joules.
std::complex<double> surface_self_energy(const SystemState& state, double omega);

/// Scalar coefficient of d d in the dressed polarizability,
///   alpha_s = 1 / (B^-1 - Delta),  B = 2 w_a / (hbar (w_a^2 - w^2)),
/// with Delta = surface_self_energy + i sign(w) Sigma^(0)(|w|). The vacuum
/// line shift is taken as already contained in w_a.
std::complex<double> dressed_polarizability(const SystemState& state, double omega);

/// Same, with Delta supplied by the caller.
std::complex<double> dressed_polarizability(const SystemState& state, double omega, std::complex<double> delta);

/// Steady-state spectrum projected on d, (hbar / pi) |alpha_s|^2 times the
/// Doppler-restricted loss integral (Sigma^(0) + Sigma^+ for w > 0, Sigma^- at |w| for w < 0).
double power_spectrum(const SystemState& state, double omega);

/// N_v from Sigma values at a positive frequency.
double occupation_from_sigma(const SigmaPair& s);

/// N_v(omega); negative frequencies use -N(-w) = N(w) + 1.
double occupation_number(const SystemState& state, double omega);

} // namespace qfric
