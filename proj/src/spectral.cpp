#include "qfric/spectral.hpp"

#include <cmath>
#include <string>

namespace qfric {

namespace {

using constants::c;
using constants::eps0;
using constants::hbar;
using constants::pi;

// Sigma at shift s is the integral of d . g_I(k, k v cos(phi) + s) . d over
// {k v cos(phi) + s > 0}: s = +w gives Sigma^+(w), s = -w gives Sigma^-(w).
struct ShiftedSigma {
  double value = 0.0;
  double log_value = -std::numeric_limits<double>::infinity();
  // same quantity in units of sigma_ref
  double reduced = 0.0;
  double log_reduced = -std::numeric_limits<double>::infinity();
};

bool ohmic_surface(const SystemState& st) {
  return st.mode == GreenMode::FullTensor || is_dissipative(st.material);
}

double scaled_projection(const SystemState& st, const ComplexTensor3& g) {
  const double z = st.kin.z_a();
  return z * z * z * eps0 * st.dip.unit_projection(g.real());
}

// k^2 - n^2 w'^2 / c^2 with w' = k v cos(phi) + shift, factored so that the difference
// k - n w' / c is never formed from two nearly equal numbers. Close to the Cherenkov
// threshold k and n w' / c agree to many digits and the direct form is mostly noise.
double medium_kappa2(double n, double v, double k, double phi, double shift) {
  const double s = std::sin(0.5 * phi);
  const double lag = (c / n - v) + 2.0 * v * s * s; // c / n - v cos(phi)
  const double below = (n / c) * (k * lag - shift);  // k - n w' / c
  const double w_shifted = k * v * std::cos(phi) + shift;
  return below * (k + n * w_shifted / c);
}

// z^3 eps0 d_hat . g_I . d_hat at Doppler frequency w', multiplied by exp(log_scale).
double loss_density(const SystemState& st, double k, double phi, double shift, double log_scale) {
  const Eigen::Vector2d k_vec(k * std::cos(phi), k * std::sin(phi));
  const double z = st.kin.z_a();
  const double v = st.kin.v();
  const double w_shifted = k * v * std::cos(phi) + shift;
  if (st.mode == GreenMode::NearField)
    return scaled_projection(st, near_field_g(st.material, k_vec, z, w_shifted, GreenPart::Imag, log_scale));
  double km2 = std::numeric_limits<double>::quiet_NaN();
  if (const auto* ci = std::get_if<ConstantIndex>(&st.material)) km2 = medium_kappa2(ci->n_eps(), v, k, phi, shift);
  const Eigen::Matrix3d gi = imag_symmetric(full_scattered_g(st.material, k_vec, z, w_shifted, log_scale, km2));
  return z * z * z * eps0 * st.dip.unit_projection(gi);
}

// k > 0 solutions of |k v cos(phi) + shift| = k u.
void light_line(double shift, double vc, double u, std::vector<double>& out) {
  if (u != vc) {
    const double k = shift / (u - vc);
    if (k > 0.0) out.push_back(k);
  }
  if (u != -vc) {
    const double k = -shift / (u + vc);
    if (k > 0.0) out.push_back(k);
  }
}

RadialBreaks make_breaks(const SystemState& st, double shift) {
  const double v = st.kin.v();
  const Material mat = st.material;
  if (st.mode == GreenMode::NearField) {
    const auto* drude = std::get_if<Drude>(&mat);
    if (drude == nullptr || v == 0.0) return {};
    const double wsp = drude->omega_sp();
    // Doppler frequency crossing the surface plasmon
    return [=](double phi, std::vector<double>& out) {
      const double vc = v * std::cos(phi);
      if (vc == 0.0) return;
      for (double target : {wsp, -wsp}) {
        const double k = (target - shift) / vc;
        if (k > 0.0) out.push_back(k);
      }
    };
  }
  const double n = std::holds_alternative<ConstantIndex>(mat) ? std::get<ConstantIndex>(mat).n_eps() : 0.0;
  return [=](double phi, std::vector<double>& out) {
    const double vc = v * std::cos(phi);
    light_line(shift, vc, c, out);
    if (n > 0.0) light_line(shift, vc, c / n, out);
  };
}

// Lower bound of 2 Re(kappa) z_a over the support of Sigma at a negative shift.
double minus_log_scale(const SystemState& st, double w) {
  const double v = st.kin.v();
  const double z = st.kin.z_a();
  if (st.mode == GreenMode::NearField) return 2.0 * w * z / v;
  const double beta = v / c;
  const double contraction = std::sqrt(1.0 - beta * beta);
  if (const auto* ci = std::get_if<ConstantIndex>(&st.material))
    return 2.0 * z * w / (v - c / ci->n_eps()) * contraction;
  return 2.0 * z * (w / v) * contraction;
}

ShiftedSigma sigma_shifted(const SystemState& st, double shift, const char* name) {
  ShiftedSigma out;
  const double v = st.kin.v();
  if (!ohmic_surface(st)) return out;
  if (shift <= 0.0 && v == 0.0) return out;

  SupportRegion region = HalfPlaneShifted{+1, shift, v};
  double log_scale = 0.0;
  if (shift < 0.0) {
    if (st.mode == GreenMode::FullTensor) {
      if (const auto* ci = std::get_if<ConstantIndex>(&st.material)) region = CherenkovCone{-shift, v, ci->n_eps()};
    }
    if (region_is_empty(region)) return out;
    log_scale = minus_log_scale(st, -shift);
  }

  HalfPlaneOptions opts;
  opts.rel_tol = st.tol.rel;
  opts.abs_tol = st.tol.abs;
  opts.radial_breaks = make_breaks(st, shift);

  auto f = [&](double k, double phi) {
    return loss_density(st, k, phi, shift, log_scale);
  };
  QuadratureResult r;
  try {
    r = integrate_halfplane(f, region, st.kin, opts);
  } catch (const NoConvergence& e) {
    throw NoConvergence(std::string(name) + ": " + e.what(), e.best());
  }

  const double sigma_ref = make_reference_scales(st.material, st.kin, st.dip).sigma_ref;
  out.reduced = r.value * std::exp(-log_scale);
  if (r.value > 0.0) {
    out.log_reduced = std::log(r.value) - log_scale;
    out.log_value = std::log(sigma_ref) + std::log(r.value) - log_scale;
    out.value = std::exp(out.log_value);
  } else {
    out.value = sigma_ref * r.value * std::exp(-log_scale);
  }
  return out;
}

} // namespace

bool near_field_regime_warning(const SystemState& state, double omega) noexcept {
  return state.mode == GreenMode::NearField && state.kin.z_a() * std::abs(omega) / c > 1.0;
}

SigmaPair sigma_pm(const SystemState& state, double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw DomainError("sigma_pm: omega must be > 0");
  SigmaPair s;
  s.sigma0 = vacuum_sigma0(state.dip, omega);
  const ShiftedSigma plus = sigma_shifted(state, omega, "sigma_plus");
  const ShiftedSigma minus = sigma_shifted(state, -omega, "sigma_minus");
  s.sigma_plus = plus.value;
  s.sigma_minus = minus.value;
  s.log_sigma_minus = minus.log_value;
  // Sigma0 / sigma_ref = (omega z / c)^3 / (6 pi), so the ratio never sees |d|
  const double qz = omega * state.kin.z_a() / c;
  const double upper = qz * qz * qz / (6.0 * pi) + plus.reduced;
  if (upper > 0.0 && std::isfinite(minus.log_reduced)) s.log_ratio = std::log(upper) - minus.log_reduced;
  if (state.flip_sigma_minus) s.sigma_minus = -s.sigma_minus;
  return s;
}

double sigma_plus_any(const SystemState& state, double omega) {
  if (!std::isfinite(omega)) throw DomainError("sigma_plus_any: omega must be finite");
  return sigma_shifted(state, omega, "sigma_plus").value;
}

std::complex<double> surface_self_energy(const SystemState& state, double omega) {
  const double v = state.kin.v();
  const double z = state.kin.z_a();
  HalfPlaneOptions opts;
  opts.rel_tol = state.tol.rel;
  opts.abs_tol = state.tol.abs;
  opts.radial_breaks = make_breaks(state, omega);

  auto projected = [&](double k, double phi) {
    const Eigen::Vector2d k_vec(k * std::cos(phi), k * std::sin(phi));
    const double w = k * v * std::cos(phi) + omega;
    const ComplexTensor3 g = state.mode == GreenMode::NearField
                                 ? near_field_g(state.material, k_vec, z, w, GreenPart::Complex)
                                 : full_scattered_g(state.material, k_vec, z, w);
    return z * z * z * eps0 * state.dip.unit_projection(g);
  };
  auto re = [&](double k, double phi) { return projected(k, phi).real(); };
  auto im = [&](double k, double phi) { return projected(k, phi).imag(); };

  const Kinematics& kin = state.kin;
  const double sigma_ref = make_reference_scales(state.material, kin, state.dip).sigma_ref;
  try {
    const double real = integrate_halfplane(re, FullPlane{}, kin, opts).value;
    const double imag = integrate_halfplane(im, FullPlane{}, kin, opts).value;
    return sigma_ref * std::complex<double>(real, imag);
  } catch (const NoConvergence& e) {
    throw NoConvergence(std::string("surface_self_energy: ") + e.what(), e.best());
  }
}

std::complex<double> dressed_polarizability(const SystemState& state, double omega, std::complex<double> delta) {
  const double wa = state.dip.omega_a();
  const double inverse_bare = hbar * (wa * wa - omega * omega) / (2.0 * wa);
  const std::complex<double> den = inverse_bare - delta;
  if (std::abs(den) <= 1e-12 * std::max(std::abs(inverse_bare), std::abs(delta)))
    throw PoleOnRealAxis("dressed_polarizability: 1 - B Delta vanishes");
  return 1.0 / den;
}

std::complex<double> dressed_polarizability(const SystemState& state, double omega) {
  const double sign = omega > 0.0 ? 1.0 : (omega < 0.0 ? -1.0 : 0.0);
  const std::complex<double> delta =
      surface_self_energy(state, omega) + std::complex<double>(0.0, sign * vacuum_sigma0(state.dip, omega));
  return dressed_polarizability(state, omega, delta);
}

double power_spectrum(const SystemState& state, double omega) {
  if (omega == 0.0 || !std::isfinite(omega)) throw DomainError("power_spectrum: omega must be finite and nonzero");
  const std::complex<double> alpha = dressed_polarizability(state, omega);
  const SigmaPair s = sigma_pm(state, std::abs(omega));
  const double loss = omega > 0.0 ? s.sigma0 + s.sigma_plus : s.sigma_minus;
  return hbar / pi * std::norm(alpha) * loss;
}

double log_sigma_ratio(const SigmaPair& s) {
  if (std::isfinite(s.log_ratio)) return s.log_ratio;
  return std::log(s.sigma0 + s.sigma_plus) - s.log_sigma_minus;
}

double occupation_from_sigma(const SigmaPair& s) {
  if (s.sigma_minus < 0.0) return s.sigma_minus / (s.sigma0 + s.sigma_plus - s.sigma_minus);
  if (!std::isfinite(s.log_sigma_minus)) return 0.0;
  const double ln_ratio = log_sigma_ratio(s);
  if (!(ln_ratio > 0.0)) throw InvariantViolation("occupation: (Sigma0 + Sigma+) / Sigma- must exceed 1");
  return 1.0 / std::expm1(ln_ratio);
}

double occupation_number(const SystemState& state, double omega) {
  if (omega == 0.0 || !std::isfinite(omega)) throw DomainError("occupation_number: omega must be finite and nonzero");
  const double n = occupation_from_sigma(sigma_pm(state, std::abs(omega)));
  return omega > 0.0 ? n : -1.0 - n;
}

} // namespace qfric
