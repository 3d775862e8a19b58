#include "qfric/quadrature_suite.hpp"

#include <cmath>

#include "qfric/greens.hpp"

namespace qfric {

namespace {

using constants::c;
using constants::eps0;

constexpr double kPlasma = 1.37e16;
const double kSurfacePlasmon = kPlasma / std::sqrt(2.0);

// z^3 eps0 d_hat . g_I(k, k v cos(phi) + shift) . d_hat for the given Green form.
PolarIntegrand loss_kernel(Material mat, double z, double v, double shift, Vector3 d_hat, bool full_tensor) {
  const double scale = z * z * z * eps0;
  return [=](double k, double phi) {
    const Eigen::Vector2d k_vec(k * std::cos(phi), k * std::sin(phi));
    const double w = k * v * std::cos(phi) + shift;
    const Eigen::Matrix3d g = full_tensor ? imag_symmetric(full_scattered_g(mat, k_vec, z, w))
                                          : near_field_g(mat, k_vec, z, w, GreenPart::Imag).real();
    return scale * d_hat.dot(g * d_hat);
  };
}

PolarIntegrand isotropic_kernel(Material mat, double z, double v, double shift, bool full_tensor) {
  const double scale = z * z * z * eps0;
  return [=](double k, double phi) {
    const Eigen::Vector2d k_vec(k * std::cos(phi), k * std::sin(phi));
    const double w = k * v * std::cos(phi) + shift;
    const Eigen::Matrix3d g = full_tensor ? imag_symmetric(full_scattered_g(mat, k_vec, z, w))
                                          : near_field_g(mat, k_vec, z, w, GreenPart::Imag).real();
    return scale * g.trace() / 3.0;
  };
}

} // namespace

std::vector<SuiteCase> physical_integrand_suite() {
  std::vector<SuiteCase> suite;
  const double z = 1e-8;

  // Ohmic surface: z_a w_sp / c = 0.1, gamma = 1e-2 w_sp, v = 1e-6 c.
  const double z_ohmic = 0.1 * c / kSurfacePlasmon;
  const double v_ohmic = 1e-6 * c;
  const Material ohmic = Drude(kPlasma, 1e-2 * kSurfacePlasmon);
  const Kinematics kin_ohmic(z_ohmic, v_ohmic);
  const double w_unit = v_ohmic / z_ohmic;

  suite.push_back({"gamma moment k^2 exp(-2kz)", [z](double k, double) { return k * k * std::exp(-2.0 * k * z); },
                   FullPlane{}, Kinematics(z, 100.0)});
  suite.push_back({"zero-frequency ohmic kernel",
                   [z](double k, double phi) { return k * 100.0 * std::cos(phi) * k * std::exp(-2.0 * k * z); },
                   HalfPlaneShifted{+1, 0.0, 100.0}, Kinematics(z, 100.0)});

  for (double w : {0.1, 1.0, 3.0, 10.0}) {
    suite.push_back({"ohmic sigma+ at w=" + std::to_string(w), isotropic_kernel(ohmic, z_ohmic, v_ohmic, w * w_unit, false),
                     HalfPlaneShifted{+1, w * w_unit, v_ohmic}, kin_ohmic});
  }
  for (double w : {0.1, 1.0, 3.0, 10.0}) {
    suite.push_back({"ohmic sigma- at w=" + std::to_string(w), isotropic_kernel(ohmic, z_ohmic, v_ohmic, -w * w_unit, false),
                     HalfPlaneShifted{-1, w * w_unit, v_ohmic}, kin_ohmic});
  }

  // Plasmon-peaked: broad resonance in k crossing the Doppler window.
  const double v_fast = 3e-3 * c;
  const Material lossy = Drude(kPlasma, 0.1 * kSurfacePlasmon);
  const Kinematics kin_fast(z_ohmic, v_fast);
  for (double r : {0.9, 0.97}) {
    const double w = r * kSurfacePlasmon;
    suite.push_back({"plasmon-peaked sigma+ at w/wsp=" + std::to_string(r), isotropic_kernel(lossy, z_ohmic, v_fast, w, false),
                     HalfPlaneShifted{+1, w, v_fast}, kin_fast});
  }
  suite.push_back({"plasmon-peaked full plane at w/wsp=1.02",
                   isotropic_kernel(lossy, z_ohmic, v_fast, 1.02 * kSurfacePlasmon, false), FullPlane{}, kin_fast});

  // Cherenkov cone: n = 100, v = 0.02 c.
  const double n = 100.0;
  const double v_ch = 0.02 * c;
  const Kinematics kin_ch(z, v_ch);
  const Material dielectric = ConstantIndex(n);
  for (double wr : {1.0, 5.0, 20.0}) {
    const double w = wr * (v_ch - c / n) / z;
    suite.push_back({"cherenkov cone at w'=" + std::to_string(wr), isotropic_kernel(dielectric, z, v_ch, -w, true),
                     CherenkovCone{w, v_ch, n}, kin_ch});
  }
  suite.push_back({"cherenkov sqrt threshold",
                   [=](double k, double phi) {
                     const double k_min = (2.0 * (v_ch - c / n) / z) / (v_ch * std::cos(phi) - c / n);
                     return std::sqrt(std::max(0.0, 1.0 - k_min / k)) * std::exp(-2.0 * k * z);
                   },
                   CherenkovCone{2.0 * (v_ch - c / n) / z, v_ch, n}, kin_ch});

  // Fixed orientations.
  suite.push_back({"anisotropic d=(1,1,1) sigma+",
                   loss_kernel(ohmic, z_ohmic, v_ohmic, 2.0 * w_unit, Vector3(1.0, 1.0, 1.0).normalized(), false),
                   HalfPlaneShifted{+1, 2.0 * w_unit, v_ohmic}, kin_ohmic});
  suite.push_back({"anisotropic d=x sigma-", loss_kernel(ohmic, z_ohmic, v_ohmic, -2.0 * w_unit, Vector3::UnitX(), false),
                   HalfPlaneShifted{-1, 2.0 * w_unit, v_ohmic}, kin_ohmic});
  suite.push_back({"anisotropic d=y sigma-", loss_kernel(ohmic, z_ohmic, v_ohmic, -2.0 * w_unit, Vector3::UnitY(), false),
                   HalfPlaneShifted{-1, 2.0 * w_unit, v_ohmic}, kin_ohmic});
  return suite;
}

} // namespace qfric
