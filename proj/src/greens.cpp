#include "qfric/greens.hpp"

#include <cmath>

namespace qfric {

using constants::c;
using constants::eps0;

ComplexTensor3 near_field_g(const Material& mat, const Eigen::Vector2d& k_vec, double z_a, double omega,
                            GreenPart part, double log_scale) {
  ComplexTensor3 g = ComplexTensor3::Zero();
  const double k = k_vec.norm();
  if (k == 0.0) return g;
  const double exponent = 2.0 * k * z_a - log_scale;
  if (exponent > kGreenUnderflowExponent) return g;

  const cdouble rp = quasistatic_rp(mat, omega);
  const cdouble r = part == GreenPart::Imag ? cdouble(rp.imag(), 0.0) : rp;
  const cdouble factor = r * k * std::exp(-exponent) / (2.0 * eps0);
  const double inv_k2 = 1.0 / (k * k);
  g(0, 0) = factor * (k_vec.x() * k_vec.x() * inv_k2);
  g(1, 1) = factor * (k_vec.y() * k_vec.y() * inv_k2);
  g(2, 2) = factor;
  return g;
}

ComplexTensor3 full_scattered_g(const Material& mat, const Eigen::Vector2d& k_vec, double z_a, double omega,
                                double log_scale, double medium_kappa2) {
  if (omega < 0.0) return full_scattered_g(mat, -k_vec, z_a, -omega, log_scale, medium_kappa2).conjugate();

  ComplexTensor3 g = ComplexTensor3::Zero();
  const double k = k_vec.norm();
  const FresnelValues fv = fresnel(mat, k, omega, medium_kappa2);
  const cdouble kappa = fv.kappa;
  if (kappa == 0.0) return g;
  const double exponent = 2.0 * kappa.real() * z_a - log_scale;
  if (exponent > kGreenUnderflowExponent) return g;

  const Eigen::Vector3d k_hat = k > 0.0 ? Eigen::Vector3d(k_vec.x() / k, k_vec.y() / k, 0.0)
                                        : Eigen::Vector3d::UnitX();
  const Eigen::Vector3d z_hat = Eigen::Vector3d::UnitZ();
  const Eigen::Vector3d s = k_hat.cross(z_hat);

  const cdouble i(0.0, 1.0);
  const cdouble k_over_kappa = k / kappa;
  const Eigen::Vector3cd p_plus = k_over_kappa * z_hat.cast<cdouble>() - i * k_hat.cast<cdouble>();
  const Eigen::Vector3cd p_minus = k_over_kappa * z_hat.cast<cdouble>() + i * k_hat.cast<cdouble>();

  const double q = omega / c;
  const cdouble s_weight = q * q / (kappa * kappa) * fv.r_s;
  const cdouble prefactor = kappa / (2.0 * eps0) * std::exp(-2.0 * kappa * z_a + log_scale);

  g = prefactor * (fv.r_p * (p_plus * p_minus.transpose()) + s_weight * (s * s.transpose()).cast<cdouble>());
  return g;
}

double vacuum_sigma0(const DipoleModel& dip, double omega) {
  const double q = std::abs(omega) / c;
  return q * q * q * dip.norm2() / (6.0 * constants::pi * eps0);
}

} // namespace qfric
