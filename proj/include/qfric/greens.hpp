#pragma once

#include <Eigen/Dense>

#include "qfric/core.hpp"
#include "qfric/materials.hpp"

namespace qfric {

enum class GreenPart { Imag, Complex };

/// Exponents 2 Re(kappa) z_a - log_scale beyond this return an exact zero tensor.
inline constexpr double kGreenUnderflowExponent = 700.0;

/// Quasi-electrostatic scattered Green tensor, SI units (m^-1 / eps0):
///   (r_p / (2 eps0)) k exp(-2 k z_a) diag(kx^2/k^2, ky^2/k^2, 1).
/// `part == Imag` keeps Im r_p only (the result is then real). The tensor is
/// multiplied by exp(log_scale) so that exponentially small values can be
/// carried without underflow.
ComplexTensor3 near_field_g(const Material& mat, const Eigen::Vector2d& k_vec, double z_a, double omega,
                            GreenPart part, double log_scale = 0.0);

/// Retarded scattered Green tensor of a half-space (p and s polarisations),
///   (kappa / (2 eps0)) [r_p p+ p- + (w^2 / (c^2 kappa^2)) r_s s s] exp(-2 kappa z_a),
/// including the antisymmetric xz coupling. Negative frequencies follow
/// g(k, -w) = conj(g(-k, w)). Exact zero when kappa == 0 (light line, measure zero)
/// or when the exponent exceeds kGreenUnderflowExponent. `medium_kappa2` is passed
/// through to fresnel.
ComplexTensor3 full_scattered_g(const Material& mat, const Eigen::Vector2d& k_vec, double z_a, double omega,
                                double log_scale = 0.0,
                                double medium_kappa2 = std::numeric_limits<double>::quiet_NaN());

template <typename Derived>
auto symmetric_part(const Eigen::MatrixBase<Derived>& t) {
  return ((t + t.transpose()) * 0.5).eval();
}

/// Entrywise imaginary part of the symmetric part.
template <typename Derived>
Eigen::Matrix3d imag_symmetric(const Eigen::MatrixBase<Derived>& t) {
  return symmetric_part(t).imag();
}

/// Free-space decay term (|w| / c)^3 |d|^2 / (6 pi eps0), in joules.
double vacuum_sigma0(const DipoleModel& dip, double omega);

} // namespace qfric
