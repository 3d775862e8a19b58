#pragma once

#include <complex>

#include <Eigen/Dense>

#include "qfric/constants.hpp"
#include "qfric/errors.hpp"
#include "qfric/materials.hpp"

namespace qfric {

template <typename Scalar = double>
using ComplexTensor3T = Eigen::Matrix<std::complex<Scalar>, 3, 3>;
using ComplexTensor3 = ComplexTensor3T<double>;
using Vector3 = Eigen::Vector3d;

/// Atom-surface distance and speed. The velocity points along +x, the surface
/// normal along +z.
class Kinematics {
public:
  /// Speeds above this fraction of c leave the non-relativistic regime.
  static constexpr double kRelativisticWarning = 0.1;

  Kinematics(double z_a, double v);

  double z_a() const noexcept { return z_a_; }
  double v() const noexcept { return v_; }
  bool relativistic_warning() const noexcept { return v_ > kRelativisticWarning * constants::c; }

private:
  double z_a_;
  double v_;
};

enum class Averaging { FixedOrientation, IsotropicAverage };

/// Dipole coupling vector d (C m) and bare transition frequency omega_a.
class DipoleModel {
public:
  DipoleModel(const Vector3& d, double omega_a, Averaging averaging);

  const Vector3& d() const noexcept { return d_; }
  double norm2() const noexcept { return d_.squaredNorm(); }
  double omega_a() const noexcept { return omega_a_; }
  Averaging averaging() const noexcept { return averaging_; }

  /// Same model with d scaled by lambda > 0.
  DipoleModel scaled(double lambda) const;

  /// d_hat . T . d_hat for fixed orientation, Tr(T) / 3 under isotropic averaging.
  /// Only the symmetric part of T contributes.
  template <typename Derived>
  typename Derived::Scalar unit_projection(const Eigen::MatrixBase<Derived>& t) const {
    if (averaging_ == Averaging::IsotropicAverage) return t.trace() / 3.0;
    const Vector3 u = d_.normalized();
    using S = typename Derived::Scalar;
    return (u.template cast<S>().transpose() * t * u.template cast<S>())(0, 0);
  }

private:
  Vector3 d_;
  double omega_a_;
  Averaging averaging_;
};

/// Internal units. Frequencies in omega_ref, lengths in length_ref = c / omega_ref,
/// Sigma functions in sigma_ref = |d|^2 / (eps0 z_a^3).
struct ReferenceScales {
  double omega_ref;
  double length_ref;
  double sigma_ref;

  double to_dimensionless_frequency(double omega) const noexcept { return omega / omega_ref; }
  double from_dimensionless_frequency(double w) const noexcept { return w * omega_ref; }
};

/// omega_sp for Drude surfaces; v / z_a for a constant index with v > 0; c / z_a at rest.
ReferenceScales make_reference_scales(const Material& material, const Kinematics& kin, const DipoleModel& dip);

} // namespace qfric
