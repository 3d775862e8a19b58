#include "qfric/core.hpp"

#include <cmath>

namespace qfric {

Kinematics::Kinematics(double z_a, double v) : z_a_(z_a), v_(v) {
  if (!(z_a > 0.0) || !std::isfinite(z_a)) throw DomainError("Kinematics: z_a must be > 0");
  if (!(v >= 0.0) || !(v < constants::c)) throw DomainError("Kinematics: v must satisfy 0 <= v < c");
}

DipoleModel::DipoleModel(const Vector3& d, double omega_a, Averaging averaging)
    : d_(d), omega_a_(omega_a), averaging_(averaging) {
  if (!d.allFinite() || !(d.norm() > 0.0)) throw DomainError("DipoleModel: |d| must be > 0");
  if (!(omega_a > 0.0) || !std::isfinite(omega_a)) throw DomainError("DipoleModel: omega_a must be > 0");
}

DipoleModel DipoleModel::scaled(double lambda) const {
  if (!(lambda > 0.0)) throw DomainError("DipoleModel::scaled: lambda must be > 0");
  return DipoleModel(lambda * d_, omega_a_, averaging_);
}

ReferenceScales make_reference_scales(const Material& material, const Kinematics& kin, const DipoleModel& dip) {
  double omega_ref = 0.0;
  if (const auto* drude = std::get_if<Drude>(&material)) {
    omega_ref = drude->omega_sp();
  } else if (kin.v() > 0.0) {
    omega_ref = kin.v() / kin.z_a();
  } else {
    omega_ref = constants::c / kin.z_a();
  }
  const double z3 = kin.z_a() * kin.z_a() * kin.z_a();
  return ReferenceScales{omega_ref, constants::c / omega_ref, dip.norm2() / (constants::eps0 * z3)};
}

} // namespace qfric
