#pragma once

#include <string>
#include <vector>

#include "qfric/quadrature.hpp"

namespace qfric {

/// An integrand shaped like the ones the spectral functions produce, with its
/// support. Used to cross-check the adaptive integrator against the grid oracle.
struct SuiteCase {
  std::string name;
  PolarIntegrand f;
  SupportRegion region;
  Kinematics kin;
};

/// Twenty cases: Gamma moments, ohmic near-field kernels on both Doppler
/// half-planes, plasmon-peaked kernels, Cherenkov-cone kernels and fixed
/// dipole orientations.
std::vector<SuiteCase> physical_integrand_suite();

} // namespace qfric
