#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "qfric/core.hpp"
#include "qfric/errors.hpp"

namespace qfric {

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;
};

/// Evaluation budget exhausted. Carries the best estimate and its error bound.
class NoConvergence : public Error {
public:
  NoConvergence(const std::string& what, QuadratureResult best) : Error(what), best_(best) {}
  const QuadratureResult& best() const noexcept { return best_; }

private:
  QuadratureResult best_;
};

struct AdaptiveOptions {
  double rel_tol = 1e-8;
  double abs_tol = 0.0;
  std::size_t max_intervals = 2000;
};

/// Global adaptive 21-point Gauss-Kronrod over [points.front(), points.back()],
/// with the interior points as initial subdivision.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, std::span<const double> points,
                                    const AdaptiveOptions& opts = {});

// Supports of the wave-vector integrals. Angles are measured from the velocity (+x).

struct FullPlane {};

/// {k : k v cos(phi) + sign * omega > 0}.
struct HalfPlaneShifted {
  int sign;
  double omega;
  double v;
};

/// Cherenkov wedge |phi| < phi0, cos(phi0) = c / (v n), k > omega / (v cos(phi) - c / n).
struct CherenkovCone {
  double omega;
  double v;
  double n_eps;
};

using SupportRegion = std::variant<FullPlane, HalfPlaneShifted, CherenkovCone>;

bool region_is_empty(const SupportRegion& region) noexcept;
bool region_contains(const SupportRegion& region, double k, double phi) noexcept;

using PolarIntegrand = std::function<double(double k, double phi)>;
/// Appends radial points (m^-1) at which the integrand is non-smooth for a given angle.
using RadialBreaks = std::function<void(double phi, std::vector<double>& k_points)>;

struct HalfPlaneOptions {
  double rel_tol = 1e-8;
  double abs_tol = 1e-30;
  /// Radial extent kept beyond the lower limit, in u = 2 k z_a.
  double tail_span = 80.0;
  RadialBreaks radial_breaks;
  std::size_t max_evaluations = 40'000'000;
};

/// Integral of f(k, phi) k dk dphi / (2 pi)^2 over the region, in polar
/// coordinates with the angle outermost. Never throws on non-convergence;
/// check `converged`.
QuadratureResult integrate_halfplane_result(const PolarIntegrand& f, const SupportRegion& region,
                                            const Kinematics& kin, const HalfPlaneOptions& opts);

/// As above, throws NoConvergence when the budget is exhausted.
QuadratureResult integrate_halfplane(const PolarIntegrand& f, const SupportRegion& region, const Kinematics& kin,
                                     double rel_tol = 1e-8, double abs_tol = 1e-30);
QuadratureResult integrate_halfplane(const PolarIntegrand& f, const SupportRegion& region, const Kinematics& kin,
                                     const HalfPlaneOptions& opts);

/// Brute-force reference: midpoint rule on a fixed tensor grid in (u = 2 k z_a, phi),
/// u spanning 60 beyond the radial lower limit. Each axis is graded with the
/// sin^2 map s - sin(2 pi s) / (2 pi) so endpoint behaviour does not limit
/// the order. Test use only.
double oracle_grid_integrate(const PolarIntegrand& f, const SupportRegion& region, const Kinematics& kin,
                             int n_radial, int n_angular);

} // namespace qfric
