#pragma once

#include <complex>
#include <limits>
#include <variant>

namespace qfric {

using cdouble = std::complex<double>;

/// Drude metal, eps(w) = 1 - wp^2 / (w (w + i gamma)).
class Drude {
public:
  Drude(double omega_p, double gamma);

  double omega_p() const noexcept { return omega_p_; }
  double gamma() const noexcept { return gamma_; }
  /// Surface plasmon frequency wp / sqrt(2).
  double omega_sp() const noexcept;

private:
  double omega_p_;
  double gamma_;
};

/// Lossless dielectric with frequency-independent eps = n^2.
class ConstantIndex {
public:
  explicit ConstantIndex(double n_eps);

  double n_eps() const noexcept { return n_eps_; }
  double eps() const noexcept { return n_eps_ * n_eps_; }

private:
  double n_eps_;
};

using Material = std::variant<Drude, ConstantIndex>;

/// True when Im r_p is not identically zero on the real axis.
bool is_dissipative(const Material& mat) noexcept;

struct FresnelValues {
  cdouble r_p;
  cdouble r_s;
  cdouble kappa;   // vacuum normal wave number, m^-1
  cdouble kappa_m; // medium normal wave number, m^-1
};

/// eps(omega). Throws DomainError at omega == 0 for Drude.
cdouble permittivity(const Material& mat, double omega);

/// Non-retarded p reflection coefficient (eps - 1) / (eps + 1).
/// Defined at omega == 0 (the Drude form is rewritten without the pole).
/// Throws SingularResponse on the lossless plasmon pole.
cdouble quasistatic_rp(const Material& mat, double omega);

/// Root of z with Re >= 0 and Im <= 0. Real negative z maps to -i sqrt(|z|).
cdouble branch_sqrt(cdouble z) noexcept;

/// Fresnel coefficients at lateral wave number k >= 0.
/// For omega >= 0 the normal wave numbers obey Re >= 0, Im <= 0. Negative
/// frequencies return the complex conjugate of the values at |omega|.
/// `medium_kappa2`, when finite, replaces k^2 - eps w^2 / c^2 for ConstantIndex; callers
/// that know k and w' only through a shared parametrisation can form it without the
/// cancellation near the medium light cone. Drude ignores it.
FresnelValues fresnel(const Material& mat, double k, double omega,
                      double medium_kappa2 = std::numeric_limits<double>::quiet_NaN());

} // namespace qfric
