#include "qfric/materials.hpp"

#include <cmath>
#include <limits>

#include "qfric/constants.hpp"
#include "qfric/errors.hpp"

namespace qfric {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kEps = std::numeric_limits<double>::epsilon();

// w (w + i gamma)
cdouble drude_kernel(const Drude& m, double omega) {
  return {omega * omega, omega * m.gamma()};
}

FresnelValues fresnel_nonnegative(const Material& mat, double k, double omega, double medium_kappa2) {
  using constants::c;
  const double q = omega / c;
  const cdouble kappa = branch_sqrt(cdouble(k * k - q * q, 0.0));

  return std::visit(
      overloaded{
          [&](const ConstantIndex& m) {
            const double eps = m.eps();
            const double km2 = std::isfinite(medium_kappa2) ? medium_kappa2 : k * k - eps * q * q;
            const cdouble kappa_m = branch_sqrt(cdouble(km2, 0.0));
            FresnelValues out{};
            out.kappa = kappa;
            out.kappa_m = kappa_m;
            if (k == 0.0 && omega == 0.0) {
              out.r_p = (eps - 1.0) / (eps + 1.0);
              out.r_s = 0.0;
              return out;
            }
            out.r_p = (eps * kappa - kappa_m) / (eps * kappa + kappa_m);
            out.r_s = (kappa - kappa_m) / (kappa + kappa_m);
            return out;
          },
          [&](const Drude& m) {
            // eps * w (w + i gamma) = w (w + i gamma) - wp^2, pole-free at w = 0
            const cdouble w_kernel = drude_kernel(m, omega);
            const double wp2 = m.omega_p() * m.omega_p();
            const cdouble eps_num = w_kernel - wp2;
            // eps w^2 / c^2 = (w^2 - wp^2 w / (w + i gamma)) / c^2
            cdouble eps_q2 = 0.0;
            if (omega != 0.0) {
              eps_q2 = (omega * omega - wp2 * omega / cdouble(omega, m.gamma())) / (c * c);
            }
            const cdouble kappa_m = branch_sqrt(k * k - eps_q2);
            FresnelValues out{};
            out.kappa = kappa;
            out.kappa_m = kappa_m;
            if (k == 0.0 && omega == 0.0) {
              out.r_p = 1.0;
              out.r_s = 0.0;
              return out;
            }
            out.r_p = (eps_num * kappa - w_kernel * kappa_m) / (eps_num * kappa + w_kernel * kappa_m);
            out.r_s = (kappa - kappa_m) / (kappa + kappa_m);
            return out;
          }},
      mat);
}

} // namespace

Drude::Drude(double omega_p, double gamma) : omega_p_(omega_p), gamma_(gamma) {
  if (!(omega_p > 0.0) || !std::isfinite(omega_p)) throw DomainError("Drude: omega_p must be > 0");
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw DomainError("Drude: gamma must be >= 0");
}

double Drude::omega_sp() const noexcept { return omega_p_ / std::numbers::sqrt2; }

ConstantIndex::ConstantIndex(double n_eps) : n_eps_(n_eps) {
  if (!(n_eps > 1.0) || !std::isfinite(n_eps)) throw DomainError("ConstantIndex: n_eps must be > 1");
}

bool is_dissipative(const Material& mat) noexcept {
  if (const auto* d = std::get_if<Drude>(&mat)) return d->gamma() > 0.0;
  return false;
}

cdouble permittivity(const Material& mat, double omega) {
  return std::visit(overloaded{[](const ConstantIndex& m) { return cdouble(m.eps(), 0.0); },
                               [omega](const Drude& m) {
                                 if (omega == 0.0) throw DomainError("permittivity: Drude pole at omega = 0");
                                 return 1.0 - m.omega_p() * m.omega_p() / drude_kernel(m, omega);
                               }},
                    mat);
}

cdouble quasistatic_rp(const Material& mat, double omega) {
  return std::visit(overloaded{[](const ConstantIndex& m) {
                                 const double eps = m.eps();
                                 return cdouble((eps - 1.0) / (eps + 1.0), 0.0);
                               },
                               [omega](const Drude& m) {
                                 // (eps - 1)/(eps + 1) = wp^2 / (wp^2 - 2 w (w + i gamma))
                                 const double wp2 = m.omega_p() * m.omega_p();
                                 const cdouble den = wp2 - 2.0 * drude_kernel(m, omega);
                                 if (std::abs(den) <= 16.0 * kEps * wp2)
                                   throw SingularResponse("quasistatic_rp: eps + 1 = 0 (lossless plasmon pole)");
                                 return wp2 / den;
                               }},
                    mat);
}

cdouble branch_sqrt(cdouble z) noexcept {
  cdouble r = std::sqrt(z);
  if (r.real() < 0.0) r = -r;
  if (r.imag() > 0.0) {
    // only reachable with Re r == 0, i.e. z on the negative real axis (or Im z > 0,
    // which has no root satisfying both conditions; the decaying one is kept)
    if (r.real() == 0.0) r = std::conj(r);
  }
  return r;
}

FresnelValues fresnel(const Material& mat, double k, double omega, double medium_kappa2) {
  if (!(k >= 0.0)) throw DomainError("fresnel: k must be >= 0");
  if (omega >= 0.0) return fresnel_nonnegative(mat, k, omega, medium_kappa2);
  FresnelValues v = fresnel_nonnegative(mat, k, -omega, medium_kappa2);
  v.r_p = std::conj(v.r_p);
  v.r_s = std::conj(v.r_s);
  v.kappa = std::conj(v.kappa);
  v.kappa_m = std::conj(v.kappa_m);
  return v;
}

} // namespace qfric
