#include "qfric/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>

namespace qfric {

namespace {

using constants::pi;

constexpr double kEpsilon = std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();

// QUADPACK qk21 abscissae and weights.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208643474261, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

template <class F>
Segment gauss_kronrod21(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double abs_half = std::abs(half);

  std::array<double, 10> f1{};
  std::array<double, 10> f2{};
  const double fc = f(center);
  double res_g = 0.0;
  double res_k = kWgk[10] * fc;
  double res_abs = std::abs(res_k);
  for (int j = 0; j < 10; ++j) {
    const double x = half * kXgk[j];
    f1[j] = f(center - x);
    f2[j] = f(center + x);
    const double sum = f1[j] + f2[j];
    res_k += kWgk[j] * sum;
    res_abs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) res_g += kWg[j / 2] * sum;
  }
  const double mean = 0.5 * res_k;
  double res_asc = kWgk[10] * std::abs(fc - mean);
  for (int j = 0; j < 10; ++j) res_asc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

  const double result = res_k * half;
  res_abs *= abs_half;
  res_asc *= abs_half;
  double err = std::abs((res_k - res_g) * half);
  if (res_asc != 0.0 && err != 0.0) err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  if (res_abs > std::numeric_limits<double>::min() / (50.0 * kEpsilon)) err = std::max(50.0 * kEpsilon * res_abs, err);
  return Segment{a, b, result, err};
}

// `budget` counts remaining evaluations shared across nested calls.
template <class F>
QuadratureResult gk_adaptive(F&& f, std::span<const double> points, double rel_tol, double abs_tol,
                             std::size_t max_intervals, std::size_t& budget) {
  QuadratureResult out;
  if (points.size() < 2) return out;

  std::size_t evals = 0;
  auto counted = [&](double x) {
    ++evals;
    return f(x);
  };

  std::priority_queue<Segment> heap;
  double total = 0.0;
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (!(points[i + 1] > points[i])) continue;
    Segment s = gauss_kronrod21(counted, points[i], points[i + 1]);
    total += s.value;
    total_err += s.error;
    heap.push(s);
  }

  bool converged = true;
  // below min / eps the integrand values are subnormal and errors carry no information
  constexpr double kFloor = std::numeric_limits<double>::min() / kEpsilon;
  auto target = [&] { return std::max({rel_tol * std::abs(total), abs_tol, kFloor}); };
  while (!heap.empty() && total_err > target()) {
    if (heap.size() >= max_intervals || evals + 42 > budget) {
      converged = false;
      break;
    }
    const Segment worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // interval exhausted in floating point; accept its error as final
      converged = false;
      break;
    }
    heap.pop();
    const Segment left = gauss_kronrod21(counted, worst.a, mid);
    const Segment right = gauss_kronrod21(counted, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // re-sum to remove drift from the running updates
  total = 0.0;
  total_err = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    total_err += heap.top().error;
    heap.pop();
  }
  out.value = total;
  out.abs_error_estimate = total_err;
  out.evaluations = evals;
  out.converged = converged && total_err <= std::max({rel_tol * std::abs(total), abs_tol, kFloor});
  budget = budget > evals ? budget - evals : 0;
  return out;
}

// Normalised description of a region in polar coordinates.
struct PolarGeometry {
  bool empty = false;
  std::vector<double> angular_points;
};

struct RadialLimits {
  double lo;
  double hi;
};

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Geometric ladder of angular break points around phi = 0 out to +-edge.
void append_ladder(std::vector<double>& pts, double width, double edge) {
  pts.push_back(-edge);
  pts.push_back(edge);
  pts.push_back(0.0);
  for (double p = width; p < edge * 0.999; p *= 2.0) {
    pts.push_back(p);
    pts.push_back(-p);
  }
}

PolarGeometry make_geometry(const SupportRegion& region, double z) {
  PolarGeometry g;
  if (region_is_empty(region)) {
    g.empty = true;
    return g;
  }
  auto& pts = g.angular_points;
  std::visit(overloaded{[&](const FullPlane&) { pts = {-pi, -pi / 2, 0.0, pi / 2, pi}; },
                        [&](const HalfPlaneShifted& r) {
                          const double shift = r.sign * r.omega;
                          if (r.v == 0.0 || shift > 0.0) {
                            pts = {-pi, -pi / 2, 0.0, pi / 2, pi};
                          } else if (shift == 0.0) {
                            pts = {-pi / 2, 0.0, pi / 2};
                          } else {
                            const double w = -shift * z / r.v;
                            append_ladder(pts, 1.0 / std::sqrt(1.0 + w), pi / 2);
                          }
                        },
                        [&](const CherenkovCone& r) {
                          const double c_medium = constants::c / r.n_eps;
                          const double phi0 = std::acos(c_medium / r.v);
                          const double excess = r.v - c_medium;
                          const double w = r.omega * z / excess;
                          const double width = std::min(0.5 * phi0, std::sqrt(excess / (r.v * (1.0 + w))));
                          append_ladder(pts, width, phi0);
                        }},
             region);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return g;
}

RadialLimits radial_limits(const SupportRegion& region, double phi) {
  return std::visit(overloaded{[](const FullPlane&) { return RadialLimits{0.0, kInf}; },
                               [phi](const HalfPlaneShifted& r) {
                                 const double shift = r.sign * r.omega;
                                 const double vc = r.v * std::cos(phi);
                                 if (shift >= 0.0) {
                                   if (vc >= 0.0) return RadialLimits{0.0, kInf};
                                   return RadialLimits{0.0, shift / -vc};
                                 }
                                 if (vc <= 0.0) return RadialLimits{0.0, 0.0};
                                 return RadialLimits{-shift / vc, kInf};
                               },
                               [phi](const CherenkovCone& r) {
                                 const double excess = r.v * std::cos(phi) - constants::c / r.n_eps;
                                 if (excess <= 0.0) return RadialLimits{0.0, 0.0};
                                 return RadialLimits{r.omega / excess, kInf};
                               }},
                    region);
}

} // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, std::span<const double> points,
                                    const AdaptiveOptions& opts) {
  std::size_t budget = std::numeric_limits<std::size_t>::max();
  return gk_adaptive(f, points, opts.rel_tol, opts.abs_tol, opts.max_intervals, budget);
}

bool region_is_empty(const SupportRegion& region) noexcept {
  return std::visit(overloaded{[](const FullPlane&) { return false; },
                               [](const HalfPlaneShifted& r) {
                                 const double shift = r.sign * r.omega;
                                 return r.v == 0.0 ? !(shift > 0.0) : false;
                               },
                               [](const CherenkovCone& r) { return !(r.v * r.n_eps > constants::c); }},
                    region);
}

bool region_contains(const SupportRegion& region, double k, double phi) noexcept {
  return std::visit(overloaded{[](const FullPlane&) { return true; },
                               [&](const HalfPlaneShifted& r) {
                                 return k * r.v * std::cos(phi) + r.sign * r.omega > 0.0;
                               },
                               [&](const CherenkovCone& r) {
                                 const double excess = r.v * std::cos(phi) - constants::c / r.n_eps;
                                 return excess > 0.0 && k * excess > r.omega;
                               }},
                    region);
}

QuadratureResult integrate_halfplane_result(const PolarIntegrand& f, const SupportRegion& region,
                                            const Kinematics& kin, const HalfPlaneOptions& opts) {
  QuadratureResult out;
  const double z = kin.z_a();
  const PolarGeometry geom = make_geometry(region, z);
  if (geom.empty) return out;

  const double norm = 4.0 * pi * pi;
  const double angular_range = geom.angular_points.back() - geom.angular_points.front();
  const double outer_rel = 0.5 * opts.rel_tol;
  const double outer_abs = 0.5 * opts.abs_tol * norm;
  const double inner_rel = 0.1 * opts.rel_tol;
  const double inner_abs = 0.1 * opts.abs_tol * norm / angular_range;
  const double tail = opts.tail_span / (2.0 * z);

  std::size_t budget = opts.max_evaluations;
  std::size_t evaluations = 0;
  bool inner_ok = true;
  std::vector<double> radial;
  std::vector<double> unit_points;

  auto angular = [&](double phi) -> double {
    const RadialLimits lim = radial_limits(region, phi);
    if (!std::isfinite(lim.lo)) return 0.0;
    const double hi = std::min(lim.hi, lim.lo + tail);
    if (!(hi > lim.lo)) return 0.0;

    radial.clear();
    radial.push_back(lim.lo);
    if (opts.radial_breaks) {
      opts.radial_breaks(phi, radial);
      std::erase_if(radial, [&](double k) { return !(k >= lim.lo && k < hi) || !std::isfinite(k); });
    }
    radial.push_back(hi);
    std::sort(radial.begin(), radial.end());
    radial.erase(std::unique(radial.begin(), radial.end()), radial.end());

    const std::size_t pieces = radial.size() - 1;
    unit_points.resize(pieces + 1);
    for (std::size_t i = 0; i <= pieces; ++i) unit_points[i] = static_cast<double>(i);

    // Each piece [a, b] is mapped from s in [0, 1] by k = a + (b - a)(1 - cos(pi s)) / 2,
    // which regularises square-root behaviour at both ends.
    auto inner = [&](double t) {
      const std::size_t i = std::min(static_cast<std::size_t>(t), pieces - 1);
      const double s = t - static_cast<double>(i);
      const double a = radial[i];
      const double b = radial[i + 1];
      const double k = a + 0.5 * (b - a) * (1.0 - std::cos(pi * s));
      const double jac = 0.5 * pi * (b - a) * std::sin(pi * s);
      if (jac == 0.0) return 0.0;
      return f(k, phi) * k * jac;
    };
    const QuadratureResult r = gk_adaptive(inner, unit_points, inner_rel, inner_abs, 2000, budget);
    evaluations += r.evaluations;
    if (!r.converged) inner_ok = false;
    return r.value;
  };

  const QuadratureResult outer = gk_adaptive(angular, geom.angular_points, outer_rel, outer_abs, 2000, budget);
  out.value = outer.value / norm;
  // inner errors enter through |value|; exact when the angular integrand keeps one sign
  out.abs_error_estimate =
      (outer.abs_error_estimate + inner_rel * std::abs(outer.value) + inner_abs * angular_range) / norm;
  out.evaluations = evaluations;
  out.converged = outer.converged && inner_ok &&
                  out.abs_error_estimate <= std::max(opts.rel_tol * std::abs(out.value), opts.abs_tol);
  return out;
}

QuadratureResult integrate_halfplane(const PolarIntegrand& f, const SupportRegion& region, const Kinematics& kin,
                                     const HalfPlaneOptions& opts) {
  const QuadratureResult r = integrate_halfplane_result(f, region, kin, opts);
  if (!r.converged) throw NoConvergence("integrate_halfplane: evaluation budget exhausted", r);
  return r;
}

QuadratureResult integrate_halfplane(const PolarIntegrand& f, const SupportRegion& region, const Kinematics& kin,
                                     double rel_tol, double abs_tol) {
  if (!(rel_tol > 1e-14 && rel_tol < 1e-2)) throw DomainError("integrate_halfplane: rel_tol must lie in (1e-14, 1e-2)");
  HalfPlaneOptions opts;
  opts.rel_tol = rel_tol;
  opts.abs_tol = abs_tol;
  return integrate_halfplane(f, region, kin, opts);
}

double oracle_grid_integrate(const PolarIntegrand& f, const SupportRegion& region, const Kinematics& kin,
                             int n_radial, int n_angular) {
  if (n_radial < 64 || n_angular < 64) throw DomainError("oracle_grid_integrate: grids need >= 64 points per axis");

  const double z = kin.z_a();
  constexpr double kSpan = 60.0;
  const double c = constants::c;

  // Region bounds, written out independently of the adaptive path: returns u = 2 k z limits.
  std::vector<double> phi_edges;
  std::function<std::pair<double, double>(double)> bounds;
  if (std::holds_alternative<FullPlane>(region)) {
    phi_edges = {-pi, -pi / 2, 0.0, pi / 2, pi};
    bounds = [](double) { return std::pair{0.0, kSpan}; };
  } else if (const auto* h = std::get_if<HalfPlaneShifted>(&region)) {
    const double shift = h->sign * h->omega;
    const double v = h->v;
    if (v == 0.0) {
      if (!(shift > 0.0)) return 0.0;
      phi_edges = {-pi, -pi / 2, 0.0, pi / 2, pi};
      bounds = [](double) { return std::pair{0.0, kSpan}; };
    } else if (shift > 0.0) {
      phi_edges = {-pi, -pi / 2, 0.0, pi / 2, pi};
      bounds = [=](double phi) {
        const double cs = std::cos(phi);
        const double hi = cs < 0.0 ? std::min(kSpan, 2.0 * z * shift / (v * -cs)) : kSpan;
        return std::pair{0.0, hi};
      };
    } else {
      phi_edges = {-pi / 2, 0.0, pi / 2};
      bounds = [=](double phi) {
        const double cs = std::cos(phi);
        if (cs <= 0.0) return std::pair{0.0, 0.0};
        const double lo = 2.0 * z * (-shift) / (v * cs);
        return std::pair{lo, lo + kSpan};
      };
    }
  } else {
    const auto& cone = std::get<CherenkovCone>(region);
    if (!(cone.v * cone.n_eps > c)) return 0.0;
    const double phi0 = std::acos(c / (cone.v * cone.n_eps));
    phi_edges = {-phi0, 0.0, phi0};
    bounds = [=](double phi) {
      const double excess = cone.v * std::cos(phi) - c / cone.n_eps;
      if (excess <= 0.0) return std::pair{0.0, 0.0};
      const double lo = 2.0 * z * cone.omega / excess;
      return std::pair{lo, lo + kSpan};
    };
  }

  auto graded = [](int n) {
    std::vector<std::pair<double, double>> nodes(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      const double s = (j + 0.5) / n;
      nodes[static_cast<std::size_t>(j)] = {s - std::sin(2.0 * pi * s) / (2.0 * pi),
                                            (1.0 - std::cos(2.0 * pi * s)) / n};
    }
    return nodes;
  };
  const auto radial_nodes = graded(n_radial);
  const int pieces = static_cast<int>(phi_edges.size()) - 1;
  const auto angular_nodes = graded(std::max(1, n_angular / pieces));

  double total = 0.0;
  for (int p = 0; p < pieces; ++p) {
    const double a = phi_edges[static_cast<std::size_t>(p)];
    const double b = phi_edges[static_cast<std::size_t>(p) + 1];
    for (const auto& [sa, wa] : angular_nodes) {
      const double phi = a + (b - a) * sa;
      const auto [ulo, uhi] = bounds(phi);
      if (!(uhi > ulo)) continue;
      double row = 0.0;
      for (const auto& [sr, wr] : radial_nodes) {
        const double u = ulo + (uhi - ulo) * sr;
        const double k = u / (2.0 * z);
        row += f(k, phi) * k * wr;
      }
      total += row * (uhi - ulo) / (2.0 * z) * wa * (b - a);
    }
  }
  return total / (4.0 * pi * pi);
}

} // namespace qfric
