#include "negpt/bethe.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace negpt::bethe {

namespace {

void check_k(int k) {
  if (k < 3) throw std::domain_error("Bethe lattice degree must be >= 3");
}

double t_of_k(int k) { return std::pow(k - 1.0, -1.0 / (k - 2.0)); }

// Map the squared single-branch value u to the S-T sponge value through
// the k-branch root combination.
double root_combine(double u, int k, double eta_p4 = 1.0) {
  if (u >= 1.0) return 1.0;
  const double ratio = eta_p4 * u / std::pow(1.0 - u, k);
  if (!std::isfinite(ratio)) return 1.0;
  return std::sqrt(ratio / (1.0 + ratio));
}

// Parallel combination of (k-1) identical branches of value x1.
double branch_combine(double x1, int k) {
  if (x1 >= 1.0) return 1.0;
  const double u = x1 * x1;
  const double ratio = u / std::pow(1.0 - u, k - 1);
  if (!std::isfinite(ratio)) return 1.0;
  return std::sqrt(ratio / (1.0 + ratio));
}

}  // namespace

CriticalPoint critical_point(int k) {
  check_k(k);
  const double t = t_of_k(k);
  CriticalPoint cp;
  cp.chi_th = std::sqrt(1.0 - std::pow(k - 1.0, -(k - 1.0) / (k - 2.0)) * (k - 2.0));
  cp.x_plus = std::sqrt((1.0 - t) / (std::pow(t, k) - t + 1.0));
  cp.x1_plus = std::sqrt(1.0 - t);
  return cp;
}

double finite_depth_sponge(int k, long l, double chi) {
  check_k(k);
  if (l < 1) throw std::domain_error("depth must be >= 1");
  if (!(chi >= 0.0 && chi <= 1.0)) throw std::domain_error("chi outside [0,1]");
  double x_par = 1.0;  // depth-0 boundary
  double x1 = chi;
  for (long step = 1; step <= l; ++step) {
    x1 = chi * x_par;
    if (step < l) x_par = branch_combine(x1, k);
  }
  return root_combine(x1 * x1, k);
}

namespace {

// Self-consistent equation chi^2 = u + (1-u)^{k-1} for u = (X^(1))^2;
// bisection on a monotone branch [lo, hi].
double solve_u(double target, int k, double lo, double hi, bool increasing) {
  for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double val = mid + std::pow(1.0 - mid, k - 1);
    if ((val < target) == increasing)
      lo = mid;
    else
      hi = mid;
  }
  const double u = 0.5 * (lo + hi);
  const double residual = std::abs(u + std::pow(1.0 - u, k - 1) - target);
  if (residual > 1e-10)
    throw std::runtime_error("self-consistent solver failed: residual " +
                             std::to_string(residual) + " on bracket [" +
                             std::to_string(lo) + "," + std::to_string(hi) + "]");
  return u;
}

}  // namespace

double infinite_sponge(int k, double chi) {
  check_k(k);
  if (!(chi >= 0.0 && chi <= 1.0)) throw std::domain_error("chi outside [0,1]");
  const auto cp = critical_point(k);
  if (chi < cp.chi_th) return 0.0;
  if (chi == 1.0) return 1.0;
  const double t = t_of_k(k);
  const double u = solve_u(chi * chi, k, 1.0 - t, 1.0, true);
  return root_combine(u, k);
}

std::optional<double> infinite_sponge_nonphysical(int k, double chi) {
  check_k(k);
  const auto cp = critical_point(k);
  if (chi < cp.chi_th || chi >= 1.0) return std::nullopt;
  const double t = t_of_k(k);
  // The decreasing branch u in [0, 1-T] holds the smaller root.
  const double u = solve_u(chi * chi, k, 0.0, 1.0 - t, false);
  return root_combine(u, k);
}

double correlation_length(int k, double chi, double crossing) {
  check_k(k);
  const auto cp = critical_point(k);
  if (!(chi < cp.chi_th))
    throw std::domain_error("correlation_length: defined only below the threshold");
  if (!(crossing > 0.0 && crossing < cp.x_plus))
    throw std::domain_error("correlation_length: crossing outside (0, x_plus)");
  constexpr long kDepthCap = 1000000;
  double x_par = 1.0;
  double prev = 1.0;
  for (long l = 1; l <= kDepthCap; ++l) {
    const double x1 = chi * x_par;
    const double x = root_combine(x1 * x1, k);
    if (x < crossing) {
      if (l == 1) return 1.0;
      return (l - 1) + (prev - crossing) / (prev - x);
    }
    prev = x;
    x_par = branch_combine(x1, k);
  }
  throw std::runtime_error("correlation_length: no crossing within depth cap");
}

namespace {

// Second-order Taylor jet in chi; propagating it through the depth
// recursion gives exact curvature, which finite differences cannot
// resolve once the inflection feature narrows with depth.
struct Jet {
  double f = 0.0, d1 = 0.0, d2 = 0.0;
};

Jet operator+(Jet a, Jet b) { return {a.f + b.f, a.d1 + b.d1, a.d2 + b.d2}; }
Jet operator-(Jet a, Jet b) { return {a.f - b.f, a.d1 - b.d1, a.d2 - b.d2}; }
Jet operator*(Jet a, Jet b) {
  return {a.f * b.f, a.f * b.d1 + a.d1 * b.f,
          a.f * b.d2 + 2.0 * a.d1 * b.d1 + a.d2 * b.f};
}
Jet operator/(Jet a, Jet b) {
  const double inv = 1.0 / b.f;
  const double f = a.f * inv;
  const double d1 = (a.d1 - f * b.d1) * inv;
  const double d2 = (a.d2 - 2.0 * d1 * b.d1 - f * b.d2) * inv;
  return {f, d1, d2};
}
Jet jet_sqrt(Jet a) {
  const double s = std::sqrt(a.f);
  const double d1 = a.d1 / (2.0 * s);
  return {s, d1, (a.d2 / 2.0 - d1 * d1) / s};
}
Jet jet_pow(Jet a, int n) {
  Jet out{1.0, 0.0, 0.0};
  for (int i = 0; i < n; ++i) out = out * a;
  return out;
}
Jet jet_const(double c) { return {c, 0.0, 0.0}; }

// x -> sqrt(r/(1+r)), r = x^2 / (1-x^2)^m, in jet arithmetic.
Jet combine_jet(Jet x, int m) {
  const Jet u = x * x;
  const Jet ratio = u / jet_pow(jet_const(1.0) - u, m);
  return jet_sqrt(ratio / (jet_const(1.0) + ratio));
}

Jet finite_depth_sponge_jet(int k, long l, double chi) {
  const Jet chi_jet{chi, 1.0, 0.0};
  Jet x_par = jet_const(1.0);
  Jet x1 = chi_jet;
  for (long step = 1; step <= l; ++step) {
    x1 = chi_jet * x_par;
    if (step < l) x_par = combine_jet(x1, k - 1);
  }
  return combine_jet(x1, k);
}

double curvature(int k, long l, double chi) {
  return finite_depth_sponge_jet(k, l, chi).d2;
}

}  // namespace

double finite_size_threshold(int k, long l) {
  check_k(k);
  if (l < 2) throw std::domain_error("finite_size_threshold: depth must be >= 2");
  // The inflection sits just below the infinite-size threshold; scan for
  // the positive-to-negative sign change of d2 closest to it, then bisect.
  const double chi_th = critical_point(k).chi_th;
  const int n_scan = 4000;
  double lo = 0.0, hi = 0.0;
  for (int i = n_scan; i > 1; --i) {
    const double a = chi_th * (i - 1) / n_scan;
    const double b = chi_th * i / n_scan;
    if (curvature(k, l, a) > 0.0 && curvature(k, l, b) <= 0.0) {
      lo = a;
      hi = b;
      break;
    }
  }
  if (hi == 0.0)
    throw std::runtime_error("finite_size_threshold: no sign change of d2X/dchi2 found");
  for (int i = 0; i < 100 && hi - lo > 1e-14; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (curvature(k, l, mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

PowerLawFit fit_power_law(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 4)
    throw std::domain_error("fit_power_law: need >= 4 matched points");
  const auto n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0 && ys[i] > 0.0))
      throw std::domain_error("fit_power_law: data must be positive");
    const double lx = std::log(xs[i]), ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  PowerLawFit fit;
  fit.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - fit.exponent * sx) / n;
  fit.amplitude = std::exp(intercept);
  double ss_res = 0, ss_tot = 0;
  const double mean_y = sy / n;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double ly = std::log(ys[i]);
    const double pred = intercept + fit.exponent * std::log(xs[i]);
    ss_res += (ly - pred) * (ly - pred);
    ss_tot += (ly - mean_y) * (ly - mean_y);
  }
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  fit.window_low = *std::min_element(xs.begin(), xs.end());
  fit.window_high = *std::max_element(xs.begin(), xs.end());
  return fit;
}

double saturation_deficit(int k, double chi) {
  check_k(k);
  const auto cp = critical_point(k);
  if (!(chi >= cp.chi_th && chi < 1.0))
    throw std::domain_error("saturation_deficit: chi outside [chi_th, 1)");
  const double t = t_of_k(k);
  const double u = solve_u(chi * chi, k, 1.0 - t, 1.0, true);
  const double v = 1.0 - u;
  // X^2 = 1 - s with s = v^k / (u + v^k); 1 - X = s / (1 + sqrt(1 - s)).
  const double s = std::pow(v, k) / (u + std::pow(v, k));
  return s / (1.0 + std::sqrt(1.0 - s));
}

PowerLawFit saturation_exponent(int k) {
  check_k(k);
  constexpr int n_points = 40;
  std::vector<double> xs(n_points), ys(n_points);
  const double lo = std::log(1e-5), hi = std::log(1e-2);
  for (int i = 0; i < n_points; ++i) {
    const double eps = std::exp(lo + (hi - lo) * i / (n_points - 1.0));
    xs[static_cast<std::size_t>(i)] = eps;
    ys[static_cast<std::size_t>(i)] = saturation_deficit(k, 1.0 - eps);
  }
  return fit_power_law(xs, ys);
}

PhaseDiagnosis generalized_phase_classify(int k, double eta_s, double eta_p) {
  check_k(k);
  if (!(eta_s > 0.0 && eta_p > 0.0))
    throw std::domain_error("rule prefactors must be > 0");
  PhaseDiagnosis d;
  const double sqrt_km1 = std::sqrt(k - 1.0);
  if (eta_p < sqrt_km1) {
    const double inner = 1.0 - std::pow(eta_p, 2.0 / (k - 2.0)) *
                                   std::pow(k - 1.0, -(k - 1.0) / (k - 2.0)) *
                                   (k - 2.0);
    const double bound = std::sqrt(inner);
    if (eta_s <= bound) return d;  // NoTransition
    const double chi_th = bound / eta_s;
    if (chi_th > 1.0) {
      d.formal_chi_th = chi_th;
      return d;
    }
    const double f = std::pow(eta_p, 2.0 / (k - 2.0)) * std::pow(k - 1.0, -1.0 / (k - 2.0));
    const double ep4 = std::pow(eta_p, 4);
    d.kind = PhaseKind::MixedOrder;
    d.chi_th = chi_th;
    d.x_plus =
        eta_p * eta_p * std::sqrt((1.0 - f) / (std::pow(f, k) - ep4 * f + ep4));
    return d;
  }
  if (eta_s <= std::pow(eta_p, -0.5)) return d;  // NoTransition
  const double chi_th = 1.0 / (eta_s * eta_s * eta_p);
  if (chi_th > 1.0) {
    d.formal_chi_th = chi_th;
    return d;
  }
  d.kind = PhaseKind::SecondOrder;
  d.chi_th = chi_th;
  d.exponent = eta_p > sqrt_km1 ? 0.5 : 0.25;
  return d;
}

double generalized_infinite_sponge(int k, double chi, double eta_s, double eta_p) {
  check_k(k);
  if (!(chi >= 0.0 && chi <= 1.0)) throw std::domain_error("chi outside [0,1]");
  if (!(eta_s > 0.0 && eta_p > 0.0))
    throw std::domain_error("rule prefactors must be > 0");
  // Branch self-consistency: eta_s^2 chi^2 = u + (1-u)^{k-1} / eta_p^2.
  const double ep2 = eta_p * eta_p;
  const double target = eta_s * eta_s * chi * chi;
  auto g = [&](double u) { return u + std::pow(1.0 - u, k - 1) / ep2; };
  double lo;
  if (eta_p < std::sqrt(k - 1.0)) {
    const double f = std::pow(ep2 / (k - 1.0), 1.0 / (k - 2.0));
    lo = 1.0 - f;  // increasing branch starts at the fold point
  } else {
    lo = 0.0;
  }
  if (target < g(lo)) return 0.0;
  if (target >= g(1.0)) return 1.0;
  double hi = 1.0;
  for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  const double u = 0.5 * (lo + hi);
  if (std::abs(g(u) - target) > 1e-9)
    throw std::runtime_error("generalized solver failed: residual " +
                             std::to_string(std::abs(g(u) - target)));
  return root_combine(u, k, ep2 * ep2);
}

}  // namespace negpt::bethe
