#include "negpt/scan.hpp"

#include <cmath>
#include <stdexcept>

#include "negpt/baselines.hpp"

namespace negpt::scan {

namespace {

template <typename F>
Curve map_grid(const std::vector<double>& xs, Mode mode, F&& f) {
  Curve curve;
  curve.x = xs;
  curve.y.resize(xs.size());
  if (mode == Mode::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(xs.size()); ++i)
      curve.y[static_cast<std::size_t>(i)] = f(xs[static_cast<std::size_t>(i)]);
  } else {
    for (std::size_t i = 0; i < xs.size(); ++i) curve.y[i] = f(xs[i]);
  }
  return curve;
}

}  // namespace

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 2) throw std::domain_error("linspace needs >= 2 points");
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    xs[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1.0);
  return xs;
}

std::vector<double> logspace(double lo, double hi, int n) {
  if (!(lo > 0.0 && hi > 0.0)) throw std::domain_error("logspace needs positive bounds");
  std::vector<double> xs = linspace(std::log(lo), std::log(hi), n);
  for (double& x : xs) x = std::exp(x);
  return xs;
}

Curve infinite_sponge_curve(int k, const std::vector<double>& chis, Mode mode) {
  return map_grid(chis, mode, [k](double chi) { return bethe::infinite_sponge(k, chi); });
}

Curve finite_depth_curve(int k, long l, const std::vector<double>& chis, Mode mode) {
  return map_grid(chis, mode,
                  [k, l](double chi) { return bethe::finite_depth_sponge(k, l, chi); });
}

Curve conpt_curve(int k, const std::vector<double>& cs, Mode mode) {
  return map_grid(cs, mode,
                  [k](double c) { return baselines::conpt_sponge_bethe(k, c); });
}

Curve correlation_length_curve(int k, const std::vector<double>& chis, Mode mode) {
  return map_grid(chis, mode,
                  [k](double chi) { return bethe::correlation_length(k, chi); });
}

Curve generalized_sponge_curve(int k, double eta_s, double eta_p,
                               const std::vector<double>& chis, Mode mode) {
  return map_grid(chis, mode, [=](double chi) {
    return bethe::generalized_infinite_sponge(k, chi, eta_s, eta_p);
  });
}

bethe::PowerLawFit order_parameter_fit(int k, Mode mode, int n_points) {
  const auto cp = bethe::critical_point(k);
  const double x_plus = bethe::infinite_sponge(k, cp.chi_th);
  const auto eps = logspace(1e-6, 1e-3, n_points);
  std::vector<double> chis(eps.size());
  for (std::size_t i = 0; i < eps.size(); ++i) chis[i] = cp.chi_th + eps[i];
  const auto curve = infinite_sponge_curve(k, chis, mode);
  std::vector<double> ys(eps.size());
  for (std::size_t i = 0; i < eps.size(); ++i) ys[i] = curve.y[i] - x_plus;
  return bethe::fit_power_law(eps, ys);
}

bethe::PowerLawFit correlation_length_fit(int k, Mode mode, int n_points) {
  const auto cp = bethe::critical_point(k);
  const auto eps = logspace(1e-5, 1e-2, n_points);
  std::vector<double> chis(eps.size());
  for (std::size_t i = 0; i < eps.size(); ++i) chis[i] = cp.chi_th - eps[i];
  const auto curve = correlation_length_curve(k, chis, mode);
  return bethe::fit_power_law(eps, curve.y);
}

bethe::PowerLawFit finite_size_shift_fit(int k, const std::vector<long>& depths,
                                         Mode mode) {
  const double chi_th = bethe::critical_point(k).chi_th;
  std::vector<double> ls(depths.size()), shifts(depths.size());
  if (mode == Mode::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(depths.size()); ++i) {
      const auto idx = static_cast<std::size_t>(i);
      ls[idx] = static_cast<double>(depths[idx]);
      shifts[idx] = std::abs(bethe::finite_size_threshold(k, depths[idx]) - chi_th);
    }
  } else {
    for (std::size_t i = 0; i < depths.size(); ++i) {
      ls[i] = static_cast<double>(depths[i]);
      shifts[i] = std::abs(bethe::finite_size_threshold(k, depths[i]) - chi_th);
    }
  }
  return bethe::fit_power_law(ls, shifts);
}

std::vector<PhaseMapPoint> phase_map(int k, const std::vector<double>& eta_s_values,
                                     const std::vector<double>& eta_p_values,
                                     Mode mode) {
  std::vector<PhaseMapPoint> points(eta_s_values.size() * eta_p_values.size());
  const long total = static_cast<long>(points.size());
  const long cols = static_cast<long>(eta_p_values.size());
  auto fill = [&](long idx) {
    const auto i = static_cast<std::size_t>(idx / cols);
    const auto j = static_cast<std::size_t>(idx % cols);
    PhaseMapPoint& pt = points[static_cast<std::size_t>(idx)];
    pt.eta_s = eta_s_values[i];
    pt.eta_p = eta_p_values[j];
    pt.diagnosis = bethe::generalized_phase_classify(k, pt.eta_s, pt.eta_p);
  };
  if (mode == Mode::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long idx = 0; idx < total; ++idx) fill(idx);
  } else {
    for (long idx = 0; idx < total; ++idx) fill(idx);
  }
  return points;
}

}  // namespace negpt::scan
