#include "negpt/feedback.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "negpt/baselines.hpp"
#include "negpt/bethe.hpp"

namespace negpt::feedback {

namespace {

constexpr double kGridStep = 1e-4;

// Memoized response curve on a uniform grid over [0,1]. The CV curve
// carries its jump explicitly so lookups never smear the discontinuity.
struct ResponseTable {
  std::vector<double> values;
  double chi_th = 0.0;  // 0 for continuous curves
  double x_plus = 0.0;

  double eval(double x) const {
    if (x <= 0.0) return values.front();
    if (x >= 1.0) return values.back();
    if (chi_th > 0.0 && x < chi_th) return 0.0;
    const double pos = x / kGridStep;
    const auto idx = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(idx);
    double x_lo = idx * kGridStep, y_lo = values[idx];
    const double x_hi = (idx + 1) * kGridStep, y_hi = values[idx + 1];
    if (chi_th > 0.0 && x_lo < chi_th) {
      x_lo = chi_th;
      y_lo = x_plus;
      return y_lo + (x - x_lo) / (x_hi - x_lo) * (y_hi - y_lo);
    }
    return y_lo + frac * (y_hi - y_lo);
  }
};

const ResponseTable& response_table(ResponseKind kind, int k) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<ResponseTable>> cache;
  const std::pair<int, int> key{static_cast<int>(kind), k};
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;
  auto table = std::make_unique<ResponseTable>();
  const auto n = static_cast<std::size_t>(std::lround(1.0 / kGridStep)) + 1;
  table->values.resize(n);
  if (kind == ResponseKind::CV) {
    table->chi_th = bethe::critical_point(k).chi_th;
    table->x_plus = bethe::infinite_sponge(k, table->chi_th);
    for (std::size_t i = 0; i < n; ++i)
      table->values[i] = bethe::infinite_sponge(k, std::min(1.0, i * kGridStep));
  } else {
    for (std::size_t i = 0; i < n; ++i)
      table->values[i] = baselines::conpt_sponge_bethe(k, std::min(1.0, i * kGridStep));
  }
  return *cache.emplace(key, std::move(table)).first->second;
}

}  // namespace

double cv_response(int k, double chi) { return response_table(ResponseKind::CV, k).eval(chi); }

double dv_response(int k, double c) { return response_table(ResponseKind::DV, k).eval(c); }

double chi_for_target(int k, double x_sc) {
  const auto cp = bethe::critical_point(k);
  const double x_plus = bethe::infinite_sponge(k, cp.chi_th);
  if (!(x_sc >= x_plus && x_sc <= 1.0))
    throw std::domain_error("target output outside the supercritical range");
  double lo = cp.chi_th, hi = 1.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (bethe::infinite_sponge(k, mid) < x_sc)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

Trajectory simulate(const FeedbackConfig& cfg) {
  if (!(cfg.tau > 0.0)) throw std::domain_error("tau must be > 0");
  if (!(cfg.dt > 0.0)) throw std::domain_error("dt must be > 0");
  if (!(cfg.horizon > cfg.t0)) throw std::domain_error("horizon must exceed t0");
  if (!(cfg.target > 0.0 && cfg.target < 1.0)) throw std::domain_error("target outside (0,1)");
  const ResponseTable& table = response_table(cfg.response, cfg.k);
  const double t_act = cfg.activation >= 0.0 ? cfg.activation : 0.0;

  const auto steps = static_cast<std::size_t>(std::llround(cfg.horizon / cfg.dt));
  std::vector<double> u_history(steps + 1, 0.0);

  // Drive term u(t - t0), linearly interpolated in the step history and 0
  // before the control has produced any signal.
  auto drive = [&](double t, std::size_t known) {
    const double s = t - cfg.t0;
    if (s <= 0.0) return 0.0;
    const double pos = s / cfg.dt;
    auto idx = static_cast<std::size_t>(pos);
    if (idx >= known) return u_history[known];
    const double frac = pos - static_cast<double>(idx);
    return u_history[idx] + frac * (u_history[idx + 1] - u_history[idx]);
  };

  Trajectory traj;
  traj.samples.reserve(steps + 1);
  double chi = cfg.chi0;
  double integral = 0.0;
  double prev_error = cfg.target - table.eval(chi);

  for (std::size_t m = 0; m <= steps; ++m) {
    const double t = m * cfg.dt;
    const double output = table.eval(chi);
    const double error = cfg.target - output;
    integral += error * cfg.dt;
    const double derivative = m == 0 ? 0.0 : (error - prev_error) / cfg.dt;
    prev_error = error;
    double u = 0.0;
    if (t > t_act)
      u = cfg.alpha * (cfg.kp * error + cfg.ki * integral + cfg.kd * derivative);
    u_history[m] = u;
    traj.samples.push_back({t, chi, output, u, error});
    if (m == steps) break;

    auto f = [&](double tt, double x) { return -x / cfg.tau + drive(tt, m); };
    const double k1 = f(t, chi);
    const double k2 = f(t + 0.5 * cfg.dt, chi + 0.5 * cfg.dt * k1);
    const double k3 = f(t + 0.5 * cfg.dt, chi + 0.5 * cfg.dt * k2);
    const double k4 = f(t + cfg.dt, chi + cfg.dt * k3);
    const double delta = cfg.dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (std::abs(delta) > 0.1)
      throw std::runtime_error("integrator step too large; reduce dt");
    chi = std::clamp(chi + delta, 0.0, 1.0);
  }
  return traj;
}

double resource_waste(const Trajectory& traj, double chi_target) {
  if (!(chi_target > 0.0 && chi_target < 1.0))
    throw std::domain_error("chi_target outside (0,1)");
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < traj.samples.size(); ++i) {
    const auto& a = traj.samples[i];
    const auto& b = traj.samples[i + 1];
    const double dt = b.t - a.t;
    const bool above_a = a.chi > chi_target, above_b = b.chi > chi_target;
    if (above_a && above_b) {
      total += 0.5 * (a.chi + b.chi) * dt;
    } else if (above_a != above_b) {
      const double frac = (chi_target - a.chi) / (b.chi - a.chi);
      const double piece = above_a ? frac : 1.0 - frac;
      const double hi = above_a ? a.chi : b.chi;
      total += 0.5 * (hi + chi_target) * piece * dt;
    }
  }
  return total;
}

StabilityReport classify_stability(const Trajectory& traj, double band, double window) {
  if (!(band > 0.0 && band < 0.5)) throw std::domain_error("band outside (0,0.5)");
  if (traj.samples.empty()) throw std::domain_error("empty trajectory");
  const double t_end = traj.samples.back().t;
  if (!(window > 0.0 && window < t_end)) throw std::domain_error("window outside (0,horizon)");

  StabilityReport rep;
  bool within_band = true, all_zero = true;
  std::optional<double> settle;
  bool prev_on = traj.samples.front().output > 0.0;
  for (const auto& s : traj.samples) {
    const bool on = s.output > 0.0;
    if (on != prev_on) ++rep.threshold_crossings;
    prev_on = on;
    rep.max_overshoot = std::max(rep.max_overshoot, -s.error);
    if (std::abs(s.error) < band) {
      if (!settle) settle = s.t;
    } else {
      settle.reset();
    }
    if (s.t >= t_end - window) {
      if (std::abs(s.error) >= band) within_band = false;
      if (s.output > 0.0) all_zero = false;
    }
  }
  if (within_band) {
    rep.kind = StabilityKind::Stabilized;
    rep.settling_time = settle;
  } else if (all_zero) {
    rep.kind = StabilityKind::Collapsed;
  } else {
    rep.kind = StabilityKind::Oscillating;
  }
  return rep;
}

std::vector<StabilityReport> parameter_sweep(const FeedbackConfig& base, SweepAxis axis,
                                             const std::vector<double>& values,
                                             double band, double window) {
  std::vector<StabilityReport> reports(values.size());
  // Warm the response table before the parallel region.
  (void)response_table(base.response, base.k);
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < static_cast<long>(values.size()); ++i) {
    FeedbackConfig cfg = base;
    switch (axis) {
      case SweepAxis::T0: cfg.t0 = values[static_cast<std::size_t>(i)]; break;
      case SweepAxis::Alpha: cfg.alpha = values[static_cast<std::size_t>(i)]; break;
      case SweepAxis::Target: cfg.target = values[static_cast<std::size_t>(i)]; break;
    }
    reports[static_cast<std::size_t>(i)] =
        classify_stability(simulate(cfg), band, window);
  }
  return reports;
}

}  // namespace negpt::feedback
