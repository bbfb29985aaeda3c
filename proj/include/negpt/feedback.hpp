#pragma once

#include <optional>
#include <vector>

namespace negpt::feedback {

enum class ResponseKind { CV, DV };

/// First-order-plus-time-delay entanglement decay under PID feedback.
/// The delay t0 doubles as the control activation time; set `activation`
/// to a nonnegative value to separate the two.
struct FeedbackConfig {
  double tau = 1.0;     // decay timescale
  double t0 = 0.02;     // transport delay / activation time
  double kp = 0.0;
  double ki = 0.0;
  double kd = 0.0;
  double alpha = 1.0;   // common gain scale
  double target = 0.95; // desired network output
  double chi0 = 1.0;
  double dt = 1e-4;
  double horizon = 2.0;
  ResponseKind response = ResponseKind::CV;
  int k = 3;
  double activation = -1.0;  // < 0: conflated with t0 (u(t)=0 for t<=0)
};

struct Sample {
  double t;
  double chi;
  double output;
  double u;
  double error;
};

struct Trajectory {
  std::vector<Sample> samples;
};

/// Network response maps, memoized on a 1e-4 grid with linear
/// interpolation; the CV map is exactly 0 below its threshold.
double cv_response(int k, double chi);
double dv_response(int k, double c);

/// Link value at which the CV network output reaches x_sc (bisection on
/// the supercritical branch).
double chi_for_target(int k, double x_sc);

Trajectory simulate(const FeedbackConfig& config);

/// Trapezoidal integral of chi(t) over the region chi(t) > chi_target.
double resource_waste(const Trajectory& traj, double chi_target);

enum class StabilityKind { Stabilized, Oscillating, Collapsed };

struct StabilityReport {
  StabilityKind kind = StabilityKind::Collapsed;
  std::optional<double> settling_time;
  long threshold_crossings = 0;  // output on/off transitions
  double max_overshoot = 0.0;
};

StabilityReport classify_stability(const Trajectory& traj, double band, double window);

enum class SweepAxis { T0, Alpha, Target };

std::vector<StabilityReport> parameter_sweep(const FeedbackConfig& base, SweepAxis axis,
                                             const std::vector<double>& values,
                                             double band = 0.05, double window = 0.5);

}  // namespace negpt::feedback
