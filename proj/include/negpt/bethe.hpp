#pragma once

#include <optional>
#include <span>
#include <vector>

namespace negpt::bethe {

/// Critical data of the Bethe-lattice transition at degree k.
struct CriticalPoint {
  double chi_th = 0.0;   // critical threshold of the link weight
  double x_plus = 0.0;   // jump of the sponge-crossing value at chi_th
  double x1_plus = 0.0;  // jump of the single-branch value
};

enum class PhaseKind { NoTransition, SecondOrder, MixedOrder };

struct PhaseDiagnosis {
  PhaseKind kind = PhaseKind::NoTransition;
  std::optional<double> chi_th;
  std::optional<double> x_plus;
  std::optional<double> exponent;
  /// Set when the formal threshold lands outside [0,1]; kind is then
  /// NoTransition but the formal value is still reported here.
  std::optional<double> formal_chi_th;
};

struct PowerLawFit {
  double exponent = 0.0;
  double amplitude = 0.0;
  double r_squared = 0.0;
  double window_low = 0.0;
  double window_high = 0.0;
};

CriticalPoint critical_point(int k);

/// Sponge-crossing value of a depth-l Bethe lattice.
double finite_depth_sponge(int k, long l, double chi);

/// Infinite-depth solution: 0 below the threshold, otherwise the value on
/// the physically increasing branch of the self-consistent equation.
double infinite_sponge(int k, double chi);

/// Diagnostic access to the smaller (nonphysical) root of the
/// self-consistent equation, when it exists.
std::optional<double> infinite_sponge_nonphysical(int k, double chi);

/// Depth at which the finite-depth value first falls to `crossing`
/// (linearly interpolated); diverges as chi approaches the threshold.
double correlation_length(int k, double chi, double crossing = 0.5);

/// Finite-size threshold: the chi at which the second chi-derivative of
/// the depth-l sponge value vanishes.
double finite_size_threshold(int k, long l);

PowerLawFit fit_power_law(std::span<const double> xs, std::span<const double> ys);

/// 1 - X_SC computed without cancellation; the deficit scales as
/// (1 - chi)^k near chi = 1 and underflows the naive difference.
double saturation_deficit(int k, double chi);

/// Fit of 1 - X_SC vs 1 - chi near chi = 1; exponent is ~k.
PowerLawFit saturation_exponent(int k);

PhaseDiagnosis generalized_phase_classify(int k, double eta_s, double eta_p);

double generalized_infinite_sponge(int k, double chi, double eta_s, double eta_p);

}  // namespace negpt::bethe
