#pragma once

#include <vector>

#include "negpt/bethe.hpp"

namespace negpt::scan {

/// Grid evaluations run either serially or with OpenMP; both modes
/// evaluate the same per-point function, so results agree bitwise.
enum class Mode { Serial, Parallel };

struct Curve {
  std::vector<double> x;
  std::vector<double> y;
};

std::vector<double> linspace(double lo, double hi, int n);
std::vector<double> logspace(double lo, double hi, int n);

Curve infinite_sponge_curve(int k, const std::vector<double>& chis, Mode mode);
Curve finite_depth_curve(int k, long l, const std::vector<double>& chis, Mode mode);
Curve conpt_curve(int k, const std::vector<double>& cs, Mode mode);
/// Correlation length below the threshold; chis must all be subcritical.
Curve correlation_length_curve(int k, const std::vector<double>& chis, Mode mode);
Curve generalized_sponge_curve(int k, double eta_s, double eta_p,
                               const std::vector<double>& chis, Mode mode);

/// Order-parameter exponent: fit of X - X+ vs chi - chi_th just above the
/// threshold (window of |chi - chi_th| in [1e-6, 1e-3]).
bethe::PowerLawFit order_parameter_fit(int k, Mode mode = Mode::Parallel,
                                       int n_points = 60);

/// Correlation-length exponent: fit of the divergence depth vs
/// chi_th - chi over [1e-5, 1e-2]; the exponent is negative.
bethe::PowerLawFit correlation_length_fit(int k, Mode mode = Mode::Parallel,
                                          int n_points = 40);

/// Finite-size shift exponent: fit of |chi_th(l) - chi_th| vs depth l.
bethe::PowerLawFit finite_size_shift_fit(int k, const std::vector<long>& depths,
                                         Mode mode = Mode::Parallel);

struct PhaseMapPoint {
  double eta_s = 0.0;
  double eta_p = 0.0;
  bethe::PhaseDiagnosis diagnosis;
};

/// Grid of generalized-rule phase classifications over (eta_s, eta_p).
std::vector<PhaseMapPoint> phase_map(int k, const std::vector<double>& eta_s_values,
                                     const std::vector<double>& eta_p_values,
                                     Mode mode = Mode::Parallel);

}  // namespace negpt::scan
