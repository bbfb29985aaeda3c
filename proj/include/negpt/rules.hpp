#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "negpt/measures.hpp"

namespace negpt::rules {

/// Prefactors of the generalized series/parallel rules. The standard
/// scheme is eta_s = eta_p = 1.
struct RuleParams {
  double eta_s = 1.0;
  double eta_p = 1.0;
};

/// Optional sink for non-fatal diagnostics emitted when a generalized rule
/// is evaluated outside its validity domain.
using WarningSink = std::function<void(const std::string&)>;
void set_warning_sink(WarningSink sink);

/// Series (swapping) rule: chi = eta_s * prod(chi_i).
/// Throws std::range_error if the generalized result exceeds 1.
double series_combine(std::span<const double> chis, double eta_s = 1.0);

/// Parallel (concentration) rule in the chi domain. With m = max chi_i:
///   chi^2 / (1 - chi^2) = eta_p^2 m^2 / prod(1 - chi_i^2).
/// Any chi_i = 1 saturates the result to 1.
double parallel_combine(std::span<const double> chis, double eta_p = 1.0);

struct OptimalOrder {
  measures::SqueezingParameter r;
  std::vector<std::size_t> order;  // largest-r index first
};

/// Optimal concentration order: sinh r = sinh(r_max) * prod(cosh r_k).
/// The witness ordering places the largest squeezing parameter first.
OptimalOrder optimal_parallel_order(std::span<const double> rs);

/// Hyperbolic-domain evaluation of the parallel rule, used as a
/// cross-check oracle against the chi-domain closed form.
double parallel_combine_hyperbolic(std::span<const double> chis);

}  // namespace negpt::rules
