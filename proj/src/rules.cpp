#include "negpt/rules.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace negpt::rules {

namespace {
WarningSink g_warning_sink;

void warn(const std::string& msg) {
  if (g_warning_sink) g_warning_sink(msg);
}

void check_chi(double chi) {
  if (!(chi >= 0.0 && chi <= 1.0))
    throw std::domain_error("link weight must lie in [0,1]");
}
}  // namespace

void set_warning_sink(WarningSink sink) { g_warning_sink = std::move(sink); }

double series_combine(std::span<const double> chis, double eta_s) {
  if (eta_s <= 0.0) throw std::domain_error("series_combine: eta_s must be > 0");
  double prod = eta_s;
  for (double c : chis) {
    check_chi(c);
    prod *= c;
  }
  if (prod > 1.0) {
    warn("series_combine: generalized rule outside validity domain (chi > 1)");
    throw std::range_error("series_combine: eta_s * prod(chi) exceeds 1");
  }
  return prod;
}

double parallel_combine(std::span<const double> chis, double eta_p) {
  if (eta_p <= 0.0) throw std::domain_error("parallel_combine: eta_p must be > 0");
  if (chis.empty()) throw std::domain_error("parallel_combine: empty input");
  double max_chi = 0.0;
  double prod_one_minus = 1.0;
  for (double c : chis) {
    check_chi(c);
    if (c == 1.0) return 1.0;  // saturated
    max_chi = std::max(max_chi, c);
    prod_one_minus *= 1.0 - c * c;
  }
  // ratio = chi^2 / (1 - chi^2); bounded arithmetic, no hyperbolics
  const double ratio = eta_p * eta_p * max_chi * max_chi / prod_one_minus;
  const double chi = std::sqrt(ratio / (1.0 + ratio));
  if (eta_p != 1.0 && chi < max_chi)
    warn("parallel_combine: generalized rule not monotone at these inputs");
  return chi;
}

OptimalOrder optimal_parallel_order(std::span<const double> rs) {
  if (rs.empty()) throw std::domain_error("optimal_parallel_order: empty input");
  for (double r : rs)
    if (!(r > 0.0)) throw std::domain_error("optimal_parallel_order: all r must be > 0");
  std::vector<std::size_t> order(rs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto max_it = std::max_element(rs.begin(), rs.end());
  const auto max_idx = static_cast<std::size_t>(std::distance(rs.begin(), max_it));
  std::swap(order[0], order[max_idx]);
  double sinh_r = std::sinh(rs[max_idx]);
  for (std::size_t i = 0; i < rs.size(); ++i)
    if (i != max_idx) sinh_r *= std::cosh(rs[i]);
  return {measures::SqueezingParameter{std::asinh(sinh_r)}, std::move(order)};
}

double parallel_combine_hyperbolic(std::span<const double> chis) {
  if (chis.empty()) throw std::domain_error("parallel_combine_hyperbolic: empty input");
  double max_chi = 0.0;
  for (double c : chis) {
    check_chi(c);
    if (c == 1.0) return 1.0;
    max_chi = std::max(max_chi, c);
  }
  double sinh_r = std::sinh(std::atanh(max_chi));
  bool max_used = false;
  for (double c : chis) {
    if (!max_used && c == max_chi) {
      max_used = true;  // first occurrence fills the sinh slot
      continue;
    }
    sinh_r *= std::cosh(std::atanh(c));
  }
  return std::tanh(std::asinh(sinh_r));
}

}  // namespace negpt::rules
