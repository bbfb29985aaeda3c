#include "negpt/baselines.hpp"

#include <cmath>
#include <stdexcept>

namespace negpt::baselines {

namespace {

void check_spec(int k, int M) {
  if (k < 3) throw std::domain_error("degree must be >= 3");
  if (M < 1) throw std::domain_error("layer count must be >= 1");
}

double h_of(int k, int M, double P) {
  return std::pow(1.0 - std::pow(1.0 - P, k - 1), M);
}

}  // namespace

double interdependent_branch(int k, int M, double p) {
  check_spec(k, M);
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("p outside [0,1]");
  // Fixed-point iteration from P = 1 descends monotonically to the
  // largest fixed point (0 when none exists).
  double P = 1.0;
  for (long i = 0; i < 2000000; ++i) {
    const double next = p * h_of(k, M, P);
    if (std::abs(next - P) < 1e-16) return next;
    P = next;
    if (P < 1e-14) return 0.0;
  }
  return P;
}

InterdependentCritical interdependent_critical(int k, int M) {
  check_spec(k, M);
  if (M == 1) return {1.0 / (k - 1.0), 0.0};
  // Tangency: maximize h(P)/P; the threshold is the reciprocal maximum.
  auto phi = [&](double P) { return h_of(k, M, P) / P; };
  double lo = 1e-9, hi = 1.0;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
  double fa = phi(a), fb = phi(b);
  for (int i = 0; i < 200 && hi - lo > 1e-13; ++i) {
    if (fa < fb) {
      lo = a;
      a = b;
      fa = fb;
      b = lo + gr * (hi - lo);
      fb = phi(b);
    } else {
      hi = b;
      b = a;
      fb = fa;
      a = hi - gr * (hi - lo);
      fa = phi(a);
    }
  }
  const double p_star = 0.5 * (lo + hi);
  const double max_phi = phi(p_star);
  if (!(max_phi > 0.0)) throw std::runtime_error("tangency search failed");
  return {1.0 / max_phi, p_star};
}

namespace {

// Parallel combination of n identical branches under the ConPT rule
// phi(c_out) = max(1/2, prod phi(c_i)) with phi(c) = (1+sqrt(1-c^2))/2.
// Evaluated through the complement 1-phi to stay accurate at small c.
double conpt_parallel(double c1, int n) {
  const double m = c1 * c1 / (2.0 * (1.0 + std::sqrt(1.0 - c1 * c1)));
  const double log_q = n * std::log1p(-m);
  const double q = std::exp(log_q);
  if (q <= 0.5) return 1.0;  // saturated
  const double one_minus_q = -std::expm1(log_q);
  // 1 - (2q-1)^2 = 4 q (1-q)
  return 2.0 * std::sqrt(q * one_minus_q);
}

}  // namespace

double conpt_sponge_bethe(int k, double c) {
  if (k < 3) throw std::domain_error("degree must be >= 3");
  if (!(c >= 0.0 && c <= 1.0)) throw std::domain_error("concurrence outside [0,1]");
  if (c == 1.0) return 1.0;
  // Iterate the branch map from above; it descends monotonically to the
  // largest fixed point (0 below the continuous threshold 1/sqrt(k-1)).
  double c1 = 1.0;
  for (long i = 0; i < 2000000; ++i) {
    const double next = c * conpt_parallel(c1, k - 1);
    if (std::abs(next - c1) < 1e-15) {
      c1 = next;
      break;
    }
    c1 = next;
    if (c1 < 1e-10) return 0.0;
  }
  return conpt_parallel(c1, k);
}

}  // namespace negpt::baselines
