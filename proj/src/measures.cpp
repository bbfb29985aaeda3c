#include "negpt/measures.hpp"

#include <cmath>
#include <stdexcept>

namespace negpt::measures {

double chi_from_r(SqueezingParameter r) {
  if (std::isnan(r.r) || r.r < 0.0)
    throw std::domain_error("chi_from_r: squeezing parameter must be >= 0");
  if (r.is_infinite()) return 1.0;
  return std::tanh(r.r);
}

SqueezingParameter r_from_chi(double chi) {
  if (!(chi >= 0.0 && chi <= 1.0))
    throw std::domain_error("r_from_chi: chi must lie in [0,1]");
  if (chi == 1.0) return SqueezingParameter::infinite();
  return {std::atanh(chi)};
}

SchmidtVector tmsvs_schmidt(double chi, int n_max) {
  if (!(chi >= 0.0 && chi < 1.0))
    throw std::domain_error("tmsvs_schmidt: chi must lie in [0,1) (chi = 1 is degenerate)");
  if (n_max < 1) throw std::domain_error("tmsvs_schmidt: n_max must be >= 1");
  SchmidtVector out;
  out.values.resize(static_cast<std::size_t>(n_max));
  const double c2 = chi * chi;
  double term = 1.0 - c2;
  for (int n = 0; n < n_max; ++n) {
    out.values[static_cast<std::size_t>(n)] = term;
    term *= c2;
  }
  out.truncation_error = std::pow(c2, n_max);
  return out;
}

}  // namespace negpt::measures
