#pragma once

#include <limits>
#include <vector>

namespace negpt::measures {

/// Ratio negativity of a single link, chi = tanh r, bounded in [0,1].
/// chi = 1 corresponds to infinite squeezing.
struct RatioNegativity {
  double chi = 0.0;
};

/// Squeezing parameter r >= 0. r = +inf represents chi = 1.
struct SqueezingParameter {
  double r = 0.0;
  bool is_infinite() const { return r == std::numeric_limits<double>::infinity(); }
  static SqueezingParameter infinite() {
    return {std::numeric_limits<double>::infinity()};
  }
};

/// Truncated Schmidt-value vector of a pure bipartite state.
/// Entries are nonincreasing; sum + truncation_error == 1 within tolerance.
struct SchmidtVector {
  std::vector<double> values;
  double truncation_error = 0.0;
};

double chi_from_r(SqueezingParameter r);
SqueezingParameter r_from_chi(double chi);

/// Schmidt vector of a TMSVS: lambda_n = (1 - chi^2) chi^{2n}, n = 0..n_max-1.
/// Requires chi < 1 (strict) and n_max >= 1.
SchmidtVector tmsvs_schmidt(double chi, int n_max);

}  // namespace negpt::measures
