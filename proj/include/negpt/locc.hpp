#pragma once

#include <vector>

#include "negpt/measures.hpp"

namespace negpt::locc {

/// Truncated transfer matrix of a pure-loss channel (upper-triangular
/// binomial) or a quantum-limited amplifier (lower-triangular).
struct TransferMatrix {
  enum class Kind { Loss, Amplifier };
  Kind kind;
  double param;  // transmissivity eta or gain G
  int n_max;
  std::vector<double> entries;  // row-major n_max x n_max

  double at(int i, int j) const { return entries[static_cast<std::size_t>(i) * n_max + j]; }
  std::vector<double> apply(const std::vector<double>& v) const;
  std::vector<double> column_sums() const;
  std::vector<double> row_sums() const;
};

TransferMatrix loss_matrix(double eta, int n_max);
TransferMatrix amp_matrix(double gain, int n_max);

/// Max row sum of the tensor product of two transfer matrices; <= 1 iff
/// eta * G >= 1, up to the truncation tail.
double tensor_max_row_sum(const TransferMatrix& loss, const TransferMatrix& amp);

/// True iff x is majorized by y (every prefix sum of sorted-descending x
/// is <= that of y, totals equal). Inputs must be normalized together
/// with their truncation errors.
bool is_majorized_by(const measures::SchmidtVector& x, const measures::SchmidtVector& y);

struct ConcentrationReport {
  double r_out = 0.0;
  double chi_out = 0.0;
  double eta = 0.0;
  double gain = 0.0;
  double max_entry_residual = 0.0;  // loss-matrix mapping check
  double amp_column_residual = 0.0;  // amplifier first-column check
  double truncation_error = 0.0;
  bool majorization_ok = false;
  bool pass = false;
};

/// Verifies the two-TMSVS concentration construction at truncation n_max:
/// the loss/amplifier pair maps the pre-images onto the inputs entrywise,
/// and the input pair is majorized by the concentrated output.
ConcentrationReport verify_concentration(double r1, double r2, int n_max);

/// Sufficient condition for deterministic conversion between two
/// decreasingly ordered squeezing pairs (sinh-ratio inequality).
bool lemma2_convertible(double r1, double r2, double r1p, double r2p);

struct GpovmResult {
  double a = 0.0;  // diagonal covariance element
  double c = 0.0;  // off-diagonal covariance element
  measures::SqueezingParameter r;
};

/// Covariance matrix of the post-measurement state when the relay swaps
/// with a TMSVS seed of squeezing r0; tanh r = tanh r0 tanh r1 tanh r2.
GpovmResult gpovm_swap(double r1, double r2, measures::SqueezingParameter r0);

/// Chain of generalized swaps: chi = prod(seed chi) * prod(link chi).
double swap_chain(const std::vector<double>& chis, const std::vector<double>& seed_chis);

/// Non-Gaussian state with a DV prefix and a TMSVS-like geometric tail.
struct DCState {
  double c_chi = 1.0;          // weight of the tail component
  std::vector<double> mu;      // DV Schmidt prefix, sums to 1
  double chi = 0.0;            // tail ratio
};

struct NonGaussianResult {
  DCState out;
  double eta = 0.0;
  double eta_p = 0.0;
  bool verified = false;
  double max_residual = 0.0;
};

/// Concentrates two DC states; eta defaults to the minimal admissible
/// value 1 - c_chi2 * chi2^2 (pass eta < 0 for the default). An eta below
/// the bound violates column stochasticity and throws.
NonGaussianResult nongaussian_concentrate(const DCState& s1, const DCState& s2,
                                          int n_max, double eta = -1.0);

}  // namespace negpt::locc
