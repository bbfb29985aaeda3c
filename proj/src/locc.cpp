#include "negpt/locc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "negpt/measures.hpp"

namespace negpt::locc {

namespace {

double log_choose(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

void check_n_max(int n_max) {
  if (n_max < 2) throw std::domain_error("n_max must be >= 2");
}

}  // namespace

std::vector<double> TransferMatrix::apply(const std::vector<double>& v) const {
  if (static_cast<int>(v.size()) != n_max)
    throw std::domain_error("vector length does not match truncation");
  std::vector<double> out(static_cast<std::size_t>(n_max), 0.0);
  for (int i = 0; i < n_max; ++i) {
    double acc = 0.0;
    for (int j = 0; j < n_max; ++j) acc += at(i, j) * v[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

std::vector<double> TransferMatrix::column_sums() const {
  std::vector<double> sums(static_cast<std::size_t>(n_max), 0.0);
  for (int i = 0; i < n_max; ++i)
    for (int j = 0; j < n_max; ++j) sums[static_cast<std::size_t>(j)] += at(i, j);
  return sums;
}

std::vector<double> TransferMatrix::row_sums() const {
  std::vector<double> sums(static_cast<std::size_t>(n_max), 0.0);
  for (int i = 0; i < n_max; ++i)
    for (int j = 0; j < n_max; ++j) sums[static_cast<std::size_t>(i)] += at(i, j);
  return sums;
}

TransferMatrix loss_matrix(double eta, int n_max) {
  if (!(eta > 0.0 && eta <= 1.0)) throw std::domain_error("transmissivity outside (0,1]");
  check_n_max(n_max);
  TransferMatrix m{TransferMatrix::Kind::Loss, eta, n_max,
                   std::vector<double>(static_cast<std::size_t>(n_max) * n_max, 0.0)};
  if (eta == 1.0) {
    for (int i = 0; i < n_max; ++i)
      m.entries[static_cast<std::size_t>(i) * n_max + i] = 1.0;
    return m;
  }
  const double log_eta = std::log(eta), log_loss = std::log(1.0 - eta);
  for (int j = 0; j < n_max; ++j)
    for (int i = 0; i <= j; ++i)
      m.entries[static_cast<std::size_t>(i) * n_max + j] =
          std::exp(log_choose(j, i) + i * log_eta + (j - i) * log_loss);
  return m;
}

TransferMatrix amp_matrix(double gain, int n_max) {
  if (!(gain >= 1.0)) throw std::domain_error("gain must be >= 1");
  check_n_max(n_max);
  TransferMatrix m{TransferMatrix::Kind::Amplifier, gain, n_max,
                   std::vector<double>(static_cast<std::size_t>(n_max) * n_max, 0.0)};
  const double a = 1.0 / gain, b = 1.0 - a;
  if (b == 0.0) {
    for (int i = 0; i < n_max; ++i)
      m.entries[static_cast<std::size_t>(i) * n_max + i] = 1.0;
    return m;
  }
  const double log_a = std::log(a), log_b = std::log(b);
  for (int i = 0; i < n_max; ++i)
    for (int j = 0; j <= i; ++j)
      m.entries[static_cast<std::size_t>(i) * n_max + j] =
          std::exp(log_choose(i, j) + (j + 1) * log_a + (i - j) * log_b);
  return m;
}

double tensor_max_row_sum(const TransferMatrix& loss, const TransferMatrix& amp) {
  const auto rl = loss.row_sums();
  const auto ra = amp.row_sums();
  return *std::max_element(rl.begin(), rl.end()) *
         *std::max_element(ra.begin(), ra.end());
}

namespace {

constexpr double kMajorizationTol = 1e-12;

std::vector<double> sorted_renormalized(const measures::SchmidtVector& v) {
  const double total = std::accumulate(v.values.begin(), v.values.end(), 0.0);
  if (std::abs(total + v.truncation_error - 1.0) > 1e-9)
    throw std::domain_error("Schmidt vector is not normalized");
  std::vector<double> sorted = v.values;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  if (v.truncation_error != 0.0)
    for (double& x : sorted) x /= 1.0 - v.truncation_error;
  return sorted;
}

// Prefix-sum comparison of two descending vectors; true iff x is weakly
// below y at every prefix.
bool prefix_dominated(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = std::max(x.size(), y.size());
  double px = 0.0, py = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    px += i < x.size() ? x[i] : 0.0;
    py += i < y.size() ? y[i] : 0.0;
    if (px > py + kMajorizationTol) return false;
  }
  return true;
}

}  // namespace

bool is_majorized_by(const measures::SchmidtVector& x, const measures::SchmidtVector& y) {
  return prefix_dominated(sorted_renormalized(x), sorted_renormalized(y));
}

ConcentrationReport verify_concentration(double r1, double r2, int n_max) {
  if (!(r1 > 0.0 && r2 >= 0.0 && r1 >= r2))
    throw std::domain_error("require r1 >= r2 >= 0 with r1 > 0");
  check_n_max(n_max);

  ConcentrationReport rep;
  rep.r_out = std::asinh(std::sinh(r1) * std::cosh(r2));
  rep.chi_out = std::tanh(rep.r_out);
  if (rep.chi_out > 0.99)
    throw std::runtime_error("truncation insufficient: output chi exceeds 0.99");
  rep.gain = std::cosh(r2) * std::cosh(r2);
  rep.eta = 1.0 / rep.gain;
  rep.truncation_error = std::pow(rep.chi_out, 2.0 * n_max);

  const double chi1 = std::tanh(r1), chi2 = std::tanh(r2);
  const auto loss = loss_matrix(rep.eta, n_max);
  const auto amp = amp_matrix(rep.gain, n_max);

  // The loss channel maps the concentrated state back onto the first input.
  const auto pre = measures::tmsvs_schmidt(rep.chi_out, n_max);
  const auto mapped = loss.apply(pre.values);
  const auto target1 = measures::tmsvs_schmidt(chi1, n_max);
  for (int i = 0; i < n_max; ++i)
    rep.max_entry_residual =
        std::max(rep.max_entry_residual,
                 std::abs(mapped[static_cast<std::size_t>(i)] -
                          target1.values[static_cast<std::size_t>(i)]));

  // The amplifier maps the vacuum onto the second input.
  const auto target2 = measures::tmsvs_schmidt(chi2, n_max);
  for (int i = 0; i < n_max; ++i)
    rep.amp_column_residual =
        std::max(rep.amp_column_residual,
                 std::abs(amp.at(i, 0) - target2.values[static_cast<std::size_t>(i)]));

  // Majorization lambda(r1) (x) lambda(r2) < lambda(r) (x) e1; the right
  // side is extended analytically to the full product length.
  std::vector<double> kron;
  kron.reserve(static_cast<std::size_t>(n_max) * n_max);
  for (double a : target1.values)
    for (double b : target2.values) kron.push_back(a * b);
  std::sort(kron.begin(), kron.end(), std::greater<>());
  std::vector<double> extended(kron.size());
  const double head = 1.0 - rep.chi_out * rep.chi_out;
  double term = head;
  for (std::size_t i = 0; i < extended.size(); ++i) {
    extended[i] = term;
    term *= rep.chi_out * rep.chi_out;
  }
  rep.majorization_ok = prefix_dominated(kron, extended);

  rep.pass = rep.max_entry_residual < 1e-8 && rep.amp_column_residual < 1e-8 &&
             rep.majorization_ok;
  return rep;
}

bool lemma2_convertible(double r1, double r2, double r1p, double r2p) {
  if (!(r1 >= r2 && r2 >= 0.0 && r1p >= r2p && r2p >= 0.0))
    throw std::domain_error("squeezing vectors must be decreasingly ordered");
  const double d1 = r1p - r1, d2 = r2p - r2;
  if (d1 * d2 > 0.0)
    throw std::domain_error("components of (r1'-r1, r2'-r2) must have opposite signs");
  const double sign = d1 >= 0.0 ? 1.0 : -1.0;
  const double num = std::sinh(r1 + r2) + sign * std::sinh(r1 - r2);
  const double den = std::sinh(r1p + r2p) + sign * std::sinh(r1p - r2p);
  if (den == 0.0) return true;  // target unentangled in this sector
  return num / den >= 1.0 - 1e-12;
}

GpovmResult gpovm_swap(double r1, double r2, measures::SqueezingParameter r0) {
  if (!(r1 > 0.0 && r2 > 0.0)) throw std::domain_error("require r1, r2 > 0");
  if (!(r0.r >= 0.0)) throw std::domain_error("seed squeezing must be >= 0");
  const double c1 = std::cosh(2.0 * r1), c2 = std::cosh(2.0 * r2);
  const double s1 = std::sinh(2.0 * r1), s2 = std::sinh(2.0 * r2);
  GpovmResult out;
  if (r0.is_infinite()) {
    // Limit cosh(2 r0) -> inf of the closed forms.
    out.a = (c1 * c2 + 1.0) / (c1 + c2);
    out.c = s1 * s2 / (c1 + c2);
  } else {
    const double c0 = std::cosh(2.0 * r0.r), s0 = std::sinh(2.0 * r0.r);
    const double den = c1 * c2 + 1.0 + c0 * (c1 + c2);
    out.a = (c0 * (c1 * c2 + 1.0) + c1 + c2) / den;
    out.c = s0 * s1 * s2 / den;
  }
  const double c_check = std::sqrt(std::max(0.0, out.a * out.a - 1.0));
  if (std::abs(out.c - c_check) > 1e-10)
    throw std::runtime_error("post-measurement state failed the purity check");
  const double chi0 = r0.is_infinite() ? 1.0 : std::tanh(r0.r);
  const double chi = chi0 * std::tanh(r1) * std::tanh(r2);
  const double chi_cm = std::sqrt(std::max(0.0, (out.a - 1.0) / (out.a + 1.0)));
  if (std::abs(chi - chi_cm) > 1e-10)
    throw std::runtime_error("covariance and product forms of tanh r disagree");
  out.r = measures::r_from_chi(chi);
  return out;
}

double swap_chain(const std::vector<double>& chis, const std::vector<double>& seed_chis) {
  double out = 1.0;
  for (double c : chis) {
    if (!(c >= 0.0 && c <= 1.0)) throw std::domain_error("link chi outside [0,1]");
    out *= c;
  }
  for (double c : seed_chis) {
    if (!(c >= 0.0 && c <= 1.0)) throw std::domain_error("seed chi outside [0,1]");
    out *= c;
  }
  return out;
}

namespace {

void check_dc_state(const DCState& s) {
  if (!(s.c_chi >= 0.0 && s.c_chi <= 1.0)) throw std::domain_error("c_chi outside [0,1]");
  if (!(s.chi >= 0.0 && s.chi < 1.0)) throw std::domain_error("tail ratio outside [0,1)");
  if (s.mu.empty()) {
    if (s.c_chi != 1.0) throw std::domain_error("empty DV prefix requires c_chi = 1");
    return;
  }
  double total = 0.0;
  for (double m : s.mu) {
    if (m < 0.0) throw std::domain_error("DV prefix entries must be nonnegative");
    total += m;
  }
  if (std::abs(total - 1.0) > 1e-9) throw std::domain_error("DV prefix must sum to 1");
}

std::vector<double> geometric_tail(double chi, int n_max) {
  return measures::tmsvs_schmidt(chi, n_max).values;
}

}  // namespace

NonGaussianResult nongaussian_concentrate(const DCState& s1, const DCState& s2,
                                          int n_max, double eta) {
  check_dc_state(s1);
  check_dc_state(s2);
  check_n_max(n_max);
  const double chi1 = s1.chi, chi2 = s2.chi;
  const double eta_min = 1.0 - s2.c_chi * chi2 * chi2;
  if (eta < 0.0) eta = eta_min;
  if (eta < eta_min - 1e-12)
    throw std::domain_error("eta below 1 - c_chi2 * chi2^2 breaks column stochasticity");
  if (eta > 1.0) throw std::domain_error("eta outside (0,1]");

  NonGaussianResult res;
  res.eta = eta;
  res.eta_p = (1.0 - chi2 * chi2) / (1.0 - s2.c_chi * chi2 * chi2);
  res.out.c_chi = s1.c_chi;
  res.out.mu = s1.mu;
  res.out.chi = chi1 / std::sqrt(eta * (1.0 - chi1 * chi1) + chi1 * chi1);

  // Loss block: A maps the output prefix onto mu_(1); the rank-one choice
  // mu_(1) 1^T works for any normalized prefix, falling back to the
  // identity when its row sums exceed 1/eta.
  const std::size_t n0 = s1.mu.size();
  bool rank_one_ok = true;
  for (double m : s1.mu)
    if (static_cast<double>(n0) * m > 1.0 / eta + 1e-12) rank_one_ok = false;

  double residual = 0.0;
  if (n0 > 0) {
    std::vector<double> prefix_in(n0), prefix_target(n0);
    for (std::size_t i = 0; i < n0; ++i) {
      prefix_in[i] = (1.0 - res.out.c_chi) * res.out.mu[i];
      prefix_target[i] = (1.0 - s1.c_chi) * s1.mu[i];
    }
    const double in_total =
        std::accumulate(prefix_in.begin(), prefix_in.end(), 0.0);
    for (std::size_t i = 0; i < n0; ++i) {
      const double mapped = rank_one_ok ? s1.mu[i] * in_total : prefix_in[i];
      residual = std::max(residual, std::abs(mapped - prefix_target[i]));
    }
  }

  // Tail block: D^L(eta) maps the output tail onto chi1's tail.
  if (s1.c_chi > 0.0) {
    const auto loss = loss_matrix(eta, n_max);
    const auto tail_out = geometric_tail(res.out.chi, n_max);
    const auto mapped = loss.apply(tail_out);
    const auto tail_target = geometric_tail(chi1, n_max);
    for (int i = 0; i < n_max; ++i)
      residual = std::max(residual, s1.c_chi * std::abs(mapped[static_cast<std::size_t>(i)] -
                                                        tail_target[static_cast<std::size_t>(i)]));
  }

  // Second factor: D^A_{mu_(2)} e1 must reproduce the combined vector of
  // state 2, and retained columns must sum to 1.
  const double gain = 1.0 / (1.0 - chi2 * chi2);
  const auto amp = amp_matrix(gain, n_max);
  const auto tail2 = geometric_tail(chi2, n_max);
  // B e1 = mu_(2) holds by construction; the tail rows go through D^A.
  for (int i = 0; i < n_max; ++i) {
    const double entry = s2.c_chi * amp.at(i, 0);  // C's first column is 0
    residual = std::max(residual,
                        std::abs(entry - s2.c_chi * tail2[static_cast<std::size_t>(i)]));
  }
  // Column sums of the amplifier block equal 1 minus the truncated
  // negative-binomial tail; enforce stochasticity only where the geometric
  // bound on that tail is below the verification tolerance.
  const auto amp_cols = amp.column_sums();
  const double b = 1.0 - 1.0 / gain;
  double col_residual = 0.0;
  for (int j = 0; j < n_max / 2; ++j) {
    const double rho = b * (n_max + 1.0) / (n_max + 1.0 - j);
    if (rho >= 1.0) break;
    const double first_omitted =
        std::exp(std::lgamma(n_max + 1.0) - std::lgamma(j + 1.0) -
                 std::lgamma(n_max - j + 1.0) +
                 (j + 1) * std::log(1.0 / gain) + (n_max - j) * std::log(b));
    if (first_omitted / (1.0 - rho) > 1e-9) break;
    const double weighted = s2.c_chi * amp_cols[static_cast<std::size_t>(j)] +
                            (1.0 - s2.c_chi);
    col_residual = std::max(col_residual, std::abs(weighted - 1.0));
  }

  res.max_residual = std::max(residual, col_residual);
  res.verified = res.max_residual < 1e-8;
  return res;
}

}  // namespace negpt::locc
