#include <stdexcept>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "negpt/locc.hpp"
#include "negpt/measures.hpp"

using namespace negpt;
using namespace negpt::locc;

TEST_CASE("transfer matrices") {
  const auto id_loss = loss_matrix(1.0, 4);
  const auto id_amp = amp_matrix(1.0, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      CHECK(id_loss.at(i, j) == (i == j ? 1.0 : 0.0));
      CHECK(id_amp.at(i, j) == (i == j ? 1.0 : 0.0));
    }

  const auto loss = loss_matrix(0.6, 60);
  for (double s : loss.column_sums()) CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  for (int i = 0; i < 60; ++i)
    for (int j = 0; j < i; ++j) CHECK(loss.at(i, j) == 0.0);

  const auto amp = amp_matrix(1.25, 60);
  // Amplifier row sums are 1/G exactly; early column sums are 1 up to tiny
  // truncation tails at this gain.
  for (double s : amp.row_sums()) CHECK(s == doctest::Approx(0.8).epsilon(1e-12));
  const auto cols = amp.column_sums();
  for (int j = 0; j < 10; ++j) CHECK(cols[j] == doctest::Approx(1.0).epsilon(1e-10));

  CHECK_THROWS_AS(loss_matrix(0.0, 4), std::domain_error);
  CHECK_THROWS_AS(amp_matrix(0.9, 4), std::domain_error);
}

TEST_CASE("tensor stochasticity criterion") {
  const double G = 2.0;
  const auto amp = amp_matrix(G, 80);
  CHECK(tensor_max_row_sum(loss_matrix(1.0 / G, 80), amp) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(tensor_max_row_sum(loss_matrix(1.0 / G + 1e-3, 80), amp) < 1.0);
  CHECK(tensor_max_row_sum(loss_matrix(1.0 / G - 1e-3, 80), amp) > 1.0);
}

namespace {

measures::SchmidtVector vec(std::vector<double> v) { return {std::move(v), 0.0}; }

}  // namespace

TEST_CASE("majorization") {
  CHECK(is_majorized_by(vec({0.5, 0.5}), vec({1.0, 0.0})));
  CHECK(is_majorized_by(vec({0.5, 0.5}), vec({0.6, 0.4})));
  CHECK(!is_majorized_by(vec({0.6, 0.4}), vec({0.5, 0.5})));
  // Crossing prefix sums: incomparable pair.
  CHECK(!is_majorized_by(vec({0.6, 0.2, 0.2}), vec({0.5, 0.45, 0.05})));
  CHECK(!is_majorized_by(vec({0.5, 0.45, 0.05}), vec({0.6, 0.2, 0.2})));
  CHECK_THROWS_AS(is_majorized_by(vec({0.5, 0.4}), vec({1.0, 0.0})),
                  std::domain_error);
}

TEST_CASE("concentration verification") {
  const auto rep = verify_concentration(1.0, 1.0, 200);
  CHECK(rep.pass);
  CHECK(rep.r_out == doctest::Approx(1.356944490074306).epsilon(1e-12));
  CHECK(rep.chi_out == doctest::Approx(0.875682486591914).epsilon(1e-12));
  CHECK(rep.gain == doctest::Approx(std::cosh(1.0) * std::cosh(1.0)).epsilon(1e-12));
  CHECK(rep.eta == doctest::Approx(1.0 / rep.gain).epsilon(1e-12));
  CHECK(rep.max_entry_residual < 1e-10);
  CHECK(rep.amp_column_residual < 1e-10);
  CHECK(rep.majorization_ok);

  // r2 = 0 reduces to the identity on the second factor.
  const auto triv = verify_concentration(0.8, 0.0, 100);
  CHECK(triv.pass);
  CHECK(triv.r_out == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(triv.gain == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(verify_concentration(0.5, 1.0, 100), std::domain_error);
  CHECK_THROWS_AS(verify_concentration(5.0, 5.0, 100), std::runtime_error);
}

TEST_CASE("Lemma 2 convertibility") {
  CHECK(lemma2_convertible(1.0, 0.5, 1.0, 0.5));
  const double r_max = std::asinh(std::sinh(1.0) * std::cosh(0.5));
  CHECK(lemma2_convertible(1.0, 0.5, r_max, 0.0));
  CHECK(!lemma2_convertible(1.0, 0.5, r_max + 1e-6, 0.0));
  CHECK_THROWS_AS(lemma2_convertible(1.0, 0.5, 1.1, 0.6), std::domain_error);
}

TEST_CASE("GPOVM swapping") {
  const double r1 = std::atanh(0.8), r2 = std::atanh(0.7);
  const auto out = gpovm_swap(r1, r2, measures::r_from_chi(0.9));
  CHECK(out.a == doctest::Approx(1.681022649279341).epsilon(1e-12));
  CHECK(out.c == doctest::Approx(1.351235415236788).epsilon(1e-12));
  CHECK(out.c == doctest::Approx(std::sqrt(out.a * out.a - 1.0)).epsilon(1e-10));
  CHECK(measures::chi_from_r(out.r) == doctest::Approx(0.504).epsilon(1e-12));

  // Infinite seed: standard swapping chi1 * chi2.
  const auto inf = gpovm_swap(r1, r2, measures::SqueezingParameter::infinite());
  CHECK(measures::chi_from_r(inf.r) == doctest::Approx(0.56).epsilon(1e-12));

  // Separable seed destroys the entanglement.
  const auto zero = gpovm_swap(r1, r2, {0.0});
  CHECK(measures::chi_from_r(zero.r) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(zero.a == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("swap chains") {
  CHECK(swap_chain({0.8, 0.7}, {1.0}) == doctest::Approx(0.56).epsilon(1e-15));
  CHECK(swap_chain({0.8, 0.7}, {0.9}) == doctest::Approx(0.504).epsilon(1e-15));
  CHECK(swap_chain({0.8, 0.7}, {0.0}) == 0.0);
}

TEST_CASE("non-Gaussian concentration") {
  const DCState s1{0.7, {0.6, 0.4}, 0.5};

  // Pure Gaussian second state: exact parallel rule, eta_p = 1.
  const DCState gauss{1.0, {}, 0.6};
  const auto res = nongaussian_concentrate(s1, gauss, 100);
  CHECK(res.eta_p == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(res.eta == doctest::Approx(0.64).epsilon(1e-12));
  CHECK(res.out.chi == doctest::Approx(0.585205735980653).epsilon(1e-12));
  CHECK(res.verified);

  // Fully DV second state: eta_p = 1 - chi2^2.
  const DCState dv{0.0, {0.5, 0.5}, 0.6};
  const auto res2 = nongaussian_concentrate(s1, dv, 100);
  CHECK(res2.eta_p == doctest::Approx(0.64).epsilon(1e-12));
  CHECK(res2.eta == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(res2.out.chi == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(res2.verified);

  // eta_p < 1 strictly for partial tail weight.
  const DCState mix{0.5, {1.0}, 0.6};
  const auto res3 = nongaussian_concentrate(s1, mix, 100);
  CHECK(res3.eta_p < 1.0);
  CHECK(res3.eta_p == doctest::Approx((1.0 - 0.36) / (1.0 - 0.5 * 0.36)).epsilon(1e-12));

  CHECK_THROWS_AS(nongaussian_concentrate(s1, gauss, 100, 0.5), std::domain_error);
}
