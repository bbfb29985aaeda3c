#include <stdexcept>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "negpt/bethe.hpp"

using namespace negpt::bethe;

TEST_CASE("critical point") {
  const auto cp3 = critical_point(3);
  CHECK(cp3.chi_th == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-14));
  CHECK(cp3.x_plus == doctest::Approx(0.894427190999916).epsilon(1e-12));
  CHECK(cp3.x1_plus == doctest::Approx(0.707106781186548).epsilon(1e-12));

  const auto cp4 = critical_point(4);
  CHECK(cp4.chi_th == doctest::Approx(0.784282997737583).epsilon(1e-12));
  CHECK(cp4.x_plus == doctest::Approx(0.889850284292854).epsilon(1e-12));

  // The threshold decreases toward 0 as the degree grows.
  double prev = 1.0;
  for (int k = 3; k <= 50; ++k) {
    const auto cp = critical_point(k);
    CHECK(cp.chi_th < prev);
    CHECK(cp.chi_th > 0.0);
    CHECK(cp.x_plus >= cp.x1_plus);
    // Algebraic consistency of the jump formula.
    const double t = std::pow(k - 1.0, -1.0 / (k - 2.0));
    CHECK(cp.x_plus * cp.x_plus * (std::pow(t, k) - t + 1.0) ==
          doctest::Approx(1.0 - t).epsilon(1e-12));
    prev = cp.chi_th;
  }

  CHECK_THROWS_AS(critical_point(2), std::domain_error);
}

TEST_CASE("infinite sponge") {
  const auto cp = critical_point(3);
  CHECK(infinite_sponge(3, 0.9) == doctest::Approx(0.989046741411488).epsilon(1e-12));
  CHECK(infinite_sponge(3, 0.85) == 0.0);
  CHECK(infinite_sponge(3, cp.chi_th) == doctest::Approx(cp.x_plus).epsilon(1e-9));
  CHECK(infinite_sponge(3, 0.0) == 0.0);
  CHECK(infinite_sponge(3, 1.0) == 1.0);

  double prev = -1.0;
  for (double chi = 0.0; chi <= 1.0; chi += 0.01) {
    const double x = infinite_sponge(3, chi);
    CHECK(x >= prev - 1e-12);
    if (chi >= cp.chi_th) CHECK(x >= cp.x_plus - 1e-9);
    prev = x;
  }
}

TEST_CASE("nonphysical branch") {
  const auto cp = critical_point(3);
  CHECK(!infinite_sponge_nonphysical(3, cp.chi_th - 0.01).has_value());
  const auto low = infinite_sponge_nonphysical(3, 0.9);
  REQUIRE(low.has_value());
  CHECK(*low < infinite_sponge(3, 0.9));
}

TEST_CASE("finite depth sponge") {
  CHECK(finite_depth_sponge(3, 1, 0.5) ==
        doctest::Approx(0.609994281330419).epsilon(1e-12));
  CHECK(finite_depth_sponge(3, 1000, 0.9) ==
        doctest::Approx(infinite_sponge(3, 0.9)).epsilon(1e-8));
  CHECK(finite_depth_sponge(3, 7, 1.0) == 1.0);
  CHECK(finite_depth_sponge(3, 7, 0.0) == 0.0);

  // Below threshold the value decays with depth.
  double prev = 1.0;
  for (long l = 1; l <= 64; l *= 2) {
    const double x = finite_depth_sponge(3, l, 0.85);
    CHECK(x <= prev + 1e-12);
    prev = x;
  }
}

TEST_CASE("correlation length") {
  const auto cp = critical_point(3);
  CHECK(correlation_length(3, cp.chi_th - 1e-2) ==
        doctest::Approx(29.691494919248463).epsilon(1e-9));
  CHECK(correlation_length(3, cp.chi_th - 1e-2) >
        correlation_length(3, cp.chi_th - 1e-1));
  CHECK_THROWS_AS(correlation_length(3, 0.9), std::domain_error);
}

TEST_CASE("finite size threshold") {
  const auto chi_th = critical_point(3).chi_th;
  const double l10 = finite_size_threshold(3, 10);
  CHECK(l10 == doctest::Approx(0.828873782877392).epsilon(1e-9));
  CHECK(l10 > 0.8);
  CHECK(l10 < chi_th);
  const double l32 = finite_size_threshold(3, 32);
  CHECK(l32 == doctest::Approx(0.857601650811306).epsilon(1e-9));
  CHECK(l32 > l10);
  CHECK(l32 < chi_th);
}

TEST_CASE("power law fitting") {
  std::vector<double> xs, ys;
  for (int i = 1; i <= 10; ++i) {
    xs.push_back(0.1 * i);
    ys.push_back(3.0 * std::sqrt(0.1 * i));
  }
  const auto fit = fit_power_law(xs, ys);
  CHECK(fit.exponent == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(fit.amplitude == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));

  std::vector<double> bad{1.0, -1.0, 2.0, 3.0};
  CHECK_THROWS_AS(fit_power_law(bad, bad), std::domain_error);
}

TEST_CASE("saturation deficit") {
  // The deficit reproduces 1 - X_SC where the difference is resolvable and
  // stays positive where it underflows.
  for (double eps : {1e-2, 1e-4}) {
    const double direct = 1.0 - infinite_sponge(3, 1.0 - eps);
    CHECK(saturation_deficit(3, 1.0 - eps) == doctest::Approx(direct).epsilon(1e-6));
  }
  CHECK(saturation_deficit(3, 1.0 - 1e-8) > 0.0);
}

TEST_CASE("generalized phase classification") {
  const auto std3 = generalized_phase_classify(3, 1.0, 1.0);
  CHECK(std3.kind == PhaseKind::MixedOrder);
  CHECK(*std3.chi_th == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-12));
  CHECK(*std3.x_plus == doctest::Approx(0.894427190999916).epsilon(1e-12));

  CHECK(generalized_phase_classify(3, 0.8, 1.0).kind == PhaseKind::NoTransition);

  const auto second = generalized_phase_classify(3, 1.0, 1.5);
  CHECK(second.kind == PhaseKind::SecondOrder);
  CHECK(*second.chi_th == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(*second.exponent == doctest::Approx(0.5).epsilon(1e-12));

  const auto marginal = generalized_phase_classify(3, 1.0, std::sqrt(2.0));
  CHECK(marginal.kind == PhaseKind::SecondOrder);
  CHECK(*marginal.exponent == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("generalized sponge") {
  // eta = 1 reduces to the standard solution.
  for (double chi = 0.0; chi <= 1.0; chi += 0.05)
    CHECK(generalized_infinite_sponge(3, chi, 1.0, 1.0) ==
          doctest::Approx(infinite_sponge(3, chi)).epsilon(1e-10));

  // Mixed-order case jumps at its threshold.
  const auto mixed = generalized_phase_classify(3, 1.0, 0.9);
  const double th = *mixed.chi_th;
  CHECK(generalized_infinite_sponge(3, th - 1e-9, 1.0, 0.9) == 0.0);
  CHECK(generalized_infinite_sponge(3, th + 1e-9, 1.0, 0.9) >=
        *mixed.x_plus - 1e-4);

  // Second-order case rises continuously from zero.
  CHECK(generalized_infinite_sponge(3, 2.0 / 3.0 - 1e-9, 1.0, 1.5) == 0.0);
  const double just_above = generalized_infinite_sponge(3, 2.0 / 3.0 + 1e-6, 1.0, 1.5);
  CHECK(just_above > 0.0);
  CHECK(just_above < 0.02);
}
