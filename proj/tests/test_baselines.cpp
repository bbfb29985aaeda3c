#include <stdexcept>
#include <cmath>

#include "doctest.h"
#include "negpt/baselines.hpp"

using namespace negpt::baselines;

TEST_CASE("interdependent branch fixed points") {
  // M=1, k=3, p=0.75: P = 0.75[1-(1-P)^2] has largest root 2/3.
  CHECK(interdependent_branch(3, 1, 0.75) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-10));
  CHECK(interdependent_branch(3, 1, 0.4) == 0.0);
  CHECK(interdependent_branch(3, 2, 0.8) == 0.0);

  for (double p : {0.55, 0.7, 0.9}) {
    const double P = interdependent_branch(3, 1, p);
    const double rhs = p * (1.0 - std::pow(1.0 - P, 2));
    CHECK(P == doctest::Approx(rhs).epsilon(1e-12));
  }
  for (double p : {0.85, 0.95}) {
    const double P = interdependent_branch(3, 2, p);
    CHECK(P > 0.0);
    const double rhs = p * std::pow(1.0 - std::pow(1.0 - P, 2), 2);
    CHECK(P == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("interdependent critical points") {
  const auto single = interdependent_critical(3, 1);
  CHECK(single.p_th == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(single.p_plus == 0.0);

  const auto dual = interdependent_critical(3, 2);
  CHECK(dual.p_th == doctest::Approx(27.0 / 32.0).epsilon(1e-6));
  CHECK(dual.p_plus == doctest::Approx(2.0 / 3.0).epsilon(1e-6));

  CHECK_THROWS_AS(interdependent_critical(2, 1), std::domain_error);
}

TEST_CASE("ConPT Bethe response") {
  CHECK(conpt_sponge_bethe(3, 0.0) == 0.0);
  CHECK(conpt_sponge_bethe(3, 1.0) == 1.0);
  CHECK(conpt_sponge_bethe(3, 0.75) ==
        doctest::Approx(0.816191663862434).epsilon(1e-10));
  CHECK(conpt_sponge_bethe(3, 0.9) == doctest::Approx(1.0).epsilon(1e-12));

  // Continuous transition at c_th = 1/sqrt(2).
  const double c_th = 1.0 / std::sqrt(2.0);
  CHECK(conpt_sponge_bethe(3, c_th - 1e-4) == 0.0);
  const double just_above = conpt_sponge_bethe(3, c_th + 1e-4);
  CHECK(just_above > 0.0);
  CHECK(just_above < 0.05);

  // Saturation strictly below 1, near 0.8381.
  CHECK(conpt_sponge_bethe(3, 0.8370) < 1.0);
  CHECK(conpt_sponge_bethe(3, 0.8392) == doctest::Approx(1.0).epsilon(1e-12));
}
