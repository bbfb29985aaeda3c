#include <stdexcept>
#include <cmath>

#include "doctest.h"
#include "negpt/bethe.hpp"
#include "negpt/feedback.hpp"

using namespace negpt;
using namespace negpt::feedback;

TEST_CASE("response maps") {
  const double chi_th = bethe::critical_point(3).chi_th;
  CHECK(cv_response(3, 0.85) == 0.0);
  CHECK(cv_response(3, chi_th) == doctest::Approx(0.894427190999916).epsilon(1e-9));
  CHECK(cv_response(3, 0.9) == doctest::Approx(0.989046741411488).epsilon(1e-6));
  CHECK(cv_response(3, 1.0) == 1.0);
  CHECK(dv_response(3, 0.7) == 0.0);
  CHECK(dv_response(3, 0.84) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("target inversion") {
  for (double x : {0.9, 0.95, 0.982, 0.996}) {
    const double chi = chi_for_target(3, x);
    CHECK(bethe::infinite_sponge(3, chi) == doctest::Approx(x).epsilon(1e-10));
  }
  CHECK(chi_for_target(3, 0.982) == doctest::Approx(0.889643523414491).epsilon(1e-9));
  CHECK_THROWS_AS(chi_for_target(3, 0.5), std::domain_error);
}

TEST_CASE("uncontrolled decay matches the closed form") {
  FeedbackConfig cfg;
  cfg.tau = 1.0;
  cfg.chi0 = 1.0;
  cfg.horizon = 5.0;
  const auto traj = simulate(cfg);
  for (std::size_t i = 0; i < traj.samples.size(); i += 5000) {
    const auto& s = traj.samples[i];
    CHECK(s.chi == doctest::Approx(std::exp(-s.t)).epsilon(1e-6));
  }
}

TEST_CASE("trajectories are deterministic") {
  FeedbackConfig cfg;
  cfg.tau = 1.0;
  cfg.kp = 2.2;
  cfg.ki = 100.0;
  cfg.kd = 0.01;
  cfg.target = 0.95;
  cfg.horizon = 1.0;
  const auto a = simulate(cfg);
  const auto b = simulate(cfg);
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(a.samples[i].chi == b.samples[i].chi);
    CHECK(a.samples[i].u == b.samples[i].u);
  }
}

TEST_CASE("resource waste") {
  Trajectory flat;
  for (int i = 0; i <= 100; ++i) flat.samples.push_back({0.01 * i, 0.5, 0, 0, 0});
  CHECK(resource_waste(flat, 0.6) == 0.0);
  CHECK(resource_waste(flat, 0.4) == doctest::Approx(0.5).epsilon(1e-12));

  // Monotone in horizon.
  FeedbackConfig cfg;
  cfg.tau = 1.0;
  cfg.chi0 = 1.0;
  cfg.horizon = 1.0;
  const auto short_run = simulate(cfg);
  cfg.horizon = 2.0;
  const auto long_run = simulate(cfg);
  CHECK(resource_waste(long_run, 0.5) >= resource_waste(short_run, 0.5));
  CHECK(resource_waste(short_run, 0.5) > 0.0);
}

TEST_CASE("stability classification") {
  FeedbackConfig cfg;
  cfg.tau = 1.0;
  cfg.chi0 = 1.0;
  cfg.horizon = 5.0;
  const auto decay = classify_stability(simulate(cfg), 0.05, 0.5);
  CHECK(decay.kind == StabilityKind::Collapsed);
  CHECK(decay.threshold_crossings == 1);

  CHECK_THROWS_AS(classify_stability(simulate(cfg), 0.7, 0.5), std::domain_error);
}

TEST_CASE("activation-time sweep") {
  FeedbackConfig base;
  base.tau = 1.0;
  base.kp = 2.0;
  base.ki = 30.0;
  base.kd = 0.007;
  base.target = 0.95;
  base.horizon = 5.0;
  base.response = ResponseKind::CV;
  base.chi0 = 1.0;
  const auto cv = parameter_sweep(base, SweepAxis::T0, {0.02, 0.32});
  REQUIRE(cv.size() == 2);
  CHECK(cv[0].kind != StabilityKind::Stabilized);
  CHECK(cv[1].kind != StabilityKind::Stabilized);
  // Longer delays damp the on/off chatter even when not stabilizing.
  CHECK(cv[1].threshold_crossings < cv[0].threshold_crossings);

  // The DV response stabilizes under the same gains and short delay.
  base.response = ResponseKind::DV;
  base.chi0 = 0.838102;
  const auto dv = parameter_sweep(base, SweepAxis::T0, {0.02});
  CHECK(dv[0].kind == StabilityKind::Stabilized);
}
