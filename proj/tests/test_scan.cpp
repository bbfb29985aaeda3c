#include <stdexcept>
#include <cmath>

#include "doctest.h"
#include "negpt/scan.hpp"

using namespace negpt;
using namespace negpt::scan;

TEST_CASE("grid construction") {
  const auto lin = linspace(0.0, 1.0, 5);
  CHECK(lin.size() == 5);
  CHECK(lin.front() == 0.0);
  CHECK(lin.back() == 1.0);
  CHECK(lin[2] == doctest::Approx(0.5).epsilon(1e-15));

  const auto log = logspace(1e-4, 1e-1, 4);
  CHECK(log.front() == doctest::Approx(1e-4).epsilon(1e-12));
  CHECK(log.back() == doctest::Approx(1e-1).epsilon(1e-12));
  CHECK(log[1] == doctest::Approx(1e-3).epsilon(1e-12));

  CHECK_THROWS_AS(linspace(0.0, 1.0, 1), std::domain_error);
  CHECK_THROWS_AS(logspace(0.0, 1.0, 4), std::domain_error);
}

TEST_CASE("parallel grids agree bitwise with serial") {
  const auto chis = linspace(0.0, 1.0, 257);
  const auto serial = infinite_sponge_curve(3, chis, Mode::Serial);
  const auto parallel = infinite_sponge_curve(3, chis, Mode::Parallel);
  REQUIRE(serial.y.size() == parallel.y.size());
  for (std::size_t i = 0; i < serial.y.size(); ++i)
    CHECK(serial.y[i] == parallel.y[i]);

  const auto fd_s = finite_depth_curve(3, 20, chis, Mode::Serial);
  const auto fd_p = finite_depth_curve(3, 20, chis, Mode::Parallel);
  for (std::size_t i = 0; i < fd_s.y.size(); ++i) CHECK(fd_s.y[i] == fd_p.y[i]);

  const auto cs = linspace(0.0, 1.0, 101);
  const auto dv_s = conpt_curve(3, cs, Mode::Serial);
  const auto dv_p = conpt_curve(3, cs, Mode::Parallel);
  for (std::size_t i = 0; i < dv_s.y.size(); ++i) CHECK(dv_s.y[i] == dv_p.y[i]);
}

TEST_CASE("curves match direct evaluation") {
  const auto chis = linspace(0.8, 1.0, 21);
  const auto curve = infinite_sponge_curve(3, chis, Mode::Parallel);
  for (std::size_t i = 0; i < chis.size(); ++i)
    CHECK(curve.y[i] == bethe::infinite_sponge(3, chis[i]));
}

TEST_CASE("phase map covers the grid") {
  const auto pts = phase_map(3, {0.9, 1.0}, {0.8, 1.0, 1.5}, Mode::Parallel);
  REQUIRE(pts.size() == 6);
  const auto serial = phase_map(3, {0.9, 1.0}, {0.8, 1.0, 1.5}, Mode::Serial);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(pts[i].eta_s == serial[i].eta_s);
    CHECK(pts[i].eta_p == serial[i].eta_p);
    CHECK(pts[i].diagnosis.kind == serial[i].diagnosis.kind);
  }
  // (1.0, 1.5) sits in the second-order regime; (1.0, 1.0) is mixed-order.
  for (const auto& p : pts) {
    if (p.eta_s == 1.0 && p.eta_p == 1.5)
      CHECK(p.diagnosis.kind == bethe::PhaseKind::SecondOrder);
    if (p.eta_s == 1.0 && p.eta_p == 1.0)
      CHECK(p.diagnosis.kind == bethe::PhaseKind::MixedOrder);
  }
}

TEST_CASE("critical fits recover the known exponents") {
  const auto beta = order_parameter_fit(3);
  CHECK(beta.exponent == doctest::Approx(0.5).epsilon(0.05));
  CHECK(beta.r_squared > 0.999);

  const auto znu = correlation_length_fit(3);
  CHECK(std::abs(znu.exponent) == doctest::Approx(0.5).epsilon(0.12));
  CHECK(znu.exponent < 0.0);
}
