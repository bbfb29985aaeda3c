// Serial vs OpenMP grid evaluation: timing and bitwise agreement.
#include <chrono>
#include <cstdio>
#include <string>

#include "negpt/scan.hpp"

using namespace negpt;
using Clock = std::chrono::steady_clock;

namespace {

template <typename F>
double time_seconds(F&& f) {
  const auto start = Clock::now();
  f();
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool identical(const scan::Curve& a, const scan::Curve& b) {
  if (a.y.size() != b.y.size()) return false;
  for (std::size_t i = 0; i < a.y.size(); ++i)
    if (a.y[i] != b.y[i]) return false;
  return true;
}

int run_case(const std::string& name, const scan::Curve& serial,
             double t_serial, const scan::Curve& parallel, double t_parallel) {
  const bool same = identical(serial, parallel);
  std::printf("%-24s serial %8.3f s  parallel %8.3f s  speedup %5.2fx  %s\n",
              name.c_str(), t_serial, t_parallel, t_serial / t_parallel,
              same ? "bitwise-equal" : "MISMATCH");
  return same ? 0 : 1;
}

}  // namespace

int main() {
  int failures = 0;

  {
    const auto chis = scan::linspace(0.0, 0.999, 10001);
    scan::Curve s, p;
    const double ts = time_seconds(
        [&] { s = scan::finite_depth_curve(3, 20000, chis, scan::Mode::Serial); });
    const double tp = time_seconds(
        [&] { p = scan::finite_depth_curve(3, 20000, chis, scan::Mode::Parallel); });
    failures += run_case("finite_depth l=20000", s, ts, p, tp);
  }

  {
    const auto chis = scan::linspace(0.8, 0.8660254, 4001);
    scan::Curve s, p;
    const double ts = time_seconds(
        [&] { s = scan::correlation_length_curve(3, chis, scan::Mode::Serial); });
    const double tp = time_seconds(
        [&] { p = scan::correlation_length_curve(3, chis, scan::Mode::Parallel); });
    failures += run_case("correlation_length", s, ts, p, tp);
  }

  {
    const auto chis = scan::linspace(0.0, 1.0, 2000001);
    scan::Curve s, p;
    const double ts = time_seconds(
        [&] { s = scan::infinite_sponge_curve(3, chis, scan::Mode::Serial); });
    const double tp = time_seconds(
        [&] { p = scan::infinite_sponge_curve(3, chis, scan::Mode::Parallel); });
    failures += run_case("infinite_sponge", s, ts, p, tp);
  }

  return failures == 0 ? 0 : 1;
}
