// Command-line front-end: scans, fits, verifications, and feedback runs.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "negpt/baselines.hpp"
#include "negpt/bethe.hpp"
#include "negpt/feedback.hpp"
#include "negpt/locc.hpp"
#include "negpt/measures.hpp"
#include "negpt/rules.hpp"
#include "negpt/scan.hpp"
#include "negpt/sp_reduce.hpp"

using namespace negpt;
using nlohmann::json;

namespace {

std::vector<double> parse_grid(const std::string& spec) {
  double lo = 0.0, hi = 0.0, step = 0.0;
  char tail = 0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%lf%c", &lo, &hi, &step, &tail) != 3 ||
      step <= 0.0 || hi < lo)
    throw std::domain_error("grid must be lo:hi:step with step > 0, got '" +
                            spec + "'");
  std::vector<double> grid;
  const long n = std::lround((hi - lo) / step);
  grid.reserve(static_cast<std::size_t>(n) + 1);
  for (long i = 0; i <= n; ++i) grid.push_back(lo + step * static_cast<double>(i));
  if (grid.back() > hi + 1e-12 * step) grid.pop_back();
  return grid;
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw std::domain_error("cannot open output file: " + path);
  return file;
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

const char* kind_name(feedback::StabilityKind k) {
  switch (k) {
    case feedback::StabilityKind::Stabilized: return "Stabilized";
    case feedback::StabilityKind::Oscillating: return "Oscillating";
    default: return "Collapsed";
  }
}

double dv_saturation() {
  return std::sqrt(2.0 - std::pow(2.0, 2.0 / 3.0)) /
         std::sqrt(std::pow(2.0, 2.0 / 3.0) - 1.0);
}

// ---------------------------------------------------------------- sponge

struct SpongeOpts {
  int bethe_k = 0;
  std::string depth = "inf";
  std::string chi_grid;
  int chain_n = 0;
  int parallel_k = 0;
  bool wheatstone = false;
  bool kelvin = false;
  std::string edge_list;
  std::string json_file;
  double chi = -1.0;
  double eta_s = 1.0;
  double eta_p = 1.0;
  std::string preset;
  std::string output;
};

void emit_curve(std::ostream& os, const scan::Curve& c, const char* xname,
                const char* yname) {
  os << xname << "," << yname << "\n";
  for (std::size_t i = 0; i < c.x.size(); ++i)
    os << num(c.x[i]) << "," << num(c.y[i]) << "\n";
}

void run_sponge_preset(const SpongeOpts& o, std::ostream& os) {
  const auto grid = parse_grid("0:1:0.001");
  if (o.preset == "figs2") {
    os << "depth,chi,x_sc\n";
    for (long l : {2L, 5L, 10L, 100L, 1000L}) {
      const auto c = scan::finite_depth_curve(3, l, grid, scan::Mode::Parallel);
      for (std::size_t i = 0; i < c.x.size(); ++i)
        os << l << "," << num(c.x[i]) << "," << num(c.y[i]) << "\n";
    }
    const auto c = scan::infinite_sponge_curve(3, grid, scan::Mode::Parallel);
    for (std::size_t i = 0; i < c.x.size(); ++i)
      os << "inf," << num(c.x[i]) << "," << num(c.y[i]) << "\n";
  } else if (o.preset == "figs4") {
    os << "eta_s,eta_p,chi,x_sc\n";
    const double pairs[][2] = {{1.0, 0.8}, {1.0, 1.0}, {1.0, 1.2},
                               {1.0, 1.5}, {0.9, 1.0}, {1.1, 1.0}};
    for (const auto& pr : pairs) {
      const auto c =
          scan::generalized_sponge_curve(3, pr[0], pr[1], grid, scan::Mode::Parallel);
      for (std::size_t i = 0; i < c.x.size(); ++i)
        os << num(pr[0]) << "," << num(pr[1]) << "," << num(c.x[i]) << ","
           << num(c.y[i]) << "\n";
    }
  } else {
    throw std::domain_error("unknown sponge preset: " + o.preset);
  }
}

void run_sponge(const SpongeOpts& o) {
  std::ofstream file;
  std::ostream& os = open_output(file, o.output);
  if (!o.preset.empty()) {
    run_sponge_preset(o, os);
    return;
  }

  const int topologies = (o.bethe_k > 0) + (o.chain_n > 0) + (o.parallel_k > 0) +
                         o.wheatstone + o.kelvin + !o.edge_list.empty() +
                         !o.json_file.empty();
  if (topologies != 1)
    throw std::domain_error("specify exactly one topology "
                            "(--bethe/--chain/--parallel/--wheatstone/--kelvin/"
                            "--edge-list/--json)");
  if (!o.edge_list.empty() || !o.json_file.empty()) {
    if (!o.chi_grid.empty() || o.chi >= 0.0)
      throw std::domain_error("file topologies carry their own link weights");
    sp::QNGraph g;
    if (!o.edge_list.empty()) {
      std::ifstream in(o.edge_list);
      if (!in) throw std::domain_error("cannot open edge list: " + o.edge_list);
      g = sp::QNGraph::parse_edge_list(in);
    } else {
      std::ifstream in(o.json_file);
      if (!in) throw std::domain_error("cannot open json file: " + o.json_file);
      std::ostringstream text;
      text << in.rdbuf();
      g = sp::QNGraph::parse_json(text.str());
    }
    os << num(sp::reduce_series_parallel(g)) << "\n";
    return;
  }
  const bool grid_mode = !o.chi_grid.empty();
  if (grid_mode == (o.chi >= 0.0))
    throw std::domain_error("specify exactly one of --chi and --chi-grid");

  if (o.bethe_k > 0) {
    bethe::critical_point(o.bethe_k);  // validates k >= 3
    const bool infinite = (o.depth == "inf");
    long depth = 0;
    if (!infinite) {
      depth = std::stol(o.depth);
      if (depth < 1) throw std::domain_error("--depth must be 'inf' or >= 1");
    }
    const bool generalized = (o.eta_s != 1.0 || o.eta_p != 1.0);
    if (generalized && !infinite)
      throw std::domain_error("--eta-s/--eta-p require --depth inf");
    if (grid_mode) {
      const auto grid = parse_grid(o.chi_grid);
      scan::Curve c;
      if (generalized)
        c = scan::generalized_sponge_curve(o.bethe_k, o.eta_s, o.eta_p, grid,
                                           scan::Mode::Parallel);
      else if (infinite)
        c = scan::infinite_sponge_curve(o.bethe_k, grid, scan::Mode::Parallel);
      else
        c = scan::finite_depth_curve(o.bethe_k, depth, grid, scan::Mode::Parallel);
      emit_curve(os, c, "chi", "x_sc");
    } else if (generalized) {
      os << num(bethe::generalized_infinite_sponge(o.bethe_k, o.chi, o.eta_s,
                                                   o.eta_p))
         << "\n";
    } else {
      os << num(infinite ? bethe::infinite_sponge(o.bethe_k, o.chi)
                         : bethe::finite_depth_sponge(o.bethe_k, depth, o.chi))
         << "\n";
    }
    return;
  }

  auto eval = [&](double chi) -> double {
    if (o.chain_n > 0)
      return rules::series_combine(std::vector<double>(
          static_cast<std::size_t>(o.chain_n), chi));
    if (o.parallel_k > 0)
      return rules::parallel_combine(std::vector<double>(
          static_cast<std::size_t>(o.parallel_k), chi));
    if (o.wheatstone) return sp::wheatstone_sponge(chi);
    return sp::kelvin_sponge(chi);
  };

  if (grid_mode) {
    os << "chi,x_sc\n";
    for (double chi : parse_grid(o.chi_grid))
      os << num(chi) << "," << num(eval(chi)) << "\n";
  } else {
    os << num(eval(o.chi)) << "\n";
  }
}

// -------------------------------------------------------------- critical

struct CriticalOpts {
  int k = 3;
  std::string fit;
  std::string preset;
  std::string output;
};

void run_critical_preset(const CriticalOpts& o, std::ostream& os) {
  const auto cp = bethe::critical_point(o.k);
  if (o.preset == "fig1b") {
    os << "delta_chi,delta_x\n";
    for (double d : scan::logspace(1e-6, 1e-3, 60))
      os << num(d) << ","
         << num(bethe::infinite_sponge(o.k, cp.chi_th + d) - cp.x_plus) << "\n";
  } else if (o.preset == "fig1c") {
    os << "chi,depth,x_sc\n";
    for (double chi : {0.80, 0.83, 0.85, 0.86}) {
      for (long l = 1; l <= 200; ++l)
        os << num(chi) << "," << l << ","
           << num(bethe::finite_depth_sponge(o.k, l, chi)) << "\n";
    }
  } else if (o.preset == "fig1d") {
    os << "delta_chi,l_star\n";
    for (double d : scan::logspace(1e-5, 1e-2, 40))
      os << num(d) << "," << num(bethe::correlation_length(o.k, cp.chi_th - d))
         << "\n";
  } else if (o.preset == "figs3") {
    os << "depth,threshold_shift\n";
    for (long l : {8L, 16L, 32L, 64L, 128L, 256L, 512L, 1024L, 2048L})
      os << l << ","
         << num(std::abs(bethe::finite_size_threshold(o.k, l) - cp.chi_th))
         << "\n";
  } else {
    throw std::domain_error("unknown critical preset: " + o.preset);
  }
}

void run_critical(const CriticalOpts& o) {
  std::ofstream file;
  std::ostream& os = open_output(file, o.output);
  if (!o.preset.empty()) {
    run_critical_preset(o, os);
    return;
  }
  const auto cp = bethe::critical_point(o.k);
  json base{{"k", o.k},
            {"chi_th", cp.chi_th},
            {"x_plus", cp.x_plus},
            {"x1_plus", cp.x1_plus}};
  os << base.dump() << "\n";
  if (o.fit.empty()) return;

  bethe::PowerLawFit fit;
  if (o.fit == "beta") {
    fit = scan::order_parameter_fit(o.k);
  } else if (o.fit == "znu") {
    fit = scan::correlation_length_fit(o.k);
  } else if (o.fit == "shift") {
    fit = scan::finite_size_shift_fit(o.k, {128, 256, 512, 1024, 2048});
  } else {
    throw std::domain_error("--fit must be beta, znu, or shift");
  }
  json out{{"fit", o.fit},
           {"exponent", fit.exponent},
           {"amplitude", fit.amplitude},
           {"r_squared", fit.r_squared},
           {"window", {fit.window_low, fit.window_high}}};
  os << out.dump() << "\n";
}

// -------------------------------------------------------------- feedback

struct FeedbackOpts {
  feedback::FeedbackConfig cfg;
  std::string response = "cv";
  double band = 0.05;
  double window = 0.5;
  bool trajectory = false;
  std::string preset;
  std::string output;
};

void apply_feedback_preset(FeedbackOpts& o) {
  if (o.preset.empty()) return;
  const bool cv = (o.preset == "fig2a" || o.preset == "fig2-cv");
  const bool dv = (o.preset == "fig2b" || o.preset == "fig2-dv");
  if (!cv && !dv) throw std::domain_error("unknown feedback preset: " + o.preset);
  o.cfg.tau = 1.0;
  o.cfg.t0 = 0.02;
  o.cfg.kp = 2.2;
  o.cfg.ki = 100.0;
  o.cfg.kd = 0.01;
  o.cfg.alpha = 1.0;
  o.cfg.target = 0.95;
  o.cfg.dt = 1e-4;
  o.cfg.horizon = 5.0;
  o.cfg.k = 3;
  o.cfg.response = cv ? feedback::ResponseKind::CV : feedback::ResponseKind::DV;
  o.cfg.chi0 = cv ? 1.0 : dv_saturation();
  o.trajectory = (o.preset == "fig2a" || o.preset == "fig2b");
}

void run_feedback(FeedbackOpts& o) {
  std::ofstream file;
  std::ostream& os = open_output(file, o.output);
  if (o.preset.empty()) {
    if (o.response == "cv")
      o.cfg.response = feedback::ResponseKind::CV;
    else if (o.response == "dv")
      o.cfg.response = feedback::ResponseKind::DV;
    else
      throw std::domain_error("--response must be cv or dv");
  } else {
    apply_feedback_preset(o);
  }
  const auto traj = feedback::simulate(o.cfg);
  if (o.trajectory) {
    os << "t,chi,output,u,error\n";
    for (const auto& s : traj.samples)
      os << num(s.t) << "," << num(s.chi) << "," << num(s.output) << ","
         << num(s.u) << "," << num(s.error) << "\n";
    return;
  }
  const auto rep = feedback::classify_stability(traj, o.band, o.window);
  json out{{"kind", kind_name(rep.kind)},
           {"threshold_crossings", rep.threshold_crossings},
           {"max_overshoot", rep.max_overshoot}};
  out["settling_time"] =
      rep.settling_time ? json(*rep.settling_time) : json(nullptr);
  os << out.dump() << "\n";
}

// ------------------------------------------------------------------ locc

void run_locc_verify(double r1, double r2, int n_max, const std::string& output) {
  std::ofstream file;
  std::ostream& os = open_output(file, output);
  const auto rep = locc::verify_concentration(r1, r2, n_max);
  json out{{"pass", rep.pass},
           {"r_out", rep.r_out},
           {"chi_out", rep.chi_out},
           {"eta", rep.eta},
           {"gain", rep.gain},
           {"max_entry_residual", rep.max_entry_residual},
           {"amp_column_residual", rep.amp_column_residual},
           {"truncation_error", rep.truncation_error},
           {"majorization_ok", rep.majorization_ok}};
  os << out.dump() << "\n";
}

void run_locc_gpovm(double r1, double r2, double chi0, const std::string& output) {
  std::ofstream file;
  std::ostream& os = open_output(file, output);
  const auto res = locc::gpovm_swap(r1, r2, measures::r_from_chi(chi0));
  json out{{"a", res.a},
           {"c", res.c},
           {"r", res.r.r},
           {"chi", measures::chi_from_r(res.r)}};
  os << out.dump() << "\n";
}

// -------------------------------------------------------------- baseline

void run_baseline_interdependent(int k, int M, std::optional<double> p,
                                 const std::string& output) {
  std::ofstream file;
  std::ostream& os = open_output(file, output);
  const auto cp = baselines::interdependent_critical(k, M);
  json out{{"k", k}, {"M", M}, {"p_th", cp.p_th}, {"p_plus", cp.p_plus}};
  if (p) out["P"] = baselines::interdependent_branch(k, M, *p);
  os << out.dump() << "\n";
}

void run_baseline_conpt(int k, double c, const std::string& c_grid,
                        const std::string& preset, const std::string& output) {
  std::ofstream file;
  std::ostream& os = open_output(file, output);
  if (preset == "figs6") {
    const auto grid = parse_grid("0:1:0.001");
    os << "kind,x,y\n";
    const auto cv = scan::infinite_sponge_curve(k, grid, scan::Mode::Parallel);
    for (std::size_t i = 0; i < cv.x.size(); ++i)
      os << "cv," << num(cv.x[i]) << "," << num(cv.y[i]) << "\n";
    const auto dv = scan::conpt_curve(k, grid, scan::Mode::Parallel);
    for (std::size_t i = 0; i < dv.x.size(); ++i)
      os << "dv," << num(dv.x[i]) << "," << num(dv.y[i]) << "\n";
    return;
  }
  if (!preset.empty()) throw std::domain_error("unknown conpt preset: " + preset);
  if (!c_grid.empty()) {
    const auto c2 = scan::conpt_curve(k, parse_grid(c_grid), scan::Mode::Parallel);
    emit_curve(os, c2, "c", "c_sc");
  } else if (c >= 0.0) {
    os << num(baselines::conpt_sponge_bethe(k, c)) << "\n";
  } else {
    throw std::domain_error("specify --c or --c-grid");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"negativity percolation on continuous-variable quantum networks"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "key=value config file with [subcommand] sections; "
                 "flags override file values");

  SpongeOpts sponge;
  auto* sp_cmd = app.add_subcommand("sponge", "sponge-crossing values and scans");
  sp_cmd->configurable();
  sp_cmd->add_option("--bethe", sponge.bethe_k, "Bethe lattice degree k (>= 3)");
  sp_cmd->add_option("--depth", sponge.depth, "Bethe depth: integer or 'inf'");
  sp_cmd->add_option("--chi-grid", sponge.chi_grid, "chi grid lo:hi:step");
  sp_cmd->add_option("--chain", sponge.chain_n, "series chain of N links");
  sp_cmd->add_option("--parallel", sponge.parallel_k, "parallel bundle of K links");
  sp_cmd->add_flag("--wheatstone", sponge.wheatstone, "Wheatstone bridge sponge");
  sp_cmd->add_flag("--kelvin", sponge.kelvin, "Kelvin bridge sponge");
  sp_cmd->add_option("--edge-list", sponge.edge_list, "edge-list topology file");
  sp_cmd->add_option("--json", sponge.json_file, "JSON topology file");
  sp_cmd->add_option("--chi", sponge.chi, "single link weight");
  sp_cmd->add_option("--eta-s", sponge.eta_s, "series rule prefactor");
  sp_cmd->add_option("--eta-p", sponge.eta_p, "parallel rule prefactor");
  sp_cmd->add_option("--preset", sponge.preset, "dataset preset: figs2, figs4");
  sp_cmd->add_option("--output", sponge.output, "write data to file");

  CriticalOpts critical;
  auto* cr_cmd = app.add_subcommand("critical", "critical points and exponent fits");
  cr_cmd->configurable();
  cr_cmd->add_option("--k", critical.k, "Bethe lattice degree (>= 3)");
  cr_cmd->add_option("--fit", critical.fit, "fit: beta, znu, or shift");
  cr_cmd->add_option("--preset", critical.preset,
                     "dataset preset: fig1b, fig1c, fig1d, figs3");
  cr_cmd->add_option("--output", critical.output, "write data to file");

  FeedbackOpts fb;
  auto* fb_cmd = app.add_subcommand("feedback", "PID feedback simulation");
  fb_cmd->configurable();
  fb_cmd->add_option("--tau", fb.cfg.tau, "decay timescale");
  fb_cmd->add_option("--t0", fb.cfg.t0, "transport delay / activation time");
  fb_cmd->add_option("--kp", fb.cfg.kp, "proportional gain");
  fb_cmd->add_option("--ki", fb.cfg.ki, "integral gain");
  fb_cmd->add_option("--kd", fb.cfg.kd, "derivative gain");
  fb_cmd->add_option("--alpha", fb.cfg.alpha, "common gain scale");
  fb_cmd->add_option("--target", fb.cfg.target, "desired network output");
  fb_cmd->add_option("--chi0", fb.cfg.chi0, "initial link weight");
  fb_cmd->add_option("--dt", fb.cfg.dt, "integration step");
  fb_cmd->add_option("--horizon", fb.cfg.horizon, "simulation horizon");
  fb_cmd->add_option("--k", fb.cfg.k, "Bethe lattice degree");
  fb_cmd->add_option("--activation", fb.cfg.activation,
                     "control activation time (default: t0)");
  fb_cmd->add_option("--response", fb.response, "network response: cv or dv");
  fb_cmd->add_option("--band", fb.band, "stability band half-width");
  fb_cmd->add_option("--window", fb.window, "settling window length");
  fb_cmd->add_flag("--trajectory", fb.trajectory, "emit trajectory CSV");
  fb_cmd->add_option("--preset", fb.preset,
                     "preset: fig2a, fig2b, fig2-cv, fig2-dv");
  fb_cmd->add_option("--output", fb.output, "write data to file");

  auto* locc_cmd = app.add_subcommand("locc", "LOCC protocol verification");
  locc_cmd->configurable();
  locc_cmd->require_subcommand(1);
  double lc_r1 = 1.0, lc_r2 = 1.0, lc_chi0 = 1.0;
  int lc_nmax = 200;
  std::string lc_output;
  auto* lv = locc_cmd->add_subcommand("verify-concentration",
                                      "verify the two-state concentration map");
  lv->configurable();
  lv->add_option("--r1", lc_r1, "first squeezing parameter")->required();
  lv->add_option("--r2", lc_r2, "second squeezing parameter")->required();
  lv->add_option("--nmax", lc_nmax, "truncation dimension");
  lv->add_option("--output", lc_output, "write data to file");
  auto* lg = locc_cmd->add_subcommand("gpovm", "measurement-seeded swap");
  lg->configurable();
  lg->add_option("--r1", lc_r1, "first squeezing parameter")->required();
  lg->add_option("--r2", lc_r2, "second squeezing parameter")->required();
  lg->add_option("--chi0", lc_chi0, "seed link weight");
  lg->add_option("--output", lc_output, "write data to file");

  auto* base_cmd = app.add_subcommand("baseline", "DV and classical baselines");
  base_cmd->configurable();
  base_cmd->require_subcommand(1);
  int bl_k = 3, bl_M = 1;
  double bl_p = -1.0, bl_c = -1.0;
  std::string bl_c_grid, bl_preset, bl_output;
  auto* bi = base_cmd->add_subcommand("interdependent",
                                      "interdependent-percolation baseline");
  bi->configurable();
  bi->add_option("--k", bl_k, "Bethe lattice degree")->required();
  bi->add_option("--M", bl_M, "number of interdependent layers")->required();
  bi->add_option("--p", bl_p, "evaluate the branch value at p");
  bi->add_option("--output", bl_output, "write data to file");
  auto* bc = base_cmd->add_subcommand("conpt", "DV concurrence baseline");
  bc->configurable();
  bc->add_option("--k", bl_k, "Bethe lattice degree");
  bc->add_option("--c", bl_c, "single link concurrence");
  bc->add_option("--c-grid", bl_c_grid, "concurrence grid lo:hi:step");
  bc->add_option("--preset", bl_preset, "dataset preset: figs6");
  bc->add_option("--output", bl_output, "write data to file");

  rules::set_warning_sink([](const std::string& msg) {
    std::cerr << "warning: " << msg << "\n";
  });

  try {
    app.parse(argc, argv);
    if (*sp_cmd) {
      run_sponge(sponge);
    } else if (*cr_cmd) {
      run_critical(critical);
    } else if (*fb_cmd) {
      run_feedback(fb);
    } else if (*locc_cmd) {
      if (*lv)
        run_locc_verify(lc_r1, lc_r2, lc_nmax, lc_output);
      else
        run_locc_gpovm(lc_r1, lc_r2, lc_chi0, lc_output);
    } else if (*base_cmd) {
      if (*bi)
        run_baseline_interdependent(
            bl_k, bl_M, bl_p >= 0.0 ? std::optional<double>(bl_p) : std::nullopt,
            bl_output);
      else
        run_baseline_conpt(bl_k, bl_c, bl_c_grid, bl_preset, bl_output);
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const sp::IrreducibleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
