// Command-line front end: closed-form tables and curve/surface data for the
// drift-testing efficiency functions, inequality verification suites, the
// reduction -> alpha solver, the small-alpha asymptotics, and the Monte
// Carlo comparison of the SPRT against the fixed-sample design.
//
// Exit codes: 0 success, 1 verification or runtime failure, 2 usage/domain
// error. All numeric output is formatted with std::to_chars, so identical
// flags produce byte-identical files.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sprt/sprt.hpp"

namespace {

std::string fmt(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string fmt_fixed(double v, int precision) {
  char buf[64];
  auto res =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed,
                    precision);
  return std::string(buf, res.ptr);
}

std::string fmt_general(double v, int precision) {
  char buf[64];
  auto res =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general,
                    precision);
  return std::string(buf, res.ptr);
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + path);
  out << content;
}

std::string cmd_table() {
  struct Row {
    const char* power;
    double alpha;
  };
  static constexpr Row rows[] = {{"0.80", 0.2},
                                 {"0.90", 0.1},
                                 {"0.95", 0.05},
                                 {"0.99", 0.01},
                                 {"0.999", 0.001}};
  std::string s = "power, f, reduction\n";
  for (const Row& r : rows) {
    const double f = sprt::efficiency_f(r.alpha);
    s += std::string(r.power) + ", " + fmt_fixed(f, 4) + ", " +
         fmt_fixed(100.0 * (1.0 - f), 2) + "%\n";
  }
  return s;
}

std::string cmd_curve(double lo, double hi, std::size_t n, bool log_spaced) {
  if (!(lo > 0.0) || !(lo < hi) || !(hi < 0.5))
    throw std::domain_error("curve requires 0 < alpha-min < alpha-max < 1/2");
  const std::vector<double> grid =
      log_spaced ? sprt::logspace(lo, hi, n) : sprt::linspace(lo, hi, n);
  std::string s = "alpha,f,reduction\n";
  for (double a : grid) {
    const double f = sprt::efficiency_f(a);
    s += fmt(a) + "," + fmt(f) + "," + fmt(1.0 - f) + "\n";
  }
  return s;
}

std::string cmd_surface(std::size_t n, bool log_spaced) {
  if (n < 2) throw std::domain_error("surface requires a grid of at least 2");
  std::vector<double> grid;
  if (log_spaced) {
    grid = sprt::logspace(1e-5, 0.1, n);  // the zoomed (0, 1/10)^2 panel
  } else {
    grid.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
      grid.push_back(0.5 * static_cast<double>(i + 1) /
                     static_cast<double>(n + 1));
  }
  std::string s = "alpha,beta,F\n";
  for (double a : grid)
    for (double b : grid)
      s += fmt(a) + "," + fmt(b) + "," + fmt(sprt::efficiency_F(a, b)) + "\n";
  return s;
}

std::string cmd_asymp(const std::vector<double>& alphas) {
  std::string s = "alpha,f,f_asymp,residual\n";
  for (double a : alphas) {
    const double f = sprt::efficiency_f(a);
    const double fa = sprt::f_asymptotic(a);
    s += fmt(a) + "," + fmt(f) + "," + fmt(fa) + "," + fmt(f - fa) + "\n";
  }
  return s;
}

int cmd_verify(const std::string& suite, const std::string& out_path) {
  using sprt::Suite;
  static const std::vector<std::pair<std::string, Suite>> all = {
      {"mills", Suite::mills},         {"twodim", Suite::twodim},
      {"disc", Suite::disc},           {"omega-max", Suite::omega_max},
      {"monotone", Suite::monotone},   {"bounds", Suite::bounds},
      {"theorem2", Suite::theorem2}};
  std::vector<std::pair<std::string, Suite>> selected;
  if (suite == "all") {
    selected = all;
  } else {
    for (const auto& entry : all)
      if (entry.first == suite) selected.push_back(entry);
    if (selected.empty())
      throw std::domain_error("unknown suite '" + suite + "'");
  }
  std::string csv = "suite,x,y,margin\n";
  bool any_bad = false;
  for (const auto& [name, id] : selected) {
    sprt::ScanSink sink = [&](double x, double y, double m) {
      csv += name + "," + fmt(x) + "," + fmt(y) + "," + fmt(m) + "\n";
    };
    const sprt::MarginReport report =
        sprt::run_suite(id, out_path.empty() ? nullptr : &sink);
    std::cout << report.summary() << "\n";
    if (!report.ok()) any_bad = true;
  }
  if (!out_path.empty()) write_output(out_path, csv);
  return any_bad ? 1 : 0;
}

std::string sim_rows(const char* kind, double alpha, double beta,
                     const sprt::SimResult& up, const sprt::SimResult& down,
                     double f_hat, double f_closed) {
  auto row = [&](const char* theta, const sprt::SimResult& r) {
    return std::string(kind) + "," + theta + "," + fmt(alpha) + "," +
           fmt(beta) + "," + fmt(r.mean_stop) + "," + fmt(r.se_stop) + "," +
           fmt(r.error_rate) + "," + std::to_string(r.n_wrong) + "," +
           std::to_string(r.wall_paths) + "," + fmt(f_hat) + "," +
           fmt(f_closed) + "\n";
  };
  return row("+1", up) + row("-1", down);
}

int cmd_simulate(double alpha, double beta, double step, std::uint64_t paths,
                 std::uint64_t seed, double mu, double sigma,
                 const std::string& out_path) {
  sprt::SimConfig cfg{sprt::ErrorSpec(alpha, beta), sprt::Hypothesis::drift_up};
  cfg.signal = sprt::SignalSpec(mu, sigma);
  cfg.step = step;
  cfg.paths = paths;
  cfg.seed = seed;
  const sprt::ComparisonReport rep = sprt::run_comparison(cfg);
  std::string csv =
      "kind,theta,alpha,beta,mean_stop,se_stop,error_rate,n_wrong,paths,"
      "f_hat,f_closed\n";
  csv += sim_rows("sprt", alpha, beta, rep.sprt_up, rep.sprt_down, rep.f_hat,
                  rep.f_closed);
  csv += sim_rows("fixed", alpha, beta, rep.fixed_up, rep.fixed_down,
                  rep.f_hat, rep.f_closed);
  write_output(out_path, csv);
  std::cerr << "horizon=" << fmt(rep.time_scale * rep.fixed.horizon)
            << " boundaries=(" << fmt(rep.sprt.lower) << ", "
            << fmt(rep.sprt.upper) << ")\n"
            << "f_hat=" << fmt(rep.f_hat) << " f_closed=" << fmt(rep.f_closed)
            << " deviation=" << fmt(rep.deviation) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Sequential vs fixed-sample testing of a Brownian drift: efficiency "
      "tables, inequality checks and Monte Carlo simulation"};
  app.require_subcommand(1);

  std::string out_path;

  auto* table = app.add_subcommand(
      "table", "Relative efficiency and reduction for common power levels");
  table->add_option("--out", out_path, "write to file instead of stdout");

  double alpha_min = 1e-3, alpha_max = 0.499;
  std::size_t points = 500;
  bool log_spaced = false;
  auto* curve = app.add_subcommand("curve", "CSV of f(alpha) over a grid");
  curve->add_option("--alpha-min", alpha_min, "grid lower end");
  curve->add_option("--alpha-max", alpha_max, "grid upper end");
  curve->add_option("--points", points, "number of grid points");
  curve->add_flag("--log", log_spaced, "logarithmic spacing");
  curve->add_option("--out", out_path, "write to file instead of stdout");

  std::size_t grid_n = 200;
  auto* surface =
      app.add_subcommand("surface", "CSV of F(alpha, beta) on an NxN grid");
  surface->add_option("--grid", grid_n, "grid size per axis");
  surface->add_flag("--log", log_spaced,
                    "log-spaced zoom over (0, 1/10)^2");
  surface->add_option("--out", out_path, "write to file instead of stdout");

  std::vector<double> asymp_alphas = {1e-10, 1e-20, 1e-40, 1e-60};
  auto* asymp = app.add_subcommand(
      "asymp", "f against its small-alpha asymptotic expansion");
  asymp->add_option("--alpha", asymp_alphas, "alpha values");
  asymp->add_option("--out", out_path, "write to file instead of stdout");

  std::string suite = "all";
  auto* verify =
      app.add_subcommand("verify", "run inequality verification scans");
  verify->add_option("--suite", suite,
                     "mills|twodim|disc|omega-max|monotone|bounds|theorem2|all");
  verify->add_option("--out", out_path, "CSV of per-point margins");

  double sim_alpha = 0.05, sim_beta = -1.0, sim_step = 1e-4;
  double mu = 1.0, sigma = 1.0;
  std::uint64_t sim_paths = 100000, seed = 0;
  auto* simulate = app.add_subcommand(
      "simulate", "Monte Carlo comparison of SPRT and fixed-sample designs");
  simulate->add_option("--alpha", sim_alpha, "error bound under drift -1");
  simulate->add_option("--beta", sim_beta,
                       "error bound under drift +1 (defaults to alpha)");
  simulate->add_option("--step", sim_step, "unit-model time step");
  simulate->add_option("--paths", sim_paths, "Monte Carlo paths per run");
  simulate->add_option("--seed", seed, "RNG seed");
  simulate->add_option("--mu", mu, "drift magnitude");
  simulate->add_option("--sigma", sigma, "volatility");
  simulate->add_option("--out", out_path, "write CSV to file");

  double target_reduction = 0.0;
  auto* solve = app.add_subcommand(
      "solve", "alpha achieving a target average sample-size reduction");
  solve->add_option("--reduction", target_reduction, "target in (1-2/pi, 3/4)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (table->parsed()) {
      write_output(out_path, cmd_table());
    } else if (curve->parsed()) {
      write_output(out_path, cmd_curve(alpha_min, alpha_max, points, log_spaced));
    } else if (surface->parsed()) {
      write_output(out_path, cmd_surface(grid_n, log_spaced));
    } else if (asymp->parsed()) {
      write_output(out_path, cmd_asymp(asymp_alphas));
    } else if (verify->parsed()) {
      return cmd_verify(suite, out_path);
    } else if (simulate->parsed()) {
      return cmd_simulate(sim_alpha, sim_beta < 0.0 ? sim_alpha : sim_beta,
                          sim_step, sim_paths, seed, mu, sigma, out_path);
    } else if (solve->parsed()) {
      std::cout << fmt_general(sprt::invert_f(target_reduction), 6) << "\n";
    }
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
