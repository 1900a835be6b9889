// Command-line front door: runs each computation family, emits plot-ready
// JSON/CSV series, and runs the acceptance suite.
//
// Exit codes: 0 success, 1 computation error (divergence, failed acceptance),
// 2 invalid configuration.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dixlab/acceptance.hpp"
#include "dixlab/counterexample.hpp"
#include "dixlab/decreasing.hpp"
#include "dixlab/functionals.hpp"
#include "dixlab/io.hpp"
#include "dixlab/spectral.hpp"
#include "dixlab/weight.hpp"
#include "dixlab/window_series.hpp"

namespace {

using namespace dixlab;

struct Options {
  std::string psi = "log";
  std::string input;
  std::string matrix;
  std::string mode = "adjusted";
  double alpha = 1.0;
  int kmax = 40;
  std::string ngrid = "2:10000";
  std::string grid = "1:1e4:64";
  std::uint64_t seed = 42;
  std::string out;
  std::string format = "json";
};

WeightFunction parse_psi(const std::string& name) {
  if (name == "log") return WeightFunction::log_weight();
  if (name == "expsqrtlog") return WeightFunction::exp_sqrt_log();
  if (name.rfind("power:", 0) == 0)
    return WeightFunction::power(std::stod(name.substr(6)));
  throw CLI::ValidationError("--psi", "unknown weight '" + name + "'");
}

std::vector<double> parse_grid(const std::string& s) {
  double u_min = 0, u_max = 0;
  int ppd = 0;
  char c1 = 0, c2 = 0;
  std::istringstream is(s);
  if (!(is >> u_min >> c1 >> u_max >> c2 >> ppd) || c1 != ':' || c2 != ':')
    throw CLI::ValidationError("--grid", "expected umin:umax:ppd");
  return log_grid(u_min, u_max, ppd);
}

std::vector<double> parse_ngrid(const std::string& s) {
  double a = 0, b = 0;
  char c = 0;
  std::istringstream is(s);
  if (!(is >> a >> c >> b) || c != ':' || !(a >= 1) || !(b >= a))
    throw CLI::ValidationError("--ngrid", "expected a:b with 1 <= a <= b");
  // geometrically spaced integers, deduplicated
  std::vector<double> out;
  int steps = 48;
  for (int i = 0; i <= steps; ++i) {
    double n = std::floor(a * std::pow(b / a, static_cast<double>(i) / steps) + 0.5);
    if (out.empty() || n > out.back()) out.push_back(n);
  }
  return out;
}

StepFunction load_step(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw CLI::ValidationError("--input", "cannot open " + path);
  return read_step_function(f);
}

MatrixSpec load_matrix(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw CLI::ValidationError("--matrix", "cannot open " + path);
  return read_matrix(f);
}

void emit(const Options& opt, const nlohmann::json& j,
          const WindowSeries* csv_series) {
  std::ostringstream body;
  if (opt.format == "json") {
    body << j.dump(2) << '\n';
  } else {
    if (!csv_series)
      throw CLI::ValidationError("--format", "csv not available for this command");
    write_series_csv(body, *csv_series);
  }
  if (opt.out.empty()) {
    std::cout << body.str();
  } else {
    std::ofstream f(opt.out);
    if (!f) throw CLI::ValidationError("--out", "cannot open " + opt.out);
    f << body.str();
  }
}

int cmd_norm(const Options& opt) {
  if (opt.input.empty()) throw CLI::ValidationError("--input", "required for norm");
  NormResult res = marcinkiewicz_norm_function(load_step(opt.input), parse_psi(opt.psi));
  nlohmann::json j{{"schema", "1"},
                   {"command", "norm"},
                   {"psi", opt.psi},
                   {"value", res.value},
                   {"attained_at_u", res.attained_at_u},
                   {"diverged", res.diverged}};
  emit(opt, j, nullptr);
  return res.diverged ? 1 : 0;
}

nlohmann::json classifier_json(const ClassifierResult& r) {
  return {{"estimate", r.estimate},
          {"holds", r.holds},
          {"inconclusive", r.inconclusive},
          {"diverged", r.diverged}};
}

int cmd_psi_check(const Options& opt) {
  WeightFunction psi = parse_psi(opt.psi);
  nlohmann::json j{{"schema", "1"},
                   {"command", "psi-check"},
                   {"psi", opt.psi},
                   {"doubling_bound", classifier_json(classify_good_upper_bound(psi))},
                   {"doubling_limit", classifier_json(classify_limit_condition(psi))},
                   {"substitution", classifier_json(classify_sedaev(psi))}};
  emit(opt, j, nullptr);
  return 0;
}

int cmd_estimate(const Options& opt) {
  if (opt.input.empty())
    throw CLI::ValidationError("--input", "required for estimate");
  if (opt.mode != "fixed" && opt.mode != "adjusted")
    throw CLI::ValidationError("--mode", "must be fixed or adjusted");
  StepFunction x = load_step(opt.input);
  WeightFunction psi = parse_psi(opt.psi);
  std::vector<double> grid = parse_grid(opt.grid);
  CutoffMode mode =
      opt.mode == "fixed" ? CutoffMode::fixed : CutoffMode::adjusted;
  WindowSeries ratio = partial_sum_ratio(x, psi, grid);
  WindowSeries cutoff = lidskii_cutoff_series(x, psi, mode, grid);
  nlohmann::json j{{"schema", "1"},
                   {"command", "estimate"},
                   {"psi", opt.psi},
                   {"mode", opt.mode},
                   {"partial_sum_ratio", series_to_json(ratio)},
                   {"cutoff_series", series_to_json(cutoff)},
                   {"partial_sum_ratio_cesaro", series_to_json(cesaro(ratio))},
                   {"cutoff_series_cesaro", series_to_json(cesaro(cutoff))}};
  emit(opt, j, &cutoff);
  return 0;
}

int cmd_lidskii(const Options& opt) {
  if (opt.matrix.empty())
    throw CLI::ValidationError("--matrix", "required for lidskii");
  MatrixSpec T = load_matrix(opt.matrix);
  std::vector<double> n_grid = parse_ngrid(opt.ngrid);
  while (!n_grid.empty() && n_grid.back() > static_cast<double>(T.n()))
    n_grid.pop_back();
  if (n_grid.empty())
    throw CLI::ValidationError("--ngrid", "no n <= matrix dimension");
  LidskiiComparison cmp = trace_estimate_compare(T, parse_psi(opt.psi), n_grid);
  auto complex_pairs = [](const std::vector<Complex>& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Complex& z : v) arr.push_back({z.real(), z.imag()});
    return arr;
  };
  nlohmann::json j{{"schema", "1"},
                   {"command", "lidskii"},
                   {"psi", opt.psi},
                   {"n", cmp.n},
                   {"a", cmp.a},
                   {"b", complex_pairs(cmp.b)},
                   {"c", complex_pairs(cmp.c)},
                   {"d", complex_pairs(cmp.d)},
                   {"axis_bound", cmp.axis_bound},
                   {"gap_ab", cmp.gap_ab},
                   {"gap_bd", cmp.gap_bd}};
  WindowSeries b_series;
  b_series.meta = "lidskii b-series (real part)";
  b_series.u = cmp.n;
  for (const Complex& z : cmp.b) b_series.value.push_back(z.real());
  emit(opt, j, &b_series);
  return 0;
}

int cmd_counterexample(const Options& opt) {
  CounterexampleReport rep = counterexample_report(opt.kmax);
  nlohmann::json means = nlohmann::json::array();
  for (std::size_t i = 0; i < rep.window_k.size(); ++i)
    means.push_back({{"k", rep.window_k[i]},
                     {"value", rep.window_means[i]},
                     {"value_alt_route", rep.window_means_alt[i]}});
  nlohmann::json j{{"schema", "1"},
                   {"command", "counterexample"},
                   {"kmax", rep.k_max},
                   {"norm", rep.norm.value},
                   {"norm_bound", rep.norm_bound},
                   {"window_means", means},
                   {"sedaev_ratios", series_to_json(rep.sedaev)}};
  WindowSeries wm;
  wm.meta = "window_mean(k)";
  for (std::size_t i = 0; i < rep.window_k.size(); ++i) {
    wm.u.push_back(static_cast<double>(rep.window_k[i]));
    wm.value.push_back(rep.window_means[i]);
  }
  emit(opt, j, &wm);
  return rep.norm.diverged ? 1 : 0;
}

int cmd_heatkernel(const Options& opt) {
  StepFunction x =
      opt.input.empty()
          ? DecreasingFunction::reciprocal(1.0).sample_uniform(0.01, 1.05e4, 0.25)
          : load_step(opt.input);
  std::vector<double> grid = parse_grid(opt.grid);
  // the kernel argument is t itself, so sample log t over the grid range
  std::vector<double> u_grid;
  for (double u : grid) u_grid.push_back(std::log(u));
  WindowSeries h = heat_kernel_series(x, opt.alpha, u_grid);
  nlohmann::json j{{"schema", "1"},
                   {"command", "heatkernel"},
                   {"alpha", opt.alpha},
                   {"series", series_to_json(h)}};
  emit(opt, j, &h);
  return 0;
}

int cmd_accept() {
  auto results = run_acceptance();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.pass;
    std::printf("%s  %2d %-32s %s (%.2fs)\n", r.pass ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.detail.c_str(), r.seconds);
  }
  std::printf("%s: %zu/%zu criteria passed\n", all ? "OK" : "FAILURE",
              static_cast<std::size_t>(
                  std::count_if(results.begin(), results.end(),
                                [](const auto& r) { return r.pass; })),
              results.size());
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for cutoff trace functionals"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--psi", opt.psi, "weight: log, expsqrtlog, power:p");
    sub->add_option("--seed", opt.seed, "random seed");
    sub->add_option("--out", opt.out, "output path (default stdout)");
    sub->add_option("--format", opt.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  CLI::App* norm = app.add_subcommand("norm", "Marcinkiewicz norm of a step function");
  norm->add_option("--input", opt.input, "step-function file");
  add_common(norm);

  CLI::App* psi_check = app.add_subcommand("psi-check", "growth-condition classifiers");
  add_common(psi_check);

  CLI::App* estimate = app.add_subcommand("estimate", "partial-sum and cutoff series");
  estimate->add_option("--input", opt.input, "step-function file");
  estimate->add_option("--mode", opt.mode, "fixed or adjusted");
  estimate->add_option("--grid", opt.grid, "umin:umax:ppd");
  add_common(estimate);

  CLI::App* lidskii = app.add_subcommand("lidskii", "matrix trace-estimator comparison");
  lidskii->add_option("--matrix", opt.matrix, "matrix file");
  lidskii->add_option("--ngrid", opt.ngrid, "a:b range of n");
  add_common(lidskii);

  CLI::App* counter = app.add_subcommand("counterexample", "staircase witness report");
  counter->add_option("--kmax", opt.kmax, "number of staircase blocks")
      ->check(CLI::Range(1, 700));
  add_common(counter);

  CLI::App* heat = app.add_subcommand("heatkernel", "heat-kernel series");
  heat->add_option("--input", opt.input, "step-function file (default 1/s symbol)");
  heat->add_option("--alpha", opt.alpha, "kernel exponent")
      ->check(CLI::PositiveNumber);
  heat->add_option("--grid", opt.grid, "tmin:tmax:ppd");
  add_common(heat);

  app.add_subcommand("accept", "run the acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (norm->parsed()) return cmd_norm(opt);
    if (psi_check->parsed()) return cmd_psi_check(opt);
    if (estimate->parsed()) return cmd_estimate(opt);
    if (lidskii->parsed()) return cmd_lidskii(opt);
    if (counter->parsed()) return cmd_counterexample(opt);
    if (heat->parsed()) return cmd_heatkernel(opt);
    return cmd_accept();
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: invalid input: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
