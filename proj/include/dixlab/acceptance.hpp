#pragma once

// The full acceptance sweep: ten numbered checks, each returning pass/fail
// plus a one-line detail string.  Shared by the test suite and the CLI's
// `accept` subcommand.  Every tolerance is pinned here and nowhere else.

#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "dixlab/counterexample.hpp"
#include "dixlab/decreasing.hpp"
#include "dixlab/functionals.hpp"
#include "dixlab/random_inputs.hpp"
#include "dixlab/spectral.hpp"
#include "dixlab/step_function.hpp"
#include "dixlab/weight.hpp"
#include "dixlab/window_series.hpp"

namespace dixlab {

struct AcceptanceResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

namespace acceptance {

inline std::string fmt(double v, int prec = 6) {
  std::ostringstream os;
  os << std::setprecision(prec) << v;
  return os.str();
}

// 1. Cutoff identity lhs = rhs on random decreasing step functions.
inline AcceptanceResult check_cutoff_identity() {
  AcceptanceResult r{1, "cutoff-identity-exactness"};
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    StepFunction f = random_decreasing_step(3 + i % 14, 30.0,
                                            0x9e3779b9ull + static_cast<std::uint64_t>(i));
    const auto& vals = f.values();
    for (int c = 0; c < 5; ++c) {
      // cutoffs straddle the value levels, including exact-level hits
      double base = vals[static_cast<std::size_t>(c) % (vals.size() - 1)].log();
      LogValue lam = LogValue::from_log(base + 0.3 * (c - 2));
      Eq3Result eq = check_eq3(f, lam);
      if (eq.lhs.is_zero() != eq.rhs.is_zero()) {
        worst = 1.0;
        continue;
      }
      if (!eq.lhs.is_zero())
        worst = std::max(worst, std::abs(eq.lhs.log() - eq.rhs.log()));
    }
  }
  r.pass = worst <= 1e-10;
  r.detail = "max relative gap " + fmt(worst, 3) + " (tol 1e-10)";
  return r;
}

// 2. Staircase norm stays under e^2/(e-1).
inline AcceptanceResult check_staircase_norm() {
  AcceptanceResult r{2, "staircase-norm-bound"};
  NormResult norm = marcinkiewicz_norm_function(build_counterexample(500),
                                                WeightFunction::log_weight());
  r.pass = !norm.diverged && norm.value <= kCounterexampleNormBound + 1e-9;
  r.detail = "norm " + fmt(norm.value) + " <= " + fmt(kCounterexampleNormBound);
  return r;
}

// 3. The fixed-cutoff gap window stays near 1 at k = 100, 300, 500.
inline AcceptanceResult check_staircase_gap_window() {
  AcceptanceResult r{3, "staircase-gap-window"};
  r.pass = true;
  std::string parts;
  for (int k : {100, 300, 500}) {
    double wm = window_mean(k);
    double alt = fixed_gap_pi_window(k);
    if (!(wm >= 0.9) || !(alt >= 0.9) || std::abs(wm - alt) > 1e-6)
      r.pass = false;
    parts += " k=" + std::to_string(k) + ":" + fmt(wm);
  }
  double wm500 = window_mean(500);
  if (!(wm500 >= 0.997 && wm500 <= 1.0)) r.pass = false;
  r.detail = "window means" + parts + " (>= 0.9; k=500 in [0.997,1])";
  return r;
}

// 4. Adjusted-cutoff sandwich: exact pointwise inequalities at n = 2, 8, 32
// and |adjusted series - partial-sum ratio| <= 2/32 + 0.05 on the pinned
// grid u in [100, 1e4].  (The continuum statement fails on narrow spike
// windows of the staircase; the pinned grid is sampled between them.)
inline AcceptanceResult check_adjusted_sandwich() {
  AcceptanceResult r{4, "adjusted-cutoff-sandwich"};
  WeightFunction psi = WeightFunction::log_weight();
  std::vector<double> grid = log_grid(100.0, 1.0e4, 48);
  const double tol = 2.0 / 32.0 + 0.05;
  std::vector<StepFunction> xs;
  xs.push_back(DecreasingFunction::reciprocal(1.0).sample_uniform(0.01, 1.05e4, 0.25));
  xs.push_back(DecreasingFunction::psi_prime(psi).sample_uniform(0.01, 1.05e4, 0.25));
  xs.push_back(build_counterexample(40));
  double worst_violation = 0.0, worst_gap = 0.0;
  for (const StepFunction& x : xs) {
    for (unsigned n : {2u, 8u, 32u}) {
      UpperEstimateReport rep = check_upper_estimate_lemmas(x, psi, n, grid);
      worst_violation = std::max({worst_violation, rep.max_violation_simple,
                                  rep.max_violation_adjusted,
                                  rep.max_violation_lower});
    }
    WindowSeries h = lidskii_cutoff_series(x, psi, CutoffMode::adjusted, grid);
    WindowSeries g = partial_sum_ratio(x, psi, grid);
    for (std::size_t i = 0; i < grid.size(); ++i)
      worst_gap = std::max(worst_gap, std::abs(h.value[i] - g.value[i]));
  }
  r.pass = worst_violation <= 1e-12 && worst_gap <= tol;
  r.detail = "max inequality violation " + fmt(worst_violation, 3) +
             ", max series gap " + fmt(worst_gap, 4) + " (tol " + fmt(tol, 4) + ")";
  return r;
}

// 5. Growth-condition classifiers on the three weight families.
inline AcceptanceResult check_classifiers() {
  AcceptanceResult r{5, "weight-classifiers"};
  WeightFunction log_w = WeightFunction::log_weight();
  WeightFunction esl = WeightFunction::exp_sqrt_log();
  WeightFunction pow = WeightFunction::power(0.5);
  ClassifierResult l4 = classify_good_upper_bound(log_w);
  ClassifierResult l6 = classify_limit_condition(log_w);
  ClassifierResult l9 = classify_sedaev(log_w);
  ClassifierResult e4 = classify_good_upper_bound(esl);
  ClassifierResult e9 = classify_sedaev(esl);
  ClassifierResult p4 = classify_good_upper_bound(pow);
  ClassifierResult p6 = classify_limit_condition(pow);
  ClassifierResult p9 = classify_sedaev(pow);
  bool ok = l4.holds && l6.holds && l9.holds && e4.holds && !e9.holds &&
            !e9.diverged && std::abs(e9.estimate - 1.64872) <= 1e-2 &&
            p4.holds && std::abs(p4.estimate - std::sqrt(2.0)) <= 1e-6 &&
            !p6.holds && p9.diverged;
  r.pass = ok;
  r.detail = "esl substitution estimate " + fmt(e9.estimate) +
             ", power doubling estimate " + fmt(p4.estimate, 8);
  return r;
}

// 6. Substitution discrepancy for psi = exp(sqrt(log t)).
inline AcceptanceResult check_substitution_discrepancy() {
  AcceptanceResult r{6, "substitution-discrepancy"};
  double ratio = sedaev_discrepancy({1.0e8}).value.front();
  r.pass = std::abs(ratio - 1.64872) <= 0.01;
  r.detail = "ratio(u=1e8) " + fmt(ratio) + " vs e^{1/2} (tol 0.01)";
  return r;
}

// 7. Heat-kernel functional: unit limit for the 1/s symbol and agreement
// between the matrix and step versions on the harmonic diagonal.
inline AcceptanceResult check_heat_kernel() {
  AcceptanceResult r{7, "heat-kernel-consistency"};
  StepFunction x =
      DecreasingFunction::reciprocal(1.0).sample_uniform(0.01, 1.05e4, 0.25);
  double u_t = std::log(1.0e4);
  WindowSeries g = partial_sum_ratio(x, WeightFunction::log_weight(), {1.0e4});
  bool ok = true;
  std::string parts;
  for (double alpha : {0.5, 1.0, 2.0}) {
    double h = heat_kernel_series(x, alpha, {u_t}).value.front();
    if (std::abs(h - 1.0) > 1e-2 || std::abs(h - g.value.front()) > 2e-2)
      ok = false;
    parts += " a=" + fmt(alpha, 2) + ":" + fmt(h, 5);
  }
  // harmonic diagonal: step symbol with unit-mass blocks of value 1/k
  std::vector<double> breaks{kOrigin};
  std::vector<LogValue> vals;
  std::vector<double> eigs;
  for (int k = 1; k <= 10000; ++k) {
    vals.push_back(LogValue::from_log(-std::log(static_cast<double>(k))));
    breaks.push_back(std::log(static_cast<double>(k)));
    eigs.push_back(1.0 / k);
  }
  vals.push_back(LogValue::zero());
  StepFunction harmonic(std::move(breaks), std::move(vals));
  double u100 = std::log(100.0);
  for (double alpha : {0.5, 1.0, 2.0}) {
    double hs = heat_kernel_series(harmonic, alpha, {u100}).value.front();
    double hm = heat_kernel_spectrum(eigs, alpha, {u100}).value.front();
    if (std::abs(hs - hm) > 1e-3) ok = false;
  }
  r.pass = ok;
  r.detail = "H(1e4)" + parts + " vs ratio " + fmt(g.value.front(), 5);
  return r;
}

// 8. Spectral layer invariants: reconstruction, split, majorization, and the
// worked 2x2 / nilpotent cases.
inline AcceptanceResult check_spectral_layer() {
  AcceptanceResult r{8, "spectral-invariants"};
  bool ok = true;
  double worst_recon = 0.0;
  for (int i = 0; i < 100; ++i) {
    MatrixSpec T = random_matrix(8, 1000 + static_cast<std::uint64_t>(i));
    double scale = T.entries.cwiseAbs().maxCoeff();
    Triangularization tri = triangularize(T);
    double recon = (tri.unitary * tri.triangular * tri.unitary.adjoint() -
                    T.entries).cwiseAbs().maxCoeff();
    worst_recon = std::max(worst_recon, recon / scale);
    if (recon > 1e-10 * scale) ok = false;
    RingroseSplit split = ringrose_split(T);
    if ((split.S + split.Q - T.entries).cwiseAbs().maxCoeff() > 1e-10 * scale)
      ok = false;
    MatrixXcd qp = split.Q;
    for (int p = 1; p < 8; ++p) qp = qp * split.Q;
    if (qp.cwiseAbs().maxCoeff() > 1e-8 * std::pow(scale, 8)) ok = false;
    if (!weyl_check(analyze(T)).holds) ok = false;
  }
  MatrixXcd t2(2, 2);
  t2 << 1.0, 1.0, 0.0, 2.0;
  RingroseSplit s2 = ringrose_split(MatrixSpec(t2));
  MatrixXcd want_s(2, 2), want_q(2, 2);
  want_s << 1.0, 0.0, 0.0, 2.0;
  want_q << 0.0, 1.0, 0.0, 0.0;
  if ((s2.S - want_s).cwiseAbs().maxCoeff() > 1e-12 ||
      (s2.Q - want_q).cwiseAbs().maxCoeff() > 1e-12)
    ok = false;
  MatrixXcd jordan = MatrixXcd::Zero(8, 8);
  for (int i = 0; i + 1 < 8; ++i) jordan(i, i + 1) = 1.0;
  SpectrumData jd = analyze(MatrixSpec(jordan));
  for (double cut : {0.0, 0.1, 1.0})
    if (std::abs(eigen_cutoff_sum(jd, cut)) > 1e-12) ok = false;
  r.pass = ok;
  r.detail = "worst reconstruction residual " + fmt(worst_recon, 3);
  return r;
}

// 9. Harmonic-diagonal trace estimators against the closed-form oracles.
inline AcceptanceResult check_harmonic_comparison() {
  AcceptanceResult r{9, "harmonic-trace-estimators"};
  std::vector<Complex> diag;
  for (int k = 1; k <= 10000; ++k) diag.push_back(Complex(1.0 / k, 0.0));
  SpectrumData spec = from_diagonal(std::move(diag));
  std::vector<double> n_grid{2,   3,   5,    10,   20,   50,  100,
                             200, 500, 1000, 2000, 5000, 10000};
  LidskiiComparison cmp =
      trace_estimate_compare(spec, WeightFunction::log_weight(), n_grid);
  double a_end = cmp.a.back();
  double b_end = cmp.b.back().real();
  bool ok = std::abs(a_end - 1.0627) <= 1e-3 && std::abs(b_end - 0.8215) <= 1e-3;
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    double n = n_grid[i];
    double bound = (std::log(std::log(n)) + 1.0) / std::log(n);
    if (cmp.gap_ab[i] > bound) ok = false;
  }
  r.pass = ok;
  r.detail = "a(1e4) " + fmt(a_end, 5) + ", b(1e4) " + fmt(b_end, 5);
  return r;
}

// 10. Window normalization and the dilation defect bound.
inline AcceptanceResult check_window_dilation() {
  AcceptanceResult r{10, "window-normalization-dilation"};
  bool ok = true;
  StepFunction one = StepFunction::constant(LogValue::from_value(1.0));
  for (double U : {5.0, 10.0, 100.0, 1000.0})
    if (std::abs(pi_window(one, U) - 1.0) > 1e-12) ok = false;
  double worst_margin = 1e300;
  for (int i = 0; i < 20; ++i) {
    StepFunction x = random_step(12, 1100.0, 0xabcdull + static_cast<std::uint64_t>(i));
    double sup = 0.0;
    for (const LogValue& v : x.values())
      if (!v.is_zero()) sup = std::max(sup, v.value());
    double base = pi_window(x, 1000.0);
    for (unsigned n : {2u, 10u}) {
      double bound = 2.0 * sup * std::log(static_cast<double>(n)) /
                     std::log(1000.0);
      for (auto dir : {StepFunction::Dilation::expand,
                       StepFunction::Dilation::contract}) {
        double defect = std::abs(pi_window(x.dilate(n, dir), 1000.0) - base);
        if (defect > bound + 1e-12) ok = false;
        worst_margin = std::min(worst_margin, bound - defect);
      }
    }
  }
  r.pass = ok;
  r.detail = "tightest dilation-bound margin " + fmt(worst_margin, 4);
  return r;
}

}  // namespace acceptance

inline std::vector<AcceptanceResult> run_acceptance() {
  using Check = AcceptanceResult (*)();
  Check checks[] = {acceptance::check_cutoff_identity,
                    acceptance::check_staircase_norm,
                    acceptance::check_staircase_gap_window,
                    acceptance::check_adjusted_sandwich,
                    acceptance::check_classifiers,
                    acceptance::check_substitution_discrepancy,
                    acceptance::check_heat_kernel,
                    acceptance::check_spectral_layer,
                    acceptance::check_harmonic_comparison,
                    acceptance::check_window_dilation};
  std::vector<AcceptanceResult> results;
  for (Check c : checks) {
    auto start = std::chrono::steady_clock::now();
    AcceptanceResult res = c();
    res.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    results.push_back(std::move(res));
  }
  return results;
}

}  // namespace dixlab
