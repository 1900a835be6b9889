#pragma once

// The doubly-exponential staircase x = sup_k e^{-e^k} chi_{[0, e^{k+e^k}]}
// and the quantities that make it interesting: its Marcinkiewicz norm, the
// window mean of the gap between the fixed-cutoff series and the partial-sum
// ratio (which stays near 1 instead of vanishing), and the discrepancy ratio
// psi(n_x(1/t))/psi(t) for psi = exp(sqrt(log t)), x = psi'.
//
// Breakpoints u_k = k + e^k exceed double resolution once k > ~40 (the
// additive k falls below ULP(e^k)), so every large-k quantity here is
// computed in offset coordinates w = u - e^k with closed-form exponent
// differences; nothing is recovered by subtracting stored breakpoints.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "dixlab/log_value.hpp"
#include "dixlab/step_function.hpp"
#include "dixlab/weight.hpp"
#include "dixlab/window_series.hpp"

namespace dixlab {

// Step function with value e^{-e^k} on (e^{u_{k-1}}, e^{u_k}], u_k = k + e^k,
// and value e^{-e} on [0, e^{1+e}]; zero beyond u_{k_max}.
inline StepFunction build_counterexample(int k_max) {
  if (k_max < 1 || k_max > 700)
    throw std::invalid_argument("build_counterexample: need 1 <= k_max <= 700");
  std::vector<double> breaks{kOrigin};
  std::vector<LogValue> vals;
  for (int k = 1; k <= k_max; ++k) {
    double ek = std::exp(static_cast<double>(k));
    vals.push_back(LogValue::from_log(-ek));
    breaks.push_back(static_cast<double>(k) + ek);
  }
  vals.push_back(LogValue::zero());
  return StepFunction(std::move(breaks), std::move(vals));
}

// ||x||_{M_psi} <= e^2/(e-1) for psi = log; the computed norm sits near
// e/(e-1).
inline constexpr double kCounterexampleNormBound = 4.300263287469657;  // e^2/(e-1)

namespace detail {

// mass of block j, exp(-e^j) (e^{u_j} - e^{u_{j-1}}) = e^j (1 - r_j) with
// r_j = exp(-1 - (e-1) e^{j-1}) for j >= 2; the head block has mass e.
inline double counterexample_block_mass(int j) {
  double ej = std::exp(static_cast<double>(j));
  if (j == 1) return ej * std::exp(-ej + 1.0 + ej - 1.0);  // = e exactly
  double r = std::exp(-1.0 - (M_E - 1.0) * std::exp(static_cast<double>(j - 1)));
  return ej * (1.0 - r);
}

}  // namespace detail

// Window mean over u in [e^k, e^k + k] (the pi window at N with
// log N = e^k) of the tail-gap functional (1/u) int_{t}^{n_x(1/t)} x*.
// Inside the window the whole stretch lies in block k, so the gap is exactly
//   (e^k - e^w) / (e^k + w),   w = u - e^k,
// and the mean tends to 1 - (1 - e^{-k})/k.  Everything is evaluated in the
// offset variable w; the breakpoint k + e^k itself is never subtracted.
inline double window_mean(int k) {
  if (k < 3 || k > 700) throw std::invalid_argument("window_mean: need 3 <= k <= 700");
  double ek = std::exp(static_cast<double>(k));
  auto gap = [&](double w) { return (ek - std::exp(w)) / (ek + w); };
  return pi_window_offset(gap, static_cast<double>(k));
}

// Same window by the analytic split: the leading term e^k log1p(k e^{-k})
// minus the correction int_0^k e^{w-k}/(1 + w e^{-k}) dw, whose integrand
// never leaves [0,1].  Agrees with window_mean to quadrature accuracy.
inline double fixed_gap_pi_window(int k) {
  if (k < 3 || k > 700)
    throw std::invalid_argument("fixed_gap_pi_window: need 3 <= k <= 700");
  double kk = static_cast<double>(k);
  double emk = std::exp(-kk);
  double main = std::exp(kk) * std::log1p(kk * emk);
  auto tail = [&](double w) { return std::exp(w - kk) / (1.0 + w * emk); };
  double correction = detail::adaptive_trapezoid(tail, 0.0, kk);
  return (main - correction) / kk;
}

// Discrepancy ratio psi(n_x(1/t))/psi(t) for psi(t) = exp(sqrt(log t)) and
// x = psi': with v = log n_x(1/t), the level equation x(e^v) = e^{-u} reads
//   v + log(2 sqrt(v)) - sqrt(v) = u,
// solved by Newton from v0 = u + sqrt(u); the ratio is exp(sqrt(v)-sqrt(u)).
// Tends to e^{1/2}, witnessing the failure of the substitution condition.
inline WindowSeries sedaev_discrepancy(const std::vector<double>& u_grid) {
  WindowSeries s;
  s.meta = "sedaev_discrepancy(psi=expsqrtlog)";
  s.u = u_grid;
  s.value.reserve(u_grid.size());
  for (double u : u_grid) {
    if (!(u >= 10.0))
      throw std::invalid_argument("sedaev_discrepancy: need u >= 10");
    double v = u + std::sqrt(u);
    for (int it = 0; it < 60; ++it) {
      double sq = std::sqrt(v);
      double g = v + std::log(2.0 * sq) - sq - u;
      double dg = 1.0 + 0.5 / v - 0.5 / sq;
      double step = g / dg;
      v -= step;
      if (std::abs(step) <= 1e-14 * v) break;
    }
    s.value.push_back(std::exp(std::sqrt(v) - std::sqrt(u)));
  }
  return s;
}

struct CounterexampleReport {
  int k_max = 0;
  NormResult norm;                    // Marcinkiewicz norm against psi = log
  double norm_bound = kCounterexampleNormBound;
  std::vector<int> window_k;
  std::vector<double> window_means;
  std::vector<double> window_means_alt;  // independent-route values
  WindowSeries sedaev;
};

inline CounterexampleReport counterexample_report(
    int k_max, std::vector<int> window_k = {},
    const std::vector<double>& sedaev_u = {1.0e4, 1.0e6, 1.0e8}) {
  CounterexampleReport rep;
  rep.k_max = k_max;
  rep.norm = marcinkiewicz_norm_function(build_counterexample(k_max),
                                         WeightFunction::log_weight());
  if (window_k.empty()) {
    for (int k : {100, 300, 500})
      if (k < k_max) window_k.push_back(k);
    if (k_max >= 3) window_k.push_back(k_max);
  }
  rep.window_k = window_k;
  for (int k : window_k) {
    rep.window_means.push_back(window_mean(k));
    rep.window_means_alt.push_back(fixed_gap_pi_window(k));
  }
  rep.sedaev = sedaev_discrepancy(sedaev_u);
  return rep;
}

}  // namespace dixlab
