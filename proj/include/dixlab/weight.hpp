#pragma once

// Concave weight functions psi and the machinery built on them: growth
// condition classifiers and Marcinkiewicz norms for step functions and
// finite sequences.  All evaluation happens in log-coordinates (u = log t,
// returning log psi(t)) so arguments at doubly-exponential scales stay exact.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "dixlab/log_value.hpp"
#include "dixlab/step_function.hpp"

namespace dixlab {

class WeightFunction {
 public:
  enum class Kind { log_spliced, exp_sqrt_log, power };

  // psi(t) = log t for t >= 2, linear through the origin on [0,2].
  static WeightFunction log_weight() { return WeightFunction(Kind::log_spliced, 0.0); }
  // psi(t) = exp(sqrt(log t)) for t >= e, psi(t) = t on [0,e].
  static WeightFunction exp_sqrt_log() { return WeightFunction(Kind::exp_sqrt_log, 0.0); }
  // psi(t) = t^p, 0 < p < 1.
  static WeightFunction power(double p) {
    if (!(p > 0.0 && p < 1.0))
      throw std::invalid_argument("WeightFunction::power: need 0 < p < 1");
    return WeightFunction(Kind::power, p);
  }

  Kind kind() const { return kind_; }
  double exponent() const { return p_; }

  std::string name() const {
    switch (kind_) {
      case Kind::log_spliced: return "log";
      case Kind::exp_sqrt_log: return "expsqrtlog";
      case Kind::power: return "power:" + std::to_string(p_);
    }
    return "?";
  }

  // log psi(e^u)
  double eval_log(double u) const {
    switch (kind_) {
      case Kind::log_spliced:
        if (u >= kLog2) return std::log(u);
        return u + std::log(kLog2 / 2.0);
      case Kind::exp_sqrt_log:
        if (u >= 1.0) return std::sqrt(u);
        return u;
      case Kind::power:
        return p_ * u;
    }
    return 0.0;
  }

  // log psi'(e^u)
  double deriv_log(double u) const {
    switch (kind_) {
      case Kind::log_spliced:
        if (u >= kLog2) return -u;
        return std::log(kLog2 / 2.0);
      case Kind::exp_sqrt_log:
        if (u >= 1.0) return std::sqrt(u) - u - std::log(2.0 * std::sqrt(u));
        return 0.0;
      case Kind::power:
        return std::log(p_) + (p_ - 1.0) * u;
    }
    return 0.0;
  }

  // log psi^{-1}(e^w)
  double inverse_log(double w) const {
    switch (kind_) {
      case Kind::log_spliced:
        if (w >= std::log(kLog2)) return std::exp(w);
        return w + std::log(2.0 / kLog2);
      case Kind::exp_sqrt_log:
        if (w >= 1.0) return w * w;
        return w;
      case Kind::power:
        return w / p_;
    }
    return 0.0;
  }

 private:
  WeightFunction(Kind k, double p) : kind_(k), p_(p) {}
  static constexpr double kLog2 = 0.6931471805599453;

  Kind kind_;
  double p_;
};

// ---------------------------------------------------------------------------
// Growth-condition classifiers.  Limits are estimated on a geometric tail
// grid in u with Richardson extrapolation in 1/u; slow convergence is
// reported as inconclusive rather than forced into a boolean.

struct ClassifierOptions {
  double u_tail_lo = 1.0e3;
  double u_tail_hi = 1.0e6;
  int grid_points = 200;
  double margin = 1.0e-3;
};

struct ClassifierResult {
  double estimate = 0.0;
  bool holds = false;
  bool inconclusive = false;
  bool diverged = false;
};

namespace detail {

inline std::vector<double> geometric_grid(double lo, double hi, int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  double r = std::log(hi / lo) / (n - 1);
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = lo * std::exp(r * i);
  g.back() = hi;
  return g;
}

}  // namespace detail

// limsup psi(2t)/psi(t) < 2  (doubling bound)
inline ClassifierResult classify_good_upper_bound(
    const WeightFunction& psi, const ClassifierOptions& opt = {}) {
  auto grid = detail::geometric_grid(opt.u_tail_lo, opt.u_tail_hi, opt.grid_points);
  auto ratio = [&](double u) {
    return std::exp(psi.eval_log(u + std::log(2.0)) - psi.eval_log(u));
  };
  double peak = 0.0;
  for (double u : grid) peak = std::max(peak, ratio(u));
  double r_end = ratio(opt.u_tail_hi);
  double r_half = ratio(opt.u_tail_hi / 2.0);
  double extrapolated = 2.0 * r_end - r_half;
  double drift = std::abs(r_end - r_half);
  ClassifierResult res;
  res.estimate = peak;
  double worst = std::max(peak, extrapolated);
  res.holds = worst < 2.0 - opt.margin;
  res.inconclusive = std::abs(worst - (2.0 - opt.margin)) < drift;
  return res;
}

// lim psi(2t)/psi(t) = 1
inline ClassifierResult classify_limit_condition(
    const WeightFunction& psi, const ClassifierOptions& opt = {}) {
  auto ratio = [&](double u) {
    return std::exp(psi.eval_log(u + std::log(2.0)) - psi.eval_log(u));
  };
  double r_end = ratio(opt.u_tail_hi);
  double r_half = ratio(opt.u_tail_hi / 2.0);
  double limit = 2.0 * r_end - r_half;
  double drift = std::abs(r_end - r_half);
  ClassifierResult res;
  res.estimate = limit;
  res.holds = std::abs(limit - 1.0) < opt.margin;
  res.inconclusive = std::abs(std::abs(limit - 1.0) - opt.margin) < drift;
  return res;
}

// lim psi(t psi(t))/psi(t) = 1
inline ClassifierResult classify_sedaev(const WeightFunction& psi,
                                        const ClassifierOptions& opt = {}) {
  auto ratio = [&](double u) {
    return std::exp(psi.eval_log(u + psi.eval_log(u)) - psi.eval_log(u));
  };
  double r_end = ratio(opt.u_tail_hi);
  double r_half = ratio(opt.u_tail_hi / 2.0);
  ClassifierResult res;
  if (!std::isfinite(r_end) || (r_end > 10.0 && r_end > 2.0 * r_half)) {
    res.estimate = r_end;
    res.diverged = true;
    res.holds = false;
    return res;
  }
  double limit = 2.0 * r_end - r_half;
  double drift = std::abs(r_end - r_half);
  res.estimate = limit;
  res.holds = std::abs(limit - 1.0) < opt.margin;
  res.inconclusive = std::abs(std::abs(limit - 1.0) - opt.margin) < drift;
  return res;
}

// ---------------------------------------------------------------------------
// Marcinkiewicz norms.

struct NormResult {
  double value = 0.0;
  double attained_at_u = 0.0;  // log-coordinate of the maximizing t
  bool diverged = false;
};

// sup_{t>0} (1/psi(t)) int_0^t x*(s) ds, evaluated at every rearrangement
// breakpoint plus interior samples of each block (the ratio is smooth inside
// a block, so a modest per-block grid pins the sup).
inline NormResult marcinkiewicz_norm_function(const StepFunction& x,
                                              const WeightFunction& psi,
                                              int samples_per_block = 16) {
  // nonincreasing inputs (including constant tails) are used as-is; the
  // nonzero-tail case is handled by the divergence probe below
  StepFunction xs = x.nonincreasing() ? x : x.rearrangement();
  const auto& breaks = xs.breakpoints();
  const auto& vals = xs.values();
  std::size_t m = breaks.size();

  // prefix[i] = integral over [0, e^{breaks[i]}]
  std::vector<LogValue> prefix(m);
  prefix[0] = LogValue::zero();
  for (std::size_t i = 0; i + 1 < m; ++i) {
    LogValue len = log_sub(LogValue::from_log(breaks[i + 1]),
                           LogValue::from_log(breaks[i]));
    LogValue term = vals[i].is_zero()
                        ? LogValue::zero()
                        : LogValue::from_log(vals[i].log() + len.log());
    prefix[i + 1] = log_add(prefix[i], term);
  }

  NormResult res;
  auto consider = [&](double u, LogValue integral_value) {
    if (integral_value.is_zero()) return;
    double r = std::exp(integral_value.log() - psi.eval_log(u));
    if (r > res.value) {
      res.value = r;
      res.attained_at_u = u;
    }
  };
  auto integral_at = [&](std::size_t block, double u) {
    if (vals[block].is_zero()) return prefix[block];
    LogValue len = log_sub(LogValue::from_log(u), LogValue::from_log(breaks[block]));
    return log_add(prefix[block],
                   LogValue::from_log(vals[block].log() + len.log()));
  };

  for (std::size_t i = 0; i + 1 < m; ++i) {
    double lo = breaks[i], hi = breaks[i + 1];
    if (lo == kOrigin) {
      // ratio tends to a constant as t -> 0; walk down from the block end
      for (int j = 0; j <= 24; ++j) consider(hi - 2.0 * j, integral_at(i, hi - 2.0 * j));
    } else {
      for (int j = 0; j <= samples_per_block; ++j) {
        // recomputing the endpoint as lo + (hi - lo) can land one ULP past
        // hi; at u ~ e^k that ULP dwarfs the log-ratio, so pin and clamp
        double u = j == samples_per_block
                       ? hi
                       : std::min(hi, lo + (hi - lo) * j / samples_per_block);
        consider(u, integral_at(i, u));
      }
    }
  }
  consider(breaks.back(), prefix[m - 1]);

  if (!xs.tail_value().is_zero()) {
    // total integral is infinite; probe whether the ratio still grows
    double u0 = std::isinf(breaks.back()) ? 0.0 : breaks.back();
    double r_mid = 0.0, r_end = 0.0;
    for (int j = 1; j <= 6; ++j) {
      double u = u0 + std::pow(4.0, j);
      LogValue iv = integral_at(m - 1, u);
      consider(u, iv);
      double r = std::exp(iv.log() - psi.eval_log(u));
      if (j == 3) r_mid = r;
      if (j == 6) r_end = r;
    }
    if (r_end > r_mid * (1.0 + 1e-9)) res.diverged = true;
  }
  return res;
}

enum class SequenceNormConvention {
  log_n_plus_one,  // 1/log(N+1), the classical normalization
  psi_of_n         // 1/psi(N), the general weight convention
};

inline double marcinkiewicz_norm_sequence(
    std::vector<double> x, const WeightFunction& psi,
    SequenceNormConvention conv = SequenceNormConvention::psi_of_n) {
  for (double& v : x) v = std::abs(v);
  std::sort(x.begin(), x.end(), std::greater<double>());
  double best = 0.0;
  double sum = 0.0;
  for (std::size_t n = 1; n <= x.size(); ++n) {
    sum += x[n - 1];
    double denom =
        conv == SequenceNormConvention::log_n_plus_one
            ? std::log(static_cast<double>(n) + 1.0)
            : std::exp(psi.eval_log(std::log(static_cast<double>(n))));
    best = std::max(best, sum / denom);
  }
  return best;
}

}  // namespace dixlab
