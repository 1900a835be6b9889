#pragma once

// Nonnegative step functions on [0,inf) stored in log-coordinates u = log t.
// The origin t = 0 is the breakpoint u = -inf; all interval lengths are
// assembled with log_add/log_sub, so integrals are exact up to rounding even
// when breakpoints sit at doubly-exponential scales.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dixlab/log_value.hpp"

namespace dixlab {

inline constexpr double kOrigin = -std::numeric_limits<double>::infinity();

class StepFunction {
 public:
  // values[i] holds on [breakpoints[i], breakpoints[i+1]); the last value is
  // the tail on [breakpoints.back(), inf).  Adjacent equal values are merged.
  StepFunction(std::vector<double> breakpoints, std::vector<LogValue> values)
      : breaks_(std::move(breakpoints)), values_(std::move(values)) {
    if (breaks_.empty() || breaks_.size() != values_.size())
      throw std::invalid_argument("StepFunction: size mismatch");
    for (std::size_t i = 0; i + 1 < breaks_.size(); ++i)
      if (!(breaks_[i] < breaks_[i + 1]))
        throw std::invalid_argument("StepFunction: breakpoints not increasing");
    for (std::size_t i = 1; i < breaks_.size(); ++i)
      if (std::isinf(breaks_[i]))
        throw std::invalid_argument("StepFunction: non-finite breakpoint");
    canonicalize();
  }

  // value v on [e^{u_lo}, e^{u_hi}), zero elsewhere; u_lo = kOrigin for t=0.
  static StepFunction indicator(double u_lo, double u_hi, LogValue v) {
    std::vector<double> b;
    std::vector<LogValue> vals;
    if (u_lo != kOrigin) {
      b.push_back(kOrigin);
      vals.push_back(LogValue::zero());
    }
    b.push_back(u_lo);
    vals.push_back(v);
    b.push_back(u_hi);
    vals.push_back(LogValue::zero());
    return StepFunction(std::move(b), std::move(vals));
  }

  static StepFunction constant(LogValue v) {
    return StepFunction({kOrigin}, {v});
  }

  const std::vector<double>& breakpoints() const { return breaks_; }
  const std::vector<LogValue>& values() const { return values_; }
  double origin() const { return breaks_.front(); }
  LogValue tail_value() const { return values_.back(); }
  std::size_t block_count() const { return breaks_.size(); }

  bool nonincreasing() const {
    for (std::size_t i = 1; i < values_.size(); ++i)
      if (values_[i] > values_[i - 1]) return false;
    return true;
  }

  friend bool operator==(const StepFunction& a, const StepFunction& b) {
    return a.breaks_ == b.breaks_ && a.values_ == b.values_;
  }

  // Right-continuous evaluation at u = log t.
  LogValue eval(double u) const {
    if (u < breaks_.front())
      throw std::domain_error("StepFunction::eval: below origin");
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), u);
    return values_[static_cast<std::size_t>(it - breaks_.begin()) - 1];
  }

  // Exact integral of f(t) dt over [e^a, e^b], a <= b in log-coordinates.
  LogValue integral(double a, double b) const {
    if (a > b) throw std::invalid_argument("StepFunction::integral: a > b");
    a = std::max(a, breaks_.front());
    std::vector<LogValue> terms;
    for (std::size_t i = 0; i < breaks_.size(); ++i) {
      double lo = std::max(breaks_[i], a);
      double hi = (i + 1 < breaks_.size())
                      ? std::min(breaks_[i + 1], b)
                      : b;
      if (!(lo < hi) || values_[i].is_zero()) continue;
      if (std::isinf(hi) && hi > 0.0)
        return LogValue::from_log(std::numeric_limits<double>::infinity());
      LogValue len = log_sub(LogValue::from_log(hi), LogValue::from_log(lo));
      terms.push_back(LogValue::from_log(values_[i].log() + len.log()));
    }
    return log_sum(terms);
  }

  LogValue total_integral() const {
    return integral(breaks_.front(), std::numeric_limits<double>::infinity());
  }

  // n_f(lambda): measure of {s : f(s) > lambda}, strict inequality.
  LogValue distribution(LogValue lam) const {
    std::vector<LogValue> terms;
    for (std::size_t i = 0; i < breaks_.size(); ++i) {
      if (!(values_[i] > lam)) continue;
      if (i + 1 == breaks_.size())
        return LogValue::from_log(std::numeric_limits<double>::infinity());
      terms.push_back(log_sub(LogValue::from_log(breaks_[i + 1]),
                              LogValue::from_log(breaks_[i])));
    }
    return log_sum(terms);
  }

  // Decreasing rearrangement; requires zero tail (finite-measure level sets).
  StepFunction rearrangement() const {
    if (!tail_value().is_zero())
      throw std::domain_error("rearrangement: nonzero tail value");
    struct Block {
      LogValue value;
      LogValue length;
    };
    std::vector<Block> blocks;
    for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
      if (values_[i].is_zero()) continue;
      blocks.push_back({values_[i],
                        log_sub(LogValue::from_log(breaks_[i + 1]),
                                LogValue::from_log(breaks_[i]))});
    }
    std::stable_sort(blocks.begin(), blocks.end(),
                     [](const Block& a, const Block& b) {
                       return a.value > b.value;
                     });
    std::vector<double> b{kOrigin};
    std::vector<LogValue> vals;
    LogValue cum = LogValue::zero();
    for (const Block& blk : blocks) {
      vals.push_back(blk.value);
      cum = log_add(cum, blk.length);
      b.push_back(cum.log());
    }
    vals.push_back(LogValue::zero());
    return StepFunction(std::move(b), std::move(vals));
  }

  // Dilation x(t) -> x(t/n) (expand) or x(t) -> x(nt) (contract).
  enum class Dilation { expand, contract };
  StepFunction dilate(unsigned n, Dilation dir) const {
    if (n == 0) throw std::invalid_argument("dilate: n must be positive");
    double shift = std::log(static_cast<double>(n));
    if (dir == Dilation::contract) shift = -shift;
    std::vector<double> b = breaks_;
    for (double& u : b)
      if (u != kOrigin) u += shift;
    return StepFunction(std::move(b), values_);
  }

 private:
  void canonicalize() {
    std::vector<double> b;
    std::vector<LogValue> v;
    for (std::size_t i = 0; i < breaks_.size(); ++i) {
      if (!v.empty() && v.back() == values_[i]) continue;
      b.push_back(breaks_[i]);
      v.push_back(values_[i]);
    }
    breaks_ = std::move(b);
    values_ = std::move(v);
  }

  std::vector<double> breaks_;
  std::vector<LogValue> values_;
};

// Both sides of the cutoff identity for a nonincreasing step function f:
//   lhs = integral of f over [0, n_f(lambda)],
//   rhs = sum over jump levels v > lambda of v * (mass of the level set).
// The two are computed along independent paths and agree exactly for step
// functions.
struct Eq3Result {
  LogValue lhs;
  LogValue rhs;
};

inline Eq3Result check_eq3(const StepFunction& f, LogValue lam) {
  if (!f.nonincreasing())
    throw std::invalid_argument("check_eq3: f must be nonincreasing");
  LogValue n = f.distribution(lam);
  LogValue lhs = n.is_zero() ? LogValue::zero()
                             : f.integral(f.origin(), n.log());
  const auto& breaks = f.breakpoints();
  const auto& vals = f.values();
  std::vector<LogValue> terms;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(vals[i] > lam) || vals[i].is_zero()) continue;
    LogValue mass = log_sub(LogValue::from_log(breaks[i + 1]),
                            LogValue::from_log(breaks[i]));
    terms.push_back(LogValue::from_log(vals[i].log() + mass.log()));
  }
  return {lhs, log_sum(terms)};
}

}  // namespace dixlab
