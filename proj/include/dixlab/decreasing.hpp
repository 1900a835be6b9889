#pragma once

// Closed-form nonincreasing functions with exact antiderivatives, plus
// sampling onto a geometric step grid.  These model the symbols fed to the
// trace estimators: c/t tails and weight derivatives psi'.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dixlab/step_function.hpp"
#include "dixlab/weight.hpp"

namespace dixlab {

class DecreasingFunction {
 public:
  // f = c on [0,1], c/t on [1,inf).
  static DecreasingFunction reciprocal(double c) {
    if (!(c > 0.0)) throw std::invalid_argument("reciprocal: c must be positive");
    DecreasingFunction f;
    f.kind_ = Kind::reciprocal;
    f.log_c_ = std::log(c);
    return f;
  }

  // f = psi'.
  static DecreasingFunction psi_prime(const WeightFunction& psi) {
    DecreasingFunction f;
    f.kind_ = Kind::psi_prime;
    f.psi_ = psi;
    return f;
  }

  // log f(e^u)
  double eval_log(double u) const {
    if (kind_ == Kind::reciprocal) return u <= 0.0 ? log_c_ : log_c_ - u;
    return psi_->deriv_log(u);
  }

  // log of int_0^t f(s) ds (exact closed form)
  double antiderivative_log(double u) const {
    if (kind_ == Kind::reciprocal)
      return u <= 0.0 ? log_c_ + u : log_c_ + std::log1p(u);
    return psi_->eval_log(u);
  }

  // Step approximation on a geometric u-grid; each block carries the value
  // at its u-midpoint, the head block [0, e^{u_lo}) the value just below
  // u_lo, and the tail beyond u_hi is zero.
  StepFunction sample(double u_lo, double u_hi, int points_per_decade = 64) const {
    if (!(u_lo > 0.0) || !(u_hi > u_lo) || points_per_decade < 4)
      throw std::invalid_argument("DecreasingFunction::sample: bad grid");
    int n = std::max(2, static_cast<int>(std::ceil(
                            points_per_decade * std::log10(u_hi / u_lo))) + 1);
    std::vector<double> breaks{kOrigin};
    std::vector<LogValue> vals{LogValue::from_log(eval_log(u_lo - std::log(2.0)))};
    double step = std::log(u_hi / u_lo) / (n - 1);
    for (int i = 0; i < n - 1; ++i) {
      double a = u_lo * std::exp(step * i);
      double b = (i == n - 2) ? u_hi : u_lo * std::exp(step * (i + 1));
      breaks.push_back(a);
      vals.push_back(LogValue::from_log(eval_log(0.5 * (a + b))));
    }
    breaks.push_back(u_hi);
    vals.push_back(LogValue::zero());
    return StepFunction(std::move(breaks), std::move(vals));
  }

  // Uniform-in-u blocks of width du; needed when f decays like e^{-u}, where
  // the geometric grid above would let block widths outgrow the decay scale.
  StepFunction sample_uniform(double u_lo, double u_hi, double du) const {
    if (!(u_lo > 0.0) || !(u_hi > u_lo) || !(du > 0.0))
      throw std::invalid_argument("DecreasingFunction::sample_uniform: bad grid");
    int n = std::max(1, static_cast<int>(std::ceil((u_hi - u_lo) / du)));
    std::vector<double> breaks{kOrigin};
    std::vector<LogValue> vals{LogValue::from_log(eval_log(u_lo - std::log(2.0)))};
    for (int i = 0; i < n; ++i) {
      double a = u_lo + (u_hi - u_lo) * i / n;
      double b = u_lo + (u_hi - u_lo) * (i + 1) / n;
      breaks.push_back(a);
      vals.push_back(LogValue::from_log(eval_log(0.5 * (a + b))));
    }
    breaks.push_back(u_hi);
    vals.push_back(LogValue::zero());
    return StepFunction(std::move(breaks), std::move(vals));
  }

 private:
  enum class Kind { reciprocal, psi_prime };
  DecreasingFunction() : psi_(WeightFunction::log_weight()) {}

  Kind kind_ = Kind::reciprocal;
  double log_c_ = 0.0;
  std::optional<WeightFunction> psi_;
};

}  // namespace dixlab
