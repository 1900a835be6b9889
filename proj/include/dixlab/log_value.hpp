#pragma once

// Overflow-safe arithmetic on nonnegative magnitudes stored as natural
// logarithms.  Exact zero is a distinguished bottom element (log = -inf),
// absorbing under multiplication and neutral under addition; it is produced
// only by explicit construction or exact cancellation, never by underflow.

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace dixlab {

class LogValue {
 public:
  // Default-constructed value is exact zero.
  constexpr LogValue() : log_(-std::numeric_limits<double>::infinity()) {}

  static constexpr LogValue zero() { return LogValue{}; }

  static LogValue from_log(double log_magnitude) {
    LogValue v;
    v.log_ = log_magnitude;
    return v;
  }

  static LogValue from_value(double value) {
    if (value < 0.0 || std::isnan(value))
      throw std::invalid_argument("LogValue::from_value: negative or NaN");
    return from_log(std::log(value));
  }

  bool is_zero() const { return std::isinf(log_) && log_ < 0.0; }
  bool is_infinite() const { return std::isinf(log_) && log_ > 0.0; }

  // Natural log of the magnitude; -inf for the zero element.
  double log() const { return log_; }
  double value() const { return std::exp(log_); }

  friend bool operator==(LogValue a, LogValue b) { return a.log_ == b.log_; }
  friend bool operator!=(LogValue a, LogValue b) { return a.log_ != b.log_; }
  friend bool operator<(LogValue a, LogValue b) { return a.log_ < b.log_; }
  friend bool operator<=(LogValue a, LogValue b) { return a.log_ <= b.log_; }
  friend bool operator>(LogValue a, LogValue b) { return a.log_ > b.log_; }
  friend bool operator>=(LogValue a, LogValue b) { return a.log_ >= b.log_; }

 private:
  double log_;
};

// log(e^a + e^b), stable for any finite inputs.
inline LogValue log_add(LogValue a, LogValue b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  double hi = a.log(), lo = b.log();
  if (lo > hi) std::swap(hi, lo);
  if (std::isinf(hi)) return LogValue::from_log(hi);
  return LogValue::from_log(hi + std::log1p(std::exp(lo - hi)));
}

// log(e^a - e^b); requires a >= b, exact cancellation yields zero.
inline LogValue log_sub(LogValue a, LogValue b) {
  if (b.is_zero()) return a;
  if (a.log() == b.log()) return LogValue::zero();
  if (a < b) throw std::domain_error("log_sub: negative result");
  if (a.is_infinite()) return a;
  return LogValue::from_log(a.log() + std::log1p(-std::exp(b.log() - a.log())));
}

// Sum of many terms with max-pivot stabilization; result is independent of
// the input order up to rounding.
inline LogValue log_sum(std::span<const LogValue> values) {
  double pivot = -std::numeric_limits<double>::infinity();
  for (const LogValue& v : values) pivot = std::max(pivot, v.log());
  if (std::isinf(pivot))
    return pivot < 0.0 ? LogValue::zero() : LogValue::from_log(pivot);
  double acc = 0.0;
  for (const LogValue& v : values) acc += std::exp(v.log() - pivot);
  return LogValue::from_log(pivot + std::log(acc));
}

inline LogValue log_sum(const std::vector<LogValue>& values) {
  return log_sum(std::span<const LogValue>(values));
}

}  // namespace dixlab
