#pragma once

// Sampled functionals t -> g(t) on a grid of log-coordinates: the
// finite-scale stand-ins for the arguments of a generalized limit.
// Includes the logarithmic Cesaro transform and the sliding window
// functional pi(x) = (1/log log N) int_N^{N log N} x(s) ds/s.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dixlab/step_function.hpp"

namespace dixlab {

struct WindowSeries {
  std::string meta;
  std::vector<double> u;      // strictly increasing log-coordinates
  std::vector<double> value;  // g(e^u)
};

// Geometric grid in u, points_per_decade points per factor 10 of u.
inline std::vector<double> log_grid(double u_min, double u_max,
                                    int points_per_decade) {
  if (!(u_min > 0.0) || !(u_max > u_min) || points_per_decade < 4)
    throw std::invalid_argument("log_grid: bad parameters");
  int n = std::max(2, static_cast<int>(std::ceil(
                          points_per_decade * std::log10(u_max / u_min))) + 1);
  std::vector<double> g(static_cast<std::size_t>(n));
  double step = std::log(u_max / u_min) / (n - 1);
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = u_min * std::exp(step * i);
  g.back() = u_max;
  return g;
}

// (Mg)(e^U) = (1/U) int_0^U g(e^u) du, trapezoidal on the sample grid; the
// stretch [0, u_0] below the grid is taken at the first sample value.  The
// first grid point is dropped from the output.
inline WindowSeries cesaro(const WindowSeries& s) {
  if (s.u.size() < 2) throw std::invalid_argument("cesaro: need >= 2 samples");
  if (s.u.front() < 0.0)
    throw std::invalid_argument("cesaro: grid must start at u >= 0");
  WindowSeries out;
  out.meta = "cesaro(" + s.meta + ")";
  double acc = s.u.front() * s.value.front();
  for (std::size_t i = 1; i < s.u.size(); ++i) {
    acc += 0.5 * (s.value[i] + s.value[i - 1]) * (s.u[i] - s.u[i - 1]);
    out.u.push_back(s.u[i]);
    out.value.push_back(acc / s.u[i]);
  }
  return out;
}

namespace detail {

// Composite trapezoid with doubling until the estimate stabilizes.
inline double adaptive_trapezoid(const std::function<double(double)>& f,
                                 double a, double b, int min_nodes = 256,
                                 double rel_tol = 1e-11) {
  auto composite = [&](int n) {
    double h = (b - a) / n;
    double sum = 0.5 * (f(a) + f(b));
    for (int i = 1; i < n; ++i) sum += f(a + h * i);
    return sum * h;
  };
  int n = min_nodes;
  double prev = composite(n);
  for (int round = 0; round < 12; ++round) {
    n *= 2;
    double cur = composite(n);
    if (std::abs(cur - prev) <= rel_tol * (std::abs(cur) + 1e-300)) return cur;
    prev = cur;
  }
  return prev;
}

// Linear interpolation of a sampled series.
inline double interp(const WindowSeries& s, double u) {
  auto it = std::lower_bound(s.u.begin(), s.u.end(), u);
  if (it == s.u.begin()) return s.value.front();
  if (it == s.u.end()) return s.value.back();
  std::size_t i = static_cast<std::size_t>(it - s.u.begin());
  double t = (u - s.u[i - 1]) / (s.u[i] - s.u[i - 1]);
  return s.value[i - 1] + t * (s.value[i] - s.value[i - 1]);
}

}  // namespace detail

// pi evaluated at one scale N = e^U: (1/log U) int_U^{U + log U} x(e^u) du.
// Exact for step functions (x is piecewise constant in u).
inline double pi_window(const StepFunction& x, double U) {
  if (!(U > 1.0)) throw std::invalid_argument("pi_window: need log N > 1");
  double width = std::log(U);
  double lo = U, hi = U + width;
  const auto& breaks = x.breakpoints();
  const auto& vals = x.values();
  double acc = 0.0;
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    double a = std::max(breaks[i], lo);
    double b = (i + 1 < breaks.size()) ? std::min(breaks[i + 1], hi) : hi;
    if (a < b && !vals[i].is_zero()) acc += vals[i].value() * (b - a);
  }
  return acc / width;
}

// Same window applied to a sampled series; the grid must cover the window.
inline double pi_window(const WindowSeries& s, double U) {
  if (!(U > 1.0)) throw std::invalid_argument("pi_window: need log N > 1");
  double width = std::log(U);
  if (s.u.front() > U || s.u.back() < U + width)
    throw std::domain_error("pi_window: series grid does not cover the window");
  // trapezoid over grid points inside the window plus interpolated endpoints
  std::vector<double> us{U};
  for (double u : s.u)
    if (u > U && u < U + width) us.push_back(u);
  us.push_back(U + width);
  double acc = 0.0;
  for (std::size_t i = 1; i < us.size(); ++i)
    acc += 0.5 * (detail::interp(s, us[i]) + detail::interp(s, us[i - 1])) *
           (us[i] - us[i - 1]);
  return acc / width;
}

// Window in offset coordinates w = u - U for scales where U + w is beyond
// double resolution: (1/log_U) int_0^{log_U} g(w) dw.
inline double pi_window_offset(const std::function<double(double)>& g,
                               double log_U) {
  if (!(log_U > 0.0)) throw std::invalid_argument("pi_window_offset: log U <= 0");
  return detail::adaptive_trapezoid(g, 0.0, log_U) / log_U;
}

}  // namespace dixlab
