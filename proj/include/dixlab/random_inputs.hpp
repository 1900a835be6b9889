#pragma once

// Seeded generators for property tests and CLI demos.  Everything is
// mt19937_64-driven so a seed pins the whole input.

#include <random>
#include <vector>

#include "dixlab/spectral.hpp"
#include "dixlab/step_function.hpp"

namespace dixlab {

// Entries (a+bi)/sqrt(2) with a, b standard normal (Ginibre ensemble).
inline MatrixSpec random_matrix(long n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  MatrixXcd m(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j)
      m(i, j) = Complex(gauss(rng), gauss(rng)) / std::sqrt(2.0);
  return MatrixSpec(std::move(m));
}

// Nonincreasing step function with `blocks` blocks: increasing breakpoints
// drawn on [0, u_span], geometrically decaying values with jittered ratios,
// zero tail.
inline StepFunction random_decreasing_step(int blocks, double u_span,
                                           std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> breaks{kOrigin};
  std::vector<double> interior(static_cast<std::size_t>(blocks));
  for (double& b : interior) b = u_span * unif(rng);
  std::sort(interior.begin(), interior.end());
  for (double b : interior) breaks.push_back(b);
  std::vector<LogValue> vals;
  double log_v = 2.0 * unif(rng);
  for (int i = 0; i < blocks; ++i) {
    vals.push_back(LogValue::from_log(log_v));
    log_v -= 0.1 + 3.0 * unif(rng);
  }
  vals.push_back(LogValue::zero());
  return StepFunction(std::move(breaks), std::move(vals));
}

// General (not monotone) step function for rearrangement/distribution tests;
// occasional exactly-zero blocks are included on purpose.
inline StepFunction random_step(int blocks, double u_span, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> breaks{kOrigin};
  std::vector<double> interior(static_cast<std::size_t>(blocks));
  for (double& b : interior) b = u_span * unif(rng);
  std::sort(interior.begin(), interior.end());
  for (double b : interior) breaks.push_back(b);
  std::vector<LogValue> vals;
  for (int i = 0; i < blocks; ++i)
    vals.push_back(unif(rng) < 0.15 ? LogValue::zero()
                                    : LogValue::from_log(4.0 * unif(rng) - 2.0));
  vals.push_back(LogValue::zero());
  return StepFunction(std::move(breaks), std::move(vals));
}

}  // namespace dixlab
