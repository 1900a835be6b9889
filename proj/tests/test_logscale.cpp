#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "dixlab/log_value.hpp"

using namespace dixlab;

TEST_CASE("LogValue construction and accessors") {
  LogValue z;
  CHECK(z.is_zero());
  CHECK(LogValue::zero().is_zero());
  CHECK(LogValue::from_value(5.0).log() == doctest::Approx(std::log(5.0)));
  CHECK(LogValue::from_log(2.0).value() == doctest::Approx(std::exp(2.0)));
  CHECK_FALSE(LogValue::from_log(-1e308).is_zero());
  CHECK(LogValue::from_log(std::numeric_limits<double>::infinity()).is_infinite());
}

TEST_CASE("LogValue ordering") {
  LogValue a = LogValue::from_log(1.0), b = LogValue::from_log(2.0);
  CHECK(a < b);
  CHECK(b > a);
  CHECK(a <= a);
  CHECK(a == LogValue::from_log(1.0));
  CHECK(LogValue::zero() < a);
  CHECK_FALSE(LogValue::zero() < LogValue::zero());
}

TEST_CASE("log_add matches direct arithmetic at moderate scale") {
  LogValue s = log_add(LogValue::from_value(3.0), LogValue::from_value(4.0));
  CHECK(s.value() == doctest::Approx(7.0).epsilon(1e-14));
  CHECK(log_add(LogValue::zero(), LogValue::from_log(2.5)).log() == 2.5);
  CHECK(log_add(LogValue::from_log(2.5), LogValue::zero()).log() == 2.5);
}

TEST_CASE("log_add stable at extreme exponents") {
  LogValue big = LogValue::from_log(1e300);
  LogValue small = LogValue::from_log(-1e300);
  CHECK(log_add(big, small).log() == 1e300);
  LogValue a = LogValue::from_log(700.0), b = LogValue::from_log(699.0);
  CHECK(log_add(a, b).log() ==
        doctest::Approx(700.0 + std::log1p(std::exp(-1.0))).epsilon(1e-15));
}

TEST_CASE("log_sub exact differences") {
  LogValue d = log_sub(LogValue::from_value(5.0), LogValue::from_value(3.0));
  CHECK(d.value() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(log_sub(LogValue::from_log(1.5), LogValue::from_log(1.5)).is_zero());
  CHECK(log_sub(LogValue::from_log(2.0), LogValue::zero()).log() == 2.0);
  CHECK_THROWS_AS(log_sub(LogValue::from_log(1.0), LogValue::from_log(2.0)),
                  std::domain_error);
}

TEST_CASE("log_sum empty, zeros, and max-pivot stability") {
  CHECK(log_sum(std::vector<LogValue>{}).is_zero());
  std::vector<LogValue> zs{LogValue::zero(), LogValue::zero()};
  CHECK(log_sum(zs).is_zero());
  std::vector<LogValue> v{LogValue::from_value(1.0), LogValue::from_value(2.0),
                          LogValue::from_value(3.0)};
  CHECK(log_sum(v).value() == doctest::Approx(6.0).epsilon(1e-14));
  std::vector<LogValue> wide{LogValue::from_log(1000.0), LogValue::from_log(0.0),
                             LogValue::from_log(-1000.0)};
  CHECK(log_sum(wide).log() == doctest::Approx(1000.0).epsilon(1e-15));
}

TEST_CASE("random additive identities") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(-50.0, 50.0);
  for (int i = 0; i < 200; ++i) {
    LogValue a = LogValue::from_log(unif(rng));
    LogValue b = LogValue::from_log(unif(rng));
    LogValue c = LogValue::from_log(unif(rng));
    CHECK(log_add(a, b).log() == doctest::Approx(log_add(b, a).log()).epsilon(1e-15));
    double l = log_add(log_add(a, b), c).log();
    double r = log_add(a, log_add(b, c)).log();
    CHECK(l == doctest::Approx(r).epsilon(1e-13));
    // (a+b)-b == a, away from the cancellation regime
    if (std::abs(a.log() - b.log()) < 20.0)
      CHECK(std::abs(log_sub(log_add(a, b), b).log() - a.log()) < 1e-5);
  }
}
