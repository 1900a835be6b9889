#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "dixlab/counterexample.hpp"
#include "dixlab/io.hpp"
#include "dixlab/random_inputs.hpp"

using namespace dixlab;

TEST_CASE("step function text round trip is bit exact") {
  StepFunction x = build_counterexample(10);
  std::ostringstream os;
  write_step_function(os, x);
  std::istringstream is(os.str());
  StepFunction y = read_step_function(is);
  REQUIRE(y.breakpoints().size() == x.breakpoints().size());
  for (std::size_t i = 0; i < x.breakpoints().size(); ++i) {
    CHECK(y.breakpoints()[i] == x.breakpoints()[i]);
    CHECK(y.values()[i].is_zero() == x.values()[i].is_zero());
    if (!x.values()[i].is_zero()) CHECK(y.values()[i].log() == x.values()[i].log());
  }
  // the origin breakpoint and the zero tail both serialize as "-inf"
  CHECK(os.str().find("-inf") != std::string::npos);

  // comments and blank lines are ignored
  std::istringstream is2("# comment\n\n-inf 0\n1 -inf\n");
  StepFunction z = read_step_function(is2);
  CHECK(z.breakpoints()[0] == kOrigin);
  CHECK(z.values()[0].log() == 0.0);
  CHECK(z.tail_value().is_zero());

  std::istringstream bad("1 2 3\n");
  CHECK_THROWS_AS(read_step_function(bad), std::invalid_argument);
  std::istringstream empty("# only a comment\n");
  CHECK_THROWS_AS(read_step_function(empty), std::invalid_argument);
}

TEST_CASE("complex token parsing") {
  CHECK(parse_complex("2") == Complex(2.0, 0.0));
  CHECK(parse_complex("-3i") == Complex(0.0, -3.0));
  CHECK(parse_complex("1.5-2e-3i") == Complex(1.5, -2e-3));
  CHECK(parse_complex("i") == Complex(0.0, 1.0));
  CHECK(parse_complex("+i") == Complex(0.0, 1.0));
  CHECK(parse_complex("-i") == Complex(0.0, -1.0));
  CHECK(parse_complex("1+i") == Complex(1.0, 1.0));
  CHECK(parse_complex("2E2-1E-1i") == Complex(200.0, -0.1));
  CHECK_THROWS_AS(parse_complex(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_complex("abc"), std::invalid_argument);

  for (Complex z : {Complex(0.1, -0.2), Complex(-3.0, 0.0), Complex(0.0, 5.0),
                    Complex(1e-300, -1e300)})
    CHECK(parse_complex(format_complex(z)) == z);
}

TEST_CASE("matrix text round trip") {
  MatrixSpec m = random_matrix(5, 99);
  std::ostringstream os;
  write_matrix(os, m.entries);
  std::istringstream is(os.str());
  MatrixSpec back = read_matrix(is);
  CHECK((back.entries - m.entries).cwiseAbs().maxCoeff() == 0.0);

  std::istringstream bad("2\n1 2\n3\n");
  CHECK_THROWS_AS(read_matrix(bad), std::invalid_argument);
  std::istringstream bad2("0\n");
  CHECK_THROWS_AS(read_matrix(bad2), std::invalid_argument);
}

TEST_CASE("series JSON and CSV") {
  WindowSeries s;
  s.meta = "demo";
  s.u = {1.0, 2.5, 100.0};
  s.value = {0.5, -0.125, 3.0};
  nlohmann::json j = series_to_json(s);
  WindowSeries back = series_from_json(j);
  CHECK(back.meta == s.meta);
  CHECK(back.u == s.u);
  CHECK(back.value == s.value);

  nlohmann::json badschema = j;
  badschema["schema"] = "2";
  CHECK_THROWS_AS(series_from_json(badschema), std::invalid_argument);
  nlohmann::json mismatch = j;
  mismatch["value"] = std::vector<double>{1.0};
  CHECK_THROWS_AS(series_from_json(mismatch), std::invalid_argument);

  std::ostringstream csv;
  write_series_csv(csv, s);
  CHECK(csv.str().rfind("u,value\n", 0) == 0);
  CHECK(csv.str().find("2.5,-0.125") != std::string::npos);
}
