#pragma once

// Serialization: step functions as breakpoint/log-value text, matrices as
// "a+bi" grids, sampled series as JSON or CSV.  All text formats round-trip
// bit-exactly through max_digits10 formatting.

#include <complex>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "dixlab/spectral.hpp"
#include "dixlab/step_function.hpp"
#include "dixlab/window_series.hpp"

namespace dixlab {

namespace detail {

inline std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10) << x;
  return os.str();
}

inline double parse_double(const std::string& tok) {
  if (tok == "inf") return std::numeric_limits<double>::infinity();
  if (tok == "-inf") return -std::numeric_limits<double>::infinity();
  std::size_t pos = 0;
  double v = std::stod(tok, &pos);
  if (pos != tok.size()) throw std::invalid_argument("bad number: " + tok);
  return v;
}

}  // namespace detail

// One line per breakpoint: "u log_value", where log_value is the log of the
// value on [u_i, u_{i+1}) and the last line carries the tail value.  "-inf"
// encodes both the origin breakpoint and an exactly-zero value.
inline void write_step_function(std::ostream& os, const StepFunction& x) {
  const auto& b = x.breakpoints();
  const auto& v = x.values();
  for (std::size_t i = 0; i < b.size(); ++i)
    os << detail::format_double(b[i]) << ' '
       << detail::format_double(v[i].is_zero() ? -std::numeric_limits<double>::infinity()
                                               : v[i].log())
       << '\n';
}

inline StepFunction read_step_function(std::istream& is) {
  std::vector<double> breaks;
  std::vector<LogValue> vals;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string bt, vt;
    if (!(ls >> bt >> vt))
      throw std::invalid_argument("step function: expected 'u log_value' per line");
    std::string extra;
    if (ls >> extra)
      throw std::invalid_argument("step function: trailing tokens on line");
    breaks.push_back(detail::parse_double(bt));
    double lv = detail::parse_double(vt);
    vals.push_back(std::isinf(lv) && lv < 0 ? LogValue::zero()
                                            : LogValue::from_log(lv));
  }
  if (breaks.empty()) throw std::invalid_argument("step function: empty input");
  return StepFunction(std::move(breaks), std::move(vals));
}

// "a+bi" with optional real or imaginary part: "2", "-3i", "1.5-2e-3i".
inline Complex parse_complex(const std::string& tok) {
  if (tok.empty()) throw std::invalid_argument("empty complex token");
  if (tok.back() != 'i') return Complex(detail::parse_double(tok), 0.0);
  std::string body = tok.substr(0, tok.size() - 1);
  // split at the last sign that is not leading and not part of an exponent
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') &&
        body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) {
    if (body.empty() || body == "+") return Complex(0.0, 1.0);
    if (body == "-") return Complex(0.0, -1.0);
    return Complex(0.0, detail::parse_double(body));
  }
  std::string im = body.substr(split);
  if (im == "+") im = "1";
  if (im == "-") im = "-1";
  return Complex(detail::parse_double(body.substr(0, split)),
                 detail::parse_double(im));
}

inline std::string format_complex(const Complex& z) {
  std::string out = detail::format_double(z.real());
  out += (z.imag() < 0 || std::signbit(z.imag())) ? "-" : "+";
  out += detail::format_double(std::abs(z.imag()));
  out += 'i';
  return out;
}

// First line: n.  Then n lines of n whitespace-separated "a+bi" entries.
inline MatrixSpec read_matrix(std::istream& is) {
  long n = 0;
  if (!(is >> n) || n < 1)
    throw std::invalid_argument("matrix: first token must be n >= 1");
  MatrixXcd m(n, n);
  std::string tok;
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      if (!(is >> tok))
        throw std::invalid_argument("matrix: fewer than n*n entries");
      m(i, j) = parse_complex(tok);
    }
  return MatrixSpec(std::move(m));
}

inline void write_matrix(std::ostream& os, const MatrixXcd& m) {
  os << m.rows() << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      os << (j ? " " : "") << format_complex(m(i, j));
    os << '\n';
  }
}

inline nlohmann::json series_to_json(const WindowSeries& s) {
  nlohmann::json j;
  j["schema"] = "1";
  j["meta"] = s.meta;
  j["u"] = s.u;
  j["value"] = s.value;
  return j;
}

inline WindowSeries series_from_json(const nlohmann::json& j) {
  if (j.at("schema").get<std::string>() != "1")
    throw std::invalid_argument("series: unsupported schema");
  WindowSeries s;
  s.meta = j.at("meta").get<std::string>();
  s.u = j.at("u").get<std::vector<double>>();
  s.value = j.at("value").get<std::vector<double>>();
  if (s.u.size() != s.value.size())
    throw std::invalid_argument("series: u/value length mismatch");
  return s;
}

inline void write_series_csv(std::ostream& os, const WindowSeries& s) {
  os << "u,value\n";
  for (std::size_t i = 0; i < s.u.size(); ++i)
    os << detail::format_double(s.u[i]) << ','
       << detail::format_double(s.value[i]) << '\n';
}

}  // namespace dixlab
