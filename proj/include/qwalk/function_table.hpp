#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/mat2.hpp"

namespace qwalk {

/// Reads "x,re,im" rows. Blank lines and lines starting with '#' or a
/// non-numeric header are skipped.
inline std::map<int, Complex> read_xy_table(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw std::invalid_argument("cannot open table file '" + file + "'");
  std::map<int, Complex> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> v;
    try {
      v = detail::parse_doubles(line);
    } catch (const std::invalid_argument&) {
      if (lineno == 1) continue;  // header row
      throw std::invalid_argument(file + ":" + std::to_string(lineno) + ": malformed row");
    }
    if (v.size() != 3 || v[0] != std::floor(v[0]))
      throw std::invalid_argument(file + ":" + std::to_string(lineno) +
                                  ": expected integer x followed by re,im");
    out[static_cast<int>(v[0])] = {v[1], v[2]};
  }
  return out;
}

/// A complex function on the integer window [-(n+1), n+1]: every site
/// f(w(m) +- 1) touched by an n-step path.
class FunctionTable {
 public:
  template <class Fn>
  static FunctionTable tabulate(int horizon, std::string name, Fn&& fn) {
    if (horizon < 0) throw std::invalid_argument("function table horizon must be >= 0");
    FunctionTable t(horizon, std::move(name));
    for (int x = -(horizon + 1); x <= horizon + 1; ++x) t.values_[t.slot(x)] = Complex(fn(x));
    return t;
  }

  static FunctionTable identity(int horizon) {
    return tabulate(horizon, "x", [](int x) { return double(x); });
  }
  static FunctionTable absolute(int horizon) {
    return tabulate(horizon, "|x|", [](int x) { return double(std::abs(x)); });
  }
  /// max(x - 1, -x), the alternative Tanaka function.
  static FunctionTable ceil_variant(int horizon) {
    return tabulate(horizon, "max(x-1,-x)", [](int x) { return double(std::max(x - 1, -x)); });
  }
  static FunctionTable square(int horizon) {
    return tabulate(horizon, "x^2", [](int x) { return double(x) * x; });
  }
  static FunctionTable constant(int horizon, Complex c) {
    std::ostringstream os;
    os << "const(" << c.real() << "," << c.imag() << ")";
    return tabulate(horizon, os.str(), [c](int) { return c; });
  }
  /// e^{i xi x}.
  static FunctionTable exp_i(int horizon, double xi) {
    std::ostringstream os;
    os << "exp(i*" << xi << "*x)";
    return tabulate(horizon, os.str(), [xi](int x) { return std::polar(1.0, xi * x); });
  }
  /// Real and imaginary parts uniform in [-1, 1].
  static FunctionTable random(int horizon, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    return tabulate(horizon, "random(seed=" + std::to_string(seed) + ")", [&](int) {
      const double re = u(rng);
      return Complex(re, u(rng));
    });
  }
  /// CSV x,re,im; must cover the whole window.
  static FunctionTable from_csv(int horizon, const std::string& file) {
    const auto rows = read_xy_table(file);
    return tabulate(horizon, "table(" + file + ")", [&](int x) {
      const auto it = rows.find(x);
      if (it == rows.end())
        throw std::invalid_argument("table '" + file + "' has no value at x = " +
                                    std::to_string(x));
      return it->second;
    });
  }

  int horizon() const { return horizon_; }
  const std::string& name() const { return name_; }

  /// Unchecked inside the window.
  Complex operator()(int x) const { return values_[slot(x)]; }

  Complex at(int x) const {
    if (x < -(horizon_ + 1) || x > horizon_ + 1)
      throw std::out_of_range("f(" + std::to_string(x) + ") outside table window");
    return (*this)(x);
  }

  /// (f(x+1) - f(x-1)) / 2.
  Complex first_difference(int x) const { return 0.5 * ((*this)(x + 1) - (*this)(x - 1)); }
  /// (f(x+1) - 2 f(x) + f(x-1)) / 2.
  Complex second_difference(int x) const {
    return 0.5 * ((*this)(x + 1) - 2.0 * (*this)(x) + (*this)(x - 1));
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, std::abs(v));
    return m;
  }

 private:
  FunctionTable(int horizon, std::string name)
      : horizon_(horizon), name_(std::move(name)),
        values_(static_cast<std::size_t>(2 * horizon + 3)) {}

  std::size_t slot(int x) const { return static_cast<std::size_t>(x + horizon_ + 1); }

  int horizon_;
  std::string name_;
  std::vector<Complex> values_;
};

/// "random" | "x" | "abs" | "ceil" | "square" | "const:<re>[,<im>]" |
/// "exp:<xi>" | "table:<file>".
inline FunctionTable parse_function_table(std::string_view spec, int horizon,
                                          std::uint64_t seed) {
  const auto colon = spec.find(':');
  const std::string_view head = spec.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? "" : spec.substr(colon + 1);
  if (head == "random" && arg.empty()) return FunctionTable::random(horizon, seed);
  if (head == "x" && arg.empty()) return FunctionTable::identity(horizon);
  if (head == "abs" && arg.empty()) return FunctionTable::absolute(horizon);
  if (head == "ceil" && arg.empty()) return FunctionTable::ceil_variant(horizon);
  if (head == "square" && arg.empty()) return FunctionTable::square(horizon);
  if (head == "const" && !arg.empty()) {
    const auto v = detail::parse_doubles(arg);
    if (v.size() == 1) return FunctionTable::constant(horizon, v[0]);
    if (v.size() == 2) return FunctionTable::constant(horizon, {v[0], v[1]});
  }
  if (head == "exp" && !arg.empty()) {
    const auto v = detail::parse_doubles(arg);
    if (v.size() == 1) return FunctionTable::exp_i(horizon, v[0]);
  }
  if (head == "table" && !arg.empty()) return FunctionTable::from_csv(horizon, std::string(arg));
  throw std::invalid_argument("unknown function spec '" + std::string(spec) +
                              "' (random|x|abs|ceil|square|const:c|exp:xi|table:file)");
}

}  // namespace qwalk
