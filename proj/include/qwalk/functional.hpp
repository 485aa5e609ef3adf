#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "qwalk/function_table.hpp"
#include "qwalk/path.hpp"

namespace qwalk {

/// A named deterministic map from paths to complex scalars. `is_real` marks
/// functionals whose values are real by construction, which the quantum
/// integral requires.
class PathFunctional {
 public:
  using Fn = std::function<Complex(const PathView&)>;

  PathFunctional(std::string name, Fn fn, bool is_real)
      : name_(std::move(name)), fn_(std::move(fn)), is_real_(is_real) {}

  Complex operator()(const PathView& p) const { return fn_(p); }
  const std::string& name() const { return name_; }
  bool is_real() const { return is_real_; }

 private:
  std::string name_;
  Fn fn_;
  bool is_real_;
};

inline PathFunctional constant_functional(double c) {
  std::ostringstream os;
  os << "const:" << c;
  return {os.str(), [c](const PathView&) { return Complex(c); }, true};
}

/// I_{x}(w(n)).
inline PathFunctional endpoint_indicator(int x) {
  return {"endpoint_indicator:" + std::to_string(x),
          [x](const PathView& p) { return Complex(p.endpoint() == x ? 1.0 : 0.0); }, true};
}

/// The cylinder B_0 x ... x B_{n-1} x {x}; the same map as the endpoint
/// indicator, kept under its own name for reports.
inline PathFunctional cylinder_indicator(int x) {
  return {"cylinder:" + std::to_string(x),
          [x](const PathView& p) { return Complex(p.endpoint() == x ? 1.0 : 0.0); }, true};
}

/// e^{i xi w(n)}.
inline PathFunctional endpoint_exp(double xi) {
  std::ostringstream os;
  os << "endpoint_exp:" << xi;
  return {os.str(), [xi](const PathView& p) { return std::polar(1.0, xi * p.endpoint()); },
          false};
}

/// f(w(n)) from a CSV x,re,im; endpoints missing from the file map to 0.
inline PathFunctional endpoint_table(const std::string& file) {
  auto rows = std::make_shared<const std::map<int, Complex>>(read_xy_table(file));
  bool real = true;
  for (const auto& [x, v] : *rows) real = real && v.imag() == 0.0;
  return {"endpoint_table:" + file,
          [rows](const PathView& p) {
            const auto it = rows->find(p.endpoint());
            return it == rows->end() ? Complex{} : it->second;
          },
          real};
}

/// "const:c" | "endpoint_indicator:x" | "endpoint_exp:xi" |
/// "endpoint_table:<file>" | "cylinder:x".
inline PathFunctional parse_path_functional(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw std::invalid_argument("path functional spec needs 'kind:arg', got '" +
                                std::string(spec) + "'");
  const std::string_view head = spec.substr(0, colon);
  const std::string arg(spec.substr(colon + 1));
  auto number = [&] {
    const auto v = detail::parse_doubles(arg);
    if (v.size() != 1) throw std::invalid_argument("expected one number in '" + arg + "'");
    return v[0];
  };
  auto integer = [&] {
    const double v = number();
    if (v != std::floor(v)) throw std::invalid_argument("expected an integer in '" + arg + "'");
    return static_cast<int>(v);
  };
  if (head == "const") return constant_functional(number());
  if (head == "endpoint_indicator") return endpoint_indicator(integer());
  if (head == "endpoint_exp") return endpoint_exp(number());
  if (head == "endpoint_table") return endpoint_table(arg);
  if (head == "cylinder") return cylinder_indicator(integer());
  throw std::invalid_argument("unknown path functional '" + std::string(head) +
                              "' (const|endpoint_indicator|endpoint_exp|endpoint_table|cylinder)");
}

}  // namespace qwalk
