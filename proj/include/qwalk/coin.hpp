#pragma once

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qwalk/mat2.hpp"

namespace qwalk {

/// Immutable unitary coin with its row split. p_minus keeps the top row
/// (left mover), p_plus the bottom row (right mover).
class Coin {
 public:
  const Mat2& u() const { return u_; }
  const Mat2& p_minus() const { return p_minus_; }
  const Mat2& p_plus() const { return p_plus_; }

  /// Step matrix for an increment of -1 or +1.
  const Mat2& step(int increment) const { return increment > 0 ? p_plus_ : p_minus_; }

 private:
  explicit Coin(const Mat2& u)
      : u_(u), p_minus_{u.a, u.b, 0.0, 0.0}, p_plus_{0.0, 0.0, u.c, u.d} {}

  friend Coin make_coin(Complex, Complex, Complex, Complex, double);

  Mat2 u_;
  Mat2 p_minus_;
  Mat2 p_plus_;
};

/// Throws std::invalid_argument when [[a, b], [c, d]] is not unitary within
/// tol (entrywise on U^dagger U - I).
inline Coin make_coin(Complex a, Complex b, Complex c, Complex d, double tol = kDefaultTol) {
  const Mat2 u{a, b, c, d};
  if (!is_finite(u)) throw std::invalid_argument("coin entries must be finite");
  const Mat2 dev = adjoint(u) * u - Mat2::identity();
  const auto e = dev.entries();
  std::size_t worst = 0;
  for (std::size_t i = 1; i < e.size(); ++i)
    if (std::abs(e[i]) > std::abs(e[worst])) worst = i;
  if (std::abs(e[worst]) > tol) {
    static constexpr const char* names[] = {"(1,1)", "(1,2)", "(2,1)", "(2,2)"};
    std::ostringstream os;
    os << "coin is not unitary: |U^dagger U - I| at entry " << names[worst] << " is "
       << std::abs(e[worst]) << " > tol " << tol;
    throw std::invalid_argument(os.str());
  }
  return Coin(u);
}

inline Coin hadamard() {
  const double s = 1.0 / std::numbers::sqrt2;
  return make_coin(s, s, s, -s);
}

/// Seeded coin from one mixing angle and three phases:
/// e^{i gamma} [[e^{i alpha} cos t, e^{i beta} sin t], [-e^{-i beta} sin t, e^{-i alpha} cos t]].
template <class Rng>
Coin random_coin(Rng& rng) {
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi / 2);
  std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);
  const double t = angle(rng);
  const double alpha = phase(rng), beta = phase(rng), gamma = phase(rng);
  const Complex g = std::polar(1.0, gamma);
  return make_coin(g * std::polar(std::cos(t), alpha), g * std::polar(std::sin(t), beta),
                   -g * std::polar(std::sin(t), -beta), g * std::polar(std::cos(t), -alpha));
}

/// Initial chirality state phi = alpha |L> + beta |R>.
class QubitState {
 public:
  QubitState(Complex alpha, Complex beta, double tol = kDefaultTol) : v_{alpha, beta} {
    const double n2 = norm_sq(v_);
    if (!std::isfinite(n2) || std::abs(n2 - 1.0) > tol) {
      std::ostringstream os;
      os << "initial state must satisfy |alpha|^2 + |beta|^2 = 1, got " << n2;
      throw std::invalid_argument(os.str());
    }
  }

  Complex alpha() const { return v_.l; }
  Complex beta() const { return v_.r; }
  const Vec2& vec() const { return v_; }

 private:
  Vec2 v_;
};

template <class Rng>
QubitState random_state(Rng& rng) {
  std::normal_distribution<double> g;
  Vec2 v{{g(rng), g(rng)}, {g(rng), g(rng)}};
  const double n = std::sqrt(norm_sq(v));
  return {v.l / n, v.r / n};
}

namespace detail {

inline std::vector<double> parse_doubles(std::string_view text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string token(text.substr(pos, comma - pos));
    char* end = nullptr;
    const double value = std::strtod(token.c_str(), &end);
    if (token.empty() || end != token.c_str() + token.size())
      throw std::invalid_argument("not a decimal number: '" + token + "'");
    out.push_back(value);
    pos = comma + 1;
  }
  return out;
}

}  // namespace detail

/// "re,im" -> complex.
inline Complex parse_complex(std::string_view text) {
  const auto v = detail::parse_doubles(text);
  if (v.size() != 2) throw std::invalid_argument("expected 're,im', got '" + std::string(text) + "'");
  return {v[0], v[1]};
}

/// "hadamard" or "a_re,a_im,b_re,b_im,c_re,c_im,d_re,d_im".
inline Coin parse_coin(std::string_view spec, double tol = kDefaultTol) {
  if (spec == "hadamard") return hadamard();
  const auto v = detail::parse_doubles(spec);
  if (v.size() != 8)
    throw std::invalid_argument("coin spec needs 'hadamard' or 8 comma-separated reals, got '" +
                                std::string(spec) + "'");
  return make_coin({v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}, {v[6], v[7]}, tol);
}

}  // namespace qwalk
