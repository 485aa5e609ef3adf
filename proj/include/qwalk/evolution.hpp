#pragma once

// Position-space and momentum-space time evolution of the walk, and the
// position distribution by three independent routes: the amplitude
// recursion, the Fourier sampling of U(xi)^n, and the lattice path sums Xi.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/mat2.hpp"
#include "qwalk/path_sum.hpp"

namespace qwalk {

/// Psi_n(x) for x in [-n, n], stored densely; sites with x - n odd are zero.
class AmplitudeField {
 public:
  explicit AmplitudeField(int n) : n_(n), psi_(static_cast<std::size_t>(2 * n + 1)) {
    if (n < 0) throw std::invalid_argument("time must be >= 0");
  }

  int time() const { return n_; }
  Vec2& at(int x) { return psi_[slot(x)]; }
  const Vec2& at(int x) const { return psi_[slot(x)]; }

  double total_probability() const {
    double s = 0.0;
    for (const auto& v : psi_) s += norm_sq(v);
    return s;
  }

 private:
  std::size_t slot(int x) const {
    if (x < -n_ || x > n_) throw std::out_of_range("x = " + std::to_string(x) + " outside [-n, n]");
    return static_cast<std::size_t>(x + n_);
  }

  int n_;
  std::vector<Vec2> psi_;
};

/// P(X_n = x) for x in [-n, n].
struct Distribution {
  int n = 0;
  std::vector<double> prob;

  double at(int x) const { return prob.at(static_cast<std::size_t>(x + n)); }
  double total() const {
    double s = 0.0;
    for (double p : prob) s += p;
    return s;
  }
};

/// Psi_{t+1}(x) = P_{-1} Psi_t(x + 1) + P_1 Psi_t(x - 1), from phi at the origin.
inline AmplitudeField evolve_recursion(const Coin& coin, const QubitState& phi, int n) {
  AmplitudeField cur(0);
  cur.at(0) = phi.vec();
  for (int t = 0; t < n; ++t) {
    AmplitudeField next(t + 1);
    for (int x = -t; x <= t; ++x) {
      const Vec2& v = cur.at(x);
      if (v == Vec2{}) continue;
      next.at(x - 1) += coin.p_minus() * v;
      next.at(x + 1) += coin.p_plus() * v;
    }
    cur = std::move(next);
  }
  return cur;
}

/// U(xi) = e^{-i xi} P_{-1} + e^{i xi} P_1 = diag(e^{-i xi}, e^{i xi}) U.
inline Mat2 u_xi(const Coin& coin, double xi) {
  return std::polar(1.0, -xi) * coin.p_minus() + std::polar(1.0, xi) * coin.p_plus();
}

inline int default_fourier_samples(int n) {
  int m = 1;
  while (m < 2 * n + 2) m <<= 1;
  return m;
}

/// Samples Psi^_n(xi_j) = U(xi_j)^n phi at xi_j = -pi + 2 pi j / M and
/// inverts with the exact M-point sum (1/M) sum_j e^{-i xi_j x} Psi^_n(xi_j).
/// Exact up to rounding for M >= 2n + 1 since Psi^_n has degree <= n.
inline AmplitudeField evolve_fourier(const Coin& coin, const QubitState& phi, int n,
                                     std::optional<int> samples = std::nullopt) {
  if (n < 0) throw std::invalid_argument("time must be >= 0");
  const int m = samples.value_or(default_fourier_samples(n));
  if (m < 2 * n + 1)
    throw std::invalid_argument("M = " + std::to_string(m) + " aliases: need M >= 2n + 1 = " +
                                std::to_string(2 * n + 1));
  const auto count = static_cast<std::size_t>(m);
  std::vector<Vec2> hat(count);
  std::vector<Complex> twiddle(count);  // e^{-2 pi i r / M}
  for (std::size_t j = 0; j < count; ++j) {
    const double xi = -std::numbers::pi + 2.0 * std::numbers::pi * double(j) / m;
    hat[j] = power(u_xi(coin, xi), static_cast<unsigned long long>(n)) * phi.vec();
    twiddle[j] = std::polar(1.0, -2.0 * std::numbers::pi * double(j) / m);
  }
  AmplitudeField field(n);
  for (int x = -n; x <= n; x += 2) {
    // e^{-i xi_j x} = (-1)^x e^{-2 pi i j x / M}
    const std::int64_t xm = ((std::int64_t{x} % m) + m) % m;
    Vec2 acc{};
    for (std::size_t j = 0; j < count; ++j)
      acc += twiddle[static_cast<std::size_t>((std::int64_t(j) * xm) % m)] * hat[j];
    const double sign = (x % 2 == 0) ? 1.0 : -1.0;
    field.at(x) = Complex(sign / m) * acc;
  }
  return field;
}

inline Distribution distribution(const AmplitudeField& field) {
  Distribution d{field.time(), std::vector<double>(static_cast<std::size_t>(2 * field.time() + 1))};
  for (int x = -field.time(); x <= field.time(); ++x)
    d.prob[static_cast<std::size_t>(x + field.time())] = norm_sq(field.at(x));
  return d;
}

/// P(X_n = x) = |Xi_n(l, m) phi|^2 with l = (n - x) / 2, m = (n + x) / 2.
inline Distribution distribution_via_paths(const Coin& coin, const QubitState& phi, int n) {
  if (n < 0) throw std::invalid_argument("time must be >= 0");
  const auto row = xi_row(step_pair(coin), n);
  Distribution d{n, std::vector<double>(static_cast<std::size_t>(2 * n + 1), 0.0)};
  for (int right = 0; right <= n; ++right)
    d.prob[static_cast<std::size_t>(2 * right)] = norm_sq(row[right] * phi.vec());
  return d;
}

/// Amplitudes Xi_n(l, m) phi, the path-sum analogue of evolve_recursion.
inline AmplitudeField amplitudes_via_paths(const Coin& coin, const QubitState& phi, int n) {
  const auto row = xi_row(step_pair(coin), n);
  AmplitudeField field(n);
  for (int right = 0; right <= n; ++right) field.at(2 * right - n) = row[right] * phi.vec();
  return field;
}

enum class DistributionMethod { Paths, Recursion, Fourier };

inline AmplitudeField amplitudes(const Coin& coin, const QubitState& phi, int n,
                                 DistributionMethod method) {
  switch (method) {
    case DistributionMethod::Paths:
      return amplitudes_via_paths(coin, phi, n);
    case DistributionMethod::Recursion:
      return evolve_recursion(coin, phi, n);
    case DistributionMethod::Fourier:
      return evolve_fourier(coin, phi, n);
  }
  throw std::invalid_argument("unknown distribution method");
}

inline double max_abs_diff(const Distribution& a, const Distribution& b) {
  if (a.n != b.n) throw std::invalid_argument("distributions at different times");
  double m = 0.0;
  for (std::size_t i = 0; i < a.prob.size(); ++i) m = std::max(m, std::abs(a.prob[i] - b.prob[i]));
  return m;
}

}  // namespace qwalk
