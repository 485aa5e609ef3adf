#pragma once

// Discrete Ito decomposition along walk paths.
//
// Per path and per step m, with x = w(m) and dw = w(m+1) - w(m):
//
//   f(w(m+1)) - f(x) = (f(x+1) - f(x-1))/2 * dw + (f(x+1) - 2 f(x) + f(x-1))/2
//
// holds exactly because dw is +-1. Weighting each path by its ordered
// product P_w and summing gives the operator identity; weighting by p^l q^m
// gives the random-walk identity. The templates below cover both.

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/evolution.hpp"
#include "qwalk/function_table.hpp"
#include "qwalk/mat2.hpp"
#include "qwalk/path.hpp"
#include "qwalk/path_sum.hpp"

namespace qwalk {

inline double max_abs(Complex z) { return std::abs(z); }

/// lhs = martingale + compensator.
template <class Op>
struct ItoTerms {
  Op lhs;
  Op martingale;
  Op compensator;

  double residual() const { return max_abs(lhs - martingale - compensator); }
};

using ItoDecomposition = ItoTerms<Mat2>;

namespace detail {

inline void require_table_covers(const FunctionTable& f, int n) {
  if (f.horizon() < n)
    throw std::invalid_argument("function table '" + f.name() + "' has horizon " +
                                std::to_string(f.horizon()) + " < n = " + std::to_string(n));
}

template <class Op>
ItoTerms<Op> from_array(const std::array<Op, 3>& a) {
  return {a[0], a[1], a[2]};
}

}  // namespace detail

/// Step m of the decomposition summed over all paths:
///   lhs  = sum_k {f(w(m+1)) - f(w(m))} P_k
///   mart = 1/2 sum_k {f(w(m)+1) - f(w(m)-1)} (w(m+1) - w(m)) P_k
///   comp = 1/2 sum_k {f(w(m)+1) - 2 f(w(m)) + f(w(m)-1)} P_k
template <class Op>
ItoTerms<Op> ito_step(const StepPair<Op>& steps, int n, int m, const FunctionTable& f,
                      const SigmaOptions& opts = {}) {
  if (m < 0 || m >= n)
    throw std::out_of_range("step m = " + std::to_string(m) + " outside [0, " +
                            std::to_string(n - 1) + "]");
  detail::require_table_covers(f, n);
  auto weights = [&f, m](const PathView& p) {
    const int x = p.at(m), y = p.at(m + 1);
    return std::array<Complex, 3>{f(y) - f(x), f.first_difference(x) * double(y - x),
                                  f.second_difference(x)};
  };
  return detail::from_array(sigma_many(steps, n, weights, opts));
}

inline ItoDecomposition ito_step(const Coin& coin, int n, int m, const FunctionTable& f,
                                 const SigmaOptions& opts = {}) {
  return ito_step(step_pair(coin), n, m, f, opts);
}

/// The telescoped form: lhs = sum_k {f(w(n)) - f(w(0))} P_k and each
/// right-hand term summed over m = 0..n-1 inside every path.
template <class Op>
ItoTerms<Op> ito_telescoped(const StepPair<Op>& steps, int n, const FunctionTable& f,
                            const SigmaOptions& opts = {}) {
  detail::require_table_covers(f, n);
  auto weights = [&f, n](const PathView& p) {
    Complex mart{}, comp{};
    for (int m = 0; m < n; ++m) {
      const int x = p.at(m);
      mart += f.first_difference(x) * double(p.at(m + 1) - x);
      comp += f.second_difference(x);
    }
    return std::array<Complex, 3>{f(p.endpoint()) - f(p.at(0)), mart, comp};
  };
  return detail::from_array(sigma_many(steps, n, weights, opts));
}

inline ItoDecomposition ito_telescoped(const Coin& coin, int n, const FunctionTable& f,
                                       const SigmaOptions& opts = {}) {
  return ito_telescoped(step_pair(coin), n, f, opts);
}

/// Sum over m of ito_step, field by field, in increasing m.
template <class Op>
ItoTerms<Op> ito_step_sum(const StepPair<Op>& steps, int n, const FunctionTable& f,
                          const SigmaOptions& opts = {}) {
  ItoTerms<Op> total{OpTraits<Op>::zero(), OpTraits<Op>::zero(), OpTraits<Op>::zero()};
  for (int m = 0; m < n; ++m) {
    const auto s = ito_step(steps, n, m, f, opts);
    total.lhs += s.lhs;
    total.martingale += s.martingale;
    total.compensator += s.compensator;
  }
  return total;
}

/// Largest |lhs - rhs| of the scalar identity on one path, over every step
/// and the telescoped sum.
inline double scalar_ito_check(const Path& path, const FunctionTable& f) {
  const int n = path.steps();
  detail::require_table_covers(f, n);
  const auto& w = path.positions();
  double worst = 0.0;
  Complex rhs_total{};
  for (int m = 0; m < n; ++m) {
    const int x = w[m];
    const Complex lhs = f(w[m + 1]) - f(x);
    const Complex rhs = f.first_difference(x) * double(w[m + 1] - x) + f.second_difference(x);
    worst = std::max(worst, std::abs(lhs - rhs));
    rhs_total += rhs;
  }
  return std::max(worst, std::abs(f(w[n]) - f(w[0]) - rhs_total));
}

/// Ito decomposition for f(x) = |x|. The martingale term carries sgn(w(m))
/// (sgn(0) = 0); the compensator counts visits to the origin.
struct TanakaDecomposition {
  ItoDecomposition terms;

  const Mat2& lhs() const { return terms.lhs; }
  const Mat2& sign_term() const { return terms.martingale; }
  const Mat2& local_time() const { return terms.compensator; }
  double residual() const { return terms.residual(); }
};

inline TanakaDecomposition tanaka(const Coin& coin, int n, const SigmaOptions& opts = {}) {
  return {ito_telescoped(coin, n, FunctionTable::absolute(n), opts)};
}

/// U(xi)^n two ways, and its expansion
///   U^n + i sin(xi) sum_k sum_m e^{i xi w(m)} dw P_k
///       + (cos(xi) - 1) sum_k sum_m e^{i xi w(m)} P_k.
/// sin_term and cos_term include their scalar prefactors; the bare double
/// sums are kept as sin_sum and cos_sum.
struct CharDecomposition {
  double xi = 0.0;
  Mat2 lhs_power;  ///< U(xi)^n by repeated squaring
  Mat2 lhs_paths;  ///< sum_k e^{i xi w(n)} P_k
  Mat2 term0;      ///< U^n
  Mat2 sin_sum;
  Mat2 cos_sum;
  Mat2 sin_term;
  Mat2 cos_term;

  Mat2 rhs() const { return term0 + sin_term + cos_term; }

  /// Largest pairwise entrywise gap among the three evaluations.
  double residual() const {
    const Mat2 r = rhs();
    return std::max({max_abs_diff(lhs_power, lhs_paths), max_abs_diff(lhs_power, r),
                     max_abs_diff(lhs_paths, r)});
  }
};

inline CharDecomposition char_decomposition(const Coin& coin, int n, double xi,
                                            const SigmaOptions& opts = {}) {
  std::vector<Complex> phase(static_cast<std::size_t>(2 * n + 1));  // e^{i xi x}, x in [-n, n]
  for (int x = -n; x <= n; ++x) phase[static_cast<std::size_t>(x + n)] = std::polar(1.0, xi * x);
  auto weights = [&phase, n](const PathView& p) {
    Complex s{}, c{};
    for (int m = 0; m < n; ++m) {
      const Complex e = phase[static_cast<std::size_t>(p.at(m) + n)];
      s += e * double(p.at(m + 1) - p.at(m));
      c += e;
    }
    return std::array<Complex, 3>{phase[static_cast<std::size_t>(p.endpoint() + n)], s, c};
  };
  const auto sums = sigma_many(step_pair(coin), n, weights, opts);
  CharDecomposition d;
  d.xi = xi;
  d.lhs_power = power(u_xi(coin, xi), static_cast<unsigned long long>(n));
  d.lhs_paths = sums[0];
  d.term0 = power(coin.u(), static_cast<unsigned long long>(n));
  d.sin_sum = sums[1];
  d.cos_sum = sums[2];
  d.sin_term = Complex(0.0, std::sin(xi)) * sums[1];
  d.cos_term = Complex(std::cos(xi) - 1.0) * sums[2];
  return d;
}

}  // namespace qwalk
