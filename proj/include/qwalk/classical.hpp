#pragma once

// The commutative reduction: P_{-1} -> p and P_1 -> q = 1 - p. Path sums
// become expectations over the simple random walk and the operator Ito
// identity becomes the discrete Ito formula / Doob-Meyer decomposition.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qwalk/function_table.hpp"
#include "qwalk/functional.hpp"
#include "qwalk/ito.hpp"
#include "qwalk/path_sum.hpp"

namespace qwalk {

class StepWeights {
 public:
  explicit StepWeights(double p) : p_(p) {
    if (!(p >= 0.0 && p <= 1.0))
      throw std::invalid_argument("left-step weight p must lie in [0, 1], got " +
                                  std::to_string(p));
  }

  double p() const { return p_; }
  double q() const { return 1.0 - p_; }
  StepPair<Complex> steps() const { return {p(), q()}; }

 private:
  double p_;
};

/// E[f(Y_0, ..., Y_n)] = sum_k f(w^(k)) p^{#left} q^{#right}.
template <class Fn>
Complex classical_sigma(const StepWeights& wts, int n, Fn&& f, const SigmaOptions& opts = {}) {
  return sigma(wts.steps(), n, std::forward<Fn>(f), opts);
}

struct DoobMeyer {
  Complex martingale_expect;
  Complex compensator_expect;
  Complex total_expect;  ///< E[f(Y_n)] - f(0)
};

inline DoobMeyer doob_meyer(const StepWeights& wts, int n, const FunctionTable& f,
                            const SigmaOptions& opts = {}) {
  const auto t = ito_telescoped(wts.steps(), n, f, opts);
  return {t.martingale, t.compensator, t.lhs};
}

/// E[(f(Y_m + 1) - f(Y_m - 1))/2 * (Y_{m+1} - Y_m)] for m = 0..n-1.
inline std::vector<Complex> martingale_increments(const StepWeights& wts, int n,
                                                  const FunctionTable& f,
                                                  const SigmaOptions& opts = {}) {
  std::vector<Complex> out;
  for (int m = 0; m < n; ++m) out.push_back(ito_step(wts.steps(), n, m, f, opts).martingale);
  return out;
}

/// Largest residual of the scalar-weighted identity, per step and telescoped.
inline double classical_theorem_check(const StepWeights& wts, int n, const FunctionTable& f,
                                      const SigmaOptions& opts = {}) {
  double worst = ito_telescoped(wts.steps(), n, f, opts).residual();
  for (int m = 0; m < n; ++m) worst = std::max(worst, ito_step(wts.steps(), n, m, f, opts).residual());
  return worst;
}

/// C(n, k) in exact integer arithmetic; n <= 60 keeps every partial
/// product inside 64 bits.
inline std::uint64_t binomial(int n, int k) {
  if (n < 0 || n > 60) throw std::out_of_range("binomial needs 0 <= n <= 60");
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t c = 1;
  for (int i = 1; i <= k; ++i) c = c * static_cast<std::uint64_t>(n - k + i) / i;
  return c;
}

}  // namespace qwalk
