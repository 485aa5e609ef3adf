#pragma once

// The full verification sweep: every identity checked at fixed seeds and
// fixed tolerances. Used by the acceptance test binary and by `qwalk sweep`.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qwalk/classical.hpp"
#include "qwalk/coin.hpp"
#include "qwalk/decoherence.hpp"
#include "qwalk/evolution.hpp"
#include "qwalk/functional.hpp"
#include "qwalk/ito.hpp"
#include "qwalk/path_sum.hpp"

namespace qwalk::acceptance {

struct CheckResult {
  std::string name;
  double value = 0.0;  ///< residual, or seconds for timing checks
  double limit = 0.0;
  bool pass = false;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<CheckResult> checks;
  double seconds = 0.0;

  bool pass() const {
    return !checks.empty() &&
           std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
  }
};

namespace detail {

/// Tracks the worst value of one named check against its limit. When the
/// limit varies per case, `observe` takes value and limit together and the
/// check stores the worst value / limit ratio against 1.
class Tracker {
 public:
  Tracker(std::string name, double limit) : name_(std::move(name)), limit_(limit) {}

  void observe(double value) {
    worst_ = std::max(worst_, value);
    if (!(value <= limit_)) failed_ = true;
    seen_ = true;
  }
  void observe(double value, double limit) {
    relative_ = true;
    const double ratio = limit > 0.0 ? value / limit : (value == 0.0 ? 0.0 : INFINITY);
    observe_ratio(ratio);
  }

  CheckResult result() const {
    return {relative_ ? name_ + " (worst residual / allowed)" : name_, worst_,
            relative_ ? 1.0 : limit_, seen_ && !failed_};
  }

 private:
  void observe_ratio(double r) {
    worst_ = std::max(worst_, r);
    if (!(r <= 1.0)) failed_ = true;
    seen_ = true;
  }

  std::string name_;
  double limit_;
  double worst_ = 0.0;
  bool relative_ = false;
  bool failed_ = false;
  bool seen_ = false;
};

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace detail

/// Hadamard first, then `count` coins from a fixed seed.
inline std::vector<Coin> sweep_coins(std::size_t count, std::uint64_t seed = 20110) {
  std::mt19937_64 rng(seed);
  std::vector<Coin> coins{hadamard()};
  for (std::size_t i = 0; i < count; ++i) coins.push_back(random_coin(rng));
  return coins;
}

inline CriterionResult operator_ito() {
  const auto t0 = std::chrono::steady_clock::now();
  detail::Tracker step("ito_step residual <= 1e-12 n max|f|", 0.0);
  detail::Tracker tele("ito_telescoped residual <= 1e-12 n max|f|", 0.0);
  for (const Coin& c : sweep_coins(20)) {
    for (int n = 1; n <= 12; ++n) {
      for (std::uint64_t s = 0; s < 5; ++s) {
        const auto f = FunctionTable::random(n, 1000 * n + s);
        const double allowed = 1e-12 * n * f.max_abs();
        for (int m = 0; m < n; ++m) step.observe(ito_step(c, n, m, f).residual(), allowed);
        tele.observe(ito_telescoped(c, n, f).residual(), allowed);
      }
    }
  }
  CriterionResult r{1, "Operator Ito formula, step and telescoped", {}, 0.0};
  r.seconds = detail::seconds_since(t0);
  r.checks = {step.result(), tele.result(), {"runtime seconds", r.seconds, 30.0, r.seconds < 30.0}};
  return r;
}

inline CriterionResult two_step_check() {
  const auto t0 = std::chrono::steady_clock::now();
  detail::Tracker rhs("|RHS - closed form|", 1e-13);
  detail::Tracker lhs("|LHS - closed form|", 1e-13);
  const Coin h = hadamard();
  const Mat2 pm2 = h.p_minus() * h.p_minus(), pp2 = h.p_plus() * h.p_plus();
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto f = FunctionTable::random(2, 77 + s);
    const Mat2 closed = f(-2) * pm2 - f(0) * (pm2 + pp2) + f(2) * pp2;
    const auto d = ito_telescoped(h, 2, f);
    rhs.observe(max_abs_diff(d.martingale + d.compensator, closed));
    lhs.observe(max_abs_diff(d.lhs, closed));
  }
  return {2, "Two-step Hadamard check of the telescoped formula", {rhs.result(), lhs.result()},
          detail::seconds_since(t0)};
}

inline CriterionResult tanaka_and_identity() {
  const auto t0 = std::chrono::steady_clock::now();
  detail::Tracker tan("Tanaka residual", 1e-12);
  detail::Tracker comp("f(x)=x compensator == 0 exactly", 0.0);
  detail::Tracker rel("f(x)=x: |LHS - sum_k w(n) P_k| and |mart - LHS|", 1e-12);
  for (const Coin& c : sweep_coins(20)) {
    for (int n = 1; n <= 12; ++n) {
      tan.observe(tanaka(c, n).residual());
      const auto d = ito_telescoped(c, n, FunctionTable::identity(n));
      comp.observe(d.compensator == Mat2::zero() ? 0.0 : max_abs(d.compensator));
      const Mat2 endpoint_sum =
          sigma(c, n, [](const PathView& p) { return double(p.endpoint()); });
      rel.observe(std::max(max_abs_diff(d.lhs, endpoint_sum), max_abs_diff(d.martingale, d.lhs)));
    }
  }
  return {3, "Tanaka formula and the f(x)=x relation",
          {tan.result(), comp.result(), rel.result()}, detail::seconds_since(t0)};
}

inline CriterionResult characteristic() {
  const auto t0 = std::chrono::steady_clock::now();
  detail::Tracker pair("pairwise gap among path sum, matrix power, decomposition", 1e-12);
  for (const Coin& c : sweep_coins(20)) {
    for (int n = 1; n <= 12; ++n) {
      for (int j = 0; j < 64; ++j) {
        const double xi = -std::numbers::pi + 2.0 * std::numbers::pi * j / 64;
        pair.observe(char_decomposition(c, n, xi).residual());
      }
    }
  }
  return {4, "Characteristic-function decomposition", {pair.result()}, detail::seconds_since(t0)};
}

inline CriterionResult distributions() {
  const auto t0 = std::chrono::steady_clock::now();
  detail::Tracker small("paths/recursion/Fourier pairwise, n <= 12", 1e-10);
  detail::Tracker big("recursion vs Fourier, n = 500", 1e-10);
  detail::Tracker total("|total probability - 1|", 1e-12);
  detail::Tracker hadamard2("Hadamard phi=(1,0), n=2 vs (0.25, 0.5, 0.25)", 1e-15);
  std::mt19937_64 rng(5150);
  const auto coins = sweep_coins(20);
  for (const Coin& c : coins) {
    const QubitState phi = random_state(rng);
    for (int n = 0; n <= 12; ++n) {
      const auto a = distribution_via_paths(c, phi, n);
      const auto b = distribution(evolve_recursion(c, phi, n));
      const auto f = distribution(evolve_fourier(c, phi, n));
      small.observe(std::max({max_abs_diff(a, b), max_abs_diff(a, f), max_abs_diff(b, f)}));
      for (const auto* d : {&a, &b, &f}) total.observe(std::abs(d->total() - 1.0));
    }
  }
  double fourier_seconds = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    const QubitState phi = random_state(rng);
    const auto rec = distribution(evolve_recursion(coins[i], phi, 500));
    const auto tf = std::chrono::steady_clock::now();
    const auto fou = distribution(evolve_fourier(coins[i], phi, 500));
    fourier_seconds = std::max(fourier_seconds, detail::seconds_since(tf));
    big.observe(max_abs_diff(rec, fou));
    total.observe(std::abs(rec.total() - 1.0));
    total.observe(std::abs(fou.total() - 1.0));
  }
  const QubitState left(1.0, 0.0);
  for (auto method : {DistributionMethod::Paths, DistributionMethod::Recursion,
                      DistributionMethod::Fourier}) {
    const auto d = distribution(amplitudes(hadamard(), left, 2, method));
    hadamard2.observe(std::max({std::abs(d.at(-2) - 0.25), std::abs(d.at(0) - 0.5),
                                std::abs(d.at(2) - 0.25), std::abs(d.at(-1)), std::abs(d.at(1))}));
  }
  return {5,
          "Distribution by three routes",
          {small.result(), big.result(), total.result(), hadamard2.result(),
           {"n=500 Fourier seconds", fourier_seconds, 5.0, fourier_seconds < 5.0}},
          detail::seconds_since(t0)};
}

inline CriterionResult decoherence() {
  const auto t0 = std::chrono::steady_clock::now();
  detail::Tracker herm("Hermitian deviation", 1e-13);
  detail::Tracker psd("-(min eigenvalue)", 1e-10);
  detail::Tracker grand("|grand sum - 1|", 1e-12);
  detail::Tracker indicator("|integral of I_A - |sigma(I_A) phi|^2|", 1e-12);
  detail::Tracker cylinder("|cylinder - pipeline distributions|", 1e-12);
  std::mt19937_64 rng(8128);
  const auto coins = sweep_coins(3);
  for (const Coin& c : coins) {
    for (int s = 0; s < 2; ++s) {
      const QubitState phi = random_state(rng);
      for (int n = 1; n <= 10; ++n) {
        const DecoherenceMatrix d(c, phi, n);
        herm.observe(d.hermitian_deviation());
        psd.observe(-d.min_eigenvalue());
        grand.observe(std::abs(d.grand_sum() - 1.0));
      }
    }
  }
  std::bernoulli_distribution pick(0.5);
  for (int trial = 0; trial < 50; ++trial) {
    const Coin& c = coins[trial % coins.size()];
    const QubitState phi = random_state(rng);
    const int n = 1 + trial % 10;
    std::vector<double> a(path_count(n));
    for (auto& v : a) v = pick(rng) ? 1.0 : 0.0;
    const Mat2 s = sigma(c, n, [&a](const PathView& p) { return a[p.k]; });
    indicator.observe(std::abs(quantum_integral(c, phi, n, a) - norm_sq(s * phi.vec())));
  }
  for (const Coin& c : coins) {
    const QubitState phi = random_state(rng);
    for (int n = 1; n <= 10; ++n) {
      const auto a = distribution_via_paths(c, phi, n);
      const auto b = distribution(evolve_recursion(c, phi, n));
      const auto f = distribution(evolve_fourier(c, phi, n));
      for (int x = -n; x <= n; ++x) {
        const double p = cylinder_distribution(c, phi, n, x);
        cylinder.observe(std::max(
            {std::abs(p - a.at(x)), std::abs(p - b.at(x)), std::abs(p - f.at(x))}));
      }
    }
  }
  return {6,
          "Decoherence matrix and quantum integral",
          {herm.result(), psd.result(), grand.result(), indicator.result(), cylinder.result()},
          detail::seconds_since(t0)};
}

inline CriterionResult classical() {
  const auto t0 = std::chrono::steady_clock::now();
  detail::Tracker theorem("scalar-weight theorem residual", 1e-13);
  detail::Tracker binom("|endpoint mass - exact binomial|", 1e-13);
  detail::Tracker mart("|martingale expectation| at p = 1/2", 1e-13);
  detail::Tracker second("|E[Y_n^2] - n|", 1e-12);
  for (double p : {0.5, 0.2, 0.65}) {
    const StepWeights wts(p);
    for (int n = 1; n <= 12; ++n)
      theorem.observe(classical_theorem_check(wts, n, FunctionTable::random(n, 300 + n)));
  }
  for (double p : {0.5, 0.3}) {
    const StepWeights wts(p);
    for (int n = 1; n <= 20; ++n) {
      for (int right = 0; right <= n; ++right) {
        const double mass = classical_sigma(wts, n, endpoint_indicator(2 * right - n)).real();
        const double exact = double(binomial(n, right)) * std::pow(p, n - right) *
                             std::pow(1.0 - p, right);
        binom.observe(std::abs(mass - exact));
      }
    }
  }
  const StepWeights fair(0.5);
  for (int n = 1; n <= 12; ++n) {
    const auto f = FunctionTable::random(n, 500 + n);
    mart.observe(std::abs(doob_meyer(fair, n, f).martingale_expect));
    for (const Complex& inc : martingale_increments(fair, n, f)) mart.observe(std::abs(inc));
  }
  for (int n = 1; n <= 20; ++n) {
    const Complex e = classical_sigma(
        fair, n, [](const PathView& p) { return double(p.endpoint()) * p.endpoint(); });
    second.observe(std::abs(e - double(n)));
  }
  return {7,
          "Classical random-walk reduction",
          {theorem.result(), binom.result(), mart.result(), second.result()},
          detail::seconds_since(t0)};
}

inline CriterionResult performance() {
  const auto t0 = std::chrono::steady_clock::now();
  const Coin h = hadamard();
  const double xi = 0.7;
  const auto ts = std::chrono::steady_clock::now();
  const Mat2 big = sigma(h, 20, endpoint_exp(xi));
  const double sigma_seconds = detail::seconds_since(ts);
  detail::Tracker sanity("n=20 path sum vs U(xi)^20", 1e-10);
  sanity.observe(max_abs_diff(big, power(u_xi(h, xi), 20)));
  detail::Tracker oracle("shared-prefix vs naive, n = 10", 1e-13);
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const Coin& c : sweep_coins(5)) {
    std::vector<Complex> table(path_count(10));
    for (auto& z : table) {
      const double re = u(rng);
      z = {re, u(rng)};
    }
    auto f = [&table](const PathView& p) { return table[p.k]; };
    oracle.observe(max_abs_diff(sigma(c, 10, f), sigma(c, 10, f, {Evaluator::Naive})));
  }
  return {8,
          "Path-sum performance and oracle agreement",
          {{"sigma n=20 seconds (single thread)", sigma_seconds, 3.0, sigma_seconds < 3.0},
           sanity.result(), oracle.result()},
          detail::seconds_since(t0)};
}

inline std::vector<std::function<CriterionResult()>> all_criteria() {
  return {operator_ito, two_step_check, tanaka_and_identity, characteristic,
          distributions, decoherence, classical, performance};
}

inline std::string summary_line(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.pass() ? "[PASS] " : "[FAIL] ") << r.id << ". " << r.title << " (" << r.seconds
     << " s)";
  for (const auto& c : r.checks)
    os << "\n         " << (c.pass ? "ok  " : "BAD ") << c.name << ": " << c.value
       << " (limit " << c.limit << ")";
  return os.str();
}

}  // namespace qwalk::acceptance
