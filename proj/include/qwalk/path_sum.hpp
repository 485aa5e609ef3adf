#pragma once

// Operator-valued path sums sigma_n(f) = sum_k f(w^(k)) P_{w^(k)} and the
// lattice path sums Xi_n(l, m).
//
// Everything here is templated on the step algebra so that the same code
// runs with 2x2 matrices (the quantum walk) and with scalar weights p, q
// (the simple random walk).

#include <algorithm>
#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/limits.hpp"
#include "qwalk/mat2.hpp"
#include "qwalk/path.hpp"

namespace qwalk {

template <class Op>
struct OpTraits;

template <>
struct OpTraits<Mat2> {
  static Mat2 identity() { return Mat2::identity(); }
  static Mat2 zero() { return Mat2::zero(); }
};

template <>
struct OpTraits<Complex> {
  static Complex identity() { return 1.0; }
  static Complex zero() { return 0.0; }
};

/// The two step operators of a walk: left (increment -1) and right (+1).
template <class Op>
struct StepPair {
  Op left;
  Op right;

  const Op& step(int increment) const { return increment > 0 ? right : left; }
};

inline StepPair<Mat2> step_pair(const Coin& coin) { return {coin.p_minus(), coin.p_plus()}; }

enum class Evaluator {
  SharedPrefix,  ///< depth-first with a stack of partial products
  Naive,         ///< independent product per path; the testing oracle
};

struct SigmaOptions {
  Evaluator evaluator = Evaluator::SharedPrefix;
  /// Worker cap for the shared-prefix evaluator. Results are bit-identical
  /// for every thread count.
  unsigned threads = 1;
};

namespace detail {

template <class Fn>
using WeightArray = std::invoke_result_t<Fn&, const PathView&>;

template <class Fn>
inline constexpr std::size_t weight_count = std::tuple_size_v<WeightArray<Fn>>;

/// Depth-first walk of the subtree below a fixed prefix, keeping a stack of
/// positions and partial products. Each edge costs one operator multiply.
template <class Op>
class PrefixWalker {
 public:
  PrefixWalker(const StepPair<Op>& steps, int n)
      : steps_(steps), n_(n), w_(static_cast<std::size_t>(n) + 1, 0),
        prefix_(static_cast<std::size_t>(n) + 1, OpTraits<Op>::identity()) {}

  /// Calls `leaf(PathView, const Op& product)` for every path whose first
  /// `depth` steps are the low bits of `k`.
  template <class Leaf>
  void visit(int depth, PathIndex k, Leaf& leaf) {
    seed(depth, k);
    visit_below(depth, leaf);
  }

  /// Sums `leaf(PathView, const Op& product)` over the same subtree. Each
  /// node adds its two child subtotals, which is pairwise summation over
  /// the 2^(n - depth) leaves.
  template <class Acc, class Leaf>
  Acc reduce(int depth, PathIndex k, Leaf& leaf) {
    seed(depth, k);
    return reduce_below<Acc>(depth, leaf);
  }

 private:
  void seed(int depth, PathIndex k) {
    k_ = k;
    for (int j = 1; j <= depth; ++j) {
      const int s = ((k >> (j - 1)) & 1U) ? 1 : -1;
      w_[j] = w_[j - 1] + s;
      prefix_[j] = steps_.step(s) * prefix_[j - 1];
    }
  }

  void push(int depth, int s) {
    const PathIndex bit = PathIndex{1} << depth;
    w_[depth + 1] = w_[depth] + s;
    prefix_[depth + 1] = steps_.step(s) * prefix_[depth];
    if (s > 0)
      k_ |= bit;
    else
      k_ &= ~bit;
  }

  template <class Leaf>
  void visit_below(int depth, Leaf& leaf) {
    if (depth == n_) {
      leaf(PathView{w_, k_}, prefix_[n_]);
      return;
    }
    push(depth, -1);
    visit_below(depth + 1, leaf);
    push(depth, +1);
    visit_below(depth + 1, leaf);
    k_ &= ~(PathIndex{1} << depth);
  }

  template <class Acc, class Leaf>
  Acc reduce_below(int depth, Leaf& leaf) {
    if (depth == n_) return leaf(PathView{w_, k_}, prefix_[n_]);
    push(depth, -1);
    Acc total = reduce_below<Acc>(depth + 1, leaf);
    push(depth, +1);
    const Acc right = reduce_below<Acc>(depth + 1, leaf);
    k_ &= ~(PathIndex{1} << depth);
    for (std::size_t i = 0; i < total.size(); ++i) total[i] += right[i];
    return total;
  }

  const StepPair<Op>& steps_;
  int n_;
  std::vector<int> w_;
  std::vector<Op> prefix_;
  PathIndex k_ = 0;
};

template <class Op, class Fn>
std::array<Op, weight_count<Fn>> sigma_shared_prefix(const StepPair<Op>& steps, int n, Fn fn,
                                                     unsigned threads) {
  constexpr std::size_t N = weight_count<Fn>;
  using Acc = std::array<Op, N>;
  auto walk_block = [&](Fn& f, int depth, PathIndex prefix) {
    auto leaf = [&f](const PathView& p, const Op& prod) {
      const auto weights = f(p);
      Acc a;
      for (std::size_t i = 0; i < N; ++i) a[i] = weights[i] * prod;
      return a;
    };
    PrefixWalker<Op> walker(steps, n);
    return walker.template reduce<Acc>(depth, prefix, leaf);
  };
  int split = 0;
  while (split < n && split < 10 && (1U << split) < threads) ++split;
  if (split == 0) return walk_block(fn, 0, 0);
  // One block per fixed first-`split`-steps prefix (k mod 2^split).
  const std::size_t blocks = std::size_t{1} << split;
  std::vector<Acc> partial(blocks);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      Fn local = fn;
      for (std::size_t b = t; b < blocks; b += threads) partial[b] = walk_block(local, split, b);
    });
  }
  for (auto& th : pool) th.join();
  // Same tree as the serial walk, so the result does not depend on `threads`.
  auto merge = [&](auto& self, int depth, std::size_t prefix) -> Acc {
    if (depth == split) return partial[prefix];
    Acc total = self(self, depth + 1, prefix);
    const Acc right = self(self, depth + 1, prefix | (std::size_t{1} << depth));
    for (std::size_t i = 0; i < N; ++i) total[i] += right[i];
    return total;
  };
  return merge(merge, 0, 0);
}

template <class Op, class Fn>
std::array<Op, weight_count<Fn>> sigma_naive(const StepPair<Op>& steps, int n, Fn fn) {
  constexpr std::size_t N = weight_count<Fn>;
  std::array<Op, N> acc;
  acc.fill(OpTraits<Op>::zero());
  for (PathIndex k = 0; k < path_count(n); ++k) {
    const Path path = Path::from_index(n, k);
    const PathView view = path.view();
    Op prod = OpTraits<Op>::identity();
    for (int j = 1; j <= n; ++j) prod = steps.step(view.increment(j)) * prod;
    const auto weights = fn(view);
    for (std::size_t i = 0; i < N; ++i) acc[i] += weights[i] * prod;
  }
  return acc;
}

}  // namespace detail

/// Calls `leaf(PathView, const Op& product)` for every n-step path, in
/// depth-first order (left branch first at every step).
template <class Op, class Leaf>
void for_each_path(const StepPair<Op>& steps, int n, Leaf&& leaf) {
  require_enumerable(n);
  detail::PrefixWalker<Op> walker(steps, n);
  walker.visit(0, 0, leaf);
}

/// Several path sums in one traversal. `fn(PathView)` returns a
/// std::array<Complex, N> of weights; entry i of the result is
/// sum_k fn(w^(k))[i] * P_{w^(k)}.
template <class Op, class Fn>
auto sigma_many(const StepPair<Op>& steps, int n, Fn&& fn, const SigmaOptions& opts = {}) {
  require_enumerable(n);
  using F = std::decay_t<Fn>;
  if (opts.evaluator == Evaluator::Naive) return detail::sigma_naive<Op, F>(steps, n, fn);
  return detail::sigma_shared_prefix<Op, F>(steps, n, fn, opts.threads == 0 ? 1 : opts.threads);
}

/// sigma_n(f) for a scalar-valued functional f(PathView) -> Complex.
template <class Op, class Fn>
Op sigma(const StepPair<Op>& steps, int n, Fn&& fn, const SigmaOptions& opts = {}) {
  auto wrapped = [&fn](const PathView& p) { return std::array<Complex, 1>{Complex(fn(p))}; };
  return sigma_many(steps, n, wrapped, opts)[0];
}

template <class Fn>
Mat2 sigma(const Coin& coin, int n, Fn&& fn, const SigmaOptions& opts = {}) {
  return sigma(step_pair(coin), n, std::forward<Fn>(fn), opts);
}

namespace detail {

// row[r] = Xi_n(n - r, r) for r in [0, max_right].
template <class Op>
std::vector<Op> xi_partial_row(const StepPair<Op>& steps, int n, int max_right) {
  std::vector<Op> row(static_cast<std::size_t>(max_right) + 1, OpTraits<Op>::zero());
  row[0] = OpTraits<Op>::identity();
  for (int t = 0; t < n; ++t) {
    for (int r = std::min(t + 1, max_right); r >= 0; --r) {
      Op next = OpTraits<Op>::zero();
      if (r <= t) next += steps.left * row[r];
      if (r >= 1) next += steps.right * row[r - 1];
      row[r] = next;
    }
  }
  return row;
}

}  // namespace detail

/// Xi_n(l, m): sum of ordered products over paths with l left and m right
/// steps, via Xi_{t+1}(l, m) = P_{-1} Xi_t(l-1, m) + P_1 Xi_t(l, m-1).
/// O(n^2) operator multiplies; no enumeration cap.
template <class Op>
Op xi_matrix(const StepPair<Op>& steps, int n, int l, int m) {
  if (n < 0 || l < 0 || m < 0 || l + m != n)
    throw std::invalid_argument("xi_matrix needs l + m = n with l, m >= 0 (got n=" +
                                std::to_string(n) + ", l=" + std::to_string(l) +
                                ", m=" + std::to_string(m) + ")");
  return detail::xi_partial_row(steps, n, m)[static_cast<std::size_t>(m)];
}

/// Xi_n(n - m, m) for every m in [0, n]; entry m ends at x = 2m - n.
template <class Op>
std::vector<Op> xi_row(const StepPair<Op>& steps, int n) {
  if (n < 0) throw std::invalid_argument("xi_row needs n >= 0");
  return detail::xi_partial_row(steps, n, n);
}

inline Mat2 xi_matrix(const Coin& coin, int n, int l, int m) {
  return xi_matrix(step_pair(coin), n, l, m);
}

}  // namespace qwalk
