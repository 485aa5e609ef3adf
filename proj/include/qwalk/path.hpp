#pragma once

// Nearest-neighbour lattice paths from the origin and their index codec.
//
// A path of n steps is w(0) = 0, w(1), ..., w(n) with increments
// v(j) = w(j) - w(j-1) in {-1, +1}. Bit u(j) = [v(j) == +1] is stored at
// position j - 1 of the index k, so the first step is the least significant
// bit and k = 0 is the all-left path.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/limits.hpp"
#include "qwalk/mat2.hpp"

namespace qwalk {

using PathIndex = std::uint64_t;

inline constexpr PathIndex path_count(int n) { return PathIndex{1} << n; }

/// Non-owning view of a path's positions w(0..n) plus its index.
struct PathView {
  std::span<const int> w;
  PathIndex k = 0;

  int steps() const { return static_cast<int>(w.size()) - 1; }
  int at(int m) const { return w[static_cast<std::size_t>(m)]; }
  int endpoint() const { return w.back(); }
  /// v(m) = w(m) - w(m - 1), m in [1, n].
  int increment(int m) const { return at(m) - at(m - 1); }
};

class Path {
 public:
  /// Decodes k in [0, 2^n). Throws std::out_of_range otherwise.
  static Path from_index(int n, PathIndex k) {
    if (n < 1 || n > kHardMaxPathSteps)
      throw std::out_of_range("path length must be in [1, 62], got " + std::to_string(n));
    if (k >= path_count(n))
      throw std::out_of_range("path index " + std::to_string(k) + " outside [0, 2^" +
                              std::to_string(n) + ")");
    Path p;
    p.k_ = k;
    p.w_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int j = 1; j <= n; ++j) {
      const bool right = (k >> (j - 1)) & 1U;
      p.w_[j] = p.w_[j - 1] + (right ? 1 : -1);
    }
    return p;
  }

  /// Validates w(0) = 0 and unit increments. Throws std::invalid_argument.
  static Path from_positions(std::vector<int> w) {
    if (w.size() < 2) throw std::invalid_argument("a path needs at least one step");
    if (w.front() != 0) throw std::invalid_argument("a path must start at the origin");
    const int n = static_cast<int>(w.size()) - 1;
    if (n > kHardMaxPathSteps) throw std::invalid_argument("path longer than 62 steps");
    PathIndex k = 0;
    for (int j = 1; j <= n; ++j) {
      const int dv = w[j] - w[j - 1];
      if (dv != 1 && dv != -1)
        throw std::invalid_argument("increment v(" + std::to_string(j) + ") = " +
                                    std::to_string(dv) + " is not +-1");
      if (dv == 1) k |= PathIndex{1} << (j - 1);
    }
    Path p;
    p.w_ = std::move(w);
    p.k_ = k;
    return p;
  }

  int steps() const { return static_cast<int>(w_.size()) - 1; }
  PathIndex index() const { return k_; }
  const std::vector<int>& positions() const { return w_; }

  std::vector<int> increments() const {
    std::vector<int> v(static_cast<std::size_t>(steps()));
    for (int j = 1; j <= steps(); ++j) v[j - 1] = w_[j] - w_[j - 1];
    return v;
  }

  /// u(j) = I_{1}(v(j)).
  std::vector<int> bits() const {
    std::vector<int> u(static_cast<std::size_t>(steps()));
    for (int j = 1; j <= steps(); ++j) u[j - 1] = w_[j] > w_[j - 1] ? 1 : 0;
    return u;
  }

  PathView view() const { return {w_, k_}; }

  friend bool operator==(const Path&, const Path&) = default;

 private:
  Path() = default;

  std::vector<int> w_;
  PathIndex k_ = 0;
};

inline Path path_from_index(int n, PathIndex k) { return Path::from_index(n, k); }

inline PathIndex index_from_path(const Path& p) { return p.index(); }

inline PathIndex index_from_positions(std::vector<int> w) {
  return Path::from_positions(std::move(w)).index();
}

/// P_{v(n)} ... P_{v(2)} P_{v(1)}: the first step is the rightmost factor.
inline Mat2 path_operator(const Coin& coin, const PathView& path) {
  Mat2 prod = Mat2::identity();
  for (int j = 1; j <= path.steps(); ++j) prod = coin.step(path.increment(j)) * prod;
  return prod;
}

inline Mat2 path_operator(const Coin& coin, const Path& path) {
  return path_operator(coin, path.view());
}

}  // namespace qwalk
