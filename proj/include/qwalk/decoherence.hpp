#pragma once

// Path-space integration against the decoherence functional
// D_n(k, k') = <P_k phi, P_k' phi> with the min kernel.

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qwalk/coin.hpp"
#include "qwalk/functional.hpp"
#include "qwalk/limits.hpp"
#include "qwalk/mat2.hpp"
#include "qwalk/path_sum.hpp"

namespace qwalk {

inline double norm_sq(double x) { return x * x; }

/// P_k phi for every k in [0, 2^n), indexed by k.
inline std::vector<Vec2> path_images(const Coin& coin, const QubitState& phi, int n) {
  require_enumerable(n);
  std::vector<Vec2> images(static_cast<std::size_t>(path_count(n)));
  for_each_path(step_pair(coin), n,
                [&](const PathView& p, const Mat2& prod) { images[p.k] = prod * phi.vec(); });
  return images;
}

/// Dense Gram matrix of the 2^n vectors P_k phi, row-major.
class DecoherenceMatrix {
 public:
  DecoherenceMatrix(const Coin& coin, const QubitState& phi, int n,
                    int dense_cap = kDefaultDenseDecoherenceSteps)
      : n_(n) {
    if (n > dense_cap)
      throw CapExceeded("dense decoherence matrix limited to n <= " + std::to_string(dense_cap) +
                        " (2^n x 2^n entries); use the matrix-free quantum_integral instead");
    const auto images = path_images(coin, phi, n);
    dim_ = images.size();
    entries_.resize(dim_ * dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) entries_[i * dim_ + j] = inner(images[i], images[j]);
  }

  int steps() const { return n_; }
  std::size_t dim() const { return dim_; }
  Complex operator()(std::size_t k, std::size_t kp) const { return entries_[k * dim_ + kp]; }

  /// max |D(k, k') - conj(D(k', k))|.
  double hermitian_deviation() const {
    double m = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = i; j < dim_; ++j)
        m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return m;
  }

  Complex grand_sum() const {
    Complex s{};
    for (const auto& z : entries_) s += z;
    return s;
  }

  /// Smallest eigenvalue of the Hermitian part, by dense self-adjoint solve.
  double min_eigenvalue() const {
    const auto d = static_cast<Eigen::Index>(dim_);
    Eigen::MatrixXcd m(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j)
        m(i, j) = (*this)(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalue solve failed");
    return solver.eigenvalues().minCoeff();
  }

  /// sum_{k,k'} min(f_k, f_k') D(k, k'), the O(4^n) definition.
  double min_kernel_sum(const std::vector<double>& f) const {
    if (f.size() != dim_) throw std::invalid_argument("one value per path required");
    Complex s{};
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) s += std::min(f[i], f[j]) * (*this)(i, j);
    return s.real();
  }

 private:
  int n_;
  std::size_t dim_ = 0;
  std::vector<Complex> entries_;
};

inline DecoherenceMatrix decoherence_matrix(const Coin& coin, const QubitState& phi, int n) {
  return DecoherenceMatrix(coin, phi, n);
}

/// sum_{k,k'} min(f_k, f_k') <x_k, x_k'> from the vectors x_k grouped by
/// their value f_k (levels[f] = sum of x_k with f_k = f). With levels
/// f_1 < ... < f_T and S_t = sum of the groups at or above f_t,
/// the sum is f_1 |S_1|^2 + sum_{t>1} (f_t - f_{t-1}) |S_t|^2.
template <class V>
double min_kernel_integral(const std::map<double, V>& levels) {
  if (levels.empty()) return 0.0;
  double result = 0.0;
  V suffix{};
  auto it = levels.rbegin();
  for (; it != levels.rend(); ++it) {
    suffix += it->second;
    auto below = std::next(it);
    const double step = below == levels.rend() ? it->first : it->first - below->first;
    result += step * norm_sq(suffix);
  }
  return result;
}

/// Matrix-free integral of a real path functional: one pass over the
/// paths, accumulating P_k phi per distinct value of f.
inline double quantum_integral(const Coin& coin, const QubitState& phi, int n,
                               const PathFunctional& f) {
  if (!f.is_real())
    throw std::invalid_argument("quantum_integral needs a real-valued functional; '" + f.name() +
                                "' is complex");
  std::map<double, Vec2> levels;
  for_each_path(step_pair(coin), n, [&](const PathView& p, const Mat2& prod) {
    levels[f(p).real()] += prod * phi.vec();
  });
  return min_kernel_integral(levels);
}

/// Same integral from an explicit value per path index.
inline double quantum_integral(const Coin& coin, const QubitState& phi, int n,
                               const std::vector<double>& f) {
  require_enumerable(n);
  if (f.size() != path_count(n)) throw std::invalid_argument("one value per path required");
  std::map<double, Vec2> levels;
  for_each_path(step_pair(coin), n, [&](const PathView& p, const Mat2& prod) {
    levels[f[p.k]] += prod * phi.vec();
  });
  return min_kernel_integral(levels);
}

/// |sigma_n(I_{w(n) = x}) phi|^2.
inline double cylinder_distribution(const Coin& coin, const QubitState& phi, int n, int x) {
  if (x < -n || x > n)
    throw std::out_of_range("cylinder endpoint " + std::to_string(x) + " outside [-n, n]");
  return norm_sq(sigma(coin, n, cylinder_indicator(x)) * phi.vec());
}

}  // namespace qwalk
