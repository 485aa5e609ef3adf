#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "qwalk/decoherence.hpp"
#include "qwalk/evolution.hpp"
#include "test_helpers.hpp"

using namespace qwalk;

namespace {

const QubitState kLeft(1.0, 0.0);

std::vector<double> random_subset(int n, std::mt19937_64& rng) {
  std::bernoulli_distribution coin_flip(0.5);
  std::vector<double> f(path_count(n));
  for (auto& v : f) v = coin_flip(rng) ? 1.0 : 0.0;
  return f;
}

TEST(DecoherenceMatrix, HadamardOneStep) {
  const auto d = decoherence_matrix(hadamard(), kLeft, 1);
  ASSERT_EQ(d.dim(), 2u);
  EXPECT_NEAR(std::abs(d(0, 0) - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(d(1, 1) - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(d(0, 1)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(d(1, 0)), 0.0, 1e-15);
}

TEST(DecoherenceMatrix, HadamardTwoStepDiagonal) {
  const auto d = decoherence_matrix(hadamard(), kLeft, 2);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(std::abs(d(k, k) - 0.25), 0.0, 1e-15);
}

TEST(DecoherenceMatrix, HermitianPsdUnitGrandSum) {
  std::mt19937_64 rng(21);
  for (const Coin& c : qwalk::testing::test_coins(4, 22)) {
    for (int s = 0; s < 2; ++s) {
      const QubitState phi = random_state(rng);
      for (int n = 1; n <= 8; ++n) {
        const auto d = decoherence_matrix(c, phi, n);
        EXPECT_LE(d.hermitian_deviation(), 1e-13);
        EXPECT_GE(d.min_eigenvalue(), -1e-10);
        EXPECT_NEAR(std::abs(d.grand_sum() - 1.0), 0.0, 1e-12);
      }
    }
  }
}

TEST(DecoherenceMatrix, DenseCap) {
  EXPECT_THROW(decoherence_matrix(hadamard(), kLeft, 13), CapExceeded);
}

TEST(QuantumIntegral, ConstantFunctionals) {
  std::mt19937_64 rng(23);
  for (const Coin& c : qwalk::testing::test_coins(3, 24)) {
    const QubitState phi = random_state(rng);
    EXPECT_NEAR(quantum_integral(c, phi, 6, constant_functional(1.0)), 1.0, 1e-12);
    EXPECT_NEAR(quantum_integral(c, phi, 6, constant_functional(-2.5)), -2.5, 1e-12);
    const auto d = decoherence_matrix(c, phi, 6);
    EXPECT_NEAR(d.min_kernel_sum(std::vector<double>(64, 3.0)), 3.0, 1e-12);
  }
}

TEST(QuantumIntegral, IndicatorIsSquaredNormOfSigma) {
  std::mt19937_64 rng(25);
  for (const Coin& c : qwalk::testing::test_coins(2, 26)) {
    const QubitState phi = random_state(rng);
    for (int trial = 0; trial < 10; ++trial) {
      const int n = 1 + trial % 10;
      const auto a = random_subset(n, rng);
      const Mat2 s = sigma(c, n, [&](const PathView& p) { return a[p.k]; });
      EXPECT_NEAR(quantum_integral(c, phi, n, a), norm_sq(s * phi.vec()), 1e-12);
    }
  }
}

TEST(QuantumIntegral, MatrixFreeMatchesDirectDoubleSum) {
  std::mt19937_64 rng(27);
  std::uniform_real_distribution<double> u(-2.0, 3.0);
  std::uniform_int_distribution<int> level(-3, 3);
  for (const Coin& c : qwalk::testing::test_coins(3, 28)) {
    const QubitState phi = random_state(rng);
    for (int n = 1; n <= 8; ++n) {
      const auto d = decoherence_matrix(c, phi, n);
      std::vector<double> cont(path_count(n)), ties(path_count(n));
      for (auto& v : cont) v = u(rng);
      for (auto& v : ties) v = level(rng);
      EXPECT_NEAR(quantum_integral(c, phi, n, cont), d.min_kernel_sum(cont), 1e-12);
      EXPECT_NEAR(quantum_integral(c, phi, n, ties), d.min_kernel_sum(ties), 1e-12);
    }
  }
}

TEST(QuantumIntegral, ShiftAddsConstant) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Coin c = qwalk::testing::test_coins(1, 30)[1];
  const QubitState phi = random_state(rng);
  std::vector<double> f(path_count(7));
  for (auto& v : f) v = u(rng);
  auto shifted = f;
  for (auto& v : shifted) v += 1.75;
  EXPECT_NEAR(quantum_integral(c, phi, 7, shifted), quantum_integral(c, phi, 7, f) + 1.75, 1e-12);
}

TEST(QuantumIntegral, RejectsComplexFunctional) {
  EXPECT_THROW(quantum_integral(hadamard(), kLeft, 3, endpoint_exp(0.5)), std::invalid_argument);
}

TEST(MinKernel, ScalarWeightsGiveSquaredMass) {
  // Classical reduction: D(k, k') = p_k p_k', so the indicator integral is
  // the squared probability of A.
  std::map<double, double> levels{{0.0, 0.3}, {1.0, 0.7}};
  EXPECT_NEAR(min_kernel_integral(levels), 0.49, 1e-15);
}

TEST(Cylinder, Examples) {
  EXPECT_NEAR(cylinder_distribution(hadamard(), kLeft, 2, 0), 0.5, 1e-15);
  EXPECT_EQ(cylinder_distribution(hadamard(), kLeft, 2, 1), 0.0);
  EXPECT_THROW(cylinder_distribution(hadamard(), kLeft, 2, 3), std::out_of_range);
}

TEST(Cylinder, MatchesPipelinesAndSumsToOne) {
  std::mt19937_64 rng(31);
  for (const Coin& c : qwalk::testing::test_coins(3, 32)) {
    const QubitState phi = random_state(rng);
    for (int n = 1; n <= 10; ++n) {
      const auto rec = distribution(evolve_recursion(c, phi, n));
      double total = 0.0;
      for (int x = -n; x <= n; ++x) {
        const double p = cylinder_distribution(c, phi, n, x);
        EXPECT_NEAR(p, rec.at(x), 1e-12);
        total += p;
      }
      EXPECT_NEAR(total, 1.0, 1e-12);
    }
  }
}

}  // namespace
