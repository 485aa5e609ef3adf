#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "qwalk/evolution.hpp"
#include "qwalk/functional.hpp"
#include "test_helpers.hpp"

using namespace qwalk;
using qwalk::testing::MatNear;

namespace {

const double kS = 1.0 / std::numbers::sqrt2;
const QubitState kLeft(1.0, 0.0);

// Oracle: |sum over paths ending at x of P_k phi|^2 by explicit enumeration.
Distribution enumerate_distribution(const Coin& c, const QubitState& phi, int n) {
  Distribution d{n, std::vector<double>(2 * n + 1, 0.0)};
  std::vector<Vec2> amp(2 * n + 1);
  for (unsigned long k = 0; k < (1UL << n); ++k) {
    int x = 0;
    Vec2 v = phi.vec();
    for (int j = 0; j < n; ++j) {
      const bool right = (k >> j) & 1UL;
      x += right ? 1 : -1;
      v = (right ? c.p_plus() : c.p_minus()) * v;
    }
    amp[x + n] += v;
  }
  for (int i = 0; i <= 2 * n; ++i) d.prob[i] = norm_sq(amp[i]);
  return d;
}

TEST(Recursion, HadamardOneStep) {
  const auto field = evolve_recursion(hadamard(), kLeft, 1);
  EXPECT_NEAR(std::abs(field.at(-1).l - kS), 0.0, 1e-16);
  EXPECT_EQ(field.at(-1).r, Complex{});
  EXPECT_EQ(field.at(1).l, Complex{});
  EXPECT_NEAR(std::abs(field.at(1).r - kS), 0.0, 1e-16);
  EXPECT_EQ(field.at(0), Vec2{});
}

TEST(Recursion, TimeZeroIsInitialState) {
  const QubitState phi(kS, Complex(0, kS));
  const auto field = evolve_recursion(qwalk::testing::test_coins(1)[1], phi, 0);
  EXPECT_EQ(field.at(0), phi.vec());
  EXPECT_NEAR(distribution(field).prob.at(0), 1.0, 1e-15);
}

TEST(Distribution, HadamardTwoSteps) {
  for (auto method : {DistributionMethod::Paths, DistributionMethod::Recursion,
                      DistributionMethod::Fourier}) {
    const auto d = distribution(amplitudes(hadamard(), kLeft, 2, method));
    EXPECT_NEAR(d.at(-2), 0.25, 1e-15);
    EXPECT_NEAR(d.at(-1), 0.0, 1e-15);
    EXPECT_NEAR(d.at(0), 0.5, 1e-15);
    EXPECT_NEAR(d.at(1), 0.0, 1e-15);
    EXPECT_NEAR(d.at(2), 0.25, 1e-15);
  }
}

TEST(Distribution, HadamardTenStepsFrozen) {
  // from tests/oracles/derive_values.py
  const std::vector<double> expected{0.0009765625, 0.080078125, 0.4384765625, 0.0625,
                                     0.09765625,   0.0703125,   0.05078125,   0.0625,
                                     0.0869140625, 0.048828125, 0.0009765625};
  const auto d = distribution(evolve_recursion(hadamard(), kLeft, 10));
  for (int i = 0; i <= 10; ++i) EXPECT_NEAR(d.at(2 * i - 10), expected[i], 1e-14);
}

TEST(Distribution, SymmetricInitialState) {
  const QubitState phi(kS, Complex(0, kS));
  const auto d = distribution(evolve_recursion(hadamard(), phi, 10));
  const auto oracle = enumerate_distribution(hadamard(), phi, 10);
  for (int x = -10; x <= 10; ++x) {
    EXPECT_NEAR(d.at(x), d.at(-x), 1e-12);
    EXPECT_NEAR(d.at(x), oracle.at(x), 1e-13);
  }
}

TEST(DistributionViaPaths, SingleStep) {
  for (const Coin& c : qwalk::testing::test_coins(5, 3)) {
    const auto d = distribution_via_paths(c, kLeft, 1);
    EXPECT_NEAR(d.at(-1), std::norm(c.u().a), 1e-15);
    EXPECT_NEAR(d.at(1), std::norm(c.u().c), 1e-15);
  }
}

TEST(Distribution, ThreeWayAgreementSmallN) {
  std::mt19937_64 rng(8);
  for (const Coin& c : qwalk::testing::test_coins(8, 4)) {
    const QubitState phi = random_state(rng);
    for (int n = 0; n <= 12; ++n) {
      const auto a = distribution_via_paths(c, phi, n);
      const auto b = distribution(evolve_recursion(c, phi, n));
      const auto f = distribution(evolve_fourier(c, phi, n));
      EXPECT_LE(max_abs_diff(a, b), 1e-12);
      EXPECT_LE(max_abs_diff(a, f), 1e-12);
      EXPECT_LE(max_abs_diff(b, f), 1e-12);
      if (n >= 1) {
        EXPECT_LE(max_abs_diff(a, enumerate_distribution(c, phi, n)), 1e-13);
      }
      for (const auto* d : {&a, &b, &f}) {
        EXPECT_NEAR(d->total(), 1.0, 1e-12);
        for (double p : d->prob) EXPECT_GE(p, -1e-14);
      }
      for (int x = -n; x <= n; ++x)
        if ((x - n) % 2 != 0) EXPECT_EQ(b.at(x), 0.0);
    }
  }
}

TEST(Fourier, LargeNAgreesWithRecursion) {
  std::mt19937_64 rng(9);
  const QubitState phi = random_state(rng);
  for (const Coin& c : qwalk::testing::test_coins(1, 6)) {
    const auto a = distribution(evolve_recursion(c, phi, 1000));
    const auto b = distribution(evolve_fourier(c, phi, 1000));
    EXPECT_LE(max_abs_diff(a, b), 1e-10);
    EXPECT_NEAR(b.total(), 1.0, 1e-10);
  }
}

TEST(Fourier, SamplingInvarianceAboveNyquist) {
  std::mt19937_64 rng(10);
  for (const Coin& c : qwalk::testing::test_coins(3, 7)) {
    const QubitState phi = random_state(rng);
    for (int n : {1, 5, 40, 101}) {
      const auto a = evolve_fourier(c, phi, n, 2 * n + 2);
      const auto b = evolve_fourier(c, phi, n, 4 * n + 4);
      const auto odd = evolve_fourier(c, phi, n, 2 * n + 1);
      for (int x = -n; x <= n; ++x) {
        EXPECT_LE(std::abs(a.at(x).l - b.at(x).l) + std::abs(a.at(x).r - b.at(x).r), 1e-12);
        EXPECT_LE(std::abs(a.at(x).l - odd.at(x).l) + std::abs(a.at(x).r - odd.at(x).r), 1e-12);
      }
    }
  }
}

TEST(Fourier, RejectsAliasing) {
  EXPECT_THROW(evolve_fourier(hadamard(), kLeft, 10, 20), std::invalid_argument);
  EXPECT_NO_THROW(evolve_fourier(hadamard(), kLeft, 10, 21));
  EXPECT_EQ(default_fourier_samples(500), 1024);
  EXPECT_EQ(default_fourier_samples(0), 2);
}

TEST(Fourier, TimeZero) {
  const auto field = evolve_fourier(hadamard(), kLeft, 0);
  EXPECT_NEAR(std::abs(field.at(0).l - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(field.at(0).r), 0.0, 1e-15);
}

TEST(UXi, Examples) {
  const Coin h = hadamard();
  EXPECT_TRUE(MatNear(u_xi(h, 0.0), h.u(), 0.0));
  EXPECT_TRUE(MatNear(u_xi(h, std::numbers::pi), -1.0 * h.u(), 1e-15));
  const Complex i(0, 1);
  EXPECT_TRUE(MatNear(u_xi(h, std::numbers::pi / 2), Complex(kS) * Mat2{-i, -i, i, -i}, 1e-15));
}

TEST(UXi, IsDiagonalPhaseTimesCoinAndUnitary) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
  for (const Coin& c : qwalk::testing::test_coins(3, 13)) {
    for (int i = 0; i < 100; ++i) {
      const double xi = u(rng);
      const Mat2 m = u_xi(c, xi);
      const Mat2 diag{std::polar(1.0, -xi), 0.0, 0.0, std::polar(1.0, xi)};
      EXPECT_TRUE(MatNear(m, diag * c.u(), 1e-15));
      EXPECT_TRUE(MatNear(adjoint(m) * m, Mat2::identity(), 1e-13));
    }
  }
}

TEST(UXi, PowerIsEndpointExponentialSum) {
  const Coin c = qwalk::testing::test_coins(1, 14)[1];
  EXPECT_TRUE(MatNear(power(u_xi(c, 0.9), 9), sigma(c, 9, endpoint_exp(0.9)), 1e-12));
}

}  // namespace
