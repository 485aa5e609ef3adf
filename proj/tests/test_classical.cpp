#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "qwalk/classical.hpp"
#include "qwalk/decoherence.hpp"

using namespace qwalk;

namespace {

TEST(ClassicalSigma, Expectations) {
  const StepWeights fair(0.5);
  EXPECT_NEAR(std::abs(classical_sigma(fair, 9, constant_functional(1.0)) - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(classical_sigma(StepWeights(0.3), 9, constant_functional(1.0)) - 1.0), 0.0,
              1e-14);
  EXPECT_NEAR(std::abs(classical_sigma(fair, 9, [](const PathView& p) { return p.endpoint(); })),
              0.0, 1e-14);
  const Complex second =
      classical_sigma(fair, 10, [](const PathView& p) { return double(p.endpoint()) * p.endpoint(); });
  EXPECT_NEAR(second.real(), 10.0, 1e-12);
}

TEST(ClassicalSigma, BinomialEndpoints) {
  for (double p : {0.5, 0.25, 0.9}) {
    const StepWeights wts(p);
    for (int n = 1; n <= 16; ++n) {
      for (int right = 0; right <= n; ++right) {
        const int x = 2 * right - n;
        const double exact = double(binomial(n, right)) * std::pow(p, n - right) *
                             std::pow(1.0 - p, right);
        EXPECT_NEAR(classical_sigma(wts, n, endpoint_indicator(x)).real(), exact, 1e-13);
      }
    }
  }
}

TEST(Binomial, ExactIntegers) {
  EXPECT_EQ(binomial(20, 10), 184756u);
  EXPECT_EQ(binomial(60, 30), 118264581564861424u);
  EXPECT_EQ(binomial(5, 6), 0u);
  EXPECT_THROW(binomial(61, 3), std::out_of_range);
}

TEST(DoobMeyer, FairWalkMartingaleHasZeroMean) {
  const StepWeights fair(0.5);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto f = FunctionTable::random(10, seed);
    const auto dm = doob_meyer(fair, 10, f);
    EXPECT_LE(std::abs(dm.martingale_expect), 1e-13);
    EXPECT_LE(std::abs(dm.total_expect - dm.martingale_expect - dm.compensator_expect), 1e-13);
    for (const Complex& inc : martingale_increments(fair, 10, f)) EXPECT_LE(std::abs(inc), 1e-14);
  }
}

TEST(DoobMeyer, SquareFunction) {
  const auto dm = doob_meyer(StepWeights(0.5), 10, FunctionTable::square(10));
  EXPECT_NEAR(dm.compensator_expect.real(), 10.0, 1e-12);
  EXPECT_NEAR(dm.total_expect.real(), 10.0, 1e-12);
}

TEST(DoobMeyer, ConstantFunction) {
  const auto dm = doob_meyer(StepWeights(0.2), 8, FunctionTable::constant(8, 5.0));
  EXPECT_EQ(dm.martingale_expect, Complex{});
  EXPECT_EQ(dm.compensator_expect, Complex{});
  EXPECT_EQ(dm.total_expect, Complex{});
}

TEST(DoobMeyer, BiasedWalkStillDecomposes) {
  const auto f = FunctionTable::random(9, 3);
  const auto dm = doob_meyer(StepWeights(0.8), 9, f);
  EXPECT_GT(std::abs(doob_meyer(StepWeights(0.8), 9, FunctionTable::identity(9)).martingale_expect),
            1.0);
  EXPECT_LE(std::abs(dm.total_expect - dm.martingale_expect - dm.compensator_expect), 1e-13);
}

TEST(ClassicalTheorem, DeterministicLeftWalk) {
  const int n = 7;
  const StepWeights left(1.0);
  const auto dm = doob_meyer(left, n, FunctionTable::absolute(n));
  EXPECT_NEAR(dm.total_expect.real(), n, 1e-15);
  EXPECT_NEAR(dm.martingale_expect.real(), n - 1, 1e-15);
  EXPECT_NEAR(dm.compensator_expect.real(), 1.0, 1e-15);
  EXPECT_EQ(classical_theorem_check(left, n, FunctionTable::absolute(n)), 0.0);
}

TEST(ClassicalTheorem, RandomFunctions) {
  for (double p : {0.5, 0.1, 0.77}) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto f = FunctionTable::random(12, seed);
      EXPECT_LE(classical_theorem_check(StepWeights(p), 12, f), 1e-13 * 12 * f.max_abs());
    }
  }
}

TEST(ClassicalTheorem, WeightedPerPathIdentity) {
  // Oracle: sum of per-path scalar residual weights equals zero path by path.
  const int n = 8;
  const StepWeights wts(0.35);
  const auto f = FunctionTable::random(n, 4);
  double weighted = 0.0;
  for (PathIndex k = 0; k < path_count(n); ++k) {
    const Path path = path_from_index(n, k);
    int rights = 0;
    for (int b : path.bits()) rights += b;
    weighted += std::pow(wts.p(), n - rights) * std::pow(wts.q(), rights) * scalar_ito_check(path, f);
  }
  EXPECT_LE(weighted, 1e-13);
}

TEST(ClassicalTheorem, IdentityFunctionHasNoCompensator) {
  const auto dm = doob_meyer(StepWeights(0.4), 9, FunctionTable::identity(9));
  EXPECT_EQ(dm.compensator_expect, Complex{});
}

TEST(StepWeights, Validation) {
  EXPECT_THROW(StepWeights(1.5), std::invalid_argument);
  EXPECT_THROW(StepWeights(-0.1), std::invalid_argument);
  EXPECT_DOUBLE_EQ(StepWeights(0.3).q(), 0.7);
}

TEST(ClassicalDecoherence, IndicatorIntegralIsSquaredProbability) {
  // Scalar weights in place of P_k phi: D(k, k') = p_k p_k'.
  std::mt19937_64 rng(41);
  std::bernoulli_distribution pick(0.4);
  const int n = 9;
  const StepWeights wts(0.6);
  std::map<double, double> levels;
  double mass = 0.0;
  for (PathIndex k = 0; k < path_count(n); ++k) {
    const Path path = path_from_index(n, k);
    int rights = 0;
    for (int b : path.bits()) rights += b;
    const double weight = std::pow(wts.p(), n - rights) * std::pow(wts.q(), rights);
    const bool in_a = pick(rng);
    levels[in_a ? 1.0 : 0.0] += weight;
    if (in_a) mass += weight;
  }
  EXPECT_NEAR(min_kernel_integral(levels), mass * mass, 1e-14);
}

}  // namespace
