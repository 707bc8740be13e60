#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "submin/isotonic.hpp"

namespace submin {
namespace {

using Blocks = std::vector<std::vector<double>>;

void expect_near(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], tol) << "entry " << i;
}

TEST(Pava, PoolsAViolatingPair) {
  EXPECT_EQ(pava_nonincreasing({{0.2, 0.8}, {}}), (std::vector<double>{0.5, 0.5}));
}

TEST(Pava, FeasibleInputIsFixed) {
  EXPECT_EQ(pava_nonincreasing({{3, 2, 1}, {}}), (std::vector<double>{3, 2, 1}));
}

TEST(Pava, WeightedExample) {
  // Pooling (3,2) with weights (1,2) gives 7/3 > 1, so the first entry must join too.
  const std::vector<double> fit = pava_nonincreasing({{1, 3, 2}, {1, 1, 2}});
  const testing::PavaReference ref = testing::pava_by_pooling({1, 3, 2}, {1, 1, 2});
  expect_near(fit, ref.fit, 1e-12);
  expect_near(fit, {2, 2, 2}, 1e-12);
}

TEST(Pava, EmptyAndSingleton) {
  EXPECT_TRUE(pava_nonincreasing({{}, {}}).empty());
  EXPECT_EQ(pava_nonincreasing({{4.5}, {}}), (std::vector<double>{4.5}));
}

TEST(Pava, MatchesPoolingOracle) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> weight(0.1, 3.0);
  std::uniform_int_distribution<int> length(1, 8);
  for (int trial = 0; trial < 500; ++trial) {
    const int m = length(rng);
    std::vector<double> y(m), w(m);
    for (int i = 0; i < m; ++i) {
      y[i] = normal(rng);
      w[i] = trial % 2 ? weight(rng) : 1.0;
    }
    const std::vector<double> fit = pava_nonincreasing({y, w});
    expect_near(fit, testing::pava_by_pooling(y, w).fit, 1e-10);
    for (int i = 1; i < m; ++i) EXPECT_LE(fit[i], fit[i - 1]);
  }
}

TEST(Pava, InplaceAgrees) {
  std::vector<double> v{0.1, 0.7, 0.3, 0.9, -1.0};
  const std::vector<double> expected = pava_nonincreasing({v, {}});
  pava_nonincreasing_inplace(v);
  EXPECT_EQ(v, expected);
}

TEST(ProjectFeasible, Examples) {
  EXPECT_EQ(project_feasible(BlockVector(Blocks{{1.4, -0.2}})).to_nested(), (std::vector<std::vector<double>>{{1.0, 0.0}}));
  EXPECT_EQ(project_feasible(BlockVector(Blocks{{0.2, 0.8}})).to_nested(), (std::vector<std::vector<double>>{{0.5, 0.5}}));
}

// Projection onto {1 >= v_1 >= ... >= v_m >= 0} by enumerating pooling patterns
// and, for each pool, clamping its mean; the best feasible candidate wins.
std::vector<double> box_projection_reference(const std::vector<double>& y) {
  const std::size_t m = y.size();
  std::vector<double> best;
  double best_loss = 1e300;
  for (std::uint64_t cuts = 0; cuts < (std::uint64_t{1} << (m - 1)); ++cuts) {
    std::vector<double> fit(m);
    std::size_t begin = 0;
    for (std::size_t s = 0; s < m; ++s) {
      if (s + 1 != m && !((cuts >> s) & 1U)) continue;
      double mean = 0.0;
      for (std::size_t j = begin; j <= s; ++j) mean += y[j];
      mean = std::clamp(mean / double(s + 1 - begin), 0.0, 1.0);
      for (std::size_t j = begin; j <= s; ++j) fit[j] = mean;
      begin = s + 1;
    }
    bool ok = true;
    for (std::size_t j = 1; j < m; ++j) ok = ok && fit[j] <= fit[j - 1];
    if (!ok) continue;
    double loss = 0.0;
    for (std::size_t j = 0; j < m; ++j) loss += (fit[j] - y[j]) * (fit[j] - y[j]);
    if (loss < best_loss - 1e-14) {
      best_loss = loss;
      best = fit;
    }
  }
  return best;
}

TEST(ProjectFeasible, MatchesBruteForce) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> value(-0.5, 1.5);
  std::uniform_int_distribution<int> length(1, 6);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> y(length(rng));
    for (double& v : y) v = value(rng);
    const Rho p = project_feasible(BlockVector({y}));
    const std::vector<double> got(p.flat().begin(), p.flat().end());
    expect_near(got, box_projection_reference(y), 1e-12);
    EXPECT_TRUE(is_feasible(p));
  }
}

TEST(ProjectMonotone, WeightedBlocks) {
  const BlockVector raw({{1, 3, 2}, {0.0, 5.0}});
  const BlockVector weights({{1, 1, 2}, {1, 1}});
  const Rho p = project_monotone(raw, &weights);
  EXPECT_NEAR(p(0, 0), 2.0, 1e-12);
  EXPECT_NEAR(p(0, 2), 2.0, 1e-12);
  EXPECT_NEAR(p(1, 0), 2.5, 1e-12);
  EXPECT_NEAR(p(1, 1), 2.5, 1e-12);
  // No box: values may leave [0, 1].
  EXPECT_FALSE(is_feasible(p));
  EXPECT_TRUE(is_nonincreasing(p));
}

}  // namespace
}  // namespace submin
