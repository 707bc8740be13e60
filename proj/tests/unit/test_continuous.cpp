#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "submin/bruteforce.hpp"
#include "submin/continuous.hpp"
#include "submin/errors.hpp"
#include "submin/examples.hpp"

namespace submin {
namespace {

double figure1_at(std::span<const double> u) { return figure1_function(u[0], u[1]); }

TEST(BoxSpec, Validation) {
  EXPECT_NO_THROW(BoxSpec::cube(2, -1.0, 1.0, 3.0).validate());
  EXPECT_THROW((BoxSpec{{0.0}, {0.0}, 1.0}).validate(), InvalidArgument);
  EXPECT_THROW((BoxSpec{{0.0}, {1.0}, -1.0}).validate(), InvalidArgument);
  EXPECT_THROW((BoxSpec{{0.0, 0.0}, {1.0}, 1.0}).validate(), InvalidArgument);
  EXPECT_DOUBLE_EQ((BoxSpec{{0.0, -2.0}, {1.0, 1.0}, 1.0}).edge(), 3.0);
}

TEST(Discretize, LinearIsModularWithExactIncrements) {
  const BoxSpec spec = BoxSpec::cube(2, 0.0, 2.0, 3.0);
  const ValueOracle h = discretize([](std::span<const double> u) { return 2.0 * u[0] - u[1]; }, spec, 5);
  EXPECT_DOUBLE_EQ(h(Point{1, 0}) - h(Point{0, 0}), 1.0);
  EXPECT_DOUBLE_EQ(h(Point{3, 2}) - h(Point{3, 1}), -0.5);
  const SubmodularityReport r = is_submodular_bruteforce(h, 1e-12);
  EXPECT_TRUE(r.submodular);
  EXPECT_DOUBLE_EQ(h.lipschitz()[0], 1.5);
}

TEST(Discretize, Figure1IsSubmodular) {
  const ValueOracle h = discretize(figure1_at, BoxSpec::cube(2, -1.0, 1.0, 4.0), 21);
  EXPECT_TRUE(is_submodular_bruteforce(h).submodular);
  EXPECT_EQ(h(Point{3, 17}), make_figure1(21).oracle(Point{3, 17}));
}

TEST(Discretize, RefinementMovesMinimumLittle) {
  const BoxSpec box = BoxSpec::cube(2, -1.0, 1.0, 0.0);
  const double G = estimate_lipschitz_linf(figure1_at, box, 201);
  const double coarse = exhaustive_min(discretize(figure1_at, box, 21)).value;
  const double fine = exhaustive_min(discretize(figure1_at, box, 41)).value;
  EXPECT_NEAR(coarse, -1.9920417075980124, 1e-14);
  EXPECT_NEAR(fine, -1.9993368740371071, 1e-14);
  EXPECT_LE(std::abs(coarse - fine), G * 2.0 / 20.0);
}

TEST(Discretize, NonFiniteSampleThrows) {
  const ValueOracle h = discretize([](std::span<const double> u) { return 1.0 / u[0]; }, BoxSpec::cube(1, 0.0, 1.0, 1.0), 3);
  EXPECT_THROW(h(Point{0}), NonFiniteValue);
  EXPECT_NO_THROW(h(Point{1}));
}

TEST(Discretize, PerVariableSizes) {
  const std::vector<int> k{3, 5};
  const ValueOracle h = discretize(figure1_at, BoxSpec::cube(2, -1.0, 1.0, 2.0), k);
  EXPECT_EQ(h.domain().size(0), 3);
  EXPECT_EQ(h.domain().size(1), 5);
  EXPECT_DOUBLE_EQ(h.lipschitz()[1], 1.0);
  EXPECT_THROW(discretize(figure1_at, BoxSpec::cube(2, -1.0, 1.0, 2.0), std::vector<int>{3}), InvalidArgument);
}

TEST(PlanAccuracy, FormulaPlugIn) {
  const AccuracyPlan p = plan_accuracy(1.0, 1.0, 2, 0.5);
  EXPECT_EQ(p.k, 4);
  EXPECT_EQ(p.iterations, 64u);
  EXPECT_DOUBLE_EQ(p.evaluations, 64.0 * 2 * 4);
}

TEST(PlanAccuracy, HalvingEpsilonScales) {
  const AccuracyPlan a = plan_accuracy(1.0, 1.0, 2, 0.5);
  const AccuracyPlan b = plan_accuracy(1.0, 1.0, 2, 0.25);
  EXPECT_EQ(b.k, 2 * a.k);
  EXPECT_EQ(b.iterations, 4 * a.iterations);
}

TEST(PlanAccuracy, FloorAndErrors) {
  EXPECT_EQ(plan_accuracy(0.0, 1.0, 3, 0.1).k, 2);
  EXPECT_THROW(plan_accuracy(1.0, 1.0, 2, 0.0), InvalidArgument);
  EXPECT_THROW(plan_accuracy(1.0, 0.0, 2, 0.1), InvalidArgument);
}

TEST(EstimateLipschitz, LinearFunction) {
  const double G = estimate_lipschitz_linf([](std::span<const double> u) { return 2.0 * u[0] - 3.0 * u[1]; },
                                           BoxSpec::cube(2, 0.0, 1.0, 0.0), 11);
  EXPECT_NEAR(G, 5.0, 1e-12);
}

}  // namespace
}  // namespace submin
