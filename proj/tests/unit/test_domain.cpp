#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "submin/domain.hpp"
#include "submin/errors.hpp"
#include "submin/examples.hpp"

namespace submin {
namespace {

ValueOracle modular_sum(int n, int k) {
  return ValueOracle(ProductDomain::uniform(n, k), [](std::span<const int> x) {
    double s = 0.0;
    for (int v : x) s += v;
    return s;
  });
}

ValueOracle product_x1x2() {
  return ValueOracle(ProductDomain::uniform(2, 2), [](std::span<const int> x) { return double(x[0] * x[1]); });
}

TEST(ProductDomain, RejectsDegenerateShapes) {
  EXPECT_THROW(ProductDomain(std::vector<int>{}), InvalidArgument);
  EXPECT_THROW(ProductDomain({3, 1}), InvalidArgument);
  EXPECT_THROW(ProductDomain({2, 2}, {{0.0, 1.0}}), InvalidArgument);
  EXPECT_THROW(ProductDomain({3}, {{0.0, 1.0, 1.0}}), InvalidArgument);
  EXPECT_THROW(ProductDomain({2}, {{0.0, 1.0, 2.0}}), InvalidArgument);
}

TEST(ProductDomain, OffsetsAndCardinality) {
  ProductDomain d({3, 2, 5});
  EXPECT_EQ(d.num_blocks(), 3);
  EXPECT_EQ(d.num_entries(), 2 + 1 + 4);
  EXPECT_EQ(d.entry_offset(0), 0);
  EXPECT_EQ(d.entry_offset(1), 2);
  EXPECT_EQ(d.entry_offset(2), 3);
  EXPECT_EQ(d.cardinality(), 30u);
  EXPECT_EQ(d.top(), (Point{2, 1, 4}));
}

TEST(ProductDomain, CardinalitySaturates) {
  EXPECT_EQ(ProductDomain::uniform(40, 1000).cardinality(), UINT64_MAX);
}

TEST(ProductDomain, LexicographicEnumeration) {
  ProductDomain d({2, 3});
  Point x = d.bottom();
  std::vector<Point> seen;
  do {
    EXPECT_EQ(d.linear_index(x), seen.size());
    seen.push_back(x);
  } while (d.next(x));
  ASSERT_EQ(seen.size(), 6u);
  EXPECT_EQ(seen[1], (Point{0, 1}));
  EXPECT_EQ(seen[3], (Point{1, 0}));
  EXPECT_EQ(x, d.bottom());
}

TEST(ProductDomain, UniformGridCoordinates) {
  ProductDomain d = ProductDomain::uniform_grid(2, 5, -1.0, 1.0);
  ASSERT_TRUE(d.has_grid());
  EXPECT_DOUBLE_EQ(d.coordinate(0, 0), -1.0);
  EXPECT_DOUBLE_EQ(d.coordinate(1, 2), 0.0);
  EXPECT_DOUBLE_EQ(d.coordinate(1, 4), 1.0);
}

TEST(ProductDomain, SubBoxSlicesGrid) {
  ProductDomain d = ProductDomain::uniform_grid(2, 5, 0.0, 4.0);
  std::vector<int> lo{1, 2}, hi{3, 2};
  ProductDomain sub = d.sub_box(lo, hi);
  EXPECT_EQ(sub.size(0), 3);
  EXPECT_EQ(sub.size(1), 1);
  EXPECT_EQ(sub.num_entries(), 2);
  EXPECT_DOUBLE_EQ(sub.coordinate(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(sub.coordinate(1, 0), 2.0);
  std::vector<int> bad{4, 0};
  EXPECT_THROW(d.sub_box(bad, hi), RangeError);
}

TEST(ValueOracle, CountsEveryCall) {
  ValueOracle h = modular_sum(2, 3);
  EXPECT_EQ(h.evaluations(), 0u);
  Point x{1, 2};
  const double a = h(x);
  const double b = h(x);
  EXPECT_EQ(a, b);
  EXPECT_EQ(h.evaluations(), 2u);
  ValueOracle copy = h;
  copy(x);
  EXPECT_EQ(h.evaluations(), 3u);
  ValueOracle fresh = h.with_fresh_counter();
  fresh(x);
  EXPECT_EQ(fresh.evaluations(), 1u);
  EXPECT_EQ(h.evaluations(), 3u);
}

TEST(ValueOracle, RejectsBadLipschitzBounds) {
  ValueOracle h = modular_sum(2, 3);
  EXPECT_THROW(h.set_lipschitz({1.0}), InvalidArgument);
  EXPECT_THROW(h.set_lipschitz({1.0, -1.0}), InvalidArgument);
  EXPECT_THROW(h.set_lipschitz({1.0, NAN}), InvalidArgument);
  h.set_lipschitz({1.0, 1.0});
  EXPECT_TRUE(h.has_lipschitz());
}

TEST(ValueOracle, RestrictOffsetsIntoParent) {
  ValueOracle h(ProductDomain::uniform(2, 2), [](std::span<const int> x) { return 10.0 * x[0] + x[1]; });
  std::vector<int> lo{1, 0}, hi{1, 1};
  ValueOracle sub = h.restrict(lo, hi);
  EXPECT_EQ(sub.domain().size(0), 1);
  Point y{0, 1};
  EXPECT_EQ(sub(y), h(Point{1, 1}));
  EXPECT_EQ(sub.evaluations(), h.evaluations());
}

TEST(ValueOracle, RestrictComposes) {
  ValueOracle h(ProductDomain::uniform(2, 6), [](std::span<const int> x) { return 10.0 * x[0] + x[1]; });
  std::vector<int> lo1{1, 2}, hi1{5, 5};
  ValueOracle a = h.restrict(lo1, hi1);
  std::vector<int> lo2{2, 1}, hi2{3, 2};
  ValueOracle b = a.restrict(lo2, hi2);
  EXPECT_EQ(b.offset()[0], 3);
  EXPECT_EQ(b.offset()[1], 3);
  EXPECT_EQ(b(Point{1, 1}), 44.0);
}

TEST(Submodularity, ModularPasses) {
  const SubmodularityReport r = is_submodular_bruteforce(modular_sum(2, 2));
  EXPECT_TRUE(r.submodular);
  EXPECT_FALSE(r.witness.has_value());
}

TEST(Submodularity, ProductFailsWithWitness) {
  const SubmodularityReport r = is_submodular_bruteforce(product_x1x2());
  ASSERT_FALSE(r.submodular);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->x, (Point{0, 0}));
  EXPECT_EQ(r.witness->i, 0);
  EXPECT_EQ(r.witness->j, 1);
  EXPECT_DOUBLE_EQ(r.witness->excess, 1.0);
}

TEST(Submodularity, Figure1GridPasses) {
  EXPECT_TRUE(is_submodular_bruteforce(make_figure1(21).oracle).submodular);
}

TEST(Submodularity, RestrictedFigure1Passes) {
  const Instance f = make_figure1(21);
  std::vector<int> lo{3, 5}, hi{15, 12};
  EXPECT_TRUE(is_submodular_bruteforce(f.oracle.restrict(lo, hi)).submodular);
}

TEST(Submodularity, BudgetIsEnforced) {
  AuditBudget tiny;
  tiny.max_points = 3;
  EXPECT_THROW(is_submodular_bruteforce(modular_sum(2, 2), 1e-9, tiny), BudgetExceeded);
  EXPECT_THROW(tabulate(modular_sum(2, 2), tiny), BudgetExceeded);
}

TEST(Tabulate, LexicographicValues) {
  const std::vector<double> v = tabulate(modular_sum(2, 2));
  EXPECT_EQ(v, (std::vector<double>{0, 1, 1, 2}));
}

TEST(MeasureLipschitz, MaxUnitDifference) {
  ValueOracle h(ProductDomain::uniform(2, 3), [](std::span<const int> x) { return 3.0 * x[0] - 0.5 * x[1] * x[1]; });
  const std::vector<double> b = measure_lipschitz(h);
  EXPECT_DOUBLE_EQ(b[0], 3.0);
  EXPECT_DOUBLE_EQ(b[1], 1.5);
}

TEST(SetFunction, MaskAndOracle) {
  SetFunction g(3, [](std::span<const int> a) { return double(a[0] + 2 * a[1] + 4 * a[2]); });
  EXPECT_EQ(g.at_mask(0b101), 5.0);
  ValueOracle h = g.as_oracle();
  EXPECT_EQ(h.domain().cardinality(), 8u);
  EXPECT_EQ(h(Point{0, 1, 1}), 6.0);
  EXPECT_THROW(SetFunction(0, [](std::span<const int>) { return 0.0; }), InvalidArgument);
}

}  // namespace
}  // namespace submin
