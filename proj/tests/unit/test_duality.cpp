#include <gtest/gtest.h>

#include <vector>

#include "submin/bruteforce.hpp"
#include "submin/duality.hpp"
#include "submin/errors.hpp"
#include "submin/examples.hpp"

namespace submin {
namespace {

using Blocks = std::vector<std::vector<double>>;

ValueOracle corner_example() {
  return ValueOracle(ProductDomain::uniform(2, 2), [](std::span<const int> x) { return x[0] + x[1] > 0 ? 1.0 : 0.0; });
}

ValueOracle modular_sum(int n, int k) {
  return ValueOracle(ProductDomain::uniform(n, k), [](std::span<const int> x) {
    double s = 0.0;
    for (int v : x) s += v;
    return s;
  });
}

DualPoint vertex(const ValueOracle& h, const BlockVector& rho) {
  const GreedyOutput g = greedy(h, rho);
  return DualPoint{g.w, Provenance{{1.0}, {g.ordering}}};
}

TEST(DualValue, WFormula) {
  EXPECT_EQ(dual_value_W(BlockVector(Blocks{{1.0}, {0.0}})), 0.0);
  EXPECT_EQ(dual_value_W(BlockVector(Blocks{{-0.5}, {0.2}})), -0.5);
}

TEST(DualValue, BFormula) {
  EXPECT_EQ(dual_value_B(BlockVector(Blocks{{1.0}, {0.0}})), 0.0);
  EXPECT_EQ(dual_value_B(BlockVector(Blocks{{-1.0, 0.5}})), -1.0);
}

TEST(DualValue, BothReachMinimumOnCornerExample) {
  const BlockVector w(Blocks{{1.0}, {0.0}});
  EXPECT_EQ(dual_value_B(w), exhaustive_min(corner_example()).value);
  EXPECT_EQ(dual_value_W(w), exhaustive_min(corner_example()).value);
}

TEST(CertifyGap, OptimalPairOnCornerExample) {
  const ValueOracle h = corner_example();
  const BlockVector rho(Blocks{{0.6}, {0.3}});
  const GapReport r = certify_gap(h, rho, vertex(h, rho));
  EXPECT_EQ(r.gap, 0.0);
  EXPECT_EQ(r.primal_point, (Point{0, 0}));
  EXPECT_FALSE(r.provenance_missing);
  EXPECT_TRUE(r.warnings.empty());
}

TEST(CertifyGap, ModularWithHalfRho) {
  const ValueOracle h = modular_sum(2, 3);
  const BlockVector rho(h.domain(), 0.5);
  const GapReport r = certify_gap(h, rho, vertex(h, rho));
  EXPECT_EQ(r.dual_value, 0.0);
  EXPECT_EQ(r.gap, 0.0);
  EXPECT_EQ(r.primal_best, exhaustive_min(h).value);
}

TEST(CertifyGap, AveragedProvenanceOnFigure1IsWeaklyDual) {
  const Instance f = make_figure1(21);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Rho a = random_feasible_rho(f.domain(), 2 * s);
    const Rho b = random_feasible_rho(f.domain(), 2 * s + 1);
    const GreedyOutput ga = greedy(f.oracle, a);
    const GreedyOutput gb = greedy(f.oracle, b);
    BlockVector w(f.domain());
    for (std::size_t e = 0; e < w.size(); ++e) w.flat()[e] = 0.3 * ga.w.flat()[e] + 0.7 * gb.w.flat()[e];
    const DualPoint dual{w, Provenance{{0.3, 0.7}, {ga.ordering, gb.ordering}}};
    CertifyOptions options;
    options.verify_provenance = true;
    const GapReport r = certify_gap(f.oracle, a, dual, options);
    EXPECT_GE(r.gap, -1e-9);
    EXPECT_TRUE(r.warnings.empty());
  }
}

TEST(CertifyGap, RawPointIsFlagged) {
  const ValueOracle h = corner_example();
  const BlockVector zero(h.domain(), 0.0);
  const GapReport r = certify_gap(h, zero, DualPoint::raw(zero));
  EXPECT_TRUE(r.provenance_missing);
  EXPECT_FALSE(r.warnings.empty());
}

TEST(CertifyGap, ForgedProvenanceIsFlagged) {
  const ValueOracle h = corner_example();
  const BlockVector rho(Blocks{{0.6}, {0.3}});
  DualPoint d = vertex(h, rho);
  d.w(1, 0) -= 0.5;
  CertifyOptions options;
  options.verify_provenance = true;
  EXPECT_FALSE(certify_gap(h, rho, d, options).warnings.empty());
}

TEST(CertifyGap, ShapeMismatchThrows) {
  const ValueOracle h = corner_example();
  EXPECT_THROW(certify_gap(h, BlockVector(Blocks{{0.5}, {0.5}}), DualPoint::raw(BlockVector(Blocks{{0.0, 0.0}}))),
               InvalidArgument);
}

TEST(Provenance, Recomputes) {
  const Instance f = make_random_submodular(std::vector<int>{3, 4}, 8);
  const DualPoint d = vertex(f.oracle, random_feasible_rho(f.domain(), 4));
  EXPECT_TRUE(d.provenance->is_convex());
  EXPECT_EQ(recompute_from_provenance(f.oracle, *d.provenance), d.w);
  EXPECT_FALSE((Provenance{{0.5, 0.6}, {}}).is_convex());
  EXPECT_FALSE((Provenance{{1.5, -0.5}, {}}).is_convex());
}

TEST(WMembership, GreedyOutputsAreMembers) {
  const Instance f = make_random_submodular(std::vector<int>{4, 4, 4}, 21);
  const double h0 = f.oracle(f.domain().bottom());
  for (std::uint64_t s = 0; s < 200; ++s) {
    const Rho rho = random_feasible_rho(f.domain(), s);
    const GreedyOutput g = greedy(f.oracle, rho, s);
    const WMembershipReport r = check_W_membership(f.oracle, g.w);
    EXPECT_TRUE(r.member) << "seed " << s << " violation " << r.worst_violation;
    EXPECT_LE(r.worst_violation, 1e-9);
    EXPECT_NEAR(r.top_residual, 0.0, 1e-12);
    EXPECT_NEAR(dot(g.w, rho), g.value - h0, 1e-12);
  }
}

TEST(WMembership, PerturbedVertexViolates) {
  const Instance f = make_random_submodular(std::vector<int>{4, 4, 4}, 21);
  BlockVector w = greedy(f.oracle, random_feasible_rho(f.domain(), 0)).w;
  w(1, 0) += 1e-3;
  w(1, 1) -= 1e-3;
  const WMembershipReport r = check_W_membership(f.oracle, w);
  EXPECT_FALSE(r.member);
  EXPECT_NEAR(r.worst_violation, 1e-3, 1e-9);
  EXPECT_EQ(r.witness[1], 1);
}

TEST(WMembership, ConstantFunctionZeroW) {
  const ValueOracle h(ProductDomain::uniform(2, 3), [](std::span<const int>) { return 2.5; });
  const WMembershipReport r = check_W_membership(h, BlockVector(h.domain(), 0.0));
  EXPECT_TRUE(r.member);
  EXPECT_EQ(r.worst_violation, 0.0);
  EXPECT_EQ(r.witness, (Point{0, 0}));
}

TEST(KCone, Examples) {
  EXPECT_TRUE(check_K_cone(BlockVector(Blocks{{-1.0, 1.0}})));
  EXPECT_FALSE(check_K_cone(BlockVector(Blocks{{1.0, -1.0}})));
  EXPECT_FALSE(check_K_cone(BlockVector(Blocks{{-1.0, 0.5}})));
}

TEST(KCone, VertexPlusConeIsInW) {
  const Instance f = make_random_submodular(std::vector<int>{4, 3}, 30);
  BlockVector w = greedy(f.oracle, random_feasible_rho(f.domain(), 1)).w;
  const BlockVector kappa({{-0.2, 0.1, 0.1}, {-0.5, 0.5}});
  ASSERT_TRUE(check_K_cone(kappa));
  for (std::size_t e = 0; e < w.size(); ++e) w.flat()[e] += kappa.flat()[e];
  EXPECT_TRUE(check_W_membership(f.oracle, w).member);
}

}  // namespace
}  // namespace submin
