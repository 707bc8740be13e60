#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "submin/blocks.hpp"
#include "submin/domain.hpp"
#include "submin/extension.hpp"

namespace submin {

struct ExhaustiveMinimum {
  Point point;               ///< lexicographically smallest argmin
  double value = 0.0;
  std::uint64_t ties = 0;    ///< number of points attaining exactly the minimum
};

/// Global minimum by full enumeration; exactly prod_i k_i oracle calls.
ExhaustiveMinimum exhaustive_min(const ValueOracle& oracle, const AuditBudget& budget = {});

/// Extension value by integrating t -> H(theta(rho, t)) piece by piece, without
/// the greedy telescoping:
///   sum over gaps between consecutive distinct thresholds of length * H(theta(midpoint))
///   + min(rho) H(top) + (1 - max(rho)) H(0).
/// Evaluates H once on each of the (distinct thresholds + 1) open intervals of
/// the line and once at each of 0 and top; the two unbounded intervals are
/// cross-checked against the endpoint values.
double extension_by_breakpoint_integration(const ValueOracle& oracle, const BlockVector& rho);

struct ConvexityWitness {
  Rho a;
  Rho b;
  double midpoint_value = 0.0;  ///< h((a + b) / 2)
  double chord_value = 0.0;     ///< (h(a) + h(b)) / 2
};

struct ConvexityProbeResult {
  bool pass = true;
  int segments_checked = 0;
  std::optional<ConvexityWitness> witness;
};

using ExtensionEvaluator = std::function<double(const BlockVector&)>;

/// Samples random feasible pairs (rho, rho') and checks midpoint convexity
/// h((rho + rho')/2) <= (h(rho) + h(rho'))/2 + tol. Stops at the first violation.
ConvexityProbeResult convexity_probe(const ExtensionEvaluator& extension, const ProductDomain& domain,
                                     int segments, std::uint64_t seed, double tol = 1e-9);

/// Uniformly random feasible Rho: each block is a sorted (descending) sample of
/// k_i - 1 uniforms on [0, 1].
Rho random_feasible_rho(const ProductDomain& domain, std::uint64_t seed);

}  // namespace submin
