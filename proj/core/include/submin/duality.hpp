#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "submin/blocks.hpp"
#include "submin/domain.hpp"
#include "submin/extension.hpp"

namespace submin {

/// Tolerance for polyhedral inequalities.
inline constexpr double kPolyhedralTolerance = 1e-9;

/// Convex combination of greedy vertices, one ordering per vertex.
struct Provenance {
  std::vector<double> weights;
  std::vector<Ordering> orderings;

  /// Weights nonnegative and summing to one within tol.
  bool is_convex(double tol = kPolyhedralTolerance) const;
};

/// Candidate element of B(H). Without provenance the point is "raw" and
/// cannot certify a lower bound.
struct DualPoint {
  BlockVector w;
  std::optional<Provenance> provenance;

  static DualPoint raw(BlockVector w) { return DualPoint{std::move(w), std::nullopt}; }
  bool certified() const { return provenance.has_value(); }
};

/// sum_s weight_s * greedy_vertex(ordering_s). Issues (r + 1) calls per vertex.
BlockVector recompute_from_provenance(const ValueOracle& oracle, const Provenance& provenance);

/// sum_i sum_{x_i} min(w_i(x_i), 0): the dual objective over W(H).
double dual_value_W(const BlockVector& w);
/// sum_i min over x_i in {0..k_i-1} of the cumulative sum of w_i up to x_i
/// (empty sum = 0): the dual objective over B(H).
double dual_value_B(const BlockVector& w);

struct GapReport {
  double primal_best = 0.0;  ///< min of H along the rounding chain
  Point primal_point;
  double dual_value = 0.0;   ///< H(0) + dual_value_B(w)
  double gap = 0.0;          ///< primal_best - dual_value
  std::uint64_t evals = 0;
  double wallclock_ms = 0.0;
  bool provenance_missing = false;
  std::vector<std::string> warnings;
};

struct CertifyOptions {
  /// Recompute w from its provenance and compare (costs oracle calls).
  bool verify_provenance = false;
  double tolerance = kPolyhedralTolerance;
};

/// Primal value from rounding rho, dual value from w.
GapReport certify_gap(const ValueOracle& oracle, const BlockVector& rho, const DualPoint& dual,
                      const CertifyOptions& options = {});

struct WMembershipReport {
  bool member = true;
  /// max_x sum_i v_i(x_i) - (H(x) - H(0)), with v the cumulative sums of w.
  double worst_violation = 0.0;
  Point witness;             ///< lexicographically smallest maximizer
  double top_residual = 0.0; ///< sum of all w minus (H(top) - H(0))
};

/// Exhaustive check of the defining inequalities of W(H).
WMembershipReport check_W_membership(const ValueOracle& oracle, const BlockVector& w,
                                     const AuditBudget& budget = {});

/// True iff every proper cumulative sum of each block is <= tol and each block
/// sums to 0 within tol.
bool check_K_cone(const BlockVector& w, double tol = kPolyhedralTolerance);

}  // namespace submin
