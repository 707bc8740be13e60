#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "submin/blocks.hpp"
#include "submin/domain.hpp"

namespace submin {

/// Argument of the extension: block i holds rho_i(1), ..., rho_i(k_i - 1).
///
/// A feasible Rho has nonincreasing blocks with entries in [0, 1]; a raw Rho is
/// any real vector of the right shape.
class Rho : public BlockVector {
 public:
  using BlockVector::BlockVector;
  explicit Rho(BlockVector values) : BlockVector(std::move(values)) {}
};

/// Tolerance used when deciding whether a block is nonincreasing.
inline constexpr double kMonotoneTolerance = 1e-12;

bool is_nonincreasing(const BlockVector& rho, double tol = kMonotoneTolerance);
/// Nonincreasing blocks with entries in [0, 1], up to tol.
bool is_feasible(const BlockVector& rho, double tol = kMonotoneTolerance);
/// Throws MonotonicityError naming the first offending block.
void require_nonincreasing(const BlockVector& rho, double tol = kMonotoneTolerance);

/// One step of an ordering: block i(s) moves from level j(s) - 1 to j(s).
struct OrderStep {
  int block = 0;
  int level = 0;  // 1-based level reached, equals rho entry index + 1
};

/// Sequence i(1), ..., i(r) of blocks; the level reached at each step is implied
/// by counting earlier occurrences of the same block.
struct Ordering {
  std::vector<int> blocks;

  std::vector<OrderStep> steps() const;
  /// True when block i occurs exactly k_i - 1 times.
  bool valid_for(const ProductDomain& domain) const;
  bool operator==(const Ordering& other) const = default;
};

/// Total order of all entries of rho by nonincreasing value. Entries of one
/// block keep their index order; ties across blocks are broken by a hash of
/// (seed, block, index).
Ordering compatible_ordering(const BlockVector& rho, std::uint64_t seed = 0);

/// theta(rho, t): component i is the number of leading entries of block i that
/// are strictly greater than t. At an exact breakpoint this returns the lower
/// coordinate.
Point theta(const BlockVector& rho, double t);

struct GreedyOutput {
  BlockVector w;                    ///< w_{i(s)}(j(s)) = H[y(s)] - H[y(s-1)]
  double value = 0.0;               ///< h(rho) = H(0) + sum_s t(s) (H[y(s)] - H[y(s-1)])
  Point best_point;                 ///< argmin of H along the chain (first occurrence)
  double best_value = 0.0;
  Ordering ordering;
  std::vector<double> thresholds;   ///< t(1) >= ... >= t(r)
  std::vector<double> chain_values; ///< H[y(0)], ..., H[y(r)]

  /// The visited points y(0) = 0, ..., y(r) = top.
  std::vector<Point> chain() const;
};

/// Greedy algorithm: convex extension value, a subgradient w in B(H), and the
/// best point on the chain. Issues exactly r + 1 oracle calls.
///
/// Throws MonotonicityError for non-monotone blocks and NonFiniteValue when the
/// oracle returns a non-finite number.
GreedyOutput greedy(const ValueOracle& oracle, const BlockVector& rho, std::uint64_t seed = 0);

/// Greedy vertex for a fixed ordering. value and thresholds are filled only
/// when rho is supplied.
GreedyOutput greedy_with_ordering(const ValueOracle& oracle, const Ordering& ordering,
                                  const BlockVector* rho = nullptr);

double evaluate_extension(const ValueOracle& oracle, const BlockVector& rho, std::uint64_t seed = 0);

/// Best point along the greedy chain, endpoints included.
std::pair<Point, double> round_best(const ValueOracle& oracle, const BlockVector& rho);

}  // namespace submin
