#pragma once

#include <span>
#include <vector>

#include "submin/blocks.hpp"
#include "submin/extension.hpp"

namespace submin {

/// Weighted least-squares fit of values by a nonincreasing sequence.
struct IsotonicProblem {
  std::vector<double> values;
  std::vector<double> weights;  ///< empty means all ones
};

/// Pool-adjacent-violators, O(m). Each pooled group gets its weighted mean,
/// computed once and copied to every member, so the output is nonincreasing
/// under exact comparison.
std::vector<double> pava_nonincreasing(const IsotonicProblem& problem);
void pava_nonincreasing_inplace(std::span<double> values, std::span<const double> weights = {});

/// Euclidean projection onto prod_i [0,1]^{k_i-1} with nonincreasing blocks:
/// blockwise PAVA, then clamping to [0, 1].
Rho project_feasible(const BlockVector& raw);

/// Blockwise weighted PAVA without the box (projection onto the monotone cone
/// in the metric given by weights).
Rho project_monotone(const BlockVector& raw, const BlockVector* weights = nullptr);

}  // namespace submin
