#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "submin/domain.hpp"

namespace submin {

/// Box prod_i [lo_i, hi_i] with a Lipschitz constant G in the l-infinity sense:
/// |f(x) - f(x')| <= G max_i |x_i - x'_i|.
struct BoxSpec {
  std::vector<double> lo;
  std::vector<double> hi;
  double G = 0.0;

  static BoxSpec cube(int n, double lo, double hi, double G);
  int dimension() const { return static_cast<int>(lo.size()); }
  /// Largest edge length.
  double edge() const;
  /// Throws InvalidArgument unless lo_i < hi_i for all i and G >= 0.
  void validate() const;
};

using ContinuousFunction = std::function<double(std::span<const double>)>;

/// Grid oracle sampling f at lo_i + j (hi_i - lo_i) / (k_i - 1), with
/// Lipschitz bounds G (hi_i - lo_i) / (k_i - 1). Non-finite samples raise
/// NonFiniteValue when evaluated.
ValueOracle discretize(const ContinuousFunction& f, const BoxSpec& spec, std::span<const int> k);
ValueOracle discretize(const ContinuousFunction& f, const BoxSpec& spec, int k);

struct AccuracyPlan {
  int k = 0;                    ///< grid points per variable, ceil(2 G B / eps)
  std::uint64_t iterations = 0; ///< ceil((2 G B n / eps)^2)
  double evaluations = 0.0;     ///< iterations * n * k
};

/// Grid size and subgradient iteration count reaching accuracy eps on a box of
/// edge B in dimension n. k is at least 2.
AccuracyPlan plan_accuracy(double G, double B, int n, double eps);

/// max over an audit grid of sum_i |f(x + h e_i) - f(x)| / h, with
/// points_per_axis grid points per variable.
double estimate_lipschitz_linf(const ContinuousFunction& f, const BoxSpec& spec, int points_per_axis = 201);

}  // namespace submin
