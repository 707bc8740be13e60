#include "submin/isotonic.hpp"

#include <algorithm>

#include "submin/errors.hpp"

namespace submin {

void pava_nonincreasing_inplace(std::span<double> values, std::span<const double> weights) {
  const std::size_t m = values.size();
  if (m == 0) return;
  if (!weights.empty() && weights.size() != m) throw InvalidArgument("PAVA weights have the wrong length");

  struct Group {
    double mean;
    double weight;
    std::size_t end;  // one past the last member
  };
  std::vector<Group> stack;
  stack.reserve(m);
  for (std::size_t s = 0; s < m; ++s) {
    const double w = weights.empty() ? 1.0 : weights[s];
    if (!(w > 0.0)) throw InvalidArgument("PAVA weights must be positive");
    Group g{values[s], w, s + 1};
    // A violator is a group whose mean exceeds its predecessor's.
    while (!stack.empty() && stack.back().mean < g.mean) {
      const Group& prev = stack.back();
      const double total = prev.weight + g.weight;
      g.mean = (prev.weight * prev.mean + g.weight * g.mean) / total;
      g.weight = total;
      stack.pop_back();
    }
    stack.push_back(g);
  }
  std::size_t begin = 0;
  for (const Group& g : stack) {
    std::fill(values.begin() + static_cast<std::ptrdiff_t>(begin), values.begin() + static_cast<std::ptrdiff_t>(g.end),
              g.mean);
    begin = g.end;
  }
}

std::vector<double> pava_nonincreasing(const IsotonicProblem& problem) {
  std::vector<double> out = problem.values;
  pava_nonincreasing_inplace(out, problem.weights);
  return out;
}

Rho project_monotone(const BlockVector& raw, const BlockVector* weights) {
  if (weights != nullptr) require_same_shape(raw, *weights, "project_monotone");
  Rho out(raw);
  for (int i = 0; i < out.num_blocks(); ++i) {
    if (weights != nullptr) {
      pava_nonincreasing_inplace(out.block(i), weights->block(i));
    } else {
      pava_nonincreasing_inplace(out.block(i));
    }
  }
  return out;
}

Rho project_feasible(const BlockVector& raw) {
  Rho out = project_monotone(raw);
  for (double& v : out.flat()) v = std::clamp(v, 0.0, 1.0);
  return out;
}

}  // namespace submin
