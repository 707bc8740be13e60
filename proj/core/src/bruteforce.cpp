#include "submin/bruteforce.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <string>

#include "submin/errors.hpp"

namespace submin {

ExhaustiveMinimum exhaustive_min(const ValueOracle& oracle, const AuditBudget& budget) {
  const ProductDomain& domain = oracle.domain();
  const std::uint64_t count = domain.cardinality();
  if (count > budget.max_points || count > budget.max_evaluations) {
    throw BudgetExceeded("exhaustive minimization over " + std::to_string(count) +
                         " points exceeds the audit budget");
  }
  ExhaustiveMinimum best;
  Point x = domain.bottom();
  bool first = true;
  do {
    const double v = oracle(x);
    if (first || v < best.value) {
      best.value = v;
      best.point = x;
      best.ties = 1;
      first = false;
    } else if (v == best.value) {
      ++best.ties;
    }
  } while (domain.next(x));
  return best;
}

double extension_by_breakpoint_integration(const ValueOracle& oracle, const BlockVector& rho) {
  const ProductDomain& domain = oracle.domain();
  if (!rho.matches(domain)) throw InvalidArgument("rho does not match the oracle's domain");
  require_nonincreasing(rho);

  std::vector<double> breaks(rho.flat().begin(), rho.flat().end());
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  const double h_bottom = oracle(domain.bottom());
  const double h_top = oracle(domain.top());
  if (breaks.empty()) return h_bottom;

  // Unbounded intervals: below every threshold theta is the top point, above
  // every threshold it is the bottom point.
  const Point below = theta(rho, breaks.front() - 1.0);
  const Point above = theta(rho, breaks.back() + 1.0);
  const double h_below = oracle(below);
  const double h_above = oracle(above);
  if (below != domain.top() || above != domain.bottom() || h_below != h_top || h_above != h_bottom) {
    throw Error("breakpoint integration: theta is inconsistent on the unbounded intervals");
  }

  double integral = 0.0;
  for (std::size_t m = 0; m + 1 < breaks.size(); ++m) {
    const double lo = breaks[m];
    const double hi = breaks[m + 1];
    integral += (hi - lo) * oracle(theta(rho, lo + 0.5 * (hi - lo)));
  }
  return integral + breaks.front() * h_top + (1.0 - breaks.back()) * h_bottom;
}

Rho random_feasible_rho(const ProductDomain& domain, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Rho rho(domain);
  for (int i = 0; i < domain.num_blocks(); ++i) {
    auto b = rho.block(i);
    for (double& v : b) v = unit(rng);
    std::sort(b.begin(), b.end(), std::greater<>());
  }
  return rho;
}

ConvexityProbeResult convexity_probe(const ExtensionEvaluator& extension, const ProductDomain& domain,
                                     int segments, std::uint64_t seed, double tol) {
  ConvexityProbeResult result;
  std::mt19937_64 rng(seed);
  for (int s = 0; s < segments; ++s) {
    Rho a = random_feasible_rho(domain, rng());
    Rho b = random_feasible_rho(domain, rng());
    Rho mid(domain);
    for (std::size_t e = 0; e < mid.size(); ++e) mid.flat()[e] = 0.5 * (a.flat()[e] + b.flat()[e]);
    const double hm = extension(mid);
    const double chord = 0.5 * (extension(a) + extension(b));
    ++result.segments_checked;
    if (hm > chord + tol) {
      result.pass = false;
      result.witness = ConvexityWitness{std::move(a), std::move(b), hm, chord};
      return result;
    }
  }
  return result;
}

}  // namespace submin
