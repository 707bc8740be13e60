#include "submin/continuous.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "submin/errors.hpp"

namespace submin {

BoxSpec BoxSpec::cube(int n, double lo, double hi, double G) {
  if (n < 1) throw InvalidArgument("box dimension must be >= 1");
  return {std::vector<double>(static_cast<std::size_t>(n), lo), std::vector<double>(static_cast<std::size_t>(n), hi), G};
}

double BoxSpec::edge() const {
  double e = 0.0;
  for (std::size_t i = 0; i < lo.size(); ++i) e = std::max(e, hi[i] - lo[i]);
  return e;
}

void BoxSpec::validate() const {
  if (lo.empty() || lo.size() != hi.size()) throw InvalidArgument("box bounds must be nonempty and of equal length");
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (!(lo[i] < hi[i]) || !std::isfinite(lo[i]) || !std::isfinite(hi[i])) {
      throw InvalidArgument("box interval " + std::to_string(i) + " needs finite lo < hi");
    }
  }
  if (!(G >= 0.0) || !std::isfinite(G)) throw InvalidArgument("Lipschitz constant G must be finite and >= 0");
}

ValueOracle discretize(const ContinuousFunction& f, const BoxSpec& spec, std::span<const int> k) {
  spec.validate();
  if (k.size() != spec.lo.size()) throw InvalidArgument("need one grid size per variable");
  const ProductDomain domain = ProductDomain::uniform_grid(k, spec.lo, spec.hi);
  std::vector<double> bounds(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) bounds[i] = spec.G * (spec.hi[i] - spec.lo[i]) / (k[i] - 1);
  return ValueOracle(
      domain,
      [domain, f](std::span<const int> x) {
        std::vector<double> u(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) u[i] = domain.coordinate(static_cast<int>(i), x[i]);
        const double v = f(u);
        if (!std::isfinite(v)) throw NonFiniteValue("continuous function returned a non-finite sample");
        return v;
      },
      std::move(bounds));
}

ValueOracle discretize(const ContinuousFunction& f, const BoxSpec& spec, int k) {
  const std::vector<int> sizes(spec.lo.size(), k);
  return discretize(f, spec, sizes);
}

AccuracyPlan plan_accuracy(double G, double B, int n, double eps) {
  if (!(eps > 0.0)) throw InvalidArgument("accuracy must be positive");
  if (!(G >= 0.0) || !(B > 0.0) || n < 1) throw InvalidArgument("need G >= 0, B > 0 and n >= 1");
  AccuracyPlan plan;
  const double ratio = 2.0 * G * B / eps;
  plan.k = std::max(2, static_cast<int>(std::ceil(ratio)));
  plan.iterations = static_cast<std::uint64_t>(std::ceil(ratio * n * ratio * n));
  plan.evaluations = static_cast<double>(plan.iterations) * n * plan.k;
  return plan;
}

double estimate_lipschitz_linf(const ContinuousFunction& f, const BoxSpec& spec, int points_per_axis) {
  spec.validate();
  if (points_per_axis < 2) throw InvalidArgument("audit grid needs at least 2 points per axis");
  const int n = spec.dimension();
  const std::vector<int> sizes(static_cast<std::size_t>(n), points_per_axis);
  const ProductDomain domain = ProductDomain::uniform_grid(sizes, spec.lo, spec.hi);
  if (domain.cardinality() > 50'000'000) throw BudgetExceeded("Lipschitz audit grid is too large");

  double best = 0.0;
  Point x = domain.bottom();
  std::vector<double> u(static_cast<std::size_t>(n));
  std::vector<double> v(static_cast<std::size_t>(n));
  do {
    for (int i = 0; i < n; ++i) u[static_cast<std::size_t>(i)] = domain.coordinate(i, x[static_cast<std::size_t>(i)]);
    const double fu = f(u);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      const auto si = static_cast<std::size_t>(i);
      const int j = x[si] + 1 < points_per_axis ? x[si] + 1 : x[si] - 1;
      v = u;
      v[si] = domain.coordinate(i, j);
      total += std::abs(f(v) - fu) / std::abs(v[si] - u[si]);
    }
    best = std::max(best, total);
  } while (domain.next(x));
  return best;
}

}  // namespace submin
