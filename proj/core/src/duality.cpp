#include "submin/duality.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "submin/errors.hpp"

namespace submin {

bool Provenance::is_convex(double tol) const {
  if (weights.size() != orderings.size() || weights.empty()) return false;
  double total = 0.0;
  for (double a : weights) {
    if (!(a >= 0.0)) return false;
    total += a;
  }
  return std::abs(total - 1.0) <= tol;
}

BlockVector recompute_from_provenance(const ValueOracle& oracle, const Provenance& provenance) {
  if (provenance.weights.size() != provenance.orderings.size()) {
    throw InvalidArgument("provenance weights and orderings differ in length");
  }
  BlockVector sum(oracle.domain());
  for (std::size_t v = 0; v < provenance.orderings.size(); ++v) {
    const GreedyOutput vertex = greedy_with_ordering(oracle, provenance.orderings[v]);
    const auto src = vertex.w.flat();
    auto dst = sum.flat();
    for (std::size_t s = 0; s < dst.size(); ++s) dst[s] += provenance.weights[v] * src[s];
  }
  return sum;
}

double dual_value_W(const BlockVector& w) {
  double total = 0.0;
  for (double v : w.flat()) total += std::min(v, 0.0);
  return total;
}

double dual_value_B(const BlockVector& w) {
  double total = 0.0;
  for (int i = 0; i < w.num_blocks(); ++i) {
    double running = 0.0;
    double best = 0.0;
    for (double v : w.block(i)) {
      running += v;
      best = std::min(best, running);
    }
    total += best;
  }
  return total;
}

GapReport certify_gap(const ValueOracle& oracle, const BlockVector& rho, const DualPoint& dual,
                      const CertifyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t evals_before = oracle.evaluations();
  if (!dual.w.matches(oracle.domain())) throw InvalidArgument("dual point does not match the oracle's domain");

  GapReport report;
  const GreedyOutput g = greedy(oracle, rho);
  report.primal_best = g.best_value;
  report.primal_point = g.best_point;
  report.dual_value = g.chain_values.front() + dual_value_B(dual.w);
  report.gap = report.primal_best - report.dual_value;

  if (!is_feasible(rho)) report.warnings.emplace_back("rho is not in the feasible set");
  if (!dual.certified()) {
    report.provenance_missing = true;
    report.warnings.emplace_back("dual point has no provenance; the gap is not a certificate");
  } else {
    if (!dual.provenance->is_convex(options.tolerance)) {
      report.warnings.emplace_back("provenance weights are not a convex combination");
    }
    if (options.verify_provenance) {
      const BlockVector again = recompute_from_provenance(oracle, *dual.provenance);
      double worst = 0.0;
      for (std::size_t s = 0; s < again.size(); ++s) {
        worst = std::max(worst, std::abs(again.flat()[s] - dual.w.flat()[s]));
      }
      if (worst > options.tolerance * std::max(1.0, std::abs(report.primal_best))) {
        report.warnings.emplace_back("w differs from the combination its provenance describes");
      }
    }
  }
  report.evals = oracle.evaluations() - evals_before;
  report.wallclock_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

WMembershipReport check_W_membership(const ValueOracle& oracle, const BlockVector& w, const AuditBudget& budget) {
  const ProductDomain& domain = oracle.domain();
  if (!w.matches(domain)) throw InvalidArgument("w does not match the oracle's domain");
  const std::vector<double> values = tabulate(oracle, budget);

  // cumulative[i][x] = sum_{y=1}^{x} w_i(y), cumulative[i][0] = 0
  std::vector<std::vector<double>> cumulative(static_cast<std::size_t>(domain.num_blocks()));
  for (int i = 0; i < domain.num_blocks(); ++i) {
    auto& c = cumulative[static_cast<std::size_t>(i)];
    c.assign(1, 0.0);
    for (double v : w.block(i)) c.push_back(c.back() + v);
  }

  WMembershipReport report;
  const double h0 = values.front();
  bool first = true;
  Point x = domain.bottom();
  std::size_t index = 0;
  do {
    double lhs = 0.0;
    for (int i = 0; i < domain.num_blocks(); ++i) {
      lhs += cumulative[static_cast<std::size_t>(i)][static_cast<std::size_t>(x[static_cast<std::size_t>(i)])];
    }
    const double violation = lhs - (values[index] - h0);
    if (first || violation > report.worst_violation) {
      report.worst_violation = violation;
      report.witness = x;
      first = false;
    }
    ++index;
  } while (domain.next(x));

  double total = 0.0;
  for (double v : w.flat()) total += v;
  report.top_residual = total - (values.back() - h0);
  report.member = report.worst_violation <= kPolyhedralTolerance && std::abs(report.top_residual) <= kPolyhedralTolerance;
  return report;
}

bool check_K_cone(const BlockVector& w, double tol) {
  for (int i = 0; i < w.num_blocks(); ++i) {
    const auto b = w.block(i);
    double running = 0.0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      running += b[j];
      if (j + 1 < b.size() && running > tol) return false;
    }
    if (std::abs(running) > tol) return false;
  }
  return true;
}

}  // namespace submin
