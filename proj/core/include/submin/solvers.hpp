#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string_view>
#include <vector>

#include "submin/blocks.hpp"
#include "submin/domain.hpp"
#include "submin/duality.hpp"
#include "submin/extension.hpp"

namespace submin {

enum class StepRule { polyak, fixed, decaying };
enum class FwVariant { classic, linesearch, pairwise };

std::string_view to_string(StepRule rule);
std::string_view to_string(FwVariant variant);
StepRule parse_step_rule(std::string_view text);
FwVariant parse_fw_variant(std::string_view text);

struct SolverConfig {
  int max_iter = 1000;
  /// Stop once the certified gap is at most this.
  double tolerance = 1e-6;
  StepRule step_rule = StepRule::polyak;
  /// fixed: the step gamma. decaying: c in c / sqrt(t) along w / |w|; NaN
  /// selects c = sqrt(sum_i k_i).
  double step_param = std::numeric_limits<double>::quiet_NaN();
  /// Scale entry (i, j) of the subgradient step by 1 / (k_i B_i).
  bool precondition = false;
  FwVariant fw_variant = FwVariant::pairwise;
  std::uint64_t seed = 0;
  std::uint64_t eval_budget = 1'000'000'000;
  /// Fill the ms column of the log; off keeps logs reproducible.
  bool record_time = false;

  /// Throws InvalidArgument on nonpositive caps or a bad step parameter.
  void validate() const;
};

struct IterateRecord {
  int iter = 0;
  double primal = 0.0;  ///< best primal value so far
  double dual = 0.0;    ///< best certified dual value so far
  double gap = 0.0;     ///< primal - dual
  std::uint64_t evals = 0;
  double ms = 0.0;
  double primal_now = 0.0;  ///< primal value at this iterate
  double dual_now = 0.0;    ///< dual value at this iterate
};

class IterateLog {
 public:
  /// Appends a row from the current candidates; primal and dual are folded
  /// into running best values so the gap column never increases.
  const IterateRecord& record(int iter, double primal_candidate, double dual_candidate, std::uint64_t evals,
                              double ms);

  const std::vector<IterateRecord>& rows() const { return rows_; }
  bool empty() const { return rows_.empty(); }
  const IterateRecord& back() const { return rows_.back(); }

 private:
  std::vector<IterateRecord> rows_;
};

enum class SolveStatus { converged, iteration_limit, budget_exhausted };
std::string_view to_string(SolveStatus status);

struct SolveResult {
  Point point;              ///< best point found by rounding
  double value = 0.0;       ///< H(point)
  Rho rho;                  ///< final primal iterate
  DualPoint dual;           ///< dual point behind the best logged dual value
  IterateLog log;
  SolveStatus status = SolveStatus::iteration_limit;
  int iterations = 0;
  std::uint64_t evals = 0;

  double gap() const { return log.empty() ? std::numeric_limits<double>::infinity() : log.back().gap; }
};

/// Entry-wise terms a_e(t) = 1/2 c_e (t - z_e)^2, one per Rho entry.
struct SeparableQuadratic {
  BlockVector z;
  BlockVector c;

  /// z = 0 and c = 1.
  static SeparableQuadratic unit(const ProductDomain& domain);
  /// Throws InvalidArgument on shape mismatch or nonpositive curvature.
  void validate(const ProductDomain& domain) const;
  double value(const BlockVector& rho) const;
};

/// General strictly convex entry-wise terms a_e, indexed by flat entry.
struct SeparableTerms {
  std::function<double(std::size_t, double)> value;
  std::function<double(std::size_t, double)> derivative;
  std::function<double(std::size_t, double)> second_derivative;
  std::size_t size = 0;

  static SeparableTerms from(const SeparableQuadratic& quadratic);
};

/// h(rho) - H(0) + sum_e a_e(rho_e) for nonincreasing rho.
double prox_objective(const ValueOracle& oracle, const SeparableQuadratic& sep, const BlockVector& rho);

/// Projected subgradient descent on prod_i [0,1]^{k_i-1}, nonincreasing
/// blocks. Dual candidates are averages of the greedy vertices seen so far:
/// uniform and step-weighted, each over all iterations and over the
/// iterations since the last power of two. All carry provenance.
SolveResult minimize_subgradient(const ValueOracle& oracle, const SolverConfig& config = {});

/// Frank-Wolfe on the dual of min h(rho) - H(0) + sum_e a_e(rho_e) over
/// nonincreasing rho. Logged values are those of the prox problem, without
/// the H(0) offset.
SolveResult prox_quadratic(const ValueOracle& oracle, const SeparableQuadratic& sep, const SolverConfig& config = {});

/// prox_quadratic with z = 0, c = 1; every greedy chain is scanned for the
/// best point and the log holds certified gaps for minimizing H.
SolveResult minimize_frankwolfe(const ValueOracle& oracle, const SolverConfig& config = {});

/// Minimizer of the oracle's function with its value; must return the
/// lattice-minimal minimizer for exact results.
using SfmSolver = std::function<std::pair<Point, double>(const ValueOracle&)>;
SfmSolver exhaustive_sfm(const AuditBudget& budget = {});
SfmSolver frankwolfe_sfm(const SolverConfig& config);

struct DivideConquerResult {
  Rho rho;
  int sfm_calls = 0;
  /// Boxes whose minimum landed within 1000 tolerances of the stopping level.
  int near_threshold = 0;
};

/// Exact minimizer of h(rho) + sum_e a_e(rho_e) over nonincreasing rho by
/// recursive splitting. A box stops splitting when its minimum is at least
/// H(lower corner) - 1e-9 max(1, |H(lower corner)|).
DivideConquerResult divide_and_conquer(const ValueOracle& oracle, const SeparableTerms& terms,
                                       const SfmSolver& sfm = exhaustive_sfm());
DivideConquerResult divide_and_conquer(const ValueOracle& oracle, const SeparableQuadratic& sep,
                                       const SfmSolver& sfm = exhaustive_sfm());

struct SweepResult {
  std::vector<double> t;
  std::vector<Point> solutions;  ///< minimizer of H + sum cumulative a'(t), per t
  /// rho_i(x) = max{t : x_i^t >= x}; entries with no such t get t.front().
  Rho rho;
};

/// Throws MonotonicityError when solutions are not nonincreasing in t and
/// InvalidArgument when t_grid is not strictly increasing.
SweepResult parametric_sweep(const ValueOracle& oracle, const SeparableTerms& terms, const std::vector<double>& t_grid,
                             const SfmSolver& sfm = exhaustive_sfm());

/// Oracle for H(x) + sum_i sum_{y=1}^{x_i} a'_{i,y}(t); shares the evaluation counter.
ValueOracle threshold_problem(const ValueOracle& oracle, const SeparableTerms& terms, double t);

struct RingReduction {
  SetFunction function;
  /// 0/1 vector of length sum_i (k_i - 1) to a point: x_i is the last set
  /// position of block i.
  std::function<Point(std::span<const int>)> decode;
};

/// H_ext(z) = H(decode(z)) + sum_i B_i (x_i - |z_i|). Requires B_i > 0 and,
/// when the oracle carries Lipschitz bounds, B_i at least those bounds.
RingReduction ring_family_reduce(const ValueOracle& oracle, std::vector<double> bounds);

}  // namespace submin
