#include "submin/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <string>
#include <unordered_map>

#include "submin/bruteforce.hpp"
#include "submin/errors.hpp"
#include "submin/isotonic.hpp"

namespace submin {

namespace {

std::uint64_t mix(std::uint64_t seed, std::uint64_t t) {
  std::uint64_t x = seed + 0x9E3779B97F4A7C15ULL * (t + 1);
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

class Clock {
 public:
  explicit Clock(bool enabled) : enabled_(enabled), start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    if (!enabled_) return 0.0;
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  bool enabled_;
  std::chrono::steady_clock::time_point start_;
};

// Greedy vertices seen by a solver, deduplicated by their w vector.
class VertexStore {
 public:
  std::size_t add(const GreedyOutput& g) {
    const std::uint64_t h = hash(g.w);
    const auto [first, last] = index_.equal_range(h);
    for (auto it = first; it != last; ++it) {
      if (same(w_[it->second], g.w)) return it->second;
    }
    w_.push_back(g.w);
    orderings_.push_back(g.ordering);
    index_.emplace(h, w_.size() - 1);
    return w_.size() - 1;
  }

  std::size_t size() const { return w_.size(); }
  const BlockVector& w(std::size_t v) const { return w_[v]; }

  Provenance provenance(const std::vector<double>& weights) const {
    Provenance p;
    for (std::size_t v = 0; v < weights.size(); ++v) {
      if (weights[v] > 0.0) {
        p.weights.push_back(weights[v]);
        p.orderings.push_back(orderings_[v]);
      }
    }
    return p;
  }

 private:
  static std::uint64_t hash(const BlockVector& w) {
    std::uint64_t h = 1469598103934665603ULL;
    for (double v : w.flat()) {
      const double normalized = v + 0.0;
      std::uint64_t bits = 0;
      std::memcpy(&bits, &normalized, sizeof bits);
      h = (h ^ bits) * 1099511628211ULL;
    }
    return h;
  }
  static bool same(const BlockVector& a, const BlockVector& b) {
    const auto x = a.flat();
    const auto y = b.flat();
    for (std::size_t s = 0; s < x.size(); ++s) {
      if (x[s] != y[s]) return false;
    }
    return true;
  }

  std::vector<BlockVector> w_;
  std::vector<Ordering> orderings_;
  std::unordered_multimap<std::uint64_t, std::size_t> index_;
};

bool budget_allows(const ValueOracle& oracle, std::uint64_t start, const SolverConfig& config) {
  const std::uint64_t used = oracle.evaluations() - start;
  const auto per_call = static_cast<std::uint64_t>(oracle.domain().num_entries()) + 1;
  return used + per_call <= config.eval_budget;
}

SolveResult trivial_result(const ValueOracle& oracle, const SolverConfig& config) {
  SolveResult result;
  const std::uint64_t start = oracle.evaluations();
  const ProductDomain& domain = oracle.domain();
  result.point = domain.bottom();
  result.value = oracle(result.point);
  if (!std::isfinite(result.value)) throw NonFiniteValue("oracle returned a non-finite value");
  result.rho = Rho(domain);
  result.dual = DualPoint{BlockVector(domain), Provenance{{1.0}, {Ordering{}}}};
  result.evals = oracle.evaluations() - start;
  result.log.record(1, result.value, result.value, result.evals, 0.0);
  result.status = SolveStatus::converged;
  result.iterations = 1;
  (void)config;
  return result;
}

}  // namespace

std::string_view to_string(StepRule rule) {
  switch (rule) {
    case StepRule::polyak: return "polyak";
    case StepRule::fixed: return "fixed";
    case StepRule::decaying: return "decaying";
  }
  return "?";
}

std::string_view to_string(FwVariant variant) {
  switch (variant) {
    case FwVariant::classic: return "classic";
    case FwVariant::linesearch: return "linesearch";
    case FwVariant::pairwise: return "pairwise";
  }
  return "?";
}

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::iteration_limit: return "iteration_limit";
    case SolveStatus::budget_exhausted: return "budget_exhausted";
  }
  return "?";
}

StepRule parse_step_rule(std::string_view text) {
  if (text == "polyak") return StepRule::polyak;
  if (text == "fixed") return StepRule::fixed;
  if (text == "decaying") return StepRule::decaying;
  throw InvalidArgument("unknown step rule '" + std::string(text) + "'");
}

FwVariant parse_fw_variant(std::string_view text) {
  if (text == "classic") return FwVariant::classic;
  if (text == "linesearch") return FwVariant::linesearch;
  if (text == "pairwise") return FwVariant::pairwise;
  throw InvalidArgument("unknown Frank-Wolfe variant '" + std::string(text) + "'");
}

void SolverConfig::validate() const {
  if (max_iter <= 0) throw InvalidArgument("max_iter must be positive");
  if (eval_budget == 0) throw InvalidArgument("eval_budget must be positive");
  if (!(tolerance >= 0.0)) throw InvalidArgument("tolerance must be >= 0");
  if (step_rule == StepRule::fixed && !(step_param > 0.0)) {
    throw InvalidArgument("the fixed step rule needs a positive step_param");
  }
  if (step_rule == StepRule::decaying && !std::isnan(step_param) && !(step_param > 0.0)) {
    throw InvalidArgument("the decaying step rule needs a positive step_param");
  }
}

const IterateRecord& IterateLog::record(int iter, double primal_candidate, double dual_candidate,
                                        std::uint64_t evals, double ms) {
  IterateRecord row{iter, primal_candidate, dual_candidate, 0.0, evals, ms, primal_candidate, dual_candidate};
  if (!rows_.empty()) {
    row.primal = std::min(row.primal, rows_.back().primal);
    row.dual = std::max(row.dual, rows_.back().dual);
  }
  row.gap = row.primal - row.dual;
  rows_.push_back(row);
  return rows_.back();
}

SeparableQuadratic SeparableQuadratic::unit(const ProductDomain& domain) {
  return {BlockVector(domain, 0.0), BlockVector(domain, 1.0)};
}

void SeparableQuadratic::validate(const ProductDomain& domain) const {
  if (!z.matches(domain) || !c.matches(domain)) throw InvalidArgument("separable terms do not match the domain");
  for (double v : c.flat()) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument("curvatures must be positive and finite");
  }
  for (double v : z.flat()) {
    if (!std::isfinite(v)) throw InvalidArgument("targets must be finite");
  }
}

double SeparableQuadratic::value(const BlockVector& rho) const {
  double total = 0.0;
  const auto r = rho.flat();
  const auto zf = z.flat();
  const auto cf = c.flat();
  for (std::size_t e = 0; e < r.size(); ++e) {
    const double d = r[e] - zf[e];
    total += 0.5 * cf[e] * d * d;
  }
  return total;
}

SeparableTerms SeparableTerms::from(const SeparableQuadratic& quadratic) {
  const std::vector<double> z(quadratic.z.flat().begin(), quadratic.z.flat().end());
  const std::vector<double> c(quadratic.c.flat().begin(), quadratic.c.flat().end());
  SeparableTerms terms;
  terms.size = z.size();
  terms.value = [z, c](std::size_t e, double t) { return 0.5 * c[e] * (t - z[e]) * (t - z[e]); };
  terms.derivative = [z, c](std::size_t e, double t) { return c[e] * (t - z[e]); };
  terms.second_derivative = [c](std::size_t e, double) { return c[e]; };
  return terms;
}

double prox_objective(const ValueOracle& oracle, const SeparableQuadratic& sep, const BlockVector& rho) {
  sep.validate(oracle.domain());
  const GreedyOutput g = greedy(oracle, rho);
  return g.value - g.chain_values.front() + sep.value(rho);
}

// ---------------------------------------------------------------------------
// Projected subgradient

namespace {

// Weighted running average of greedy vertices with per-vertex mass.
struct VertexAverage {
  BlockVector w;
  std::vector<double> mass;
  double total = 0.0;

  void add(std::size_t v, const BlockVector& vertex, double weight) {
    if (!(weight > 0.0)) return;
    if (mass.size() <= v) mass.resize(v + 1, 0.0);
    mass[v] += weight;
    total += weight;
    auto a = w.flat();
    const auto x = vertex.flat();
    const double f = weight / total;
    for (std::size_t e = 0; e < a.size(); ++e) a[e] += f * (x[e] - a[e]);
  }
  void reset() {
    std::fill(w.flat().begin(), w.flat().end(), 0.0);
    std::fill(mass.begin(), mass.end(), 0.0);
    total = 0.0;
  }
  std::vector<double> weights() const {
    std::vector<double> out = mass;
    for (double& a : out) a /= total;
    return out;
  }
};

}  // namespace

SolveResult minimize_subgradient(const ValueOracle& oracle, const SolverConfig& config) {
  config.validate();
  const ProductDomain& domain = oracle.domain();
  if (domain.num_entries() == 0) return trivial_result(oracle, config);

  const Clock clock(config.record_time);
  const std::uint64_t start = oracle.evaluations();

  double sum_k = 0.0;
  for (int k : domain.sizes()) sum_k += k;
  const double c_decay = std::isnan(config.step_param) ? std::sqrt(sum_k) : config.step_param;

  BlockVector scale(domain, 1.0);
  if (config.precondition) {
    if (!oracle.has_lipschitz()) throw InvalidArgument("preconditioning needs Lipschitz bounds on the oracle");
    for (int i = 0; i < domain.num_blocks(); ++i) {
      const double b = oracle.lipschitz()[static_cast<std::size_t>(i)];
      const double s = b > 0.0 ? 1.0 / (domain.size(i) * b) : 1.0 / domain.size(i);
      for (double& v : scale.block(i)) v = s;
    }
  }

  SolveResult result;
  result.rho = Rho(domain, 0.5);
  VertexStore store;
  // Certified dual candidates: uniform and step-weighted averages of the
  // vertices, over all iterations and since the last power-of-two iteration.
  // A vertex enters the step-weighted averages once its step is known.
  enum { kUniform, kUniformTail, kStep, kStepTail, kAverages };
  std::vector<VertexAverage> averages(kAverages, VertexAverage{BlockVector(domain), {}, 0.0});
  int tail_start = 1;
  BlockVector best_dual_w(domain);
  std::vector<double> best_weights;
  double best_dual = -std::numeric_limits<double>::infinity();
  double best_primal = std::numeric_limits<double>::infinity();
  BlockVector raw(domain);

  for (int t = 1; t <= config.max_iter; ++t) {
    if (!budget_allows(oracle, start, config)) {
      result.status = SolveStatus::budget_exhausted;
      break;
    }
    const GreedyOutput g = greedy(oracle, result.rho, mix(config.seed, static_cast<std::uint64_t>(t)));
    result.iterations = t;

    const std::size_t v = store.add(g);
    if (t == 2 * tail_start) {
      tail_start = t;
      averages[kUniformTail].reset();
      averages[kStepTail].reset();
    }
    averages[kUniform].add(v, g.w, 1.0);
    averages[kUniformTail].add(v, g.w, 1.0);

    if (g.best_value < best_primal) {
      best_primal = g.best_value;
      result.point = g.best_point;
      result.value = g.best_value;
    }
    const double h0 = g.chain_values.front();
    double dual = -std::numeric_limits<double>::infinity();
    for (const VertexAverage& avg : averages) {
      if (avg.total <= 0.0) continue;
      const double candidate = h0 + dual_value_B(avg.w);
      dual = std::max(dual, candidate);
      if (candidate > best_dual) {
        best_dual = candidate;
        best_dual_w = avg.w;
        best_weights = avg.weights();
      }
    }
    const IterateRecord& row = result.log.record(t, g.best_value, dual, oracle.evaluations() - start, clock.ms());
    if (row.gap <= config.tolerance) {
      result.status = SolveStatus::converged;
      break;
    }

    // rho <- Pi(rho - gamma D w)
    double wdw = 0.0;
    {
      const auto w = g.w.flat();
      const auto d = scale.flat();
      for (std::size_t e = 0; e < w.size(); ++e) wdw += d[e] * w[e] * w[e];
    }
    if (wdw == 0.0) continue;
    const double decaying = c_decay / (std::sqrt(static_cast<double>(t)) * std::sqrt(wdw));
    double gamma = decaying;
    if (config.step_rule == StepRule::polyak) {
      const double numerator = g.value - best_dual;
      if (numerator > 0.0) gamma = numerator / wdw;
    } else if (config.step_rule == StepRule::fixed) {
      gamma = config.step_param;
    }
    averages[kStep].add(v, g.w, gamma);
    averages[kStepTail].add(v, g.w, gamma);
    {
      auto out = raw.flat();
      const auto rho = result.rho.flat();
      const auto w = g.w.flat();
      const auto d = scale.flat();
      for (std::size_t e = 0; e < out.size(); ++e) out[e] = rho[e] - gamma * d[e] * w[e];
    }
    result.rho = project_feasible(raw);
  }

  result.dual = DualPoint{std::move(best_dual_w), store.provenance(best_weights)};
  result.evals = oracle.evaluations() - start;
  return result;
}

// ---------------------------------------------------------------------------
// Frank-Wolfe on the prox dual

namespace {

class GradientMap {
 public:
  explicit GradientMap(const SeparableQuadratic& sep) : sep_(sep), raw_(sep.z) {}

  // rho(w) = weighted PAVA of z - w / c.
  Rho operator()(const BlockVector& w) {
    auto out = raw_.flat();
    const auto z = sep_.z.flat();
    const auto c = sep_.c.flat();
    const auto wf = w.flat();
    for (std::size_t e = 0; e < out.size(); ++e) out[e] = z[e] - wf[e] / c[e];
    return project_monotone(raw_, &sep_.c);
  }

  // -d/dgamma <rho(w + gamma d), d> on the pooling pattern of rho.
  double curvature(const BlockVector& rho, const BlockVector& d) const {
    double total = 0.0;
    for (int i = 0; i < rho.num_blocks(); ++i) {
      const auto r = rho.block(i);
      const auto dir = d.block(i);
      const auto c = sep_.c.block(i);
      std::size_t begin = 0;
      while (begin < r.size()) {
        std::size_t end = begin + 1;
        while (end < r.size() && r[end] == r[begin]) ++end;
        double dsum = 0.0;
        double csum = 0.0;
        for (std::size_t j = begin; j < end; ++j) {
          dsum += dir[j];
          csum += c[j];
        }
        total += dsum * dsum / csum;
        begin = end;
      }
    }
    return total;
  }

 private:
  const SeparableQuadratic& sep_;
  BlockVector raw_;
};

void axpy(BlockVector& y, double a, const BlockVector& x) {
  auto yf = y.flat();
  const auto xf = x.flat();
  for (std::size_t e = 0; e < yf.size(); ++e) yf[e] += a * xf[e];
}

BlockVector difference(const BlockVector& a, const BlockVector& b) {
  BlockVector out = a;
  axpy(out, -1.0, b);
  return out;
}

// argmax over [0, gmax] of phi(gamma) = f(w + gamma d), phi'(gamma) = <rho(w + gamma d), d>,
// phi' nonincreasing and piecewise linear. slope0 = phi'(0).
double line_search(GradientMap& map, const BlockVector& w, const BlockVector& d, double gmax, double slope0) {
  if (!(slope0 > 0.0) || !(gmax > 0.0)) return 0.0;
  BlockVector trial = w;
  auto slope_at = [&](double gamma, Rho* rho_out) {
    trial = w;
    axpy(trial, gamma, d);
    Rho rho = map(trial);
    const double s = dot(rho, d);
    if (rho_out != nullptr) *rho_out = std::move(rho);
    return s;
  };
  Rho rho_hi;
  const double slope_hi = slope_at(gmax, &rho_hi);
  if (slope_hi >= 0.0) return gmax;

  double lo = 0.0;
  double hi = gmax;
  double slope_lo = slope0;
  Rho rho_lo = map(w);
  const double scale = std::abs(slope0) + std::abs(slope_hi);
  double gamma = lo;
  for (int it = 0; it < 100; ++it) {
    // Newton from the nearer bracket end, on the pattern there.
    const double curv = map.curvature(rho_lo, d);
    double candidate = curv > 0.0 ? lo + slope_lo / curv : 0.5 * (lo + hi);
    if (!(candidate > lo && candidate < hi)) candidate = 0.5 * (lo + hi);
    Rho rho_c;
    const double slope_c = slope_at(candidate, &rho_c);
    gamma = candidate;
    if (std::abs(slope_c) <= 1e-15 * scale) break;
    if (slope_c > 0.0) {
      lo = candidate;
      slope_lo = slope_c;
      rho_lo = std::move(rho_c);
    } else {
      hi = candidate;
    }
    if (hi - lo <= 1e-16 * gmax) {
      gamma = lo;
      break;
    }
  }
  return std::clamp(gamma, 0.0, gmax);
}

enum class FwMode { prox, sfm };

SolveResult run_frankwolfe(const ValueOracle& oracle, const SeparableQuadratic& sep, const SolverConfig& config,
                           FwMode mode) {
  config.validate();
  const ProductDomain& domain = oracle.domain();
  sep.validate(domain);
  if (domain.num_entries() == 0) return trivial_result(oracle, config);

  const Clock clock(config.record_time);
  const std::uint64_t start = oracle.evaluations();
  GradientMap map(sep);
  VertexStore store;
  std::vector<double> alpha;
  std::vector<std::size_t> active;

  SolveResult result;
  double best_primal = std::numeric_limits<double>::infinity();
  double best_dual = -std::numeric_limits<double>::infinity();
  std::vector<double> best_alpha;
  BlockVector best_w;

  auto take_point = [&](const GreedyOutput& g) {
    if (g.best_value < best_primal) {
      best_primal = g.best_value;
      result.point = g.best_point;
      result.value = g.best_value;
    }
  };
  auto add_vertex = [&](const GreedyOutput& g) {
    const std::size_t v = store.add(g);
    if (alpha.size() < store.size()) alpha.resize(store.size(), 0.0);
    return v;
  };

  // w_0: greedy vertex at rho(z).
  const GreedyOutput g0 = greedy(oracle, project_monotone(sep.z, &sep.c), config.seed);
  const double h0 = g0.chain_values.front();
  take_point(g0);
  const std::size_t v0 = add_vertex(g0);
  alpha[v0] = 1.0;
  active.push_back(v0);
  BlockVector w = g0.w;
  result.rho = map(w);
  GreedyOutput s = greedy(oracle, result.rho, config.seed);
  take_point(s);

  for (int t = 1; t <= config.max_iter; ++t) {
    if (!budget_allows(oracle, start, config)) {
      result.status = SolveStatus::budget_exhausted;
      break;
    }
    const std::size_t sv = add_vertex(s);

    if (config.fw_variant == FwVariant::pairwise) {
      std::size_t away = active.front();
      double away_score = std::numeric_limits<double>::infinity();
      for (std::size_t v : active) {
        const double score = dot(store.w(v), result.rho);
        // Ties are common since rho(w) pools; prefer the heaviest vertex.
        const double slack = 1e-12 * (1.0 + std::abs(score));
        if (score < away_score - slack || (score <= away_score + slack && alpha[v] > alpha[away])) {
          away_score = score;
          away = v;
        }
      }
      const BlockVector d = difference(s.w, store.w(away));
      const double slope0 = dot(result.rho, d);
      const double gamma = line_search(map, w, d, alpha[away], slope0);
      if (gamma > 0.0 && sv != away) {
        if (alpha[sv] == 0.0) active.push_back(sv);
        alpha[sv] += gamma;
        alpha[away] -= gamma;
        axpy(w, gamma, d);
        if (alpha[away] < 1e-14) {
          const double residual = alpha[away];
          alpha[away] = 0.0;
          alpha[sv] += residual;
          axpy(w, residual, d);
          active.erase(std::find(active.begin(), active.end(), away));
        }
      }
    } else {
      const BlockVector d = difference(s.w, w);
      double gamma = 2.0 / (t + 1.0);
      if (config.fw_variant == FwVariant::linesearch) gamma = line_search(map, w, d, 1.0, dot(result.rho, d));
      if (gamma > 0.0) {
        for (std::size_t v : active) alpha[v] *= 1.0 - gamma;
        if (alpha[sv] == 0.0) active.push_back(sv);
        alpha[sv] += gamma;
        axpy(w, gamma, d);
        if (gamma == 1.0) {
          for (std::size_t v : active) {
            if (v != sv) alpha[v] = 0.0;
          }
          w = s.w;
        }
        active.erase(std::remove_if(active.begin(), active.end(), [&](std::size_t v) { return alpha[v] <= 0.0; }),
                     active.end());
      }
    }

    result.rho = map(w);
    s = greedy(oracle, result.rho, config.seed);
    take_point(s);
    result.iterations = t;

    double primal = 0.0;
    double dual = 0.0;
    if (mode == FwMode::prox) {
      const double quad = sep.value(result.rho);
      primal = s.value - h0 + quad;
      dual = dot(w, result.rho) + quad;
    } else {
      primal = s.best_value;
      dual = h0 + dual_value_B(w);
    }
    if (dual > best_dual) {
      best_dual = dual;
      best_w = w;
      best_alpha = alpha;
    }
    const IterateRecord& row = result.log.record(t, primal, dual, oracle.evaluations() - start, clock.ms());
    if (row.gap <= config.tolerance) {
      result.status = SolveStatus::converged;
      break;
    }
  }

  if (best_alpha.empty()) {
    best_w = w;
    best_alpha = alpha;
  }
  result.dual = DualPoint{std::move(best_w), store.provenance(best_alpha)};
  result.evals = oracle.evaluations() - start;
  return result;
}

}  // namespace

SolveResult prox_quadratic(const ValueOracle& oracle, const SeparableQuadratic& sep, const SolverConfig& config) {
  return run_frankwolfe(oracle, sep, config, FwMode::prox);
}

SolveResult minimize_frankwolfe(const ValueOracle& oracle, const SolverConfig& config) {
  return run_frankwolfe(oracle, SeparableQuadratic::unit(oracle.domain()), config, FwMode::sfm);
}

// ---------------------------------------------------------------------------
// Exact separable optimization

SfmSolver exhaustive_sfm(const AuditBudget& budget) {
  return [budget](const ValueOracle& oracle) {
    ExhaustiveMinimum m = exhaustive_min(oracle, budget);
    return std::make_pair(std::move(m.point), m.value);
  };
}

SfmSolver frankwolfe_sfm(const SolverConfig& config) {
  return [config](const ValueOracle& oracle) {
    SolveResult r = minimize_frankwolfe(oracle, config);
    return std::make_pair(std::move(r.point), r.value);
  };
}

namespace {

// Root of Delta + sum_e a'_e(t) over the listed entries; the sum is increasing.
double solve_scalar(double delta, const std::vector<std::size_t>& entries, const SeparableTerms& terms) {
  auto g = [&](double t) {
    double total = delta;
    for (std::size_t e : entries) total += terms.derivative(e, t);
    return total;
  };
  auto dg = [&](double t) {
    double total = 0.0;
    for (std::size_t e : entries) total += terms.second_derivative(e, t);
    return total;
  };
  double t = 0.0;
  double gt = g(t);
  if (gt == 0.0) return t;
  // Bracket the root.
  double lo = 0.0, hi = 0.0;
  double step = 1.0;
  if (gt < 0.0) {
    lo = 0.0;
    hi = step;
    while (g(hi) < 0.0) {
      lo = hi;
      step *= 2.0;
      hi += step;
      if (!std::isfinite(hi)) throw Error("separable step: no root found");
    }
  } else {
    hi = 0.0;
    lo = -step;
    while (g(lo) > 0.0) {
      hi = lo;
      step *= 2.0;
      lo -= step;
      if (!std::isfinite(lo)) throw Error("separable step: no root found");
    }
  }
  t = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double v = g(t);
    if (v == 0.0) return t;
    if (v < 0.0) {
      lo = t;
    } else {
      hi = t;
    }
    const double slope = dg(t);
    double next = slope > 0.0 ? t - v / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == t || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) {
      return next;
    }
    t = next;
  }
  return t;
}

}  // namespace

DivideConquerResult divide_and_conquer(const ValueOracle& oracle, const SeparableTerms& terms, const SfmSolver& sfm) {
  const ProductDomain& domain = oracle.domain();
  if (terms.size != static_cast<std::size_t>(domain.num_entries())) {
    throw InvalidArgument("separable terms do not match the domain");
  }
  DivideConquerResult result;
  result.rho = Rho(domain);
  const int n = domain.num_blocks();

  struct Box {
    Point lo, hi;
  };
  std::vector<Box> stack{{domain.bottom(), domain.top()}};
  const int cap = 2 * domain.num_entries() + 1;
  int boxes = 0;
  while (!stack.empty()) {
    Box box = std::move(stack.back());
    stack.pop_back();
    if (++boxes > cap) throw Error("divide-and-conquer exceeded its recursion cap");

    std::vector<std::size_t> entries;
    for (int i = 0; i < n; ++i) {
      const auto si = static_cast<std::size_t>(i);
      for (int j = box.lo[si]; j < box.hi[si]; ++j) {
        entries.push_back(static_cast<std::size_t>(domain.entry_offset(i) + j));
      }
    }
    if (entries.empty()) continue;

    const ValueOracle sub = oracle.restrict(box.lo, box.hi);
    const ProductDomain& sd = sub.domain();
    const double h_lo = sub(sd.bottom());
    const double h_hi = sub(sd.top());
    if (!std::isfinite(h_lo) || !std::isfinite(h_hi)) throw NonFiniteValue("oracle returned a non-finite value");
    const double t = solve_scalar(h_hi - h_lo, entries, terms);

    // cumulative[i][y] = sum_{z=1}^{y} a'(t) on the sub-box
    std::vector<std::vector<double>> cumulative(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const auto si = static_cast<std::size_t>(i);
      auto& c = cumulative[si];
      c.assign(1, 0.0);
      for (int j = box.lo[si]; j < box.hi[si]; ++j) {
        c.push_back(c.back() + terms.derivative(static_cast<std::size_t>(domain.entry_offset(i) + j), t));
      }
    }
    const ValueOracle problem(sd, [sub, cumulative](std::span<const int> y) {
      double total = sub(y);
      for (std::size_t i = 0; i < y.size(); ++i) total += cumulative[i][static_cast<std::size_t>(y[i])];
      return total;
    });
    const auto [y, value] = sfm(problem);
    ++result.sfm_calls;

    const double tol = 1e-9 * std::max(1.0, std::abs(h_lo));
    if (value >= h_lo - tol) {
      if (y != sd.bottom() && value <= h_lo + 1000.0 * tol) ++result.near_threshold;
      for (std::size_t e : entries) result.rho.flat()[e] = t;
      continue;
    }
    if (value >= h_lo - 1000.0 * tol) ++result.near_threshold;
    Point mid = box.lo;
    for (std::size_t i = 0; i < mid.size(); ++i) mid[i] += y[i];
    if (mid == box.lo || mid == box.hi) throw Error("divide-and-conquer: the SFM step returned a corner below its value");
    stack.push_back({mid, std::move(box.hi)});
    stack.push_back({std::move(box.lo), mid});
  }
  return result;
}

DivideConquerResult divide_and_conquer(const ValueOracle& oracle, const SeparableQuadratic& sep, const SfmSolver& sfm) {
  sep.validate(oracle.domain());
  return divide_and_conquer(oracle, SeparableTerms::from(sep), sfm);
}

ValueOracle threshold_problem(const ValueOracle& oracle, const SeparableTerms& terms, double t) {
  const ProductDomain& domain = oracle.domain();
  if (terms.size != static_cast<std::size_t>(domain.num_entries())) {
    throw InvalidArgument("separable terms do not match the domain");
  }
  std::vector<std::vector<double>> cumulative(static_cast<std::size_t>(domain.num_blocks()));
  for (int i = 0; i < domain.num_blocks(); ++i) {
    auto& c = cumulative[static_cast<std::size_t>(i)];
    c.assign(1, 0.0);
    for (int j = 0; j + 1 < domain.size(i); ++j) {
      c.push_back(c.back() + terms.derivative(static_cast<std::size_t>(domain.entry_offset(i) + j), t));
    }
  }
  return ValueOracle(domain, [oracle, cumulative](std::span<const int> x) {
    double total = oracle(x);
    for (std::size_t i = 0; i < x.size(); ++i) total += cumulative[i][static_cast<std::size_t>(x[i])];
    return total;
  });
}

SweepResult parametric_sweep(const ValueOracle& oracle, const SeparableTerms& terms, const std::vector<double>& t_grid,
                             const SfmSolver& sfm) {
  if (t_grid.empty()) throw InvalidArgument("t grid is empty");
  for (std::size_t m = 1; m < t_grid.size(); ++m) {
    if (!(t_grid[m] > t_grid[m - 1])) throw InvalidArgument("t grid must be strictly increasing");
  }
  const ProductDomain& domain = oracle.domain();
  SweepResult result;
  result.t = t_grid;
  for (std::size_t m = 0; m < t_grid.size(); ++m) {
    auto [x, value] = sfm(threshold_problem(oracle, terms, t_grid[m]));
    if (m > 0) {
      const Point& prev = result.solutions.back();
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] > prev[i]) {
          throw MonotonicityError("sweep solutions increase in coordinate " + std::to_string(i) + " between t = " +
                                  std::to_string(t_grid[m - 1]) + " and t = " + std::to_string(t_grid[m]));
        }
      }
    }
    result.solutions.push_back(std::move(x));
  }
  result.rho = Rho(domain, t_grid.front());
  for (std::size_t m = 0; m < t_grid.size(); ++m) {
    const Point& x = result.solutions[m];
    for (int i = 0; i < domain.num_blocks(); ++i) {
      for (int j = 0; j < x[static_cast<std::size_t>(i)]; ++j) result.rho(i, j) = t_grid[m];
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Ring-family reduction

RingReduction ring_family_reduce(const ValueOracle& oracle, std::vector<double> bounds) {
  const ProductDomain& domain = oracle.domain();
  const int n = domain.num_blocks();
  if (bounds.size() != static_cast<std::size_t>(n)) throw InvalidArgument("need one bound per block");
  for (int i = 0; i < n; ++i) {
    const double b = bounds[static_cast<std::size_t>(i)];
    if (!(b > 0.0) || !std::isfinite(b)) throw InvalidArgument("bounds must be positive and finite");
    if (oracle.has_lipschitz() && b < oracle.lipschitz()[static_cast<std::size_t>(i)]) {
      throw InvalidArgument("bound " + std::to_string(i) + " is below the oracle's Lipschitz bound");
    }
  }
  const std::vector<int> offsets(domain.entry_offsets().begin(), domain.entry_offsets().end());
  auto decode = [offsets, n](std::span<const int> z) {
    if (z.size() != static_cast<std::size_t>(offsets.back())) throw InvalidArgument("encoded point has the wrong length");
    Point x(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
      for (int e = offsets[static_cast<std::size_t>(i)]; e < offsets[static_cast<std::size_t>(i) + 1]; ++e) {
        if (z[static_cast<std::size_t>(e)] != 0) x[static_cast<std::size_t>(i)] = e - offsets[static_cast<std::size_t>(i)] + 1;
      }
    }
    return x;
  };
  SetFunction function(domain.num_entries(), [oracle, decode, offsets, bounds, n](std::span<const int> z) {
    const Point x = decode(z);
    double penalty = 0.0;
    for (int i = 0; i < n; ++i) {
      int count = 0;
      for (int e = offsets[static_cast<std::size_t>(i)]; e < offsets[static_cast<std::size_t>(i) + 1]; ++e) {
        count += z[static_cast<std::size_t>(e)] != 0;
      }
      penalty += bounds[static_cast<std::size_t>(i)] * (x[static_cast<std::size_t>(i)] - count);
    }
    return oracle(x) + penalty;
  });
  return {std::move(function), std::move(decode)};
}

}  // namespace submin
