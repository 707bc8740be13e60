#include "submin/extension.hpp"

#include <cmath>
#include <queue>
#include <string>

#include "submin/errors.hpp"

namespace submin {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t tie_key(std::uint64_t seed, int block, int index) {
  const std::uint64_t packed = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(block)) << 32) |
                               static_cast<std::uint32_t>(index);
  return splitmix64(splitmix64(seed) ^ packed);
}

void require_finite(double v) {
  if (!std::isfinite(v)) throw NonFiniteValue("oracle returned a non-finite value");
}

}  // namespace

bool is_nonincreasing(const BlockVector& rho, double tol) {
  for (int i = 0; i < rho.num_blocks(); ++i) {
    const auto b = rho.block(i);
    for (std::size_t j = 1; j < b.size(); ++j) {
      if (b[j] > b[j - 1] + tol) return false;
    }
  }
  return true;
}

bool is_feasible(const BlockVector& rho, double tol) {
  if (!is_nonincreasing(rho, tol)) return false;
  for (double v : rho.flat()) {
    if (v < -tol || v > 1.0 + tol) return false;
  }
  return true;
}

void require_nonincreasing(const BlockVector& rho, double tol) {
  for (int i = 0; i < rho.num_blocks(); ++i) {
    const auto b = rho.block(i);
    for (std::size_t j = 1; j < b.size(); ++j) {
      if (!(b[j] <= b[j - 1] + tol)) {
        throw MonotonicityError("block " + std::to_string(i) + " of rho is not nonincreasing at entry " +
                                std::to_string(j));
      }
    }
  }
}

std::vector<OrderStep> Ordering::steps() const {
  std::vector<OrderStep> out;
  out.reserve(blocks.size());
  std::vector<int> level;
  for (int b : blocks) {
    if (b < 0) throw InvalidArgument("ordering contains a negative block index");
    if (static_cast<std::size_t>(b) >= level.size()) level.resize(static_cast<std::size_t>(b) + 1, 0);
    out.push_back({b, ++level[static_cast<std::size_t>(b)]});
  }
  return out;
}

bool Ordering::valid_for(const ProductDomain& domain) const {
  std::vector<int> count(static_cast<std::size_t>(domain.num_blocks()), 0);
  for (int b : blocks) {
    if (b < 0 || b >= domain.num_blocks()) return false;
    ++count[static_cast<std::size_t>(b)];
  }
  for (int i = 0; i < domain.num_blocks(); ++i) {
    if (count[static_cast<std::size_t>(i)] != domain.size(i) - 1) return false;
  }
  return true;
}

Ordering compatible_ordering(const BlockVector& rho, std::uint64_t seed) {
  // k-way merge of the blocks; each block is consumed front to back.
  struct Head {
    double value;
    std::uint64_t key;
    int block;
  };
  auto after = [](const Head& a, const Head& b) {
    if (a.value != b.value) return a.value < b.value;
    if (a.key != b.key) return a.key > b.key;
    return a.block > b.block;
  };
  std::priority_queue<Head, std::vector<Head>, decltype(after)> heads(after);
  std::vector<int> cursor(static_cast<std::size_t>(rho.num_blocks()), 0);
  for (int i = 0; i < rho.num_blocks(); ++i) {
    if (rho.block_size(i) > 0) heads.push({rho(i, 0), tie_key(seed, i, 0), i});
  }
  Ordering ordering;
  ordering.blocks.reserve(rho.size());
  while (!heads.empty()) {
    const Head h = heads.top();
    heads.pop();
    ordering.blocks.push_back(h.block);
    int& c = cursor[static_cast<std::size_t>(h.block)];
    if (++c < rho.block_size(h.block)) heads.push({rho(h.block, c), tie_key(seed, h.block, c), h.block});
  }
  return ordering;
}

Point theta(const BlockVector& rho, double t) {
  Point x(static_cast<std::size_t>(rho.num_blocks()), 0);
  for (int i = 0; i < rho.num_blocks(); ++i) {
    const auto b = rho.block(i);
    int level = 0;
    while (level < static_cast<int>(b.size()) && b[static_cast<std::size_t>(level)] > t) ++level;
    x[static_cast<std::size_t>(i)] = level;
  }
  return x;
}

std::vector<Point> GreedyOutput::chain() const {
  std::vector<Point> points;
  points.reserve(ordering.blocks.size() + 1);
  Point y(static_cast<std::size_t>(w.num_blocks()), 0);
  points.push_back(y);
  for (int b : ordering.blocks) {
    ++y[static_cast<std::size_t>(b)];
    points.push_back(y);
  }
  return points;
}

GreedyOutput greedy_with_ordering(const ValueOracle& oracle, const Ordering& ordering, const BlockVector* rho) {
  const ProductDomain& domain = oracle.domain();
  if (!ordering.valid_for(domain)) throw InvalidArgument("ordering does not match the oracle's domain");
  if (rho != nullptr && !rho->matches(domain)) throw InvalidArgument("rho does not match the oracle's domain");

  GreedyOutput out;
  out.w = BlockVector(domain);
  out.ordering = ordering;
  out.chain_values.reserve(ordering.blocks.size() + 1);

  Point y = domain.bottom();
  double previous = oracle(y);
  require_finite(previous);
  out.chain_values.push_back(previous);
  out.best_point = y;
  out.best_value = previous;

  double weighted = 0.0;
  std::vector<int> level(static_cast<std::size_t>(domain.num_blocks()), 0);
  if (rho != nullptr) out.thresholds.reserve(ordering.blocks.size());
  for (int b : ordering.blocks) {
    const auto sb = static_cast<std::size_t>(b);
    const int j = level[sb]++;
    ++y[sb];
    const double current = oracle(y);
    require_finite(current);
    out.chain_values.push_back(current);
    const double increment = current - previous;
    out.w(b, j) = increment;
    if (rho != nullptr) {
      const double t = (*rho)(b, j);
      out.thresholds.push_back(t);
      weighted += t * increment;
    }
    if (current < out.best_value) {
      out.best_value = current;
      out.best_point = y;
    }
    previous = current;
  }
  out.value = rho != nullptr ? out.chain_values.front() + weighted : std::nan("");
  return out;
}

GreedyOutput greedy(const ValueOracle& oracle, const BlockVector& rho, std::uint64_t seed) {
  if (!rho.matches(oracle.domain())) throw InvalidArgument("rho does not match the oracle's domain");
  require_nonincreasing(rho);
  return greedy_with_ordering(oracle, compatible_ordering(rho, seed), &rho);
}

double evaluate_extension(const ValueOracle& oracle, const BlockVector& rho, std::uint64_t seed) {
  return greedy(oracle, rho, seed).value;
}

std::pair<Point, double> round_best(const ValueOracle& oracle, const BlockVector& rho) {
  GreedyOutput g = greedy(oracle, rho);
  return {std::move(g.best_point), g.best_value};
}

}  // namespace submin
