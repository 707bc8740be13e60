#include "submin/domain.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "submin/errors.hpp"

namespace submin {

ProductDomain::ProductDomain(std::vector<int> sizes) : ProductDomain(std::move(sizes), {}) {}

ProductDomain::ProductDomain(std::vector<int> sizes, std::vector<std::vector<double>> grid)
    : sizes_(std::move(sizes)), grid_(std::move(grid)) {
  if (sizes_.empty()) throw InvalidArgument("product domain needs at least one block");
  for (int k : sizes_) {
    if (k < 2) throw InvalidArgument("block sizes must be at least 2, got " + std::to_string(k));
  }
  if (!grid_.empty()) {
    if (grid_.size() != sizes_.size()) throw InvalidArgument("grid must have one vector per block");
    for (std::size_t i = 0; i < sizes_.size(); ++i) {
      if (grid_[i].size() != static_cast<std::size_t>(sizes_[i])) {
        throw InvalidArgument("grid block " + std::to_string(i) + " has wrong length");
      }
      for (std::size_t j = 1; j < grid_[i].size(); ++j) {
        if (!(grid_[i][j] > grid_[i][j - 1])) {
          throw InvalidArgument("grid block " + std::to_string(i) + " is not strictly increasing");
        }
      }
    }
  }
  build_offsets();
}

ProductDomain::ProductDomain(Unchecked, std::vector<int> sizes, std::vector<std::vector<double>> grid)
    : sizes_(std::move(sizes)), grid_(std::move(grid)) {
  build_offsets();
}

void ProductDomain::build_offsets() {
  offsets_.assign(sizes_.size() + 1, 0);
  for (std::size_t i = 0; i < sizes_.size(); ++i) offsets_[i + 1] = offsets_[i] + sizes_[i] - 1;
}

ProductDomain ProductDomain::uniform(int n, int k) {
  if (n < 1) throw InvalidArgument("product domain needs at least one block");
  return ProductDomain(std::vector<int>(static_cast<std::size_t>(n), k));
}

ProductDomain ProductDomain::uniform_grid(int n, int k, double lo, double hi) {
  if (n < 1) throw InvalidArgument("product domain needs at least one block");
  std::vector<int> sizes(static_cast<std::size_t>(n), k);
  std::vector<double> los(static_cast<std::size_t>(n), lo), his(static_cast<std::size_t>(n), hi);
  return uniform_grid(sizes, los, his);
}

ProductDomain ProductDomain::uniform_grid(std::span<const int> sizes, std::span<const double> lo,
                                          std::span<const double> hi) {
  if (lo.size() != sizes.size() || hi.size() != sizes.size()) {
    throw InvalidArgument("interval bounds must match the number of blocks");
  }
  std::vector<std::vector<double>> grid(sizes.size());
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 2) throw InvalidArgument("block sizes must be at least 2");
    if (!(lo[i] < hi[i])) throw InvalidArgument("interval bounds must satisfy lo < hi");
    grid[i].resize(static_cast<std::size_t>(sizes[i]));
    const double step = (hi[i] - lo[i]) / (sizes[i] - 1);
    for (int j = 0; j < sizes[i]; ++j) grid[i][static_cast<std::size_t>(j)] = lo[i] + j * step;
    grid[i].back() = hi[i];
  }
  return ProductDomain(std::vector<int>(sizes.begin(), sizes.end()), std::move(grid));
}

std::uint64_t ProductDomain::cardinality() const {
  std::uint64_t total = 1;
  for (int k : sizes_) {
    const auto kk = static_cast<std::uint64_t>(k);
    if (total > std::numeric_limits<std::uint64_t>::max() / kk) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total *= kk;
  }
  return total;
}

double ProductDomain::coordinate(int i, int j) const {
  if (grid_.empty()) return static_cast<double>(j);
  return grid_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
}

bool ProductDomain::contains(std::span<const int> x) const {
  if (x.size() != sizes_.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < 0 || x[i] >= sizes_[i]) return false;
  }
  return true;
}

Point ProductDomain::top() const {
  Point x(sizes_.size());
  for (std::size_t i = 0; i < sizes_.size(); ++i) x[i] = sizes_[i] - 1;
  return x;
}

bool ProductDomain::next(Point& x) const {
  for (std::size_t pos = sizes_.size(); pos-- > 0;) {
    if (++x[pos] < sizes_[pos]) return true;
    x[pos] = 0;
  }
  return false;
}

std::uint64_t ProductDomain::linear_index(std::span<const int> x) const {
  std::uint64_t index = 0;
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    index = index * static_cast<std::uint64_t>(sizes_[i]) + static_cast<std::uint64_t>(x[i]);
  }
  return index;
}

ProductDomain ProductDomain::sub_box(std::span<const int> lower, std::span<const int> upper) const {
  if (lower.size() != sizes_.size() || upper.size() != sizes_.size()) {
    throw RangeError("sub-box corners must have one entry per block");
  }
  std::vector<int> sizes(sizes_.size());
  std::vector<std::vector<double>> grid;
  if (!grid_.empty()) grid.resize(sizes_.size());
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    if (lower[i] < 0 || upper[i] >= sizes_[i] || lower[i] > upper[i]) {
      throw RangeError("sub-box [" + std::to_string(lower[i]) + ", " + std::to_string(upper[i]) +
                       "] is outside block " + std::to_string(i));
    }
    sizes[i] = upper[i] - lower[i] + 1;
    if (!grid_.empty()) {
      grid[i].assign(grid_[i].begin() + lower[i], grid_[i].begin() + upper[i] + 1);
    }
  }
  return ProductDomain(Unchecked{}, std::move(sizes), std::move(grid));
}

ValueOracle::ValueOracle(ProductDomain domain, Function fn, std::vector<double> lipschitz)
    : domain_(std::move(domain)),
      fn_(std::make_shared<const Function>(std::move(fn))),
      counter_(std::make_shared<std::atomic<std::uint64_t>>(0)),
      offset_(domain_.bottom()) {
  if (!*fn_) throw InvalidArgument("oracle needs a callable");
  set_lipschitz(std::move(lipschitz));
}

double ValueOracle::operator()(std::span<const int> x) const {
  counter_->fetch_add(1, std::memory_order_relaxed);
  if (zero_offset_) return (*fn_)(x);
  // Local storage: the wrapped function may itself evaluate restricted oracles.
  constexpr std::size_t kInline = 16;
  if (x.size() <= kInline) {
    std::array<int, kInline> shifted{};
    for (std::size_t i = 0; i < x.size(); ++i) shifted[i] = x[i] + offset_[i];
    return (*fn_)(std::span<const int>(shifted.data(), x.size()));
  }
  std::vector<int> shifted(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) shifted[i] = x[i] + offset_[i];
  return (*fn_)(shifted);
}

void ValueOracle::set_lipschitz(std::vector<double> bounds) {
  if (!bounds.empty()) {
    if (bounds.size() != static_cast<std::size_t>(domain_.num_blocks())) {
      throw InvalidArgument("need one Lipschitz bound per block");
    }
    for (double b : bounds) {
      if (!(b >= 0.0) || !std::isfinite(b)) throw InvalidArgument("Lipschitz bounds must be finite and >= 0");
    }
  }
  lipschitz_ = std::move(bounds);
}

ValueOracle ValueOracle::with_fresh_counter() const {
  ValueOracle copy = *this;
  copy.counter_ = std::make_shared<std::atomic<std::uint64_t>>(0);
  return copy;
}

ValueOracle ValueOracle::restrict(std::span<const int> lower, std::span<const int> upper) const {
  ValueOracle sub = *this;
  sub.domain_ = domain_.sub_box(lower, upper);
  for (std::size_t i = 0; i < offset_.size(); ++i) sub.offset_[i] = offset_[i] + lower[i];
  sub.zero_offset_ = true;
  for (int o : sub.offset_) sub.zero_offset_ = sub.zero_offset_ && o == 0;
  return sub;
}

SetFunction::SetFunction(int n, Function fn) : n_(n), fn_(std::make_shared<const Function>(std::move(fn))) {
  if (n < 1) throw InvalidArgument("set-function needs a ground set of size >= 1");
  if (!*fn_) throw InvalidArgument("set-function needs a callable");
}

double SetFunction::at_mask(std::uint64_t mask) const {
  std::vector<int> indicator(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) indicator[static_cast<std::size_t>(i)] = static_cast<int>((mask >> i) & 1U);
  return (*fn_)(indicator);
}

ValueOracle SetFunction::as_oracle() const {
  auto fn = fn_;
  return ValueOracle(ProductDomain::uniform(n_, 2), [fn](std::span<const int> x) { return (*fn)(x); });
}

std::vector<double> tabulate(const ValueOracle& oracle, const AuditBudget& budget) {
  const ProductDomain& domain = oracle.domain();
  const std::uint64_t count = domain.cardinality();
  if (count > budget.max_points || count > budget.max_evaluations) {
    throw BudgetExceeded("enumeration of " + std::to_string(count) + " points exceeds the audit budget");
  }
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(count));
  Point x = domain.bottom();
  do {
    values.push_back(oracle(x));
  } while (domain.next(x));
  return values;
}

namespace {

// Lexicographic strides for a table produced by tabulate().
std::vector<std::uint64_t> strides_of(const ProductDomain& domain) {
  const int n = domain.num_blocks();
  std::vector<std::uint64_t> strides(static_cast<std::size_t>(n), 1);
  for (int i = n - 2; i >= 0; --i) {
    strides[static_cast<std::size_t>(i)] =
        strides[static_cast<std::size_t>(i + 1)] * static_cast<std::uint64_t>(domain.size(i + 1));
  }
  return strides;
}

}  // namespace

std::vector<double> measure_lipschitz(const ValueOracle& oracle, const AuditBudget& budget) {
  const ProductDomain& domain = oracle.domain();
  const std::vector<double> values = tabulate(oracle, budget);
  const auto strides = strides_of(domain);
  const int n = domain.num_blocks();
  std::vector<double> bounds(static_cast<std::size_t>(n), 0.0);
  Point x = domain.bottom();
  std::uint64_t index = 0;
  do {
    for (int i = 0; i < n; ++i) {
      if (x[static_cast<std::size_t>(i)] + 1 < domain.size(i)) {
        const double diff =
            std::abs(values[index + strides[static_cast<std::size_t>(i)]] - values[index]);
        bounds[static_cast<std::size_t>(i)] = std::max(bounds[static_cast<std::size_t>(i)], diff);
      }
    }
    ++index;
  } while (domain.next(x));
  return bounds;
}

SubmodularityReport is_submodular_bruteforce(const ValueOracle& oracle, double tau,
                                             const AuditBudget& budget) {
  const ProductDomain& domain = oracle.domain();
  const std::vector<double> values = tabulate(oracle, budget);
  const auto strides = strides_of(domain);
  const int n = domain.num_blocks();
  SubmodularityReport report;
  Point x = domain.bottom();
  std::uint64_t index = 0;
  do {
    for (int i = 0; i < n; ++i) {
      const auto si = static_cast<std::size_t>(i);
      if (x[si] + 1 >= domain.size(i)) continue;
      for (int j = i + 1; j < n; ++j) {
        const auto sj = static_cast<std::size_t>(j);
        if (x[sj] + 1 >= domain.size(j)) continue;
        const double h = values[index];
        const double hi = values[index + strides[si]];
        const double hj = values[index + strides[sj]];
        const double hij = values[index + strides[si] + strides[sj]];
        const double excess = (h + hij) - (hi + hj);
        if (excess > tau) {
          report.submodular = false;
          report.witness = SubmodularityWitness{x, i, j, excess};
          return report;
        }
      }
    }
    ++index;
  } while (domain.next(x));
  return report;
}

}  // namespace submin
