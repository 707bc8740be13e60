#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace submin {

/// A point of the product domain: x_i in {0, ..., k_i - 1}.
using Point = std::vector<int>;

/// Caps for exhaustive enumeration.
struct AuditBudget {
  std::uint64_t max_points = 4'000'000;
  std::uint64_t max_evaluations = 50'000'000;
};

/// Product of finite chains {0, ..., k_i - 1}, optionally carrying real grid
/// coordinates per block.
///
/// User-built domains require k_i >= 2. Sub-boxes produced by restriction may
/// contain singleton blocks (k_i == 1); those contribute no Rho entries.
class ProductDomain {
 public:
  explicit ProductDomain(std::vector<int> sizes);
  ProductDomain(std::vector<int> sizes, std::vector<std::vector<double>> grid);

  static ProductDomain uniform(int n, int k);
  /// Uniform grid on [lo, hi] per block: index j maps to lo + j (hi - lo) / (k - 1).
  static ProductDomain uniform_grid(int n, int k, double lo, double hi);
  static ProductDomain uniform_grid(std::span<const int> sizes, std::span<const double> lo,
                                    std::span<const double> hi);

  int num_blocks() const { return static_cast<int>(sizes_.size()); }
  int size(int i) const { return sizes_[static_cast<std::size_t>(i)]; }
  std::span<const int> sizes() const { return sizes_; }

  /// r = sum_i (k_i - 1), the number of Rho entries.
  int num_entries() const { return offsets_.back(); }
  /// Start of block i inside a flattened Rho.
  int entry_offset(int i) const { return offsets_[static_cast<std::size_t>(i)]; }
  std::span<const int> entry_offsets() const { return offsets_; }

  /// Number of points, saturating at UINT64_MAX.
  std::uint64_t cardinality() const;

  bool has_grid() const { return !grid_.empty(); }
  std::span<const double> grid(int i) const { return grid_[static_cast<std::size_t>(i)]; }
  double coordinate(int i, int j) const;

  bool contains(std::span<const int> x) const;
  Point bottom() const { return Point(sizes_.size(), 0); }
  Point top() const;

  /// Lexicographic successor (last coordinate fastest). Returns false after the
  /// last point, leaving x at the bottom.
  bool next(Point& x) const;
  /// Position of x in lexicographic order.
  std::uint64_t linear_index(std::span<const int> x) const;

  /// Sub-box [lower, upper]; grid coordinates are sliced accordingly.
  ProductDomain sub_box(std::span<const int> lower, std::span<const int> upper) const;

  bool operator==(const ProductDomain& other) const {
    return sizes_ == other.sizes_ && grid_ == other.grid_;
  }

 private:
  struct Unchecked {};
  ProductDomain(Unchecked, std::vector<int> sizes, std::vector<std::vector<double>> grid);
  void build_offsets();

  std::vector<int> sizes_;
  std::vector<int> offsets_;
  std::vector<std::vector<double>> grid_;
};

/// Pure evaluation of H on a ProductDomain with per-coordinate Lipschitz bounds
/// B_i >= |H(x + e_i) - H(x)| and a shared evaluation counter.
///
/// Copies share the function and the counter. Restrictions share both with
/// their parent so every evaluation issued by an algorithm is counted once.
class ValueOracle {
 public:
  using Function = std::function<double(std::span<const int>)>;

  ValueOracle(ProductDomain domain, Function fn, std::vector<double> lipschitz = {});

  double operator()(std::span<const int> x) const;

  const ProductDomain& domain() const { return domain_; }
  int num_blocks() const { return domain_.num_blocks(); }

  bool has_lipschitz() const { return !lipschitz_.empty(); }
  std::span<const double> lipschitz() const { return lipschitz_; }
  void set_lipschitz(std::vector<double> bounds);

  std::uint64_t evaluations() const { return counter_->load(std::memory_order_relaxed); }
  /// Same function and bounds with a new counter starting at zero.
  ValueOracle with_fresh_counter() const;

  /// Oracle on the sub-box [lower, upper]; evaluates H at lower + y. Restricting
  /// a restriction composes into a single offset from the root function.
  ValueOracle restrict(std::span<const int> lower, std::span<const int> upper) const;
  /// Offset of this oracle's origin inside the root function's domain.
  std::span<const int> offset() const { return offset_; }

 private:
  ProductDomain domain_;
  std::shared_ptr<const Function> fn_;
  std::shared_ptr<std::atomic<std::uint64_t>> counter_;
  std::vector<int> offset_;
  bool zero_offset_ = true;
  std::vector<double> lipschitz_;
};

/// Set-function on subsets of {0, ..., n-1}, encoded as 0/1 indicator vectors.
class SetFunction {
 public:
  using Function = std::function<double(std::span<const int>)>;

  SetFunction(int n, Function fn);

  int size() const { return n_; }
  double operator()(std::span<const int> indicator) const { return (*fn_)(indicator); }
  /// Value at the subset encoded by the low n bits of mask.
  double at_mask(std::uint64_t mask) const;
  /// The set-function as an oracle on {0,1}^n.
  ValueOracle as_oracle() const;

 private:
  int n_;
  std::shared_ptr<const Function> fn_;
};

/// Every value of H in lexicographic order; throws BudgetExceeded when the
/// domain is larger than the budget allows.
std::vector<double> tabulate(const ValueOracle& oracle, const AuditBudget& budget = {});

/// max |H(x + e_i) - H(x)| over the whole domain, per coordinate.
std::vector<double> measure_lipschitz(const ValueOracle& oracle, const AuditBudget& budget = {});

struct SubmodularityWitness {
  Point x;
  int i = 0;
  int j = 0;
  /// H(x) + H(x+e_i+e_j) - H(x+e_i) - H(x+e_j), positive when violated.
  double excess = 0.0;
};

struct SubmodularityReport {
  bool submodular = true;
  std::optional<SubmodularityWitness> witness;
};

/// Checks H(x+e_i) + H(x+e_j) >= H(x) + H(x+e_i+e_j) - tau on every x and pair
/// i < j with both increments in range. Reports the first violation in
/// lexicographic order of (x, i, j).
SubmodularityReport is_submodular_bruteforce(const ValueOracle& oracle, double tau = 1e-9,
                                             const AuditBudget& budget = {});

}  // namespace submin
