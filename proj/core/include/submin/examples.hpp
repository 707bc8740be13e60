#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "submin/domain.hpp"

namespace submin {

/// String-valued parameters with typed accessors. Vectors are comma separated.
class ExampleParams {
 public:
  ExampleParams() = default;
  ExampleParams(std::initializer_list<std::pair<const std::string, std::string>> init) : values_(init) {}

  ExampleParams& set(std::string key, std::string value);
  ExampleParams& set(std::string key, double value);
  ExampleParams& set(std::string key, const std::vector<double>& value);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  std::vector<double> get_vector(const std::string& key, std::vector<double> fallback) const;

  /// Throws InvalidArgument naming the first key not in allowed.
  void require_known(std::initializer_list<std::string_view> allowed, std::string_view example) const;
  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

/// A configured example: the oracle (carrying its domain and Lipschitz bounds)
/// and whether the function is submodular by construction.
struct Instance {
  std::string name;
  ValueOracle oracle;
  bool submodular = true;

  const ProductDomain& domain() const { return oracle.domain(); }
};

/// Registered names: modular, figure1, coupling, denoise, meanfield,
/// lovasz-ext, multilinear-ext, random.
std::vector<std::string> example_names();

/// Builds a registered example. Throws InvalidArgument for unknown names,
/// unknown parameter keys, or invalid values. The returned oracle's counter
/// starts at zero.
Instance make_example(std::string_view name, const ExampleParams& params = {});

/// Oracle sampling a continuous function at the grid coordinates of domain.
ValueOracle grid_oracle(const ProductDomain& domain, std::function<double(std::span<const double>)> f);

/// Lipschitz bounds by exhaustive unit-step differences when the domain has at
/// most max_points points, else the supplied fallback.
std::vector<double> lipschitz_or(const ValueOracle& oracle, std::uint64_t max_points,
                                 const std::function<std::vector<double>()>& fallback);

// Typed builders behind make_example.

/// (7/20)(x1-x2)^2 - e^{-4(x1-2/3)^2} - (3/5)e^{-4(x1+2/3)^2} - e^{-4(x2-2/3)^2} - e^{-4(x2+2/3)^2}
double figure1_function(double x1, double x2);
Instance make_figure1(int k);

struct DenoiseParams {
  std::vector<double> z;  ///< noisy observations, one per variable
  int k = 50;
  double lambda = 0.25;
  double mu = 2.0;
  double alpha = 0.125;
};
/// 1/2 sum (x_i - z_i)^2 + lambda sum |x_i|^alpha + mu sum (x_i - x_{i+1})^2 on [-1,1]^n,
/// with |0|^alpha = 0.
Instance make_denoise(const DenoiseParams& params);

struct DenoiseSignal {
  std::vector<double> clean;  ///< three constant plateaus on a zero background
  std::vector<double> noisy;  ///< clean + N(0, sigma^2), seeded
};
DenoiseSignal make_denoise_signal(int n, double sigma, std::uint64_t seed);

/// Random submodular function on prod {0..k_i-1}: random unary tables,
/// pairwise tables with nonpositive mixed differences, and a concave function of
/// a nonnegative weighted sum.
Instance make_random_submodular(std::span<const int> sizes, std::uint64_t seed);

/// Named set-functions: cardinality, min1 (min(|A|,1)), sqrt (sqrt|A|), cut
/// (random weighted complete graph, seeded).
SetFunction make_set_function(std::string_view name, int n, std::uint64_t seed = 0);

/// Lovasz extension of g evaluated on the grid {0..k-1}^n mapped to [0,1]^n.
ValueOracle lovasz_extension_oracle(const SetFunction& g, int k);
/// Multilinear extension E[g(y)], y_i ~ Bernoulli(x_i) independent, by exact
/// 2^n summation on the same grid. Throws BudgetExceeded when n > max_n.
ValueOracle multilinear_extension_oracle(const SetFunction& g, int k, int max_n = 20);

}  // namespace submin
