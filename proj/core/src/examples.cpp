#include "submin/examples.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "submin/errors.hpp"

namespace submin {

namespace {

constexpr std::uint64_t kExhaustiveLipschitzPoints = 1'000'000;

double parse_double(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw InvalidArgument("parameter '" + key + "': cannot parse '" + text + "' as a number");
  }
  if (used != text.size() || !std::isfinite(v)) {
    throw InvalidArgument("parameter '" + key + "': cannot parse '" + text + "' as a number");
  }
  return v;
}

std::string format_double(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidArgument(message);
}

// Max over grid steps j of |f(u_{j+1}) - f(u_j)|.
double max_step(std::span<const double> grid, const std::function<double(double)>& f) {
  double best = 0.0;
  for (std::size_t j = 0; j + 1 < grid.size(); ++j) best = std::max(best, std::abs(f(grid[j + 1]) - f(grid[j])));
  return best;
}

// Max over grid steps j and partner values v in partner of |phi(u_{j+1} - v) - phi(u_j - v)|.
double max_coupling_step(std::span<const double> grid, std::span<const double> partner,
                         const std::function<double(double)>& phi) {
  double best = 0.0;
  for (std::size_t j = 0; j + 1 < grid.size(); ++j) {
    for (double v : partner) best = std::max(best, std::abs(phi(grid[j + 1] - v) - phi(grid[j] - v)));
  }
  return best;
}

double entropy_term(double p) {
  double h = 0.0;
  if (p > 0.0) h += p * std::log(p);
  if (p < 1.0) h += (1.0 - p) * std::log(1.0 - p);
  return h;
}

Instance make_modular(const ExampleParams& params) {
  params.require_known({"n", "k", "weights"}, "modular");
  const int n = params.get_int("n", 2);
  const int k = params.get_int("k", 3);
  require(n >= 1 && k >= 2, "modular: need n >= 1 and k >= 2");
  const std::vector<double> weights = params.get_vector("weights", std::vector<double>(static_cast<std::size_t>(n), 1.0));
  require(weights.size() == static_cast<std::size_t>(n), "modular: weights must have n entries");
  std::vector<double> bounds(weights.size());
  std::transform(weights.begin(), weights.end(), bounds.begin(), [](double c) { return std::abs(c); });
  ValueOracle oracle(
      ProductDomain::uniform(n, k),
      [weights](std::span<const int> x) {
        double total = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) total += weights[i] * x[i];
        return total;
      },
      bounds);
  return {"modular", std::move(oracle), true};
}

Instance make_coupling(const ExampleParams& params) {
  params.require_known({"n", "k", "power", "strength", "tilt"}, "coupling");
  const int n = params.get_int("n", 2);
  const int k = params.get_int("k", 5);
  const double power = params.get_double("power", 2.0);
  const double strength = params.get_double("strength", 1.0);
  const std::vector<double> tilt = params.get_vector("tilt", std::vector<double>(static_cast<std::size_t>(n), 0.0));
  require(n >= 2 && k >= 2, "coupling: need n >= 2 and k >= 2");
  require(power >= 1.0, "coupling: power must be >= 1 for a convex coupling");
  require(strength >= 0.0, "coupling: strength must be >= 0");
  require(tilt.size() == static_cast<std::size_t>(n), "coupling: tilt must have n entries");
  const ProductDomain domain = ProductDomain::uniform_grid(n, k, -1.0, 1.0);
  auto phi = [power](double d) { return std::pow(std::abs(d), power); };
  ValueOracle oracle = grid_oracle(domain, [=](std::span<const double> u) {
    double total = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      total += tilt[i] * u[i];
      for (std::size_t j = i + 1; j < u.size(); ++j) total += strength * phi(u[i] - u[j]);
    }
    return total;
  });
  oracle.set_lipschitz(lipschitz_or(oracle, kExhaustiveLipschitzPoints, [&] {
    const auto grid = domain.grid(0);
    const double coupling = max_coupling_step(grid, grid, phi);
    std::vector<double> b(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      b[static_cast<std::size_t>(i)] = strength * (n - 1) * coupling +
                                       std::abs(tilt[static_cast<std::size_t>(i)]) * (grid[1] - grid[0]);
    }
    return b;
  }));
  return {"coupling", std::move(oracle), true};
}

Instance make_meanfield(const ExampleParams& params) {
  params.require_known({"n", "k", "coupling", "bias"}, "meanfield");
  const int n = params.get_int("n", 4);
  const int k = params.get_int("k", 11);
  const double coupling = params.get_double("coupling", 1.0);
  std::vector<double> default_bias(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) default_bias[static_cast<std::size_t>(i)] = (i % 2 == 0) ? -0.5 : 0.5;
  const std::vector<double> bias = params.get_vector("bias", default_bias);
  require(n >= 1 && k >= 2, "meanfield: need n >= 1 and k >= 2");
  require(coupling >= 0.0, "meanfield: coupling must be >= 0 for a submodular cut");
  require(bias.size() == static_cast<std::size_t>(n), "meanfield: bias must have n entries");
  // F(S) = sum_{i in S} bias_i + coupling * (number of chain edges cut by S);
  // its multilinear extension is written in closed form.
  const ProductDomain domain = ProductDomain::uniform_grid(n, k, 0.0, 1.0);
  ValueOracle oracle = grid_oracle(domain, [=](std::span<const double> p) {
    double total = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) total += entropy_term(p[i]) + bias[i] * p[i];
    for (std::size_t i = 0; i + 1 < p.size(); ++i) total += coupling * (p[i] + p[i + 1] - 2.0 * p[i] * p[i + 1]);
    return total;
  });
  oracle.set_lipschitz(lipschitz_or(oracle, kExhaustiveLipschitzPoints, [&] {
    const auto grid = domain.grid(0);
    const double h = grid[1] - grid[0];
    const double ent = max_step(grid, entropy_term);
    std::vector<double> b(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const int degree = (i > 0) + (i + 1 < n);
      b[static_cast<std::size_t>(i)] = ent + h * (std::abs(bias[static_cast<std::size_t>(i)]) + coupling * degree);
    }
    return b;
  }));
  return {"meanfield", std::move(oracle), true};
}

Instance make_denoise_from(const ExampleParams& params) {
  params.require_known({"n", "k", "lambda", "mu", "alpha", "sigma", "seed", "z"}, "denoise");
  DenoiseParams p;
  p.k = params.get_int("k", 50);
  p.lambda = params.get_double("lambda", 0.25);
  p.mu = params.get_double("mu", 2.0);
  p.alpha = params.get_double("alpha", 0.125);
  if (params.has("z")) {
    p.z = params.get_vector("z", {});
  } else {
    const int n = params.get_int("n", 50);
    require(n >= 1, "denoise: need n >= 1");
    p.z = make_denoise_signal(n, params.get_double("sigma", 0.2), params.get_u64("seed", 0)).noisy;
  }
  return make_denoise(p);
}

Instance make_extension_example(const ExampleParams& params, bool lovasz) {
  const char* name = lovasz ? "lovasz-ext" : "multilinear-ext";
  params.require_known({"n", "k", "set_function", "seed"}, name);
  const int n = params.get_int("n", 2);
  const int k = params.get_int("k", 6);
  require(n >= 1 && k >= 2, std::string(name) + ": need n >= 1 and k >= 2");
  const SetFunction g = make_set_function(params.get_string("set_function", "min1"), n, params.get_u64("seed", 0));
  ValueOracle oracle = lovasz ? lovasz_extension_oracle(g, k) : multilinear_extension_oracle(g, k);
  return {name, std::move(oracle), true};
}

Instance make_random_from(const ExampleParams& params) {
  params.require_known({"n", "k", "seed"}, "random");
  const int n = params.get_int("n", 3);
  const int k = params.get_int("k", 4);
  require(n >= 1 && k >= 2, "random: need n >= 1 and k >= 2");
  const std::vector<int> sizes(static_cast<std::size_t>(n), k);
  return make_random_submodular(sizes, params.get_u64("seed", 0));
}

}  // namespace

ExampleParams& ExampleParams::set(std::string key, std::string value) {
  values_[std::move(key)] = std::move(value);
  return *this;
}

ExampleParams& ExampleParams::set(std::string key, double value) { return set(std::move(key), format_double(value)); }

ExampleParams& ExampleParams::set(std::string key, const std::vector<double>& value) {
  std::string text;
  for (std::size_t i = 0; i < value.size(); ++i) {
    if (i) text += ',';
    text += format_double(value[i]);
  }
  return set(std::move(key), text);
}

double ExampleParams::get_double(const std::string& key, double fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : parse_double(key, it->second);
}

int ExampleParams::get_int(const std::string& key, int fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const double v = parse_double(key, it->second);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw InvalidArgument("parameter '" + key + "' must be an integer");
  return static_cast<int>(v);
}

std::uint64_t ExampleParams::get_u64(const std::string& key, std::uint64_t fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(it->second, &used);
    if (used == it->second.size()) return v;
  } catch (const std::exception&) {
  }
  throw InvalidArgument("parameter '" + key + "' must be a nonnegative integer");
}

std::string ExampleParams::get_string(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

std::vector<double> ExampleParams::get_vector(const std::string& key, std::vector<double> fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::vector<double> out;
  std::stringstream stream(it->second);
  std::string item;
  while (std::getline(stream, item, ',')) out.push_back(parse_double(key, item));
  if (out.empty()) throw InvalidArgument("parameter '" + key + "' is an empty list");
  return out;
}

void ExampleParams::require_known(std::initializer_list<std::string_view> allowed, std::string_view example) const {
  for (const auto& [key, value] : values_) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw InvalidArgument("example '" + std::string(example) + "' has no parameter '" + key + "'");
    }
  }
}

std::vector<std::string> example_names() {
  return {"modular", "figure1", "coupling", "denoise", "meanfield", "lovasz-ext", "multilinear-ext", "random"};
}

Instance make_example(std::string_view name, const ExampleParams& params) {
  if (name == "modular") return make_modular(params);
  if (name == "figure1") {
    params.require_known({"k"}, "figure1");
    return make_figure1(params.get_int("k", 51));
  }
  if (name == "coupling") return make_coupling(params);
  if (name == "denoise") return make_denoise_from(params);
  if (name == "meanfield") return make_meanfield(params);
  if (name == "lovasz-ext") return make_extension_example(params, true);
  if (name == "multilinear-ext") return make_extension_example(params, false);
  if (name == "random") return make_random_from(params);
  throw InvalidArgument("unknown example '" + std::string(name) + "'");
}

ValueOracle grid_oracle(const ProductDomain& domain, std::function<double(std::span<const double>)> f) {
  if (!domain.has_grid()) throw InvalidArgument("grid_oracle needs a domain with grid coordinates");
  return ValueOracle(domain, [domain, f = std::move(f)](std::span<const int> x) {
    constexpr std::size_t kInline = 16;
    if (x.size() <= kInline) {
      std::array<double, kInline> u{};
      for (std::size_t i = 0; i < x.size(); ++i) u[i] = domain.coordinate(static_cast<int>(i), x[i]);
      return f(std::span<const double>(u.data(), x.size()));
    }
    std::vector<double> u(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) u[i] = domain.coordinate(static_cast<int>(i), x[i]);
    return f(u);
  });
}

std::vector<double> lipschitz_or(const ValueOracle& oracle, std::uint64_t max_points,
                                 const std::function<std::vector<double>()>& fallback) {
  if (oracle.domain().cardinality() <= max_points) {
    AuditBudget budget;
    budget.max_points = max_points;
    return measure_lipschitz(oracle.with_fresh_counter(), budget);
  }
  return fallback();
}

double figure1_function(double x1, double x2) {
  const double a = 2.0 / 3.0;
  const double d = x1 - x2;
  return 0.35 * d * d - std::exp(-4.0 * (x1 - a) * (x1 - a)) - 0.6 * std::exp(-4.0 * (x1 + a) * (x1 + a)) -
         std::exp(-4.0 * (x2 - a) * (x2 - a)) - std::exp(-4.0 * (x2 + a) * (x2 + a));
}

Instance make_figure1(int k) {
  require(k >= 2, "figure1: need k >= 2");
  const ProductDomain domain = ProductDomain::uniform_grid(2, k, -1.0, 1.0);
  ValueOracle oracle = grid_oracle(domain, [](std::span<const double> u) { return figure1_function(u[0], u[1]); });
  oracle.set_lipschitz(lipschitz_or(oracle, kExhaustiveLipschitzPoints, [&] {
    // |d/dx_i| <= 0.7 * 2 + 1.6 * max_u 8|u|e^{-4u^2}
    const double h = 2.0 / (k - 1);
    const double bump = 8.0 / (2.0 * std::sqrt(2.0)) * std::exp(-0.5);
    return std::vector<double>(2, h * (1.4 + 1.6 * bump));
  }));
  return {"figure1", std::move(oracle), true};
}

Instance make_denoise(const DenoiseParams& p) {
  const int n = static_cast<int>(p.z.size());
  require(n >= 1, "denoise: need at least one observation");
  require(p.k >= 2, "denoise: need k >= 2");
  require(p.lambda >= 0.0 && p.mu >= 0.0, "denoise: lambda and mu must be >= 0");
  require(p.alpha > 0.0, "denoise: alpha must be > 0");
  for (double v : p.z) require(std::isfinite(v), "denoise: observations must be finite");
  const ProductDomain domain = ProductDomain::uniform_grid(n, p.k, -1.0, 1.0);
  const std::vector<double> z = p.z;
  const double lambda = p.lambda, mu = p.mu, alpha = p.alpha;
  auto sparse = [alpha](double u) { return u == 0.0 ? 0.0 : std::pow(std::abs(u), alpha); };
  ValueOracle oracle = grid_oracle(domain, [=](std::span<const double> u) {
    double total = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double r = u[i] - z[i];
      total += 0.5 * r * r + lambda * sparse(u[i]);
      if (i + 1 < u.size()) {
        const double d = u[i] - u[i + 1];
        total += mu * d * d;
      }
    }
    return total;
  });
  // Analytic bound: data term + sparsity term + smoothness coupling per neighbor.
  const auto grid = domain.grid(0);
  const double coupling = max_coupling_step(grid, grid, [](double d) { return d * d; });
  const double penalty = max_step(grid, sparse);
  std::vector<double> bounds(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double zi = z[static_cast<std::size_t>(i)];
    const double data = max_step(grid, [zi](double u) { return 0.5 * (u - zi) * (u - zi); });
    const int degree = (i > 0) + (i + 1 < n);
    bounds[static_cast<std::size_t>(i)] = data + lambda * penalty + mu * degree * coupling;
  }
  oracle.set_lipschitz(std::move(bounds));
  return {"denoise", std::move(oracle), true};
}

DenoiseSignal make_denoise_signal(int n, double sigma, std::uint64_t seed) {
  require(n >= 1, "denoise: need n >= 1");
  require(sigma >= 0.0, "denoise: sigma must be >= 0");
  DenoiseSignal s;
  s.clean.assign(static_cast<std::size_t>(n), 0.0);
  struct Plateau {
    double from, to, level;
  };
  constexpr Plateau plateaus[] = {{0.15, 0.35, 0.7}, {0.45, 0.6, -0.5}, {0.7, 0.85, 0.4}};
  for (const Plateau& pl : plateaus) {
    const int a = static_cast<int>(std::lround(pl.from * n));
    const int b = static_cast<int>(std::lround(pl.to * n));
    for (int i = a; i < b && i < n; ++i) s.clean[static_cast<std::size_t>(i)] = pl.level;
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  s.noisy.resize(s.clean.size());
  for (std::size_t i = 0; i < s.clean.size(); ++i) s.noisy[i] = s.clean[i] + sigma * noise(rng);
  return s;
}

Instance make_random_submodular(std::span<const int> sizes, std::uint64_t seed) {
  const ProductDomain domain{std::vector<int>(sizes.begin(), sizes.end())};
  const int n = domain.num_blocks();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::exponential_distribution<double> expo(1.0);

  std::vector<std::vector<double>> unary(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < domain.size(i); ++a) unary[static_cast<std::size_t>(i)].push_back(gauss(rng));
  }

  // pair[i][j][a * k_j + b], i < j, with nonpositive mixed differences.
  std::vector<std::vector<std::vector<double>>> pair(static_cast<std::size_t>(n),
                                                     std::vector<std::vector<double>>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int ki = domain.size(i), kj = domain.size(j);
      const double scale = unit(rng);
      auto& table = pair[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      table.assign(static_cast<std::size_t>(ki * kj), 0.0);
      for (int a = 1; a < ki; ++a) {
        for (int b = 1; b < kj; ++b) {
          const double mixed = -scale * expo(rng);
          table[static_cast<std::size_t>(a * kj + b)] = mixed + table[static_cast<std::size_t>((a - 1) * kj + b)] +
                                                        table[static_cast<std::size_t>(a * kj + b - 1)] -
                                                        table[static_cast<std::size_t>((a - 1) * kj + b - 1)];
        }
      }
      // Modular corrections keep the mixed differences and remove the drift
      // toward the top corner: subtract the mean over the other coordinate.
      std::vector<double> row_mean(static_cast<std::size_t>(ki), 0.0), col_mean(static_cast<std::size_t>(kj), 0.0);
      for (int a = 0; a < ki; ++a) {
        for (int b = 0; b < kj; ++b) {
          const double v = table[static_cast<std::size_t>(a * kj + b)];
          row_mean[static_cast<std::size_t>(a)] += v / kj;
          col_mean[static_cast<std::size_t>(b)] += v / ki;
        }
      }
      for (int a = 0; a < ki; ++a) {
        for (int b = 0; b < kj; ++b) {
          table[static_cast<std::size_t>(a * kj + b)] -=
              row_mean[static_cast<std::size_t>(a)] + col_mean[static_cast<std::size_t>(b)];
        }
      }
    }
  }

  std::vector<double> slope(static_cast<std::size_t>(n));
  for (double& s : slope) s = unit(rng);
  const double concave_weight = 2.0 * unit(rng);
  // Secant slope of sqrt(1 + s) on [0, sum of slopes]; subtracting it leaves a
  // concave term vanishing at both corners.
  const double slope_total = std::accumulate(slope.begin(), slope.end(), 0.0);
  const double secant = slope_total > 0.0 ? (std::sqrt(1.0 + slope_total) - 1.0) / slope_total : 0.0;

  ValueOracle oracle(domain, [=](std::span<const int> x) {
    double total = 0.0;
    double weighted = 0.0;
    for (int i = 0; i < n; ++i) {
      const auto si = static_cast<std::size_t>(i);
      total += unary[si][static_cast<std::size_t>(x[si])];
      weighted += slope[si] * x[si] / (domain.size(i) - 1);
      for (int j = i + 1; j < n; ++j) {
        const auto sj = static_cast<std::size_t>(j);
        total += pair[si][sj][static_cast<std::size_t>(x[si] * domain.size(j) + x[sj])];
      }
    }
    return total + concave_weight * (std::sqrt(1.0 + weighted) - secant * weighted);
  });
  oracle.set_lipschitz(lipschitz_or(oracle, kExhaustiveLipschitzPoints, [&] {
    // Sum of per-term maximal unit steps.
    std::vector<double> b(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
      const auto si = static_cast<std::size_t>(i);
      for (std::size_t a = 0; a + 1 < unary[si].size(); ++a) {
        b[si] = std::max(b[si], std::abs(unary[si][a + 1] - unary[si][a]));
      }
      b[si] += concave_weight * slope[si] * std::max(0.5, secant) / (domain.size(i) - 1);
    }
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const auto& table = pair[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        const int ki = domain.size(i), kj = domain.size(j);
        double bi = 0.0, bj = 0.0;
        for (int a = 0; a < ki; ++a) {
          for (int c = 0; c < kj; ++c) {
            const double v = table[static_cast<std::size_t>(a * kj + c)];
            if (a + 1 < ki) bi = std::max(bi, std::abs(table[static_cast<std::size_t>((a + 1) * kj + c)] - v));
            if (c + 1 < kj) bj = std::max(bj, std::abs(table[static_cast<std::size_t>(a * kj + c + 1)] - v));
          }
        }
        b[static_cast<std::size_t>(i)] += bi;
        b[static_cast<std::size_t>(j)] += bj;
      }
    }
    return b;
  }));
  return {"random", std::move(oracle), true};
}

SetFunction make_set_function(std::string_view name, int n, std::uint64_t seed) {
  require(n >= 1, "set-function needs n >= 1");
  auto cardinality = [](std::span<const int> s) { return static_cast<double>(std::accumulate(s.begin(), s.end(), 0)); };
  if (name == "cardinality") return SetFunction(n, cardinality);
  if (name == "min1") {
    return SetFunction(n, [cardinality](std::span<const int> s) { return std::min(cardinality(s), 1.0); });
  }
  if (name == "sqrt") {
    return SetFunction(n, [cardinality](std::span<const int> s) { return std::sqrt(cardinality(s)); });
  }
  if (name == "cut") {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> weight(static_cast<std::size_t>(n * n), 0.0);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) weight[static_cast<std::size_t>(i * n + j)] = unit(rng);
    }
    return SetFunction(n, [n, weight](std::span<const int> s) {
      double total = 0.0;
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          if (s[static_cast<std::size_t>(i)] != s[static_cast<std::size_t>(j)]) {
            total += weight[static_cast<std::size_t>(i * n + j)];
          }
        }
      }
      return total;
    });
  }
  throw InvalidArgument("unknown set-function '" + std::string(name) + "'");
}

namespace {

// Per-element max |G(S + i) - G(S)| over all S.
std::vector<double> max_marginals(const SetFunction& g) {
  const int n = g.size();
  if (n > 20) throw BudgetExceeded("marginal scan over 2^n subsets is limited to n <= 20");
  std::vector<double> table(std::size_t{1} << n);
  for (std::uint64_t m = 0; m < table.size(); ++m) table[m] = g.at_mask(m);
  std::vector<double> b(static_cast<std::size_t>(n), 0.0);
  for (std::uint64_t m = 0; m < table.size(); ++m) {
    for (int i = 0; i < n; ++i) {
      if (!((m >> i) & 1U)) {
        b[static_cast<std::size_t>(i)] =
            std::max(b[static_cast<std::size_t>(i)], std::abs(table[m | (std::uint64_t{1} << i)] - table[m]));
      }
    }
  }
  return b;
}

}  // namespace

ValueOracle lovasz_extension_oracle(const SetFunction& g, int k) {
  require(k >= 2, "extension grid needs k >= 2");
  const int n = g.size();
  const ProductDomain domain = ProductDomain::uniform_grid(n, k, 0.0, 1.0);
  ValueOracle oracle = grid_oracle(domain, [g, n](std::span<const double> u) {
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return u[static_cast<std::size_t>(a)] > u[static_cast<std::size_t>(b)]; });
    std::vector<int> set(static_cast<std::size_t>(n), 0);
    double previous = g(set);
    double total = previous;
    for (int idx : order) {
      set[static_cast<std::size_t>(idx)] = 1;
      const double current = g(set);
      total += u[static_cast<std::size_t>(idx)] * (current - previous);
      previous = current;
    }
    return total;
  });
  if (n <= 20) {
    std::vector<double> b = max_marginals(g);
    for (double& v : b) v /= (k - 1);
    oracle.set_lipschitz(std::move(b));
  }
  return oracle;
}

ValueOracle multilinear_extension_oracle(const SetFunction& g, int k, int max_n) {
  require(k >= 2, "extension grid needs k >= 2");
  const int n = g.size();
  if (n > max_n || n > 30) {
    throw BudgetExceeded("multilinear extension needs 2^n terms; n = " + std::to_string(n) + " exceeds the cap");
  }
  std::vector<double> table(std::size_t{1} << n);
  for (std::uint64_t m = 0; m < table.size(); ++m) table[m] = g.at_mask(m);
  const ProductDomain domain = ProductDomain::uniform_grid(n, k, 0.0, 1.0);
  ValueOracle oracle = grid_oracle(domain, [table, n](std::span<const double> p) {
    double total = 0.0;
    for (std::uint64_t m = 0; m < table.size(); ++m) {
      double prob = 1.0;
      for (int i = 0; i < n; ++i) {
        const double pi = p[static_cast<std::size_t>(i)];
        prob *= ((m >> i) & 1U) ? pi : 1.0 - pi;
      }
      total += prob * table[m];
    }
    return total;
  });
  std::vector<double> b = max_marginals(g);
  for (double& v : b) v /= (k - 1);
  oracle.set_lipschitz(std::move(b));
  return oracle;
}

}  // namespace submin
