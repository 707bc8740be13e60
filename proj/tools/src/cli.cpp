#include <fmt/format.h>

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "submin/submin.hpp"
#include "submin_cli/cli.hpp"

#ifndef SUBMIN_VERSION
#define SUBMIN_VERSION "unknown"
#endif

namespace submin::cli {

namespace {

using json = nlohmann::ordered_json;

// Thrown with the exit code it maps to.
struct Failure {
  int code;
  std::string message;
};

struct Options {
  std::string command;
  std::string example;
  std::string positional_example;
  std::vector<std::string> params;
  int n = 0;
  int k = 0;
  std::string solvers;
  int iters = 1000;
  double tol = 1e-6;
  std::uint64_t seed = 0;
  double alpha = 0.125;
  double lambda = 0.25;
  double mu = 2.0;
  double sigma = 0.2;
  std::string step = "polyak";
  double step_param = std::nan("");
  bool precondition = false;
  std::uint64_t budget = 1'000'000'000;
  bool wallclock = false;
  std::string out = "submin-out";
  std::string rho_file;
  std::string w_file;
  std::string provenance_file;
  double tmin = -2.0;
  double tmax = 2.0;
  int steps = 80;

  // Which options were given explicitly.
  std::map<std::string, bool> given;
  bool has(const std::string& name) const { return given.count(name) != 0 && given.at(name); }
};

constexpr const char* kExitCodes =
    "Exit codes:\n"
    "  0   every solver reached the tolerance (certify: certified gap within tolerance)\n"
    "  1   certify: the gap is within tolerance but not certified by a provenance\n"
    "  2   a solver stopped on its iteration or evaluation budget; certify: gap above tolerance\n"
    "  64  malformed command line, config file, or example parameters\n"
    "  65  input files that do not parse or do not match the instance\n"
    "  66  an input file cannot be read\n"
    "  70  oracle or solver failure\n"
    "  73  an output file cannot be written\n";

const char* kSolverNames[] = {"subgrad", "fw", "pfw"};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kNoInput, "cannot read " + path};
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

std::string example_name(const Options& o) {
  if (o.command == "denoise") {
    const std::string given = o.example.empty() ? o.positional_example : o.example;
    if (!given.empty() && given != "denoise") throw Failure{kUsage, "denoise runs the denoise example only"};
    return "denoise";
  }
  if (!o.example.empty() && !o.positional_example.empty() && o.example != o.positional_example) {
    throw Failure{kUsage, "two different examples given: " + o.example + " and " + o.positional_example};
  }
  std::string name = o.example.empty() ? o.positional_example : o.example;
  if (name.empty()) throw Failure{kUsage, "no example given; choose one of " + fmt::format("{}", fmt::join(example_names(), ", "))};
  return name;
}

ExampleParams example_params(const Options& o) {
  ExampleParams p;
  for (const std::string& kv : o.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw Failure{kUsage, "--param expects key=value, got '" + kv + "'"};
    p.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (o.has("n")) p.set("n", std::to_string(o.n));
  if (o.has("k")) p.set("k", std::to_string(o.k));
  if (o.has("seed")) p.set("seed", std::to_string(o.seed));
  for (const char* key : {"alpha", "lambda", "mu", "sigma"}) {
    if (!o.has(key)) continue;
    const double v = std::string(key) == "alpha"    ? o.alpha
                     : std::string(key) == "lambda" ? o.lambda
                     : std::string(key) == "mu"     ? o.mu
                                                    : o.sigma;
    p.set(key, v);
  }
  return p;
}

std::vector<std::string> solver_list(const Options& o) {
  std::string text = o.solvers;
  if (text.empty()) text = o.command == "denoise" ? "subgrad,fw,pfw" : "subgrad";
  std::vector<std::string> out = split_list(text);
  if (out.empty()) throw Failure{kUsage, "--solver is empty"};
  for (const std::string& s : out) {
    if (std::find(std::begin(kSolverNames), std::end(kSolverNames), s) == std::end(kSolverNames)) {
      throw Failure{kUsage, "unknown solver '" + s + "'; use subgrad, fw, or pfw"};
    }
    if (std::count(out.begin(), out.end(), s) > 1) throw Failure{kUsage, "solver '" + s + "' listed twice"};
  }
  return out;
}

SolverConfig solver_config(const Options& o) {
  SolverConfig c;
  c.max_iter = o.iters;
  c.tolerance = o.tol;
  c.step_rule = parse_step_rule(o.step);
  c.step_param = o.step_param;
  c.precondition = o.precondition;
  c.seed = o.seed;
  c.eval_budget = o.budget;
  c.record_time = o.wallclock;
  c.validate();
  return c;
}

SolveResult solve(const std::string& solver, const ValueOracle& oracle, SolverConfig config) {
  if (solver == "subgrad") return minimize_subgradient(oracle, config);
  config.fw_variant = solver == "fw" ? FwVariant::classic : FwVariant::pairwise;
  return minimize_frankwolfe(oracle, config);
}

json environment() {
  json env;
#if defined(__clang__)
  env["compiler"] = fmt::format("clang {}.{}.{}", __clang_major__, __clang_minor__, __clang_patchlevel__);
#elif defined(__GNUC__)
  env["compiler"] = fmt::format("gcc {}.{}.{}", __GNUC__, __GNUC_MINOR__, __GNUC_PATCHLEVEL__);
#else
  env["compiler"] = "unknown";
#endif
#if defined(__linux__)
  env["platform"] = "linux";
#elif defined(__APPLE__)
  env["platform"] = "darwin";
#elif defined(_WIN32)
  env["platform"] = "windows";
#else
  env["platform"] = "unknown";
#endif
#ifdef NDEBUG
  env["build_type"] = "release";
#else
  env["build_type"] = "debug";
#endif
  env["library_version"] = SUBMIN_VERSION;
  env["cxx_standard"] = static_cast<long>(__cplusplus);
  return env;
}

json config_echo(const Options& o, const std::string& name, const ExampleParams& params,
                 const std::vector<std::string>& solvers) {
  json c;
  c["command"] = o.command;
  c["example"] = name;
  json p = json::object();
  for (const auto& [key, value] : params.values()) p[key] = value;
  c["params"] = p;
  c["solvers"] = solvers;
  c["iters"] = o.iters;
  c["tol"] = o.tol;
  c["seed"] = o.seed;
  c["step"] = o.step;
  if (std::isnan(o.step_param)) {
    c["step_param"] = nullptr;
  } else {
    c["step_param"] = o.step_param;
  }
  c["precondition"] = o.precondition;
  c["budget"] = o.budget;
  c["wallclock"] = o.wallclock;
  return c;
}

json frozen_constants(const std::string& name, const Instance& instance) {
  json out = json::array();
  if (name == "figure1" && instance.domain().size(0) == 51 && instance.domain().size(1) == 51) {
    json c;
    c["name"] = "figure1 k=51 exhaustive minimizer";
    c["point"] = {42, 42};
    c["value"] = -1.9997099760225596;
    out.push_back(c);
  }
  return out;
}

json solver_entry(const std::string& solver, const SolveResult& r, double value) {
  const IterateRecord& last = r.log.back();
  json s;
  s["solver"] = solver;
  s["iter"] = last.iter;
  s["primal"] = last.primal;
  s["dual"] = last.dual;
  s["gap"] = last.gap;
  s["evals"] = last.evals;
  s["status"] = std::string(to_string(r.status));
  s["iterations"] = r.iterations;
  s["certified"] = r.dual.certified();
  s["point"] = r.point;
  s["value"] = value;
  return s;
}

Series gap_series(const std::string& label, const IterateLog& log) {
  Series s{label, {}, {}};
  for (const IterateRecord& row : log.rows()) {
    s.x.push_back(row.iter);
    s.y.push_back(row.gap);
  }
  return s;
}

std::vector<double> index_axis(std::size_t n) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<double>(i);
  return x;
}

std::vector<double> coordinates(const ProductDomain& domain, const Point& point) {
  std::vector<double> out;
  for (int i = 0; i < domain.num_blocks(); ++i) {
    out.push_back(domain.coordinate(i, point[static_cast<std::size_t>(i)]));
  }
  return out;
}

struct Built {
  std::string name;
  ExampleParams params;
  Instance instance;
  DenoiseSignal signal;
};

Built build_instance(const Options& o) {
  const std::string name = example_name(o);
  ExampleParams params = example_params(o);
  DenoiseSignal signal;
  try {
    if (o.command != "denoise") {
      Instance instance = make_example(name, params);
      return Built{name, params, std::move(instance), signal};
    }
    if (params.has("z")) throw Failure{kUsage, "denoise generates z itself"};
    const int n = params.get_int("n", 50);
    if (n < 1) throw Failure{kUsage, "denoise: need n >= 1"};
    signal = make_denoise_signal(n, params.get_double("sigma", 0.2), params.get_u64("seed", 0));
    if (!params.has("k")) params.set("k", "50");
    if (!params.has("alpha")) params.set("alpha", 0.125);
    ExampleParams with_z = params;
    with_z.set("z", signal.noisy);
    Instance instance = make_example("denoise", with_z);
    return Built{name, params, std::move(instance), std::move(signal)};
  } catch (const InvalidArgument& e) {
    throw Failure{kUsage, e.what()};
  }
}

int run_solvers(const Options& o, std::ostream& out, OutputSet& files) {
  const Built b = build_instance(o);
  const std::vector<std::string> solvers = solver_list(o);
  SolverConfig config;
  try {
    config = solver_config(o);
  } catch (const InvalidArgument& e) {
    throw Failure{kUsage, e.what()};
  }

  json report;
  report["config"] = config_echo(o, b.name, b.params, solvers);
  json entries = json::array();
  std::vector<Series> curves;
  std::vector<Series> fitted;
  bool all_converged = true;
  for (const std::string& solver : solvers) {
    const ValueOracle oracle = b.instance.oracle.with_fresh_counter();
    const SolveResult r = solve(solver, oracle, config);
    const double value = b.instance.oracle.with_fresh_counter()(r.point);
    files.add(solver + "/gaps.csv", gaps_csv(r.log));
    files.add(solver + "/rho.csv", blocks_csv(r.rho));
    files.add(solver + "/solution.csv", solution_csv(r.point, value));
    files.add(solver + "/w.csv", blocks_csv(r.dual.w));
    if (r.dual.certified()) files.add(solver + "/provenance.csv", provenance_csv(*r.dual.provenance));
    files.add(solver + "/gaps.svg", gap_plot_svg({gap_series(solver, r.log)}, "certified gap: " + solver));
    curves.push_back(gap_series(solver, r.log));
    entries.push_back(solver_entry(solver, r, value));
    const bool converged = r.gap() <= o.tol;
    all_converged = all_converged && converged;
    out << fmt::format("{:<8} gap {:.6e}  value {}  iterations {}  evals {}  {}\n", solver, r.gap(), value,
                       r.iterations, r.evals, to_string(r.status));

    if (o.command == "denoise") {
      const std::vector<double> denoised = coordinates(b.instance.domain(), r.point);
      std::string csv = "index,clean,noisy,denoised\n";
      for (std::size_t i = 0; i < denoised.size(); ++i) {
        csv += fmt::format("{},{},{},{}\n", i, b.signal.clean[i], b.signal.noisy[i], denoised[i]);
      }
      files.add(solver + "/signal.csv", csv);
      fitted.push_back(Series{solver, index_axis(denoised.size()), denoised});
    }
  }
  report["solvers"] = entries;
  report["environment"] = environment();
  report["frozen_constants"] = frozen_constants(b.name, b.instance);
  if (o.command == "denoise") {
    json defaults;
    defaults["note"] = "values not fixed by the source experiment; chosen here";
    defaults["lambda"] = {{"default", 0.25}, {"used", b.params.get_double("lambda", 0.25)}};
    defaults["mu"] = {{"default", 2.0}, {"used", b.params.get_double("mu", 2.0)}};
    defaults["sigma"] = {{"default", 0.2}, {"used", b.params.get_double("sigma", 0.2)}};
    defaults["signal"] = "three constant plateaus on a zero background";
    report["non_paper_defaults"] = defaults;
    const std::size_t n = b.signal.noisy.size();
    Series clean{"clean", index_axis(n), b.signal.clean};
    Series noisy{"noisy", index_axis(n), b.signal.noisy, true};
    fitted.insert(fitted.begin(), clean);
    files.add("signal.svg", signal_plot_svg({clean, noisy}, fitted, "denoising"));
  }
  files.add("gaps.svg", gap_plot_svg(curves, "certified gap: " + b.name));
  files.add("report.json", report.dump(2) + "\n");
  return all_converged ? kOk : kNotConverged;
}

int run_certify(const Options& o, std::ostream& out, OutputSet& files) {
  if (o.rho_file.empty() || o.w_file.empty()) throw Failure{kUsage, "certify needs --rho and --w"};
  const Built b = build_instance(o);
  const ProductDomain& domain = b.instance.domain();
  const std::string rho_text = read_file(o.rho_file);
  const std::string w_text = read_file(o.w_file);
  const std::string provenance_text = o.provenance_file.empty() ? std::string() : read_file(o.provenance_file);
  DualPoint dual;
  Rho rho;
  try {
    rho = Rho(parse_blocks_csv(rho_text, domain));
    dual.w = parse_blocks_csv(w_text, domain);
    if (!o.provenance_file.empty()) {
      Provenance p = parse_provenance_csv(provenance_text);
      for (const Ordering& ordering : p.orderings) {
        if (!ordering.valid_for(domain)) throw InvalidArgument("provenance ordering does not match the instance");
      }
      dual.provenance = std::move(p);
    }
  } catch (const InvalidArgument& e) {
    throw Failure{kDataError, e.what()};
  }
  for (int i = 0; i < domain.num_blocks(); ++i) {
    const auto block = rho.block(i);
    for (std::size_t j = 0; j < block.size(); ++j) {
      if (!std::isfinite(block[j]) || (j > 0 && block[j] > block[j - 1])) {
        throw Failure{kDataError, fmt::format("rho block {} is not nonincreasing", i)};
      }
    }
  }
  CertifyOptions options;
  options.verify_provenance = true;
  const GapReport g = certify_gap(b.instance.oracle, rho, dual, options);
  out << "primal_best,dual_value,gap,evals,provenance_missing,point,warnings\n";
  const std::string row = fmt::format("{},{},{},{},{},{},{}\n", g.primal_best, g.dual_value, g.gap, g.evals,
                                      g.provenance_missing ? 1 : 0, fmt::join(g.primal_point, " "),
                                      fmt::join(g.warnings, "; "));
  out << row;
  (void)files;
  if (g.gap > o.tol) return kNotConverged;
  // The primal value is attained at a point of the rounding chain, so rho
  // outside [0,1] does not weaken the certificate.
  const bool certified = !g.provenance_missing &&
                         std::none_of(g.warnings.begin(), g.warnings.end(), [](const std::string& w) {
                           return w.find("provenance") != std::string::npos || w.find("w differs") != std::string::npos;
                         });
  return certified ? kOk : kNotCertified;
}

int run_sweep(const Options& o, std::ostream& out, OutputSet& files) {
  const Built b = build_instance(o);
  if (!(o.tmin < o.tmax) || o.steps < 1) throw Failure{kUsage, "sweep needs tmin < tmax and steps >= 1"};
  SolverConfig config;
  try {
    config = solver_config(o);
  } catch (const InvalidArgument& e) {
    throw Failure{kUsage, e.what()};
  }
  std::vector<double> grid;
  for (int m = 0; m <= o.steps; ++m) grid.push_back(o.tmin + (o.tmax - o.tmin) * m / o.steps);
  const SeparableTerms terms = SeparableTerms::from(SeparableQuadratic::unit(b.instance.domain()));
  const AuditBudget budget;
  const bool exhaustive = b.instance.domain().cardinality() <= budget.max_points;
  const SweepResult sweep =
      parametric_sweep(b.instance.oracle, terms, grid, exhaustive ? exhaustive_sfm(budget) : frankwolfe_sfm(config));
  std::string csv = "t,value,point\n";
  for (std::size_t m = 0; m < sweep.t.size(); ++m) {
    const double value = threshold_problem(b.instance.oracle, terms, sweep.t[m])(sweep.solutions[m]);
    csv += fmt::format("{},{},{}\n", sweep.t[m], value, fmt::join(sweep.solutions[m], " "));
  }
  files.add("sweep.csv", csv);
  files.add("rho.csv", blocks_csv(sweep.rho));
  json report;
  report["config"] = config_echo(o, b.name, b.params, {exhaustive ? "exhaustive" : "pfw"});
  report["sweep"] = {{"tmin", o.tmin}, {"tmax", o.tmax}, {"steps", o.steps}};
  report["environment"] = environment();
  report["frozen_constants"] = frozen_constants(b.name, b.instance);
  files.add("report.json", report.dump(2) + "\n");
  out << fmt::format("swept {} thresholds on {}\n", sweep.t.size(), b.name);
  return kOk;
}

void define_options(CLI::App& app, Options& o) {
  app.add_option("--example", o.example, "example name")->check(CLI::IsMember(example_names()));
  app.add_option("--param", o.params, "example parameter key=value (repeatable)")->take_all();
  app.add_option("--n", o.n, "number of variables");
  app.add_option("--k", o.k, "grid points per variable");
  app.add_option("--solver", o.solvers, "comma-separated subset of subgrad, fw, pfw");
  app.add_option("--iters", o.iters, "iteration cap")->capture_default_str();
  app.add_option("--tol", o.tol, "gap tolerance")->capture_default_str();
  app.add_option("--seed", o.seed, "seed for ties and generated data")->capture_default_str();
  app.add_option("--alpha", o.alpha, "denoise: sparsity exponent")->capture_default_str();
  app.add_option("--lambda", o.lambda, "denoise: sparsity weight")->capture_default_str();
  app.add_option("--mu", o.mu, "denoise: smoothness weight")->capture_default_str();
  app.add_option("--sigma", o.sigma, "denoise: noise level")->capture_default_str();
  app.add_option("--step", o.step, "subgradient step rule: polyak, fixed, decaying")->capture_default_str();
  app.add_option("--step-param", o.step_param, "fixed step or decaying constant");
  app.add_flag("--precondition", o.precondition, "diagonal preconditioning of subgradient steps");
  app.add_option("--budget", o.budget, "oracle evaluation cap per solver")->capture_default_str();
  app.add_flag("--wallclock", o.wallclock, "fill the ms column (output is then not reproducible)");
  app.add_option("--out", o.out, "output directory")->envname("SUBMIN_OUT")->capture_default_str();
  app.add_option("--rho", o.rho_file, "certify: rho CSV (block,index,value)");
  app.add_option("--w", o.w_file, "certify: dual CSV (block,index,value)");
  app.add_option("--provenance", o.provenance_file, "certify: provenance CSV (vertex,weight,ordering)");
  app.add_option("--tmin", o.tmin, "sweep: first threshold")->capture_default_str();
  app.add_option("--tmax", o.tmax, "sweep: last threshold")->capture_default_str();
  app.add_option("--steps", o.steps, "sweep: grid intervals")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Submodular minimization on products of chains by convex relaxation", "submin"};
  app.footer(kExitCodes);
  app.set_config("--config", "", "flat key=value file; command-line flags win");
  app.allow_config_extras(false);
  app.fallthrough();
  app.require_subcommand(1);
  define_options(app, o);

  CLI::App* minimize = app.add_subcommand("minimize", "run solvers on an example");
  CLI::App* denoise = app.add_subcommand("denoise", "denoising experiment with all three solvers");
  CLI::App* certify = app.add_subcommand("certify", "check a primal/dual pair");
  CLI::App* sweep = app.add_subcommand("sweep", "parametric sweep of threshold problems");
  for (CLI::App* sub : {minimize, denoise, certify, sweep}) {
    sub->add_option("example", o.positional_example, "example name")->check(CLI::IsMember(example_names()));
    sub->footer(kExitCodes);
  }

  std::vector<const char*> raw;
  for (const std::string& a : argv) raw.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  for (CLI::App* sub : app.get_subcommands()) o.command = sub->get_name();
  for (const char* key : {"n", "k", "seed", "alpha", "lambda", "mu", "sigma"}) {
    if (app.get_option(std::string("--") + key)->count() > 0) o.given[key] = true;
  }

  OutputSet files;
  int code = kOk;
  try {
    if (o.command == "certify") {
      code = run_certify(o, out, files);
    } else if (o.command == "sweep") {
      code = run_sweep(o, out, files);
    } else {
      code = run_solvers(o, out, files);
    }
  } catch (const Failure& f) {
    err << "error: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kSoftware;
  }
  try {
    files.commit(o.out);
  } catch (const OutputError& e) {
    err << "error: " << e.what() << "\n";
    return kCantCreate;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kCantCreate;
  }
  if (!files.files().empty()) out << "wrote " << files.files().size() << " files to " << o.out << "\n";
  return code;
}

}  // namespace submin::cli
