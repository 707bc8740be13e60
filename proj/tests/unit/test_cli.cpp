#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <unistd.h>
#include <sstream>
#include <string>
#include <vector>

#include "submin/submin.hpp"
#include "submin_cli/cli.hpp"

namespace {

namespace fs = std::filesystem;
using namespace submin;
using submin::cli::run;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "submin");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("submin_cli_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::vector<std::string>> csv_rows(const fs::path& path) {
  std::istringstream in(slurp(path));
  std::string line;
  std::getline(in, line);
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::istringstream l(line);
    std::string f;
    while (std::getline(l, f, ',')) fields.push_back(f);
    rows.push_back(fields);
  }
  return rows;
}

nlohmann::json report_of(const fs::path& dir) { return nlohmann::json::parse(slurp(dir / "report.json")); }

TEST(CliMinimize, ModularConvergesWithinFiveIterations) {
  const fs::path dir = fresh_dir("modular");
  for (const char* solver : {"subgrad", "fw", "pfw"}) {
    const Outcome r = invoke({"minimize", "modular", "--solver", solver, "--out", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto report = report_of(dir);
    EXPECT_LE(report["solvers"][0]["iterations"].get<int>(), 5) << solver;
  }
  fs::remove_all(dir);
}

TEST(CliMinimize, Figure1SubgradientFindsFrozenMinimizer) {
  const fs::path dir = fresh_dir("figure1");
  const Outcome r = invoke({"minimize", "figure1", "--k", "51", "--solver", "subgrad", "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv_rows(dir / "subgrad" / "solution.csv");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0][1], "42");
  EXPECT_EQ(rows[1][1], "42");
  EXPECT_DOUBLE_EQ(std::stod(rows[0][2]), -1.9997099760225596);
  const auto report = report_of(dir);
  EXPECT_EQ(report["frozen_constants"][0]["value"].get<double>(), -1.9997099760225596);
  fs::remove_all(dir);
}

TEST(CliMinimize, ReportGapMatchesLastLogRow) {
  const fs::path dir = fresh_dir("report_gap");
  const Outcome r = invoke({"minimize", "coupling", "--k", "6", "--solver", "subgrad,pfw", "--iters", "30", "--out",
                            dir.string()});
  ASSERT_TRUE(r.code == 0 || r.code == 2) << r.err;
  const auto report = report_of(dir);
  for (const auto& entry : report["solvers"]) {
    const auto rows = csv_rows(dir / entry["solver"].get<std::string>() / "gaps.csv");
    EXPECT_EQ(std::stod(rows.back()[3]), entry["gap"].get<double>());
    EXPECT_EQ(std::stoi(rows.back()[0]), entry["iter"].get<int>());
  }
  fs::remove_all(dir);
}

TEST(CliMinimize, IterationLimitExitsTwo) {
  const fs::path dir = fresh_dir("limit");
  const Outcome r = invoke({"minimize", "figure1", "--k", "51", "--solver", "fw", "--iters", "3", "--out", dir.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(fs::exists(dir / "fw" / "gaps.csv"));
  fs::remove_all(dir);
}

TEST(CliMinimize, MalformedConfigExits64WithoutOutputs) {
  const fs::path dir = fresh_dir("badcfg");
  const fs::path cfg = fs::temp_directory_path() / ("submin_bad_" + std::to_string(::getpid()) + ".cfg");
  std::ofstream(cfg) << "k=5\nnot_an_option=3\n";
  const Outcome r = invoke({"minimize", "modular", "--config", cfg.string(), "--out", dir.string()});
  EXPECT_EQ(r.code, 64);
  EXPECT_FALSE(fs::exists(dir));
  fs::remove(cfg);
}

TEST(CliMinimize, ConfigValuesApplyAndFlagsWin) {
  const fs::path dir = fresh_dir("goodcfg");
  const fs::path cfg = fs::temp_directory_path() / ("submin_good_" + std::to_string(::getpid()) + ".cfg");
  std::ofstream(cfg) << "k=5\niters=50\nsolver=pfw\n";
  const Outcome r = invoke({"minimize", "coupling", "--config", cfg.string(), "--iters", "7", "--out", dir.string()});
  ASSERT_TRUE(r.code == 0 || r.code == 2) << r.err;
  const auto report = report_of(dir);
  EXPECT_EQ(report["config"]["params"]["k"], "5");
  EXPECT_EQ(report["config"]["iters"], 7);
  EXPECT_EQ(report["config"]["solvers"][0], "pfw");
  fs::remove_all(dir);
  fs::remove(cfg);
}

TEST(CliMinimize, UsageErrorsExit64) {
  const fs::path dir = fresh_dir("usage");
  EXPECT_EQ(invoke({"minimize", "--out", dir.string()}).code, 64);
  EXPECT_EQ(invoke({"minimize", "nosuch", "--out", dir.string()}).code, 64);
  EXPECT_EQ(invoke({"minimize", "modular", "--solver", "newton", "--out", dir.string()}).code, 64);
  EXPECT_EQ(invoke({"minimize", "figure1", "--alpha", "0.5", "--out", dir.string()}).code, 64);
  EXPECT_EQ(invoke({"minimize", "modular", "--iters", "0", "--out", dir.string()}).code, 64);
  EXPECT_EQ(invoke({"minimize", "modular", "--k", "lots", "--out", dir.string()}).code, 64);
  EXPECT_EQ(invoke({"frobnicate"}).code, 64);
  EXPECT_FALSE(fs::exists(dir));
}

TEST(CliMinimize, HelpListsExitCodes) {
  const Outcome r = invoke({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("Exit codes"), std::string::npos);
  EXPECT_NE(r.out.find("64"), std::string::npos);
}

TEST(CliMinimize, UnwritableOutputExits73) {
  const fs::path blocker = fs::temp_directory_path() / ("submin_blocker_" + std::to_string(::getpid()));
  std::ofstream(blocker) << "x";
  const Outcome r = invoke({"minimize", "modular", "--out", (blocker / "sub").string()});
  EXPECT_EQ(r.code, 73);
  fs::remove(blocker);
}

TEST(CliDenoise, NoRegularizationGivesNearestGridPoint) {
  const fs::path dir = fresh_dir("nearest");
  const int k = 9;
  const Outcome r = invoke({"denoise", "--n", "12", "--k", std::to_string(k), "--lambda", "0", "--mu", "0", "--solver",
                            "pfw", "--seed", "5", "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const auto& row : csv_rows(dir / "pfw" / "signal.csv")) {
    const double z = std::stod(row[2]);
    double best = 0.0;
    double best_distance = INFINITY;
    for (int j = 0; j < k; ++j) {
      const double c = -1.0 + 2.0 * j / (k - 1);
      if (std::abs(c - z) < best_distance) {
        best_distance = std::abs(c - z);
        best = c;
      }
    }
    EXPECT_NEAR(std::stod(row[3]), best, 1e-12) << "z = " << z;
  }
  fs::remove_all(dir);
}

TEST(CliDenoise, SameSeedGivesIdenticalFiles) {
  const fs::path a = fresh_dir("det_a");
  const fs::path b = fresh_dir("det_b");
  for (const fs::path& dir : {a, b}) {
    const Outcome r = invoke({"denoise", "--n", "15", "--k", "12", "--iters", "60", "--seed", "3", "--out", dir.string()});
    ASSERT_TRUE(r.code == 0 || r.code == 2) << r.err;
  }
  int compared = 0;
  for (const auto& entry : fs::recursive_directory_iterator(a)) {
    if (!entry.is_regular_file()) continue;
    const fs::path other = b / fs::relative(entry.path(), a);
    ASSERT_TRUE(fs::exists(other)) << other;
    EXPECT_EQ(slurp(entry.path()), slurp(other)) << entry.path();
    ++compared;
  }
  EXPECT_GE(compared, 20);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(CliDenoise, GapCurvesAndSolutionsAreConsistent) {
  const fs::path dir = fresh_dir("curves");
  const Outcome r = invoke({"denoise", "--n", "10", "--k", "10", "--iters", "80", "--seed", "2", "--out", dir.string()});
  ASSERT_TRUE(r.code == 0 || r.code == 2) << r.err;
  DenoiseSignal signal = make_denoise_signal(10, 0.2, 2);
  ExampleParams params{{"k", "10"}};
  params.set("z", signal.noisy);
  const Instance instance = make_example("denoise", params);
  for (const char* solver : {"subgrad", "fw", "pfw"}) {
    double previous = INFINITY;
    for (const auto& row : csv_rows(dir / solver / "gaps.csv")) {
      const double gap = std::stod(row[3]);
      EXPECT_LE(gap, previous);
      EXPECT_GE(gap, -1e-9);
      previous = gap;
    }
    Point point;
    double value = 0.0;
    for (const auto& row : csv_rows(dir / solver / "solution.csv")) {
      point.push_back(std::stoi(row[1]));
      value = std::stod(row[2]);
    }
    ASSERT_TRUE(instance.domain().contains(point));
    EXPECT_EQ(value, instance.oracle(point)) << solver;
  }
  const std::string svg = slurp(dir / "signal.svg");
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("noisy"), std::string::npos);
  EXPECT_NE(svg.find("pfw"), std::string::npos);
  EXPECT_TRUE(report_of(dir).contains("non_paper_defaults"));
  fs::remove_all(dir);
}

class CliCertify : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = fresh_dir("certify_source");
    const Outcome r = invoke({"minimize", "figure1", "--k", "21", "--solver", "pfw", "--out", dir_.string()});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  static void TearDownTestSuite() { fs::remove_all(dir_); }
  static fs::path dir_;
};
fs::path CliCertify::dir_;

TEST_F(CliCertify, OptimalPairFromPriorRunExitsZero) {
  const fs::path run = dir_ / "pfw";
  const Outcome r = invoke({"certify", "figure1", "--k", "21", "--rho", (run / "rho.csv").string(), "--w",
                            (run / "w.csv").string(), "--provenance", (run / "provenance.csv").string()});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("primal_best,dual_value,gap"), std::string::npos);
}

TEST_F(CliCertify, RawDualIsFlagged) {
  const fs::path zero = fs::temp_directory_path() / ("submin_zero_" + std::to_string(::getpid()) + ".csv");
  {
    std::ofstream f(zero);
    f << "block,index,value\n";
    for (int b = 0; b < 2; ++b) {
      for (int j = 0; j < 20; ++j) f << b << "," << j << ",0\n";
    }
  }
  const Outcome r = invoke({"certify", "figure1", "--k", "21", "--rho", zero.string(), "--w", zero.string()});
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.out.find("no provenance"), std::string::npos) << r.out;
  std::istringstream lines(r.out);
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  EXPECT_NE(row.find(",1,"), std::string::npos) << row;
  fs::remove(zero);
}

TEST_F(CliCertify, MismatchedBlockSizesExit65) {
  const fs::path run = dir_ / "pfw";
  const Outcome r = invoke({"certify", "figure1", "--k", "31", "--rho", (run / "rho.csv").string(), "--w",
                            (run / "w.csv").string()});
  EXPECT_EQ(r.code, 65);
}

TEST_F(CliCertify, ForgedDualIsNotCertified) {
  const fs::path run = dir_ / "pfw";
  BlockVector w = cli::parse_blocks_csv(slurp(run / "w.csv"), ProductDomain::uniform(2, 21));
  // Move mass between two entries so w no longer matches its provenance.
  w.flat()[0] += 0.5;
  w.flat()[1] -= 0.5;
  const fs::path forged = fs::temp_directory_path() / ("submin_forged_" + std::to_string(::getpid()) + ".csv");
  std::ofstream(forged) << cli::blocks_csv(w);
  const Outcome r = invoke({"certify", "figure1", "--k", "21", "--rho", (run / "rho.csv").string(), "--w",
                            forged.string(), "--provenance", (run / "provenance.csv").string()});
  EXPECT_EQ(r.code, cli::kNotCertified) << r.out;
  EXPECT_NE(r.out.find("differs"), std::string::npos);
  fs::remove(forged);
}

TEST_F(CliCertify, MissingInputExits66) {
  const Outcome r = invoke({"certify", "figure1", "--k", "21", "--rho", "/nonexistent/rho.csv", "--w", "/nonexistent/w.csv"});
  EXPECT_EQ(r.code, 66);
}

TEST(CliSweep, WritesMonotoneSolutions) {
  const fs::path dir = fresh_dir("sweep");
  const Outcome r = invoke({"sweep", "random", "--n", "3", "--k", "4", "--seed", "9", "--steps", "40", "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::vector<int> previous;
  for (const auto& row : csv_rows(dir / "sweep.csv")) {
    std::istringstream coords(row[2]);
    std::vector<int> x;
    int v = 0;
    while (coords >> v) x.push_back(v);
    if (!previous.empty()) {
      for (std::size_t i = 0; i < x.size(); ++i) EXPECT_LE(x[i], previous[i]);
    }
    previous = x;
  }
  EXPECT_TRUE(fs::exists(dir / "rho.csv"));
  fs::remove_all(dir);
}

TEST(CliCsv, BlocksRoundTrip) {
  const ProductDomain d({3, 4});
  BlockVector v(d);
  v.flat()[0] = 0.1;
  v.flat()[1] = -1e-300;
  v.flat()[2] = 1.0 / 3.0;
  v.flat()[4] = 123456.789;
  const BlockVector back = cli::parse_blocks_csv(cli::blocks_csv(v), d);
  for (std::size_t e = 0; e < v.size(); ++e) EXPECT_EQ(back.flat()[e], v.flat()[e]);
}

TEST(CliCsv, ParseRejectsBadInput) {
  const ProductDomain d({2, 2});
  EXPECT_THROW(cli::parse_blocks_csv("block,index,value\n0,0,1\n", d), InvalidArgument);
  EXPECT_THROW(cli::parse_blocks_csv("block,index,value\n0,0,1\n1,0,x\n", d), InvalidArgument);
  EXPECT_THROW(cli::parse_blocks_csv("block,index,value\n0,0,1\n0,0,1\n1,0,2\n", d), InvalidArgument);
  EXPECT_THROW(cli::parse_blocks_csv("b,i,v\n0,0,1\n1,0,2\n", d), InvalidArgument);
  EXPECT_NO_THROW(cli::parse_blocks_csv("block,index,value\n1,0,2\n0,0,1\n", d));
}

TEST(CliSvg, SinglePointHasOneMarker) {
  const std::string svg = cli::gap_plot_svg({{"one", {1.0}, {0.5}}}, "single");
  std::size_t count = 0;
  for (std::size_t pos = svg.find("<circle"); pos != std::string::npos; pos = svg.find("<circle", pos + 1)) ++count;
  EXPECT_EQ(count, 1u);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST(CliSvg, IdenticalInputsGiveIdenticalBytes) {
  const std::vector<cli::Series> s{{"a", {1, 2, 3}, {1.0, 1e-3, 0.0}}, {"b", {1, 2}, {0.5, 0.25}}};
  EXPECT_EQ(cli::gap_plot_svg(s, "t"), cli::gap_plot_svg(s, "t"));
  EXPECT_EQ(cli::signal_plot_svg(s, s, "t"), cli::signal_plot_svg(s, s, "t"));
}

TEST(CliSvg, EmptySeriesIsRejected) {
  EXPECT_THROW(cli::gap_plot_svg({}, "empty"), InvalidArgument);
  EXPECT_THROW(cli::gap_plot_svg({{"a", {1.0, 2.0}, {1.0}}}, "bad"), InvalidArgument);
}

}  // namespace
