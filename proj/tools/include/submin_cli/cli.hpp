#pragma once

#include <filesystem>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "submin/blocks.hpp"
#include "submin/duality.hpp"
#include "submin/solvers.hpp"

namespace submin::cli {

/// sysexits-style process exit codes.
enum ExitCode : int {
  kOk = 0,
  kNotCertified = 1,  ///< certify: gap within tolerance, but the dual point is not certified
  kNotConverged = 2,  ///< a solver stopped on its iteration or evaluation budget above tolerance
  kUsage = 64,        ///< malformed command line, config file, or example parameters
  kDataError = 65,    ///< input files that do not parse or do not match the instance
  kNoInput = 66,      ///< an input file cannot be read
  kSoftware = 70,     ///< oracle or solver failure
  kCantCreate = 73,   ///< output could not be written
};

/// A file could not be written.
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Runs the command line; never throws. argv[0] is the program name.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

/// Files of one run, keyed by path relative to the output directory.
class OutputSet {
 public:
  void add(std::string relative, std::string content) { files_[std::move(relative)] = std::move(content); }
  const std::map<std::string, std::string>& files() const { return files_; }
  /// Writes every file through a temporary sibling and a rename.
  void commit(const std::filesystem::path& root) const;

 private:
  std::map<std::string, std::string> files_;
};

void write_atomic(const std::filesystem::path& path, const std::string& content);

// CSV

std::string gaps_csv(const IterateLog& log);
/// block,index,value
std::string blocks_csv(const BlockVector& values);
/// index,coordinate,value with value = H(point) on every row.
std::string solution_csv(const Point& point, double value);
/// vertex,weight,ordering with the ordering as space-separated block indices.
std::string provenance_csv(const Provenance& provenance);

/// Parses block,index,value rows into a BlockVector with the shape of domain.
/// Throws InvalidArgument on malformed rows or a shape mismatch.
BlockVector parse_blocks_csv(const std::string& text, const ProductDomain& domain);
Provenance parse_provenance_csv(const std::string& text);

// SVG

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool markers_only = false;
};

/// Gap curves on a log-scale y axis. Nonpositive values are drawn at the floor.
std::string gap_plot_svg(const std::vector<Series>& series, const std::string& title);
/// Two panels: the top one holds `observed`, the bottom one `fitted`.
std::string signal_plot_svg(const std::vector<Series>& observed, const std::vector<Series>& fitted,
                            const std::string& title);

}  // namespace submin::cli
