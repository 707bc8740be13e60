#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "submin/errors.hpp"
#include "submin_cli/cli.hpp"

namespace submin::cli {

namespace fs = std::filesystem;

void write_atomic(const fs::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  if (ec) throw OutputError("cannot create " + path.parent_path().string() + ": " + ec.message());
  fs::path temp = path;
  temp += ".tmp";
  {
    std::ofstream file(temp, std::ios::binary | std::ios::trunc);
    if (!file) throw OutputError("cannot open " + temp.string());
    file.write(content.data(), static_cast<std::streamsize>(content.size()));
    file.flush();
    if (!file) throw OutputError("cannot write " + temp.string());
  }
  fs::rename(temp, path, ec);
  if (ec) {
    fs::remove(temp, ec);
    throw OutputError("cannot rename into " + path.string());
  }
}

void OutputSet::commit(const fs::path& root) const {
  for (const auto& [relative, content] : files_) write_atomic(root / relative, content);
}

std::string gaps_csv(const IterateLog& log) {
  std::string out = "iter,primal,dual,gap,evals,ms\n";
  for (const IterateRecord& row : log.rows()) {
    out += fmt::format("{},{},{},{},{},{}\n", row.iter, row.primal, row.dual, row.gap, row.evals, row.ms);
  }
  return out;
}

std::string blocks_csv(const BlockVector& values) {
  std::string out = "block,index,value\n";
  for (int i = 0; i < values.num_blocks(); ++i) {
    const auto b = values.block(i);
    for (std::size_t j = 0; j < b.size(); ++j) out += fmt::format("{},{},{}\n", i, j, b[j]);
  }
  return out;
}

std::string solution_csv(const Point& point, double value) {
  std::string out = "index,coordinate,value\n";
  for (std::size_t i = 0; i < point.size(); ++i) out += fmt::format("{},{},{}\n", i, point[i], value);
  return out;
}

std::string provenance_csv(const Provenance& provenance) {
  std::string out = "vertex,weight,ordering\n";
  for (std::size_t v = 0; v < provenance.weights.size(); ++v) {
    out += fmt::format("{},{},{}\n", v, provenance.weights[v], fmt::join(provenance.orderings[v].blocks, " "));
  }
  return out;
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(line);
  while (std::getline(in, part, sep)) parts.push_back(part);
  if (!line.empty() && line.back() == sep) parts.emplace_back();
  return parts;
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

template <typename T>
T parse_number(const std::string& text, int line) {
  const std::string t = trim(text);
  std::size_t used = 0;
  T value{};
  try {
    if constexpr (std::is_same_v<T, double>) {
      value = std::stod(t, &used);
    } else {
      value = static_cast<T>(std::stoll(t, &used));
    }
  } catch (const std::exception&) {
    used = 0;
  }
  if (t.empty() || used != t.size()) {
    throw InvalidArgument("line " + std::to_string(line) + ": '" + t + "' is not a number");
  }
  return value;
}

// Data rows of a CSV with the given header; blank lines are skipped.
std::vector<std::vector<std::string>> rows_of(const std::string& text, const std::string& header, std::size_t columns) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || trim(line) != header) throw InvalidArgument("expected the header '" + header + "'");
  std::vector<std::vector<std::string>> rows;
  int number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (trim(line).empty()) continue;
    std::vector<std::string> parts = split(trim(line), ',');
    if (parts.size() != columns) {
      throw InvalidArgument("line " + std::to_string(number) + ": expected " + std::to_string(columns) + " fields");
    }
    parts.push_back(std::to_string(number));
    rows.push_back(std::move(parts));
  }
  return rows;
}

}  // namespace

BlockVector parse_blocks_csv(const std::string& text, const ProductDomain& domain) {
  BlockVector out(domain, 0.0);
  std::vector<char> seen(out.size(), 0);
  for (const auto& row : rows_of(text, "block,index,value", 3)) {
    const int line = std::stoi(row[3]);
    const long long block = parse_number<long long>(row[0], line);
    const long long index = parse_number<long long>(row[1], line);
    const double value = parse_number<double>(row[2], line);
    if (block < 0 || block >= domain.num_blocks()) {
      throw InvalidArgument("line " + std::to_string(line) + ": block " + std::to_string(block) +
                            " does not exist; the instance has " + std::to_string(domain.num_blocks()));
    }
    if (index < 0 || index >= domain.size(static_cast<int>(block)) - 1) {
      throw InvalidArgument("line " + std::to_string(line) + ": block " + std::to_string(block) + " has " +
                            std::to_string(domain.size(static_cast<int>(block)) - 1) + " entries, got index " +
                            std::to_string(index));
    }
    const auto flat = static_cast<std::size_t>(domain.entry_offset(static_cast<int>(block)) + index);
    if (seen[flat]) throw InvalidArgument("line " + std::to_string(line) + ": duplicate entry");
    seen[flat] = 1;
    out.flat()[flat] = value;
  }
  for (int i = 0; i < domain.num_blocks(); ++i) {
    for (int j = 0; j + 1 < domain.size(i); ++j) {
      if (!seen[static_cast<std::size_t>(domain.entry_offset(i) + j)]) {
        throw InvalidArgument("missing entry (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      }
    }
  }
  return out;
}

Provenance parse_provenance_csv(const std::string& text) {
  Provenance p;
  for (const auto& row : rows_of(text, "vertex,weight,ordering", 3)) {
    const int line = std::stoi(row[3]);
    p.weights.push_back(parse_number<double>(row[1], line));
    Ordering o;
    std::istringstream blocks(row[2]);
    std::string token;
    while (blocks >> token) o.blocks.push_back(static_cast<int>(parse_number<long long>(token, line)));
    p.orderings.push_back(std::move(o));
  }
  if (p.weights.empty()) throw InvalidArgument("provenance lists no vertices");
  return p;
}

}  // namespace submin::cli
