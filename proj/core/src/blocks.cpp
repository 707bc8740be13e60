#include "submin/blocks.hpp"

#include <string>

#include "submin/errors.hpp"

namespace submin {

BlockVector::BlockVector(const ProductDomain& domain, double fill)
    : data_(static_cast<std::size_t>(domain.num_entries()), fill),
      offsets_(domain.entry_offsets().begin(), domain.entry_offsets().end()) {}

BlockVector::BlockVector(const std::vector<std::vector<double>>& blocks) {
  offsets_.reserve(blocks.size() + 1);
  offsets_.push_back(0);
  for (const auto& b : blocks) {
    data_.insert(data_.end(), b.begin(), b.end());
    offsets_.push_back(static_cast<int>(data_.size()));
  }
}

bool BlockVector::matches(const ProductDomain& domain) const {
  const auto expected = domain.entry_offsets();
  return std::vector<int>(expected.begin(), expected.end()) == offsets_;
}

std::vector<std::vector<double>> BlockVector::to_nested() const {
  std::vector<std::vector<double>> out(static_cast<std::size_t>(num_blocks()));
  for (int i = 0; i < num_blocks(); ++i) {
    const auto b = block(i);
    out[static_cast<std::size_t>(i)].assign(b.begin(), b.end());
  }
  return out;
}

void require_same_shape(const BlockVector& a, const BlockVector& b, const char* what) {
  if (!a.same_shape(b)) throw InvalidArgument(std::string(what) + ": block shapes differ");
}

double dot(const BlockVector& a, const BlockVector& b) {
  require_same_shape(a, b, "dot");
  double sum = 0.0;
  const auto fa = a.flat();
  const auto fb = b.flat();
  for (std::size_t s = 0; s < fa.size(); ++s) sum += fa[s] * fb[s];
  return sum;
}

double squared_norm(const BlockVector& a) {
  double sum = 0.0;
  for (double v : a.flat()) sum += v * v;
  return sum;
}

}  // namespace submin
