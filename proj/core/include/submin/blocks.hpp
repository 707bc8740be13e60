#pragma once

#include <span>
#include <vector>

#include "submin/domain.hpp"

namespace submin {

/// n real vectors stored contiguously; block i has length k_i - 1 and entry j
/// (0-based) stands for level x_i = j + 1.
class BlockVector {
 public:
  BlockVector() = default;
  explicit BlockVector(const ProductDomain& domain, double fill = 0.0);
  explicit BlockVector(const std::vector<std::vector<double>>& blocks);

  int num_blocks() const { return static_cast<int>(offsets_.empty() ? 0 : offsets_.size() - 1); }
  int block_size(int i) const {
    return offsets_[static_cast<std::size_t>(i) + 1] - offsets_[static_cast<std::size_t>(i)];
  }
  std::size_t size() const { return data_.size(); }
  std::span<const int> offsets() const { return offsets_; }

  std::span<double> block(int i) {
    return {data_.data() + offsets_[static_cast<std::size_t>(i)], static_cast<std::size_t>(block_size(i))};
  }
  std::span<const double> block(int i) const {
    return {data_.data() + offsets_[static_cast<std::size_t>(i)], static_cast<std::size_t>(block_size(i))};
  }
  std::span<double> flat() { return data_; }
  std::span<const double> flat() const { return data_; }

  double& operator()(int i, int j) { return data_[static_cast<std::size_t>(offsets_[static_cast<std::size_t>(i)] + j)]; }
  double operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(offsets_[static_cast<std::size_t>(i)] + j)];
  }

  bool same_shape(const BlockVector& other) const { return offsets_ == other.offsets_; }
  /// True when block i has length k_i - 1 for every block of the domain.
  bool matches(const ProductDomain& domain) const;
  std::vector<std::vector<double>> to_nested() const;

  bool operator==(const BlockVector& other) const = default;

 private:
  std::vector<double> data_;
  std::vector<int> offsets_;
};

double dot(const BlockVector& a, const BlockVector& b);
double squared_norm(const BlockVector& a);
/// Shape-checked; throws InvalidArgument on mismatch.
void require_same_shape(const BlockVector& a, const BlockVector& b, const char* what);

}  // namespace submin
