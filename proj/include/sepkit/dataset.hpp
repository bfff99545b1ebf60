#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sepkit/core.hpp"

namespace sepkit {

/// Immutable labeled sample set for the binary separation task: n feature
/// vectors a_i in R^d with labels y_i in {-1, +1}. Features are stored
/// row-major; all coordinates are validated finite on construction.
class Dataset {
 public:
  Dataset(std::vector<double> features, std::vector<int> labels,
          std::size_t dim);

  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t dim() const noexcept { return dim_; }

  std::span<const double> feature(std::size_t i) const {
    return {features_.data() + i * dim_, dim_};
  }
  int label(std::size_t i) const { return labels_[i]; }

  const std::vector<double>& features() const noexcept { return features_; }
  const std::vector<int>& labels() const noexcept { return labels_; }

  /// y_i * a_i^T theta
  double signed_margin(std::size_t i, std::span<const double> theta) const {
    return static_cast<double>(labels_[i]) * dot(feature(i), theta);
  }

  /// All n signed margins in index order.
  std::vector<double> signed_margins(std::span<const double> theta) const;

  void require_dim(std::span<const double> theta, const char* where) const;

  bool operator==(const Dataset& other) const = default;

 private:
  std::vector<double> features_;
  std::vector<int> labels_;
  std::size_t dim_;
};

}  // namespace sepkit
