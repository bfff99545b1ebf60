#include "sepkit/dataset.hpp"

#include <string>

namespace sepkit {

Dataset::Dataset(std::vector<double> features, std::vector<int> labels,
                 std::size_t dim)
    : features_(std::move(features)), labels_(std::move(labels)), dim_(dim) {
  if (labels_.empty()) {
    fail(SEPKIT_ERR_INVALID_ARGUMENT, "dataset: no samples");
  }
  if (dim_ == 0) {
    fail(SEPKIT_ERR_INVALID_ARGUMENT, "dataset: dimension must be >= 1");
  }
  if (features_.size() != labels_.size() * dim_) {
    fail(SEPKIT_ERR_DIMENSION_MISMATCH,
         "dataset: feature storage does not match n x d");
  }
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] != 1 && labels_[i] != -1) {
      fail(SEPKIT_ERR_INVALID_ARGUMENT,
           "dataset: label at sample " + std::to_string(i) +
               " is not in {-1,+1}");
    }
  }
  if (!all_finite(features_)) {
    fail(SEPKIT_ERR_NONFINITE, "dataset: non-finite feature coordinate");
  }
}

std::vector<double> Dataset::signed_margins(
    std::span<const double> theta) const {
  require_dim(theta, "signed_margins");
  std::vector<double> margins(size());
  for (std::size_t i = 0; i < size(); ++i) {
    margins[i] = signed_margin(i, theta);
  }
  return margins;
}

void Dataset::require_dim(std::span<const double> theta,
                          const char* where) const {
  if (theta.size() != dim_) {
    fail(SEPKIT_ERR_DIMENSION_MISMATCH,
         std::string(where) + ": dimension mismatch (theta has " +
             std::to_string(theta.size()) + ", data has " +
             std::to_string(dim_) + ")");
  }
}

}  // namespace sepkit
