#pragma once

#include <span>

#include "sepkit/dataset.hpp"

namespace sepkit {

/// f(theta) = (1/n) sum_i log(1 + exp(-y_i a_i^T theta))
double logistic_loss(const Dataset& data, std::span<const double> theta);

/// w_i = (1 + exp(y_i a_i^T theta))^-1, one weight per sample.
std::vector<double> per_sample_weights(const Dataset& data,
                                       std::span<const double> theta);

/// grad f(theta) = -(1/n) sum_i w_i y_i a_i, accumulated in one pass.
Vector logistic_gradient(const Dataset& data, std::span<const double> theta);

/// Reciprocal mean weight ((1/n) sum_i w_i)^-1; in [1, inf), exactly 2
/// at theta = 0. Errors if every weight underflowed to zero.
double beta(const Dataset& data, std::span<const double> theta);

/// Gradient and mean weight from a single pass over the samples, so a
/// normalized step sees both at the identical theta.
struct WeightPass {
  Vector gradient;
  double mean_weight;
};
WeightPass weight_pass(const Dataset& data, std::span<const double> theta);

namespace detail {
/// Same accumulation given precomputed signed margins.
WeightPass weight_pass_from_margins(const Dataset& data,
                                    std::span<const double> margins);
double loss_from_margins(std::span<const double> margins);
}  // namespace detail

}  // namespace sepkit
