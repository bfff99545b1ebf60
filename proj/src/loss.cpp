#include "sepkit/loss.hpp"

namespace sepkit {

namespace detail {

double loss_from_margins(std::span<const double> margins) {
  double acc = 0.0;
  for (double m : margins) {
    acc += log1pexp(-m);
  }
  return acc / static_cast<double>(margins.size());
}

WeightPass weight_pass_from_margins(const Dataset& data,
                                    std::span<const double> margins) {
  const std::size_t n = data.size();
  Vector acc(data.dim(), 0.0);
  double weight_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = neg_sigmoid(margins[i]);
    weight_sum += w;
    axpy(acc, w * static_cast<double>(data.label(i)), data.feature(i));
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  for (double& x : acc) {
    x *= -inv_n;
  }
  return {std::move(acc), weight_sum * inv_n};
}

}  // namespace detail

double logistic_loss(const Dataset& data, std::span<const double> theta) {
  data.require_dim(theta, "logistic_loss");
  double acc = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    acc += log1pexp(-data.signed_margin(i, theta));
  }
  return acc / static_cast<double>(data.size());
}

std::vector<double> per_sample_weights(const Dataset& data,
                                       std::span<const double> theta) {
  data.require_dim(theta, "per_sample_weights");
  std::vector<double> weights = data.signed_margins(theta);
  for (double& w : weights) {
    w = neg_sigmoid(w);
  }
  return weights;
}

// Single pass, no per-sample buffer: margins feed the accumulator as
// they are computed.
WeightPass weight_pass(const Dataset& data, std::span<const double> theta) {
  data.require_dim(theta, "weight_pass");
  Vector acc(data.dim(), 0.0);
  double weight_sum = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double w = neg_sigmoid(data.signed_margin(i, theta));
    weight_sum += w;
    axpy(acc, w * static_cast<double>(data.label(i)), data.feature(i));
  }
  const double inv_n = 1.0 / static_cast<double>(data.size());
  for (double& x : acc) {
    x *= -inv_n;
  }
  return {std::move(acc), weight_sum * inv_n};
}

Vector logistic_gradient(const Dataset& data, std::span<const double> theta) {
  return weight_pass(data, theta).gradient;
}

double beta(const Dataset& data, std::span<const double> theta) {
  const double mean = weight_pass(data, theta).mean_weight;
  if (mean <= 0.0) {
    fail(SEPKIT_ERR_NONFINITE,
         "beta: every per-sample weight underflowed to zero");
  }
  return 1.0 / mean;
}

}  // namespace sepkit
