#include "sepkit/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace sepkit {

Dataset two_point_dataset() {
  return Dataset({1.0, -1.0, -1.0, -4.0}, {1, -1}, 2);
}

Dataset worst_case_dataset(std::int64_t n) {
  if (n < 2) {
    fail(SEPKIT_ERR_INVALID_ARGUMENT, "worst_case_dataset: n must be >= 2");
  }
  std::vector<double> features;
  features.reserve(static_cast<std::size_t>(n) * 2);
  std::vector<int> labels;
  labels.reserve(static_cast<std::size_t>(n));
  features.insert(features.end(), {0.5, -1.0});
  labels.push_back(1);
  for (std::int64_t i = 1; i < n; ++i) {
    features.insert(features.end(), {-0.5, -1.0});
    labels.push_back(-1);
  }
  return Dataset(std::move(features), std::move(labels), 2);
}

namespace {

Vector random_unit(std::mt19937_64& rng, std::size_t d) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(d);
  double n2 = 0.0;
  do {
    for (double& x : v) {
      x = gauss(rng);
    }
    n2 = squared_norm(v);
  } while (n2 == 0.0);
  const double inv = 1.0 / std::sqrt(n2);
  for (double& x : v) {
    x *= inv;
  }
  return v;
}

Vector random_in_ball(std::mt19937_64& rng, std::size_t d, double radius) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Vector v = random_unit(rng, d);
  const double r =
      radius * std::pow(unif(rng), 1.0 / static_cast<double>(d));
  for (double& x : v) {
    x *= r;
  }
  return v;
}

}  // namespace

Dataset random_separable(std::int64_t n, std::int64_t d, double target_margin,
                         double target_radius, std::uint64_t seed) {
  if (n < 1 || d < 1) {
    fail(SEPKIT_ERR_INVALID_ARGUMENT, "random_separable: n and d must be >= 1");
  }
  if (!(target_margin > 0.0) || !(target_margin < target_radius)) {
    fail(SEPKIT_ERR_INVALID_ARGUMENT,
         "random_separable: need 0 < target_margin < target_radius");
  }

  std::mt19937_64 rng(seed);
  const Vector hidden = random_unit(rng, static_cast<std::size_t>(d));

  std::vector<double> features;
  features.reserve(static_cast<std::size_t>(n * d));
  std::vector<int> labels;
  labels.reserve(static_cast<std::size_t>(n));

  constexpr std::int64_t kDrawCap = 1000000;
  std::int64_t draws = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    for (;;) {
      if (++draws > kDrawCap) {
        fail(SEPKIT_ERR_SOLVER_STALLED,
             "random_separable: rejection failed after 10^6 draws "
             "(target_margin too close to target_radius)");
      }
      const Vector a =
          random_in_ball(rng, static_cast<std::size_t>(d), target_radius);
      const double m = dot(hidden, a);
      if (std::abs(m) >= target_margin) {
        features.insert(features.end(), a.begin(), a.end());
        labels.push_back(m > 0.0 ? 1 : -1);
        break;
      }
    }
  }
  return Dataset(std::move(features), std::move(labels),
                 static_cast<std::size_t>(d));
}

Dataset imbalance(const Dataset& data, int class_label, std::int64_t factor) {
  if (class_label != 1 && class_label != -1) {
    fail(SEPKIT_ERR_INVALID_ARGUMENT, "imbalance: class must be -1 or +1");
  }
  if (factor < 1) {
    fail(SEPKIT_ERR_INVALID_ARGUMENT, "imbalance: factor must be >= 1");
  }
  const bool present =
      std::any_of(data.labels().begin(), data.labels().end(),
                  [&](int y) { return y == class_label; });
  if (!present) {
    fail(SEPKIT_ERR_INVALID_ARGUMENT,
         "imbalance: class " + std::to_string(class_label) +
             " absent from data");
  }

  std::vector<double> features;
  std::vector<int> labels;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const std::int64_t copies = data.label(i) == class_label ? factor : 1;
    const auto f = data.feature(i);
    for (std::int64_t c = 0; c < copies; ++c) {
      features.insert(features.end(), f.begin(), f.end());
      labels.push_back(data.label(i));
    }
  }
  return Dataset(std::move(features), std::move(labels), data.dim());
}

Dataset perturb(const Dataset& data, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0)) {
    fail(SEPKIT_ERR_INVALID_ARGUMENT, "perturb: sigma must be >= 0");
  }
  if (sigma == 0.0) {
    return data;
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, sigma);
  std::vector<double> features = data.features();
  for (double& x : features) {
    x += noise(rng);
  }
  return Dataset(std::move(features), data.labels(), data.dim());
}

Dataset subsample(const Dataset& data, std::int64_t count, std::uint64_t seed) {
  if (count < 1 || count > static_cast<std::int64_t>(data.size())) {
    fail(SEPKIT_ERR_INVALID_ARGUMENT,
         "subsample: count must be in [1, n]");
  }
  // Partial Fisher-Yates, then restore original order.
  std::vector<std::size_t> indices(data.size());
  std::iota(indices.begin(), indices.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  for (std::int64_t i = 0; i < count; ++i) {
    std::uniform_int_distribution<std::size_t> pick(
        static_cast<std::size_t>(i), indices.size() - 1);
    std::swap(indices[static_cast<std::size_t>(i)], indices[pick(rng)]);
  }
  indices.resize(static_cast<std::size_t>(count));
  std::sort(indices.begin(), indices.end());

  std::vector<double> features;
  features.reserve(indices.size() * data.dim());
  std::vector<int> labels;
  labels.reserve(indices.size());
  for (std::size_t i : indices) {
    const auto f = data.feature(i);
    features.insert(features.end(), f.begin(), f.end());
    labels.push_back(data.label(i));
  }
  return Dataset(std::move(features), std::move(labels), data.dim());
}

}  // namespace sepkit
