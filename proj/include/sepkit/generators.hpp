#pragma once

#include <cstdint>

#include "sepkit/dataset.hpp"

namespace sepkit {

/// ((1,-1), +1) and ((-1,-4), -1). Margin 1, radius sqrt(17).
Dataset two_point_dataset();

/// ((0.5,-1), +1) once, ((-0.5,-1), -1) repeated n-1 times; n >= 2.
/// Margin 0.5 and radius sqrt(1.25) for every n.
Dataset worst_case_dataset(std::int64_t n);

/// Separable sample around a hidden unit direction theta*: features
/// uniform in the ball of target_radius, rejected while
/// |theta*^T a| < target_margin, labeled sign(theta*^T a).
/// Deterministic in seed; errors after 10^6 rejected draws.
Dataset random_separable(std::int64_t n, std::int64_t d, double target_margin,
                         double target_radius, std::uint64_t seed);

/// Every sample of class_label repeated factor times, copies adjacent,
/// other samples in original order. Duplication leaves the margin as is.
Dataset imbalance(const Dataset& data, int class_label, std::int64_t factor);

/// Adds N(0, sigma) noise to every coordinate; sigma = 0 is an exact copy.
Dataset perturb(const Dataset& data, double sigma, std::uint64_t seed);

/// count samples uniformly without replacement, original order kept.
Dataset subsample(const Dataset& data, std::int64_t count, std::uint64_t seed);

}  // namespace sepkit
