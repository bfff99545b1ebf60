#pragma once

#include <cstdint>
#include <span>

#include "sepkit/dataset.hpp"

namespace sepkit {

/// R = max_i ||a_i||
double radius(const Dataset& data);

/// Strict separation: y_i a_i^T theta > 0 for every i.
bool is_separated(const Dataset& data, std::span<const double> theta);

struct MarginReport {
  double mu = 0.0;       // certified margin; 0 when not separable
  double radius = 0.0;   // max feature norm
  bool separable = false;
  Vector certifier;      // unit direction with min_i y_i a_i^T c >= mu - tol
  double lower_bound = 0.0;  // best dual value reached
  double tol = 0.0;
  std::int64_t iterations = 0;
};

/// Margin via the minimum-norm point of conv{y_i a_i}: away-step
/// Frank-Wolfe with duality-gap stopping. Certifies mu to an additive
/// tol; a hull within tol of the origin is reported non-separable
/// instead of erroring.
MarginReport compute_margin(const Dataset& data, double tol = 1e-8,
                            std::int64_t max_iters = 100000);

/// n R^2 / mu^2
double batch_bound(std::int64_t n, double radius, double mu);

/// R^2 / mu^2
double normalized_bound(double radius, double mu);

/// R^2/mu^2 + 2 log(2n-1) / (gamma mu^2)
double normalized_lrgd_bound(std::int64_t n, double radius, double mu,
                             double gamma);

struct ReductionReport {
  double gamma = 0.0;
  std::int64_t horizon = 0;
  std::int64_t compared_steps = 0;
  double max_deviation = 0.0;
  std::int64_t degenerate_hits = 0;
  double tol = 0.0;
  bool pass = false;
};

/// Runs the smooth gradient iteration (normalized variant when asked)
/// and its discrete perceptron limit side by side from zero starts and
/// reports sup_t ||theta_t/gamma - theta_hat_t||_inf over
/// t <= min(horizon, both solve times), plus exact-zero margins seen on
/// the discrete trajectory.
ReductionReport verify_reduction(const Dataset& data, double gamma,
                                 std::int64_t horizon, double tol,
                                 bool normalized);

/// Count of (t, i) pairs with y_i a_i^T theta_hat_t == 0 exactly along
/// the batch-perceptron trajectory from zero, t in [1, horizon].
std::int64_t probe_degeneracy(const Dataset& data, std::int64_t horizon);

}  // namespace sepkit
