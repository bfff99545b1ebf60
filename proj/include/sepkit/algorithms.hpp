#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sepkit/dataset.hpp"

namespace sepkit {

enum class Algorithm {
  lr_gd,
  normalized_lr_gd,
  batch_perceptron,
  perceptron,
  normalized_batch_perceptron,
};

bool uses_gamma(Algorithm a);
const char* algorithm_name(Algorithm a);
std::optional<Algorithm> algorithm_from_name(std::string_view name);

enum class TieBreak { lowest_index, seeded_random };

struct RunConfig {
  Algorithm algorithm = Algorithm::batch_perceptron;
  double gamma = 0.0;  // required > 0 for the two gradient algorithms
  Vector start;        // empty = origin
  std::int64_t max_iters = 10000;
  std::int64_t record_every = 1;
  bool record_params = false;
  bool record_metrics = true;  // off: params-only records, metrics are NaN
  TieBreak tie_break = TieBreak::lowest_index;
  std::uint64_t seed = 0;
};

enum class Outcome { solved, exhausted, overflow };

struct TraceRecord {
  std::int64_t t = 0;
  double loss = 0.0;
  double grad_norm = 0.0;
  double accuracy = 0.0;  // fraction of strictly positive margins
  std::int64_t mistakes = 0;
  Vector params;  // populated only when record_params is set
};

struct Trace {
  std::vector<TraceRecord> records;
  Outcome outcome = Outcome::exhausted;
  std::int64_t final_t = 0;  // solve step for solved, else steps taken
  Vector final_theta;
  std::int64_t zero_margin_hits = 0;  // exact-zero margins seen at t >= 1
  bool has_metrics = true;

  bool solved() const { return outcome == Outcome::solved; }
};

/// Indices i with y_i a_i^T theta <= 0, ascending. Zero margins count.
std::vector<std::size_t> mistake_set(const Dataset& data,
                                     std::span<const double> theta);

/// theta - gamma * grad f(theta)
Vector lr_gd_step(const Dataset& data, std::span<const double> theta,
                  double gamma);

/// theta - gamma * beta(theta) * grad f(theta); beta and the gradient
/// come from one weight pass at the same theta.
Vector normalized_lr_gd_step(const Dataset& data, std::span<const double> theta,
                             double gamma);

/// t = 0: theta + (1/2n) sum over ALL samples of y_i a_i.
/// t >= 1: theta + (1/n) sum over the mistake set; unchanged if empty.
Vector batch_perceptron_step(const Dataset& data,
                             std::span<const double> theta_hat, std::int64_t t);

/// theta + y_j a_j for the smallest mistaken index j.
Vector perceptron_step(const Dataset& data, std::span<const double> theta_hat);

/// theta + mean of y_i a_i over the mistake set.
Vector normalized_batch_perceptron_step(const Dataset& data,
                                        std::span<const double> theta_hat);

/// Iterate the configured algorithm until strict separation, the
/// iteration cap, or the 1e300 coordinate guard. Metrics are recorded at
/// t = 0, every record_every steps, and at the final step. Deterministic.
Trace run(const Dataset& data, const RunConfig& config);

}  // namespace sepkit
