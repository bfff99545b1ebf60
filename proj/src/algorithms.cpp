#include "sepkit/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "sepkit/loss.hpp"

namespace sepkit {

namespace {

constexpr double kOverflowGuard = 1e300;

bool all_positive(std::span<const double> margins) {
  return std::all_of(margins.begin(), margins.end(),
                     [](double m) { return m > 0.0; });
}

std::int64_t count_mistakes(std::span<const double> margins) {
  return std::count_if(margins.begin(), margins.end(),
                       [](double m) { return m <= 0.0; });
}

std::int64_t count_exact_zeros(std::span<const double> margins) {
  return std::count(margins.begin(), margins.end(), 0.0);
}

/// (1/2n) sum over all samples of y_i a_i — the opening half step.
Vector half_mean_update(const Dataset& data, std::span<const double> theta) {
  Vector next(theta.begin(), theta.end());
  const double c = 0.5 / static_cast<double>(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    axpy(next, c * static_cast<double>(data.label(i)), data.feature(i));
  }
  return next;
}

Vector mistake_sum_update(const Dataset& data, std::span<const double> theta,
                          std::span<const double> margins, double scale) {
  Vector next(theta.begin(), theta.end());
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (margins[i] <= 0.0) {
      axpy(next, scale * static_cast<double>(data.label(i)), data.feature(i));
    }
  }
  return next;
}

Vector gradient_update(const Dataset& data, std::span<const double> theta,
                       std::span<const double> margins, double gamma,
                       bool normalized) {
  WeightPass pass = detail::weight_pass_from_margins(data, margins);
  double step = gamma;
  if (normalized) {
    if (pass.mean_weight <= 0.0) {
      fail(SEPKIT_ERR_NONFINITE,
           "normalized step: every per-sample weight underflowed to zero");
    }
    step = gamma / pass.mean_weight;
  }
  Vector next(theta.begin(), theta.end());
  axpy(next, -step, pass.gradient);
  return next;
}

void require_gamma(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    fail(SEPKIT_ERR_INVALID_ARGUMENT, "gamma must be positive and finite");
  }
}

}  // namespace

bool uses_gamma(Algorithm a) {
  return a == Algorithm::lr_gd || a == Algorithm::normalized_lr_gd;
}

const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::lr_gd:
      return "lr-gd";
    case Algorithm::normalized_lr_gd:
      return "normalized-lr-gd";
    case Algorithm::batch_perceptron:
      return "batch-perceptron";
    case Algorithm::perceptron:
      return "perceptron";
    case Algorithm::normalized_batch_perceptron:
      return "normalized-batch-perceptron";
  }
  return "?";
}

std::optional<Algorithm> algorithm_from_name(std::string_view name) {
  for (Algorithm a :
       {Algorithm::lr_gd, Algorithm::normalized_lr_gd,
        Algorithm::batch_perceptron, Algorithm::perceptron,
        Algorithm::normalized_batch_perceptron}) {
    if (name == algorithm_name(a)) return a;
  }
  return std::nullopt;
}

std::vector<std::size_t> mistake_set(const Dataset& data,
                                     std::span<const double> theta) {
  data.require_dim(theta, "mistake_set");
  std::vector<std::size_t> indices;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data.signed_margin(i, theta) <= 0.0) {
      indices.push_back(i);
    }
  }
  return indices;
}

Vector lr_gd_step(const Dataset& data, std::span<const double> theta,
                  double gamma) {
  require_gamma(gamma);
  data.require_dim(theta, "lr_gd_step");
  return gradient_update(data, theta, data.signed_margins(theta), gamma,
                         /*normalized=*/false);
}

Vector normalized_lr_gd_step(const Dataset& data, std::span<const double> theta,
                             double gamma) {
  require_gamma(gamma);
  data.require_dim(theta, "normalized_lr_gd_step");
  return gradient_update(data, theta, data.signed_margins(theta), gamma,
                         /*normalized=*/true);
}

Vector batch_perceptron_step(const Dataset& data,
                             std::span<const double> theta_hat,
                             std::int64_t t) {
  data.require_dim(theta_hat, "batch_perceptron_step");
  if (t < 0) {
    fail(SEPKIT_ERR_INVALID_ARGUMENT, "batch_perceptron_step: t must be >= 0");
  }
  if (t == 0) {
    return half_mean_update(data, theta_hat);
  }
  return mistake_sum_update(data, theta_hat, data.signed_margins(theta_hat),
                            1.0 / static_cast<double>(data.size()));
}

Vector perceptron_step(const Dataset& data, std::span<const double> theta_hat) {
  data.require_dim(theta_hat, "perceptron_step");
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data.signed_margin(i, theta_hat) <= 0.0) {
      Vector next(theta_hat.begin(), theta_hat.end());
      axpy(next, static_cast<double>(data.label(i)), data.feature(i));
      return next;
    }
  }
  fail(SEPKIT_ERR_ALREADY_SEPARATED, "perceptron_step: already separated");
}

Vector normalized_batch_perceptron_step(const Dataset& data,
                                        std::span<const double> theta_hat) {
  data.require_dim(theta_hat, "normalized_batch_perceptron_step");
  const std::vector<double> margins = data.signed_margins(theta_hat);
  const std::int64_t mistakes = count_mistakes(margins);
  if (mistakes == 0) {
    fail(SEPKIT_ERR_ALREADY_SEPARATED,
         "normalized_batch_perceptron_step: already separated");
  }
  return mistake_sum_update(data, theta_hat, margins,
                            1.0 / static_cast<double>(mistakes));
}

Trace run(const Dataset& data, const RunConfig& config) {
  if (config.max_iters < 1) {
    fail(SEPKIT_ERR_INVALID_ARGUMENT, "run: max_iters must be >= 1");
  }
  if (config.record_every < 1) {
    fail(SEPKIT_ERR_INVALID_ARGUMENT, "run: record_every must be >= 1");
  }
  if (uses_gamma(config.algorithm)) {
    require_gamma(config.gamma);
  }

  Vector theta;
  if (config.start.empty()) {
    theta.assign(data.dim(), 0.0);
  } else {
    data.require_dim(config.start, "run: start");
    if (!all_finite(config.start)) {
      fail(SEPKIT_ERR_NONFINITE, "run: non-finite start point");
    }
    theta = config.start;
  }

  std::mt19937_64 rng(config.seed);

  Trace trace;
  trace.has_metrics = config.record_metrics;

  std::vector<double> margins = data.signed_margins(theta);

  auto record = [&](std::int64_t t) {
    TraceRecord rec;
    rec.t = t;
    if (config.record_metrics) {
      rec.loss = detail::loss_from_margins(margins);
      rec.grad_norm =
          norm(detail::weight_pass_from_margins(data, margins).gradient);
      rec.mistakes = count_mistakes(margins);
      rec.accuracy = static_cast<double>(data.size() - rec.mistakes) /
                     static_cast<double>(data.size());
    } else {
      rec.loss = rec.grad_norm = rec.accuracy =
          std::numeric_limits<double>::quiet_NaN();
      rec.mistakes = count_mistakes(margins);
    }
    if (config.record_params) {
      rec.params = theta;
    }
    trace.records.push_back(std::move(rec));
  };

  record(0);
  if (all_positive(margins)) {
    trace.outcome = Outcome::solved;
    trace.final_t = 0;
    trace.final_theta = std::move(theta);
    return trace;
  }

  std::int64_t t = 0;
  while (t < config.max_iters) {
    Vector next;
    switch (config.algorithm) {
      case Algorithm::lr_gd:
        next = gradient_update(data, theta, margins, config.gamma, false);
        break;
      case Algorithm::normalized_lr_gd:
        next = gradient_update(data, theta, margins, config.gamma, true);
        break;
      case Algorithm::batch_perceptron:
        next = t == 0 ? half_mean_update(data, theta)
                      : mistake_sum_update(data, theta, margins,
                                           1.0 / static_cast<double>(
                                                     data.size()));
        break;
      case Algorithm::perceptron: {
        std::size_t j = data.size();
        if (config.tie_break == TieBreak::lowest_index) {
          for (std::size_t i = 0; i < data.size(); ++i) {
            if (margins[i] <= 0.0) {
              j = i;
              break;
            }
          }
        } else {
          std::vector<std::size_t> mistaken;
          for (std::size_t i = 0; i < data.size(); ++i) {
            if (margins[i] <= 0.0) mistaken.push_back(i);
          }
          std::uniform_int_distribution<std::size_t> pick(
              0, mistaken.size() - 1);
          j = mistaken[pick(rng)];
        }
        next.assign(theta.begin(), theta.end());
        axpy(next, static_cast<double>(data.label(j)), data.feature(j));
        break;
      }
      case Algorithm::normalized_batch_perceptron:
        next = mistake_sum_update(
            data, theta, margins,
            1.0 / static_cast<double>(count_mistakes(margins)));
        break;
    }
    ++t;

    if (sup_norm(next) > kOverflowGuard) {
      trace.outcome = Outcome::overflow;
      trace.final_t = t;
      trace.final_theta = std::move(theta);  // last in-range iterate
      return trace;
    }

    theta = std::move(next);
    margins = data.signed_margins(theta);
    trace.zero_margin_hits += count_exact_zeros(margins);

    const bool solved = all_positive(margins);
    const bool is_final = solved || t == config.max_iters;
    if (is_final || t % config.record_every == 0) {
      record(t);
    }
    if (is_final) {
      trace.outcome = solved ? Outcome::solved : Outcome::exhausted;
      trace.final_t = t;
      break;
    }
  }

  trace.final_theta = std::move(theta);
  return trace;
}

}  // namespace sepkit
