#include "sepkit/sepkit.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "sepkit/algorithms.hpp"
#include "sepkit/analysis.hpp"
#include "sepkit/experiments.hpp"
#include "sepkit/generators.hpp"
#include "sepkit/io.hpp"
#include "sepkit/loss.hpp"

struct sepkit_dataset {
  sepkit::Dataset impl;
};

struct sepkit_trace {
  sepkit::Trace impl;
  std::size_t dim = 0;
};

struct sepkit_summary {
  sepkit::GridResult impl;
  std::string text_cache;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

template <typename Fn>
sepkit_status guarded(Fn&& fn) {
  try {
    fn();
    return SEPKIT_OK;
  } catch (const sepkit::Error& e) {
    set_error(e.what());
    return e.code();
  } catch (const std::bad_alloc&) {
    set_error("out of memory");
    return SEPKIT_ERR_INTERNAL;
  } catch (const std::exception& e) {
    set_error(e.what());
    return SEPKIT_ERR_INTERNAL;
  }
}

sepkit_status require(bool ok, const char* message) {
  if (!ok) {
    set_error(message);
    return SEPKIT_ERR_INVALID_ARGUMENT;
  }
  return SEPKIT_OK;
}

std::span<const double> theta_span(const double* theta, int64_t dim) {
  return {theta, static_cast<std::size_t>(dim)};
}

sepkit::Algorithm to_cpp(sepkit_algorithm a) {
  switch (a) {
    case SEPKIT_ALGO_LR_GD:
      return sepkit::Algorithm::lr_gd;
    case SEPKIT_ALGO_NORMALIZED_LR_GD:
      return sepkit::Algorithm::normalized_lr_gd;
    case SEPKIT_ALGO_BATCH_PERCEPTRON:
      return sepkit::Algorithm::batch_perceptron;
    case SEPKIT_ALGO_PERCEPTRON:
      return sepkit::Algorithm::perceptron;
    case SEPKIT_ALGO_NORMALIZED_BATCH_PERCEPTRON:
      return sepkit::Algorithm::normalized_batch_perceptron;
  }
  sepkit::fail(SEPKIT_ERR_INVALID_ARGUMENT, "unknown algorithm id");
}

sepkit_algorithm to_c(sepkit::Algorithm a) {
  switch (a) {
    case sepkit::Algorithm::lr_gd:
      return SEPKIT_ALGO_LR_GD;
    case sepkit::Algorithm::normalized_lr_gd:
      return SEPKIT_ALGO_NORMALIZED_LR_GD;
    case sepkit::Algorithm::batch_perceptron:
      return SEPKIT_ALGO_BATCH_PERCEPTRON;
    case sepkit::Algorithm::perceptron:
      return SEPKIT_ALGO_PERCEPTRON;
    case sepkit::Algorithm::normalized_batch_perceptron:
      return SEPKIT_ALGO_NORMALIZED_BATCH_PERCEPTRON;
  }
  return SEPKIT_ALGO_LR_GD;
}

sepkit_outcome to_c(sepkit::Outcome o) {
  switch (o) {
    case sepkit::Outcome::solved:
      return SEPKIT_OUTCOME_SOLVED;
    case sepkit::Outcome::exhausted:
      return SEPKIT_OUTCOME_EXHAUSTED;
    case sepkit::Outcome::overflow:
      return SEPKIT_OUTCOME_OVERFLOW;
  }
  return SEPKIT_OUTCOME_EXHAUSTED;
}

void fill_margin_report(const sepkit::MarginReport& in,
                        sepkit_margin_report* out, double* certifier,
                        std::size_t dim) {
  out->mu = in.mu;
  out->radius = in.radius;
  out->separable = in.separable ? 1 : 0;
  out->lower_bound = in.lower_bound;
  out->tol = in.tol;
  out->iterations = in.iterations;
  if (certifier != nullptr) {
    for (std::size_t k = 0; k < dim; ++k) {
      certifier[k] = k < in.certifier.size() ? in.certifier[k] : 0.0;
    }
  }
}

sepkit::MarginReport grid_margin_or_fail(const sepkit::GridResult& result) {
  if (!result.margin_known) {
    sepkit::fail(SEPKIT_ERR_SOLVER_STALLED,
                 "summary margin: margin solver did not certify a result");
  }
  return result.margin;
}

}  // namespace

extern "C" {

const char* sepkit_version(void) { return "0.1.0"; }

const char* sepkit_last_error(void) { return g_last_error.c_str(); }

const char* sepkit_status_name(sepkit_status status) {
  switch (status) {
    case SEPKIT_OK:
      return "ok";
    case SEPKIT_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case SEPKIT_ERR_DIMENSION_MISMATCH:
      return "dimension mismatch";
    case SEPKIT_ERR_NONFINITE:
      return "non-finite value";
    case SEPKIT_ERR_NOT_SEPARABLE:
      return "not separable";
    case SEPKIT_ERR_ALREADY_SEPARATED:
      return "already separated";
    case SEPKIT_ERR_PARSE:
      return "parse error";
    case SEPKIT_ERR_IO:
      return "i/o error";
    case SEPKIT_ERR_SOLVER_STALLED:
      return "solver stalled";
    case SEPKIT_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* sepkit_algorithm_name(sepkit_algorithm algorithm) {
  switch (algorithm) {
    case SEPKIT_ALGO_LR_GD:
    case SEPKIT_ALGO_NORMALIZED_LR_GD:
    case SEPKIT_ALGO_BATCH_PERCEPTRON:
    case SEPKIT_ALGO_PERCEPTRON:
    case SEPKIT_ALGO_NORMALIZED_BATCH_PERCEPTRON:
      return sepkit::algorithm_name(to_cpp(algorithm));
  }
  return "?";
}

sepkit_status sepkit_algorithm_from_name(const char* name,
                                         sepkit_algorithm* out) {
  if (auto st = require(name && out, "algorithm_from_name: null argument"))
    return st;
  const auto a = sepkit::algorithm_from_name(name);
  if (!a) {
    set_error(std::string("unknown algorithm '") + name +
              "' (expected lr-gd, normalized-lr-gd, batch-perceptron, "
              "perceptron, or normalized-batch-perceptron)");
    return SEPKIT_ERR_INVALID_ARGUMENT;
  }
  *out = to_c(*a);
  return SEPKIT_OK;
}

/* ------------------------------ datasets --------------------------- */

sepkit_status sepkit_dataset_create(const double* features, const int* labels,
                                    int64_t n, int64_t d,
                                    sepkit_dataset** out) {
  if (auto st = require(features && labels && out && n > 0 && d > 0,
                        "dataset_create: bad arguments"))
    return st;
  return guarded([&] {
    std::vector<double> f(features,
                          features + static_cast<std::size_t>(n * d));
    std::vector<int> y(labels, labels + static_cast<std::size_t>(n));
    *out = new sepkit_dataset{
        sepkit::Dataset(std::move(f), std::move(y),
                        static_cast<std::size_t>(d))};
  });
}

sepkit_status sepkit_dataset_two_point(sepkit_dataset** out) {
  if (auto st = require(out != nullptr, "dataset_two_point: null out"))
    return st;
  return guarded([&] { *out = new sepkit_dataset{sepkit::two_point_dataset()}; });
}

sepkit_status sepkit_dataset_worst_case(int64_t n, sepkit_dataset** out) {
  if (auto st = require(out != nullptr, "dataset_worst_case: null out"))
    return st;
  return guarded(
      [&] { *out = new sepkit_dataset{sepkit::worst_case_dataset(n)}; });
}

sepkit_status sepkit_dataset_random_separable(int64_t n, int64_t d,
                                              double target_margin,
                                              double target_radius,
                                              uint64_t seed,
                                              sepkit_dataset** out) {
  if (auto st = require(out != nullptr, "dataset_random_separable: null out"))
    return st;
  return guarded([&] {
    *out = new sepkit_dataset{
        sepkit::random_separable(n, d, target_margin, target_radius, seed)};
  });
}

sepkit_status sepkit_dataset_load(const char* path, sepkit_format format,
                                  sepkit_dataset** out) {
  if (auto st = require(path && out, "dataset_load: null argument")) return st;
  return guarded([&] {
    const auto f = format == SEPKIT_FORMAT_LIBSVM ? sepkit::FileFormat::libsvm
                                                  : sepkit::FileFormat::csv;
    *out = new sepkit_dataset{sepkit::load_dataset(path, f)};
  });
}

sepkit_status sepkit_dataset_save(const sepkit_dataset* dataset,
                                  const char* path, sepkit_format format) {
  if (auto st = require(dataset && path, "dataset_save: null argument"))
    return st;
  return guarded([&] {
    const auto f = format == SEPKIT_FORMAT_LIBSVM ? sepkit::FileFormat::libsvm
                                                  : sepkit::FileFormat::csv;
    sepkit::save_dataset(dataset->impl, path, f);
  });
}

sepkit_status sepkit_dataset_subsample(const sepkit_dataset* dataset,
                                       int64_t count, uint64_t seed,
                                       sepkit_dataset** out) {
  if (auto st = require(dataset && out, "dataset_subsample: null argument"))
    return st;
  return guarded([&] {
    *out = new sepkit_dataset{sepkit::subsample(dataset->impl, count, seed)};
  });
}

sepkit_status sepkit_dataset_imbalance(const sepkit_dataset* dataset,
                                       int class_label, int64_t factor,
                                       sepkit_dataset** out) {
  if (auto st = require(dataset && out, "dataset_imbalance: null argument"))
    return st;
  return guarded([&] {
    *out = new sepkit_dataset{
        sepkit::imbalance(dataset->impl, class_label, factor)};
  });
}

sepkit_status sepkit_dataset_perturb(const sepkit_dataset* dataset,
                                     double sigma, uint64_t seed,
                                     sepkit_dataset** out) {
  if (auto st = require(dataset && out, "dataset_perturb: null argument"))
    return st;
  return guarded([&] {
    *out = new sepkit_dataset{sepkit::perturb(dataset->impl, sigma, seed)};
  });
}

int64_t sepkit_dataset_size(const sepkit_dataset* dataset) {
  return dataset ? static_cast<int64_t>(dataset->impl.size()) : 0;
}

int64_t sepkit_dataset_dim(const sepkit_dataset* dataset) {
  return dataset ? static_cast<int64_t>(dataset->impl.dim()) : 0;
}

sepkit_status sepkit_dataset_feature(const sepkit_dataset* dataset,
                                     int64_t index, double* out) {
  if (auto st = require(dataset && out, "dataset_feature: null argument"))
    return st;
  if (auto st = require(
          index >= 0 && index < static_cast<int64_t>(dataset->impl.size()),
          "dataset_feature: index out of range"))
    return st;
  const auto f = dataset->impl.feature(static_cast<std::size_t>(index));
  std::memcpy(out, f.data(), f.size() * sizeof(double));
  return SEPKIT_OK;
}

sepkit_status sepkit_dataset_label(const sepkit_dataset* dataset, int64_t index,
                                   int* out) {
  if (auto st = require(dataset && out, "dataset_label: null argument"))
    return st;
  if (auto st = require(
          index >= 0 && index < static_cast<int64_t>(dataset->impl.size()),
          "dataset_label: index out of range"))
    return st;
  *out = dataset->impl.label(static_cast<std::size_t>(index));
  return SEPKIT_OK;
}

void sepkit_dataset_free(sepkit_dataset* dataset) { delete dataset; }

/* ------------------------- logistic loss family -------------------- */

sepkit_status sepkit_logistic_loss(const sepkit_dataset* dataset,
                                   const double* theta, int64_t dim,
                                   double* out) {
  if (auto st = require(dataset && theta && out && dim > 0,
                        "logistic_loss: bad arguments"))
    return st;
  return guarded([&] {
    *out = sepkit::logistic_loss(dataset->impl, theta_span(theta, dim));
  });
}

sepkit_status sepkit_logistic_gradient(const sepkit_dataset* dataset,
                                       const double* theta, int64_t dim,
                                       double* out) {
  if (auto st = require(dataset && theta && out && dim > 0,
                        "logistic_gradient: bad arguments"))
    return st;
  return guarded([&] {
    const sepkit::Vector g =
        sepkit::logistic_gradient(dataset->impl, theta_span(theta, dim));
    std::memcpy(out, g.data(), g.size() * sizeof(double));
  });
}

sepkit_status sepkit_per_sample_weights(const sepkit_dataset* dataset,
                                        const double* theta, int64_t dim,
                                        double* out) {
  if (auto st = require(dataset && theta && out && dim > 0,
                        "per_sample_weights: bad arguments"))
    return st;
  return guarded([&] {
    const std::vector<double> w =
        sepkit::per_sample_weights(dataset->impl, theta_span(theta, dim));
    std::memcpy(out, w.data(), w.size() * sizeof(double));
  });
}

sepkit_status sepkit_beta(const sepkit_dataset* dataset, const double* theta,
                          int64_t dim, double* out) {
  if (auto st =
          require(dataset && theta && out && dim > 0, "beta: bad arguments"))
    return st;
  return guarded(
      [&] { *out = sepkit::beta(dataset->impl, theta_span(theta, dim)); });
}

/* ----------------------------- analysis ---------------------------- */

sepkit_status sepkit_radius(const sepkit_dataset* dataset, double* out) {
  if (auto st = require(dataset && out, "radius: null argument")) return st;
  return guarded([&] { *out = sepkit::radius(dataset->impl); });
}

sepkit_status sepkit_is_separated(const sepkit_dataset* dataset,
                                  const double* theta, int64_t dim, int* out) {
  if (auto st = require(dataset && theta && out && dim > 0,
                        "is_separated: bad arguments"))
    return st;
  return guarded([&] {
    *out = sepkit::is_separated(dataset->impl, theta_span(theta, dim)) ? 1 : 0;
  });
}

sepkit_status sepkit_margin(const sepkit_dataset* dataset, double tol,
                            int64_t max_iters, sepkit_margin_report* out,
                            double* certifier) {
  if (auto st = require(dataset && out, "margin: null argument")) return st;
  return guarded([&] {
    const sepkit::MarginReport report =
        sepkit::compute_margin(dataset->impl, tol, max_iters);
    fill_margin_report(report, out, certifier, dataset->impl.dim());
  });
}

sepkit_status sepkit_batch_bound(int64_t n, double radius, double mu,
                                 double* out) {
  if (auto st = require(out != nullptr, "batch_bound: null out")) return st;
  return guarded([&] { *out = sepkit::batch_bound(n, radius, mu); });
}

sepkit_status sepkit_normalized_bound(double radius, double mu, double* out) {
  if (auto st = require(out != nullptr, "normalized_bound: null out"))
    return st;
  return guarded([&] { *out = sepkit::normalized_bound(radius, mu); });
}

sepkit_status sepkit_normalized_lrgd_bound(int64_t n, double radius, double mu,
                                           double gamma, double* out) {
  if (auto st = require(out != nullptr, "normalized_lrgd_bound: null out"))
    return st;
  return guarded(
      [&] { *out = sepkit::normalized_lrgd_bound(n, radius, mu, gamma); });
}

sepkit_status sepkit_verify_reduction(const sepkit_dataset* dataset,
                                      double gamma, int64_t horizon, double tol,
                                      int normalized,
                                      sepkit_reduction_report* out) {
  if (auto st = require(dataset && out, "verify_reduction: null argument"))
    return st;
  return guarded([&] {
    const sepkit::ReductionReport report = sepkit::verify_reduction(
        dataset->impl, gamma, horizon, tol, normalized != 0);
    out->gamma = report.gamma;
    out->horizon = report.horizon;
    out->compared_steps = report.compared_steps;
    out->max_deviation = report.max_deviation;
    out->degenerate_hits = report.degenerate_hits;
    out->tol = report.tol;
    out->pass = report.pass ? 1 : 0;
  });
}

sepkit_status sepkit_probe_degeneracy(const sepkit_dataset* dataset,
                                      int64_t horizon, int64_t* out) {
  if (auto st = require(dataset && out, "probe_degeneracy: null argument"))
    return st;
  return guarded(
      [&] { *out = sepkit::probe_degeneracy(dataset->impl, horizon); });
}

/* --------------------------- runs and traces ----------------------- */

void sepkit_run_config_init(sepkit_run_config* config) {
  if (config == nullptr) return;
  config->algorithm = SEPKIT_ALGO_BATCH_PERCEPTRON;
  config->gamma = 0.0;
  config->start = nullptr;
  config->max_iters = 10000;
  config->record_every = 1;
  config->record_params = 0;
  config->tie_break = SEPKIT_TIE_LOWEST_INDEX;
  config->seed = 0;
}

sepkit_status sepkit_run(const sepkit_dataset* dataset,
                         const sepkit_run_config* config, sepkit_trace** out) {
  if (auto st = require(dataset && config && out, "run: null argument"))
    return st;
  return guarded([&] {
    sepkit::RunConfig rc;
    rc.algorithm = to_cpp(config->algorithm);
    rc.gamma = config->gamma;
    if (config->start != nullptr) {
      rc.start.assign(config->start, config->start + dataset->impl.dim());
    }
    rc.max_iters = config->max_iters;
    rc.record_every = config->record_every;
    rc.record_params = config->record_params != 0;
    rc.tie_break = config->tie_break == SEPKIT_TIE_SEEDED_RANDOM
                       ? sepkit::TieBreak::seeded_random
                       : sepkit::TieBreak::lowest_index;
    rc.seed = config->seed;
    *out = new sepkit_trace{sepkit::run(dataset->impl, rc),
                            dataset->impl.dim()};
  });
}

int64_t sepkit_trace_record_count(const sepkit_trace* trace) {
  return trace ? static_cast<int64_t>(trace->impl.records.size()) : 0;
}

sepkit_status sepkit_trace_record_at(const sepkit_trace* trace, int64_t index,
                                     sepkit_trace_record* out) {
  if (auto st = require(trace && out, "trace_record_at: null argument"))
    return st;
  if (auto st = require(
          index >= 0 &&
              index < static_cast<int64_t>(trace->impl.records.size()),
          "trace_record_at: index out of range"))
    return st;
  const sepkit::TraceRecord& rec =
      trace->impl.records[static_cast<std::size_t>(index)];
  out->t = rec.t;
  out->loss = rec.loss;
  out->grad_norm = rec.grad_norm;
  out->accuracy = rec.accuracy;
  out->mistakes = rec.mistakes;
  return SEPKIT_OK;
}

sepkit_status sepkit_trace_outcome(const sepkit_trace* trace,
                                   sepkit_outcome* outcome, int64_t* final_t) {
  if (auto st = require(trace != nullptr, "trace_outcome: null trace"))
    return st;
  if (outcome != nullptr) *outcome = to_c(trace->impl.outcome);
  if (final_t != nullptr) *final_t = trace->impl.final_t;
  return SEPKIT_OK;
}

int64_t sepkit_trace_dim(const sepkit_trace* trace) {
  return trace ? static_cast<int64_t>(trace->dim) : 0;
}

sepkit_status sepkit_trace_final_theta(const sepkit_trace* trace, double* out) {
  if (auto st = require(trace && out, "trace_final_theta: null argument"))
    return st;
  if (auto st = require(!trace->impl.final_theta.empty(),
                        "trace_final_theta: trace has no parameters"))
    return st;
  std::memcpy(out, trace->impl.final_theta.data(),
              trace->impl.final_theta.size() * sizeof(double));
  return SEPKIT_OK;
}

int64_t sepkit_trace_zero_margin_hits(const sepkit_trace* trace) {
  return trace ? trace->impl.zero_margin_hits : 0;
}

sepkit_status sepkit_trace_write_csv(const sepkit_trace* trace,
                                     const char* path) {
  if (auto st = require(trace && path, "trace_write_csv: null argument"))
    return st;
  return guarded([&] { sepkit::write_trace_csv(trace->impl, path); });
}

sepkit_status sepkit_trace_read_csv(const char* path, sepkit_trace** out) {
  if (auto st = require(path && out, "trace_read_csv: null argument"))
    return st;
  return guarded(
      [&] { *out = new sepkit_trace{sepkit::read_trace_csv(path), 0}; });
}

void sepkit_trace_free(sepkit_trace* trace) { delete trace; }

/* --------------------------- experiment grids ---------------------- */

void sepkit_grid_config_init(sepkit_grid_config* config) {
  if (config == nullptr) return;
  config->algorithms = nullptr;
  config->algorithm_count = 0;
  config->gammas = nullptr;
  config->gamma_count = 0;
  config->max_iters = 100000;
  config->record_every = 1;
  config->output_dir = nullptr;
  config->workers = 1;
}

sepkit_status sepkit_grid_run(const sepkit_dataset* dataset,
                              const sepkit_grid_config* config,
                              sepkit_summary** out) {
  if (auto st = require(dataset && config && out, "grid_run: null argument"))
    return st;
  if (auto st = require(config->algorithms != nullptr &&
                            config->algorithm_count > 0,
                        "grid_run: no algorithms"))
    return st;
  if (auto st = require(config->gamma_count == 0 || config->gammas != nullptr,
                        "grid_run: gamma list is null"))
    return st;
  return guarded([&] {
    sepkit::GridConfig gc;
    gc.algorithms.reserve(static_cast<std::size_t>(config->algorithm_count));
    for (int64_t i = 0; i < config->algorithm_count; ++i) {
      gc.algorithms.push_back(to_cpp(config->algorithms[i]));
    }
    gc.gammas.assign(config->gammas, config->gammas + config->gamma_count);
    gc.max_iters = config->max_iters;
    gc.record_every = config->record_every;
    if (config->output_dir != nullptr) gc.output_dir = config->output_dir;
    gc.workers = config->workers;
    *out = new sepkit_summary{sepkit::run_grid(dataset->impl, gc), {}};
  });
}

int64_t sepkit_summary_row_count(const sepkit_summary* summary) {
  return summary ? static_cast<int64_t>(summary->impl.rows.size()) : 0;
}

sepkit_status sepkit_summary_row(const sepkit_summary* summary, int64_t index,
                                 sepkit_summary_cell* out) {
  if (auto st = require(summary && out, "summary_row: null argument"))
    return st;
  if (auto st = require(
          index >= 0 && index < static_cast<int64_t>(summary->impl.rows.size()),
          "summary_row: index out of range"))
    return st;
  const sepkit::SummaryRow& row =
      summary->impl.rows[static_cast<std::size_t>(index)];
  out->algorithm = to_c(row.algorithm);
  out->has_gamma = row.gamma.has_value() ? 1 : 0;
  out->gamma = row.gamma.value_or(0.0);
  out->outcome = to_c(row.outcome);
  out->iterations = row.iterations;
  out->final_loss = row.final_loss;
  out->has_bound = row.bound.has_value() ? 1 : 0;
  out->bound = row.bound.value_or(0.0);
  out->bound_respected = row.bound ? row.bound_respected : -1;
  return SEPKIT_OK;
}

const char* sepkit_summary_trace_path(const sepkit_summary* summary,
                                      int64_t index) {
  if (summary == nullptr || index < 0 ||
      index >= static_cast<int64_t>(summary->impl.rows.size())) {
    return "";
  }
  return summary->impl.rows[static_cast<std::size_t>(index)]
      .trace_path.c_str();
}

const char* sepkit_summary_note(const sepkit_summary* summary, int64_t index) {
  if (summary == nullptr || index < 0 ||
      index >= static_cast<int64_t>(summary->impl.rows.size())) {
    return "";
  }
  return summary->impl.rows[static_cast<std::size_t>(index)].note.c_str();
}

sepkit_status sepkit_summary_margin(const sepkit_summary* summary,
                                    sepkit_margin_report* out) {
  if (auto st = require(summary && out, "summary_margin: null argument"))
    return st;
  return guarded([&] {
    fill_margin_report(grid_margin_or_fail(summary->impl), out, nullptr, 0);
  });
}

const char* sepkit_summary_text(sepkit_summary* summary) {
  if (summary == nullptr) return "";
  summary->text_cache = sepkit::summary_table(summary->impl);
  return summary->text_cache.c_str();
}

sepkit_status sepkit_summary_write_csv(const sepkit_summary* summary,
                                       const char* path) {
  if (auto st = require(summary && path, "summary_write_csv: null argument"))
    return st;
  return guarded([&] {
    sepkit::detail::write_file_atomic(path, sepkit::summary_csv(summary->impl));
  });
}

void sepkit_summary_free(sepkit_summary* summary) { delete summary; }

/* ------------------------------- plots ----------------------------- */

sepkit_status sepkit_plot_write_svg(const sepkit_trace* const* traces,
                                    const char* const* labels, int64_t count,
                                    sepkit_metric metric, int log_y,
                                    const char* path) {
  if (auto st = require(traces && labels && path && count > 0,
                        "plot_write_svg: bad arguments"))
    return st;
  return guarded([&] {
    std::vector<std::pair<std::string, const sepkit::Trace*>> pairs;
    pairs.reserve(static_cast<std::size_t>(count));
    for (int64_t i = 0; i < count; ++i) {
      if (traces[i] == nullptr || labels[i] == nullptr) {
        sepkit::fail(SEPKIT_ERR_INVALID_ARGUMENT,
                     "plot_write_svg: null trace or label");
      }
      pairs.emplace_back(labels[i], &traces[i]->impl);
    }
    sepkit::Metric m = sepkit::Metric::loss;
    switch (metric) {
      case SEPKIT_METRIC_LOSS:
        m = sepkit::Metric::loss;
        break;
      case SEPKIT_METRIC_GRAD_NORM:
        m = sepkit::Metric::grad_norm;
        break;
      case SEPKIT_METRIC_ACCURACY:
        m = sepkit::Metric::accuracy;
        break;
      case SEPKIT_METRIC_MISTAKES:
        m = sepkit::Metric::mistakes;
        break;
      default:
        sepkit::fail(SEPKIT_ERR_INVALID_ARGUMENT,
                     "plot_write_svg: unknown metric");
    }
    sepkit::write_plot_svg(pairs, m, path, log_y != 0);
  });
}

} /* extern "C" */
