#ifndef SEPKIT_H
#define SEPKIT_H

/*
 * sepkit — linear separation toolkit.
 *
 * C interface to the sepkit core: datasets for binary linear
 * classification, the logistic loss family, five iterative solvers
 * (gradient descent on the logistic loss at arbitrary step sizes, its
 * normalized variant, and the batch / classical / normalized batch
 * perceptrons), margin analysis, iteration-bound calculators, the
 * large-step-size reduction verifier, and a deterministic experiment
 * grid runner.
 *
 * Conventions:
 *   - every fallible call returns sepkit_status; SEPKIT_OK is 0
 *   - on failure, sepkit_last_error() returns a thread-local message
 *   - objects returned through sepkit_*  out-pointers are owned by the
 *     caller and released with the matching *_free function
 *   - datasets are immutable once created; all derived datasets
 *     (subsample, imbalance, perturb) are new objects
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(SEPKIT_BUILD_SHARED)
#define SEPKIT_API __declspec(dllexport)
#else
#define SEPKIT_API __declspec(dllimport)
#endif
#else
#define SEPKIT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sepkit_status {
  SEPKIT_OK = 0,
  SEPKIT_ERR_INVALID_ARGUMENT = 1,
  SEPKIT_ERR_DIMENSION_MISMATCH = 2,
  SEPKIT_ERR_NONFINITE = 3,
  SEPKIT_ERR_NOT_SEPARABLE = 4,
  SEPKIT_ERR_ALREADY_SEPARATED = 5,
  SEPKIT_ERR_PARSE = 6,
  SEPKIT_ERR_IO = 7,
  SEPKIT_ERR_SOLVER_STALLED = 8,
  SEPKIT_ERR_INTERNAL = 9
} sepkit_status;

typedef enum sepkit_algorithm {
  SEPKIT_ALGO_LR_GD = 0,
  SEPKIT_ALGO_NORMALIZED_LR_GD = 1,
  SEPKIT_ALGO_BATCH_PERCEPTRON = 2,
  SEPKIT_ALGO_PERCEPTRON = 3,
  SEPKIT_ALGO_NORMALIZED_BATCH_PERCEPTRON = 4
} sepkit_algorithm;

typedef enum sepkit_outcome {
  SEPKIT_OUTCOME_SOLVED = 0,   /* strict separation reached at final_t */
  SEPKIT_OUTCOME_EXHAUSTED = 1, /* max_iters spent without separation */
  SEPKIT_OUTCOME_OVERFLOW = 2   /* an iterate coordinate left [-1e300, 1e300] */
} sepkit_outcome;

typedef enum sepkit_format {
  SEPKIT_FORMAT_CSV = 0,   /* label,feat1,feat2,...  no header required */
  SEPKIT_FORMAT_LIBSVM = 1 /* label idx:val idx:val ...  1-based indices */
} sepkit_format;

typedef enum sepkit_metric {
  SEPKIT_METRIC_LOSS = 0,
  SEPKIT_METRIC_GRAD_NORM = 1,
  SEPKIT_METRIC_ACCURACY = 2,
  SEPKIT_METRIC_MISTAKES = 3
} sepkit_metric;

typedef enum sepkit_tie_break {
  SEPKIT_TIE_LOWEST_INDEX = 0,
  SEPKIT_TIE_SEEDED_RANDOM = 1
} sepkit_tie_break;

typedef struct sepkit_dataset sepkit_dataset;
typedef struct sepkit_trace sepkit_trace;
typedef struct sepkit_summary sepkit_summary;

SEPKIT_API const char* sepkit_version(void);

/* Thread-local message for the most recent failure on this thread. */
SEPKIT_API const char* sepkit_last_error(void);

SEPKIT_API const char* sepkit_status_name(sepkit_status status);
SEPKIT_API const char* sepkit_algorithm_name(sepkit_algorithm algorithm);
SEPKIT_API sepkit_status sepkit_algorithm_from_name(const char* name,
                                                    sepkit_algorithm* out);

/* ------------------------------------------------------------------ */
/* datasets                                                            */
/* ------------------------------------------------------------------ */

/* features: row-major n x d, labels: n entries in {-1, +1}. */
SEPKIT_API sepkit_status sepkit_dataset_create(const double* features,
                                               const int* labels, int64_t n,
                                               int64_t d, sepkit_dataset** out);

/* The two-sample 2-d construction: ((1,-1), +1) and ((-1,-4), -1). */
SEPKIT_API sepkit_status sepkit_dataset_two_point(sepkit_dataset** out);

/* The n-sample adversarial construction: ((0.5,-1), +1) once and
 * ((-0.5,-1), -1) repeated n-1 times. Requires n >= 2. */
SEPKIT_API sepkit_status sepkit_dataset_worst_case(int64_t n,
                                                   sepkit_dataset** out);

/* Separable data around a hidden unit direction: features are drawn in
 * the ball of target_radius and rejected while the absolute hidden
 * margin is below target_margin. Deterministic in seed. */
SEPKIT_API sepkit_status sepkit_dataset_random_separable(
    int64_t n, int64_t d, double target_margin, double target_radius,
    uint64_t seed, sepkit_dataset** out);

SEPKIT_API sepkit_status sepkit_dataset_load(const char* path,
                                             sepkit_format format,
                                             sepkit_dataset** out);
SEPKIT_API sepkit_status sepkit_dataset_save(const sepkit_dataset* dataset,
                                             const char* path,
                                             sepkit_format format);

/* count samples drawn uniformly without replacement, original order kept. */
SEPKIT_API sepkit_status sepkit_dataset_subsample(const sepkit_dataset* dataset,
                                                  int64_t count, uint64_t seed,
                                                  sepkit_dataset** out);

/* Repeat every sample of class_label factor times (copies adjacent). */
SEPKIT_API sepkit_status sepkit_dataset_imbalance(const sepkit_dataset* dataset,
                                                  int class_label,
                                                  int64_t factor,
                                                  sepkit_dataset** out);

/* Add N(0, sigma) noise to every feature coordinate. */
SEPKIT_API sepkit_status sepkit_dataset_perturb(const sepkit_dataset* dataset,
                                                double sigma, uint64_t seed,
                                                sepkit_dataset** out);

SEPKIT_API int64_t sepkit_dataset_size(const sepkit_dataset* dataset);
SEPKIT_API int64_t sepkit_dataset_dim(const sepkit_dataset* dataset);
SEPKIT_API sepkit_status sepkit_dataset_feature(const sepkit_dataset* dataset,
                                                int64_t index, double* out);
SEPKIT_API sepkit_status sepkit_dataset_label(const sepkit_dataset* dataset,
                                              int64_t index, int* out);
SEPKIT_API void sepkit_dataset_free(sepkit_dataset* dataset);

/* ------------------------------------------------------------------ */
/* logistic loss family                                                */
/* ------------------------------------------------------------------ */

SEPKIT_API sepkit_status sepkit_logistic_loss(const sepkit_dataset* dataset,
                                              const double* theta, int64_t dim,
                                              double* out);

/* out must hold dim doubles. */
SEPKIT_API sepkit_status sepkit_logistic_gradient(const sepkit_dataset* dataset,
                                                  const double* theta,
                                                  int64_t dim, double* out);

/* out must hold one double per sample. */
SEPKIT_API sepkit_status sepkit_per_sample_weights(const sepkit_dataset* dataset,
                                                   const double* theta,
                                                   int64_t dim, double* out);

/* Reciprocal mean per-sample weight; >= 1, exactly 2 at theta = 0. */
SEPKIT_API sepkit_status sepkit_beta(const sepkit_dataset* dataset,
                                     const double* theta, int64_t dim,
                                     double* out);

/* ------------------------------------------------------------------ */
/* margin analysis and iteration bounds                                */
/* ------------------------------------------------------------------ */

typedef struct sepkit_margin_report {
  double mu;           /* certified margin; 0 when not separable */
  double radius;       /* max feature norm */
  int separable;       /* hull of {y_i a_i} excludes the origin by > tol */
  double lower_bound;  /* best dual value min_i y_i a_i^T certifier */
  double tol;
  int64_t iterations;  /* solver iterations spent */
} sepkit_margin_report;

SEPKIT_API sepkit_status sepkit_radius(const sepkit_dataset* dataset,
                                       double* out);

SEPKIT_API sepkit_status sepkit_is_separated(const sepkit_dataset* dataset,
                                             const double* theta, int64_t dim,
                                             int* out);

/* Distance from the origin to the convex hull of {y_i a_i}, certified to
 * an additive tol. certifier (optional, dim doubles) receives the unit
 * direction attaining min_i y_i a_i^T theta >= mu - tol. */
SEPKIT_API sepkit_status sepkit_margin(const sepkit_dataset* dataset,
                                       double tol, int64_t max_iters,
                                       sepkit_margin_report* out,
                                       double* certifier);

SEPKIT_API sepkit_status sepkit_batch_bound(int64_t n, double radius, double mu,
                                            double* out);
SEPKIT_API sepkit_status sepkit_normalized_bound(double radius, double mu,
                                                 double* out);
SEPKIT_API sepkit_status sepkit_normalized_lrgd_bound(int64_t n, double radius,
                                                      double mu, double gamma,
                                                      double* out);

typedef struct sepkit_reduction_report {
  double gamma;
  int64_t horizon;
  int64_t compared_steps;  /* deviation taken over t = 0..compared_steps */
  double max_deviation;    /* sup_t || theta_t/gamma - theta_hat_t ||_inf */
  int64_t degenerate_hits; /* exact-zero margins on the discrete trajectory */
  double tol;
  int pass;                /* max_deviation <= tol and degenerate_hits == 0 */
} sepkit_reduction_report;

/* Runs the smooth update (gamma against the logistic gradient; the
 * normalized variant when normalized != 0) and its discrete limit side
 * by side from zero starts and reports how far theta_t/gamma strays
 * from the discrete iterates. */
SEPKIT_API sepkit_status sepkit_verify_reduction(const sepkit_dataset* dataset,
                                                 double gamma, int64_t horizon,
                                                 double tol, int normalized,
                                                 sepkit_reduction_report* out);

/* Count of exact-zero signed margins along the batch-perceptron
 * trajectory from zero over at most horizon steps (t >= 1). */
SEPKIT_API sepkit_status sepkit_probe_degeneracy(const sepkit_dataset* dataset,
                                                 int64_t horizon, int64_t* out);

/* ------------------------------------------------------------------ */
/* runs and traces                                                     */
/* ------------------------------------------------------------------ */

typedef struct sepkit_run_config {
  sepkit_algorithm algorithm;
  double gamma;          /* required > 0 for the two gradient algorithms */
  const double* start;   /* NULL = origin; else dim doubles */
  int64_t max_iters;
  int64_t record_every;
  int record_params;     /* keep a parameter snapshot per record */
  sepkit_tie_break tie_break;
  uint64_t seed;         /* used by SEPKIT_TIE_SEEDED_RANDOM */
} sepkit_run_config;

SEPKIT_API void sepkit_run_config_init(sepkit_run_config* config);

typedef struct sepkit_trace_record {
  int64_t t;
  double loss;
  double grad_norm;
  double accuracy;   /* fraction of strictly positive margins */
  int64_t mistakes;  /* |S_t| */
} sepkit_trace_record;

SEPKIT_API sepkit_status sepkit_run(const sepkit_dataset* dataset,
                                    const sepkit_run_config* config,
                                    sepkit_trace** out);

SEPKIT_API int64_t sepkit_trace_record_count(const sepkit_trace* trace);
SEPKIT_API sepkit_status sepkit_trace_record_at(const sepkit_trace* trace,
                                                int64_t index,
                                                sepkit_trace_record* out);
SEPKIT_API sepkit_status sepkit_trace_outcome(const sepkit_trace* trace,
                                              sepkit_outcome* outcome,
                                              int64_t* final_t);
SEPKIT_API int64_t sepkit_trace_dim(const sepkit_trace* trace);
SEPKIT_API sepkit_status sepkit_trace_final_theta(const sepkit_trace* trace,
                                                  double* out);
SEPKIT_API int64_t sepkit_trace_zero_margin_hits(const sepkit_trace* trace);
SEPKIT_API sepkit_status sepkit_trace_write_csv(const sepkit_trace* trace,
                                                const char* path);
/* Reads a metrics CSV written by sepkit_trace_write_csv; the result is
 * suitable for plotting only (no outcome, no parameters). */
SEPKIT_API sepkit_status sepkit_trace_read_csv(const char* path,
                                               sepkit_trace** out);
SEPKIT_API void sepkit_trace_free(sepkit_trace* trace);

/* ------------------------------------------------------------------ */
/* experiment grids                                                    */
/* ------------------------------------------------------------------ */

typedef struct sepkit_grid_config {
  const sepkit_algorithm* algorithms;
  int64_t algorithm_count;
  const double* gammas;    /* applied to the two gradient algorithms */
  int64_t gamma_count;
  int64_t max_iters;
  int64_t record_every;
  const char* output_dir;  /* NULL = do not persist per-cell traces */
  int workers;             /* cells run in parallel; output is order-fixed */
} sepkit_grid_config;

SEPKIT_API void sepkit_grid_config_init(sepkit_grid_config* config);

typedef struct sepkit_summary_cell {
  sepkit_algorithm algorithm;
  int has_gamma;
  double gamma;
  sepkit_outcome outcome;
  int64_t iterations;      /* solve step for solved, else steps taken */
  double final_loss;
  int has_bound;
  double bound;
  int bound_respected;     /* 1 respected, 0 violated, -1 not decidable */
} sepkit_summary_cell;

SEPKIT_API sepkit_status sepkit_grid_run(const sepkit_dataset* dataset,
                                         const sepkit_grid_config* config,
                                         sepkit_summary** out);
SEPKIT_API int64_t sepkit_summary_row_count(const sepkit_summary* summary);
SEPKIT_API sepkit_status sepkit_summary_row(const sepkit_summary* summary,
                                            int64_t index,
                                            sepkit_summary_cell* out);
SEPKIT_API const char* sepkit_summary_trace_path(const sepkit_summary* summary,
                                                 int64_t index);
SEPKIT_API const char* sepkit_summary_note(const sepkit_summary* summary,
                                           int64_t index);
SEPKIT_API sepkit_status sepkit_summary_margin(const sepkit_summary* summary,
                                               sepkit_margin_report* out);
/* Aligned human-readable table; the string is owned by the summary. */
SEPKIT_API const char* sepkit_summary_text(sepkit_summary* summary);
SEPKIT_API sepkit_status sepkit_summary_write_csv(const sepkit_summary* summary,
                                                  const char* path);
SEPKIT_API void sepkit_summary_free(sepkit_summary* summary);

/* ------------------------------------------------------------------ */
/* plots                                                               */
/* ------------------------------------------------------------------ */

/* Self-contained SVG with one polyline per trace and a legend. */
SEPKIT_API sepkit_status sepkit_plot_write_svg(const sepkit_trace* const* traces,
                                               const char* const* labels,
                                               int64_t count,
                                               sepkit_metric metric, int log_y,
                                               const char* path);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SEPKIT_H */
