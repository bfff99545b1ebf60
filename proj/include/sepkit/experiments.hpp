#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sepkit/algorithms.hpp"
#include "sepkit/analysis.hpp"

namespace sepkit {

struct GridConfig {
  std::vector<Algorithm> algorithms;
  std::vector<double> gammas;  // applied to the two gradient algorithms
  std::int64_t max_iters = 100000;
  std::int64_t record_every = 1;
  std::string output_dir;  // empty = no per-cell trace files
  int workers = 1;
};

struct SummaryRow {
  Algorithm algorithm = Algorithm::batch_perceptron;
  std::optional<double> gamma;
  Outcome outcome = Outcome::exhausted;
  std::int64_t iterations = 0;
  double final_loss = 0.0;
  std::optional<double> bound;  // theoretical iteration bound, when one applies
  int bound_respected = -1;     // 1 yes, 0 violated, -1 not decidable
  std::string trace_path;       // empty when traces are not persisted
  std::string note;             // per-cell I/O failures land here
};

struct GridResult {
  std::vector<SummaryRow> rows;
  MarginReport margin;
  bool margin_known = false;  // margin solver certified a result
};

/// One run per (algorithm, gamma) cell from the origin, rows ordered by
/// (algorithm, gamma). Cells may run on several workers; outputs and row
/// order never depend on scheduling. Per-cell trace CSVs are written to
/// output_dir when it is set; I/O failures are noted per row, not fatal.
GridResult run_grid(const Dataset& data, const GridConfig& config);

/// Header "t,loss,grad_norm,accuracy,mistakes", one row per record,
/// reals serialized round-trip exact. Atomic write.
void write_trace_csv(const Trace& trace, const std::string& path);

/// Reads a metrics CSV back for plotting (records only).
Trace read_trace_csv(const std::string& path);

std::string summary_csv(const GridResult& result);
std::string summary_table(const GridResult& result);

enum class Metric { loss, grad_norm, accuracy, mistakes };
const char* metric_name(Metric m);
std::optional<Metric> metric_from_name(std::string_view name);

/// Self-contained SVG: one polyline per trace, legend, labeled axes,
/// optional log-scale vertical axis (non-positive values are skipped).
void write_plot_svg(
    const std::vector<std::pair<std::string, const Trace*>>& traces,
    Metric metric, const std::string& path, bool log_y);

}  // namespace sepkit
