#include "sepkit/experiments.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <thread>

#include "sepkit/io.hpp"
#include "sepkit/loss.hpp"

namespace sepkit {

namespace {

struct Cell {
  Algorithm algorithm;
  std::optional<double> gamma;
};

std::string cell_file_name(const Cell& cell) {
  std::string name = std::string("trace_") + algorithm_name(cell.algorithm);
  if (cell.gamma) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%g", *cell.gamma);
    name += "_gamma_";
    name += buf;
  }
  return name + ".csv";
}

std::optional<double> cell_bound(const Cell& cell, std::int64_t n,
                                 const MarginReport& margin,
                                 bool margin_known) {
  if (!margin_known || !margin.separable) return std::nullopt;
  switch (cell.algorithm) {
    case Algorithm::lr_gd:
      return std::nullopt;  // no finite-gamma guarantee to check
    case Algorithm::normalized_lr_gd:
      return normalized_lrgd_bound(n, margin.radius, margin.mu, *cell.gamma);
    case Algorithm::batch_perceptron:
      return batch_bound(n, margin.radius, margin.mu);
    case Algorithm::perceptron:
    case Algorithm::normalized_batch_perceptron:
      return normalized_bound(margin.radius, margin.mu);
  }
  return std::nullopt;
}

std::string outcome_cell(const SummaryRow& row) {
  switch (row.outcome) {
    case Outcome::solved:
      return std::to_string(row.iterations);
    case Outcome::exhausted:
      return "timeout";
    case Outcome::overflow:
      return "overflow";
  }
  return "?";
}

}  // namespace

GridResult run_grid(const Dataset& data, const GridConfig& config) {
  if (config.algorithms.empty()) {
    fail(SEPKIT_ERR_INVALID_ARGUMENT, "run_grid: no algorithms");
  }
  for (double g : config.gammas) {
    if (!(g > 0.0) || !std::isfinite(g)) {
      fail(SEPKIT_ERR_INVALID_ARGUMENT,
           "run_grid: gammas must be positive and finite");
    }
  }
  if (config.workers < 1) {
    fail(SEPKIT_ERR_INVALID_ARGUMENT, "run_grid: workers must be >= 1");
  }

  std::vector<Cell> cells;
  for (Algorithm a : config.algorithms) {
    if (uses_gamma(a)) {
      if (config.gammas.empty()) {
        fail(SEPKIT_ERR_INVALID_ARGUMENT,
             std::string("run_grid: ") + algorithm_name(a) +
                 " requires a gamma list");
      }
      for (double g : config.gammas) {
        cells.push_back({a, g});
      }
    } else {
      cells.push_back({a, std::nullopt});
    }
  }
  std::sort(cells.begin(), cells.end(), [](const Cell& x, const Cell& y) {
    if (x.algorithm != y.algorithm) return x.algorithm < y.algorithm;
    return x.gamma.value_or(0.0) < y.gamma.value_or(0.0);
  });
  cells.erase(std::unique(cells.begin(), cells.end(),
                          [](const Cell& x, const Cell& y) {
                            return x.algorithm == y.algorithm &&
                                   x.gamma == y.gamma;
                          }),
              cells.end());

  GridResult result;
  try {
    result.margin = compute_margin(data);
    result.margin_known = true;
  } catch (const Error&) {
    result.margin_known = false;  // rows simply carry no bound
  }

  if (!config.output_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(config.output_dir, ec);
    if (ec) {
      fail(SEPKIT_ERR_IO, "run_grid: cannot create output dir '" +
                              config.output_dir + "': " + ec.message());
    }
  }

  result.rows.assign(cells.size(), SummaryRow{});

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= cells.size()) return;
      const Cell& cell = cells[idx];
      SummaryRow& row = result.rows[idx];
      row.algorithm = cell.algorithm;
      row.gamma = cell.gamma;

      RunConfig rc;
      rc.algorithm = cell.algorithm;
      rc.gamma = cell.gamma.value_or(0.0);
      rc.max_iters = config.max_iters;
      rc.record_every = config.record_every;
      const Trace trace = run(data, rc);

      row.outcome = trace.outcome;
      row.iterations = trace.final_t;
      row.final_loss = logistic_loss(data, trace.final_theta);
      row.bound = cell_bound(cell, static_cast<std::int64_t>(data.size()),
                             result.margin, result.margin_known);
      if (row.bound) {
        const double ceil_bound = std::ceil(*row.bound);
        if (trace.outcome == Outcome::solved) {
          row.bound_respected =
              static_cast<double>(trace.final_t) <= ceil_bound ? 1 : 0;
        } else if (static_cast<double>(config.max_iters) >= ceil_bound) {
          // Ran past the bound without solving: the guarantee is broken.
          row.bound_respected = 0;
        } else {
          row.bound_respected = -1;
        }
      }

      if (!config.output_dir.empty()) {
        const std::string path =
            (std::filesystem::path(config.output_dir) / cell_file_name(cell))
                .string();
        try {
          write_trace_csv(trace, path);
          row.trace_path = path;
        } catch (const Error& e) {
          row.note = e.what();  // surfaced, not fatal to the grid
        }
      }
    }
  };

  const int workers =
      std::min<int>(config.workers, static_cast<int>(cells.size()));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back(worker);
    }
    for (auto& th : pool) {
      th.join();
    }
  }

  return result;
}

void write_trace_csv(const Trace& trace, const std::string& path) {
  if (!trace.has_metrics) {
    fail(SEPKIT_ERR_INVALID_ARGUMENT,
         "write_trace_csv: trace carries no metrics");
  }
  std::ostringstream out;
  out << "t,loss,grad_norm,accuracy,mistakes\n";
  for (const TraceRecord& rec : trace.records) {
    out << rec.t << ',' << detail::format_double(rec.loss) << ','
        << detail::format_double(rec.grad_norm) << ','
        << detail::format_double(rec.accuracy) << ',' << rec.mistakes << '\n';
  }
  detail::write_file_atomic(path, out.str());
}

Trace read_trace_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    fail(SEPKIT_ERR_IO, "cannot open: " + path);
  }
  std::string line;
  if (!std::getline(in, line)) {
    fail(SEPKIT_ERR_PARSE, path + ": empty trace file");
  }
  // Trailing \r from foreign line endings would break the header match.
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) {
    line.pop_back();
  }
  if (line != "t,loss,grad_norm,accuracy,mistakes") {
    fail(SEPKIT_ERR_PARSE, path + ": unexpected header '" + line + "'");
  }
  Trace trace;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) {
      line.pop_back();
    }
    if (line.empty()) continue;
    TraceRecord rec;
    long long t = 0;
    long long mistakes = 0;
    if (std::sscanf(line.c_str(), "%lld,%lf,%lf,%lf,%lld", &t, &rec.loss,
                    &rec.grad_norm, &rec.accuracy, &mistakes) != 5) {
      fail(SEPKIT_ERR_PARSE,
           path + ":" + std::to_string(line_no) + ": malformed row");
    }
    rec.t = t;
    rec.mistakes = mistakes;
    trace.records.push_back(rec);
  }
  if (trace.records.empty()) {
    fail(SEPKIT_ERR_PARSE, path + ": trace has no records");
  }
  trace.outcome = Outcome::exhausted;  // unknown; records are what matters
  trace.final_t = trace.records.back().t;
  return trace;
}

std::string summary_csv(const GridResult& result) {
  std::ostringstream out;
  out << "algorithm,gamma,iterations,final_loss,bound,bound_respected\n";
  for (const SummaryRow& row : result.rows) {
    out << algorithm_name(row.algorithm) << ',';
    if (row.gamma) {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%g", *row.gamma);
      out << buf;
    }
    out << ',' << outcome_cell(row) << ','
        << detail::format_double(row.final_loss) << ',';
    if (row.bound) {
      out << detail::format_double(*row.bound);
    }
    out << ',';
    if (row.bound && row.bound_respected >= 0) {
      out << (row.bound_respected == 1 ? "true" : "false");
    }
    out << '\n';
  }
  return out.str();
}

std::string summary_table(const GridResult& result) {
  std::vector<std::array<std::string, 6>> rows;
  rows.push_back(
      {"algorithm", "gamma", "iterations", "final_loss", "bound", "ok"});
  for (const SummaryRow& row : result.rows) {
    std::array<std::string, 6> cells;
    cells[0] = algorithm_name(row.algorithm);
    if (row.gamma) {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%g", *row.gamma);
      cells[1] = buf;
    } else {
      cells[1] = "-";
    }
    cells[2] = outcome_cell(row);
    {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.6g", row.final_loss);
      cells[3] = buf;
    }
    if (row.bound) {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.6g", *row.bound);
      cells[4] = buf;
      cells[5] = row.bound_respected < 0 ? "-"
                 : row.bound_respected == 1 ? "yes"
                                            : "VIOLATED";
    } else {
      cells[4] = "-";
      cells[5] = "-";
    }
    rows.push_back(std::move(cells));
  }

  std::array<std::size_t, 6> width{};
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < 6; ++c) {
      width[c] = std::max(width[c], r[c].size());
    }
  }
  std::ostringstream out;
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < 6; ++c) {
      out << std::left << std::setw(static_cast<int>(width[c]) + 2) << r[c];
    }
    out << '\n';
  }
  return out.str();
}

const char* metric_name(Metric m) {
  switch (m) {
    case Metric::loss:
      return "loss";
    case Metric::grad_norm:
      return "grad_norm";
    case Metric::accuracy:
      return "accuracy";
    case Metric::mistakes:
      return "mistakes";
  }
  return "?";
}

std::optional<Metric> metric_from_name(std::string_view name) {
  for (Metric m :
       {Metric::loss, Metric::grad_norm, Metric::accuracy, Metric::mistakes}) {
    if (name == metric_name(m)) return m;
  }
  return std::nullopt;
}

namespace {

double metric_value(const TraceRecord& rec, Metric m) {
  switch (m) {
    case Metric::loss:
      return rec.loss;
    case Metric::grad_norm:
      return rec.grad_norm;
    case Metric::accuracy:
      return rec.accuracy;
    case Metric::mistakes:
      return static_cast<double>(rec.mistakes);
  }
  return 0.0;
}

std::string svg_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#ff7f0e", "#9467bd", "#8c564b",
                                    "#17becf", "#7f7f7f"};

}  // namespace

void write_plot_svg(
    const std::vector<std::pair<std::string, const Trace*>>& traces,
    Metric metric, const std::string& path, bool log_y) {
  if (traces.empty()) {
    fail(SEPKIT_ERR_INVALID_ARGUMENT, "plot: no traces");
  }
  for (const auto& [label, trace] : traces) {
    if (trace == nullptr || !trace->has_metrics) {
      fail(SEPKIT_ERR_INVALID_ARGUMENT,
           "plot: metric absent from trace '" + label + "'");
    }
  }

  // Collect transformed points; log mode drops non-positive values.
  struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;
  };
  std::vector<Series> series;
  double x_min = std::numeric_limits<double>::infinity();
  double x_max = -x_min;
  double y_min = x_min;
  double y_max = -x_min;
  for (const auto& [label, trace] : traces) {
    Series s;
    s.label = label;
    for (const TraceRecord& rec : trace->records) {
      double v = metric_value(rec, metric);
      if (log_y) {
        if (!(v > 0.0)) continue;
        v = std::log10(v);
      }
      const double x = static_cast<double>(rec.t);
      s.points.emplace_back(x, v);
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
      y_min = std::min(y_min, v);
      y_max = std::max(y_max, v);
    }
    series.push_back(std::move(s));
  }
  if (!(x_min <= x_max) || !(y_min <= y_max)) {
    fail(SEPKIT_ERR_INVALID_ARGUMENT,
         "plot: no plottable points (log scale with non-positive values?)");
  }
  if (x_min == x_max) {
    x_min -= 0.5;
    x_max += 0.5;
  }
  if (y_min == y_max) {
    y_min -= 0.5;
    y_max += 0.5;
  }

  const double width = 860.0, height = 540.0;
  const double left = 80.0, right = width - 190.0;
  const double top = 30.0, bottom = height - 60.0;
  auto sx = [&](double x) {
    return left + (x - x_min) / (x_max - x_min) * (right - left);
  };
  auto sy = [&](double y) {
    return bottom - (y - y_min) / (y_max - y_min) * (bottom - top);
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
      << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Axes.
  out << "<line x1=\"" << svg_num(left) << "\" y1=\"" << svg_num(bottom)
      << "\" x2=\"" << svg_num(right) << "\" y2=\"" << svg_num(bottom)
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << svg_num(left) << "\" y1=\"" << svg_num(top)
      << "\" x2=\"" << svg_num(left) << "\" y2=\"" << svg_num(bottom)
      << "\" stroke=\"black\"/>\n";

  const int ticks = 6;
  for (int i = 0; i < ticks; ++i) {
    const double f = static_cast<double>(i) / (ticks - 1);
    const double xv = x_min + f * (x_max - x_min);
    const double yv = y_min + f * (y_max - y_min);
    char label[48];
    std::snprintf(label, sizeof(label), "%.4g", xv);
    out << "<line x1=\"" << svg_num(sx(xv)) << "\" y1=\"" << svg_num(bottom)
        << "\" x2=\"" << svg_num(sx(xv)) << "\" y2=\"" << svg_num(bottom + 5)
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << svg_num(sx(xv)) << "\" y=\"" << svg_num(bottom + 20)
        << "\" font-size=\"12\" text-anchor=\"middle\">" << label
        << "</text>\n";
    if (log_y) {
      std::snprintf(label, sizeof(label), "1e%.3g", yv);
    } else {
      std::snprintf(label, sizeof(label), "%.4g", yv);
    }
    out << "<line x1=\"" << svg_num(left - 5) << "\" y1=\"" << svg_num(sy(yv))
        << "\" x2=\"" << svg_num(left) << "\" y2=\"" << svg_num(sy(yv))
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << svg_num(left - 8) << "\" y=\""
        << svg_num(sy(yv) + 4) << "\" font-size=\"12\" text-anchor=\"end\">"
        << label << "</text>\n";
  }

  // Axis titles.
  out << "<text x=\"" << svg_num((left + right) / 2) << "\" y=\""
      << svg_num(height - 15)
      << "\" font-size=\"14\" text-anchor=\"middle\">iteration t</text>\n";
  out << "<text x=\"20\" y=\"" << svg_num((top + bottom) / 2)
      << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
      << svg_num((top + bottom) / 2) << ")\">" << metric_name(metric)
      << (log_y ? " (log scale)" : "") << "</text>\n";

  // Polylines.
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % (sizeof(kPalette) / sizeof(*kPalette))];
    if (!series[s].points.empty()) {
      out << "<polyline fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"1.5\" points=\"";
      for (const auto& [x, y] : series[s].points) {
        out << svg_num(sx(x)) << ',' << svg_num(sy(y)) << ' ';
      }
      out << "\"/>\n";
    }
    // Legend entry.
    const double ly = top + 10 + 18.0 * static_cast<double>(s);
    out << "<line x1=\"" << svg_num(right + 12) << "\" y1=\"" << svg_num(ly)
        << "\" x2=\"" << svg_num(right + 34) << "\" y2=\"" << svg_num(ly)
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << svg_num(right + 40) << "\" y=\"" << svg_num(ly + 4)
        << "\" font-size=\"12\">" << escape_xml(series[s].label)
        << "</text>\n";
  }

  out << "</svg>\n";
  detail::write_file_atomic(path, out.str());
}

}  // namespace sepkit
