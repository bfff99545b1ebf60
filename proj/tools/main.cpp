// sepkit command-line tool. Everything goes through the shared-library
// C interface; this translation unit never sees the C++ core headers.
#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "sepkit/sepkit.h"

namespace {

// exit codes: 0 ok, 1 user error, 2 internal error, 3 verification failure
struct CliError {
  int code;
  std::string message;
};

int exit_code_for(sepkit_status status) {
  switch (status) {
    case SEPKIT_OK:
      return 0;
    case SEPKIT_ERR_SOLVER_STALLED:
    case SEPKIT_ERR_INTERNAL:
      return 2;
    default:
      return 1;
  }
}

void check(sepkit_status status) {
  if (status != SEPKIT_OK) {
    throw CliError{exit_code_for(status),
                   std::string(sepkit_status_name(status)) + ": " +
                       sepkit_last_error()};
  }
}

[[noreturn]] void user_error(const std::string& message) {
  throw CliError{1, message};
}

struct DatasetHandle {
  sepkit_dataset* ptr = nullptr;
  DatasetHandle() = default;
  explicit DatasetHandle(sepkit_dataset* p) : ptr(p) {}
  DatasetHandle(DatasetHandle&& other) noexcept : ptr(other.ptr) {
    other.ptr = nullptr;
  }
  DatasetHandle& operator=(DatasetHandle&& other) noexcept {
    std::swap(ptr, other.ptr);
    return *this;
  }
  DatasetHandle(const DatasetHandle&) = delete;
  ~DatasetHandle() { sepkit_dataset_free(ptr); }
};

struct TraceHandle {
  sepkit_trace* ptr = nullptr;
  TraceHandle() = default;
  TraceHandle(TraceHandle&& other) noexcept : ptr(other.ptr) {
    other.ptr = nullptr;
  }
  TraceHandle(const TraceHandle&) = delete;
  ~TraceHandle() { sepkit_trace_free(ptr); }
};

struct SummaryHandle {
  sepkit_summary* ptr = nullptr;
  ~SummaryHandle() { sepkit_summary_free(ptr); }
};

std::string fmt_double(double value) {
  char buf[40];
  for (int prec = 6; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, value);
    if (std::strtod(buf, nullptr) == value) return buf;
  }
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(text);
  while (std::getline(in, cell, sep)) {
    out.push_back(cell);
  }
  return out;
}

/* ------------------------- dataset pipeline ------------------------ */

struct DataOptions {
  std::string uri;
  std::string format = "auto";
  std::int64_t subsample = 0;  // 0 = keep everything
  std::uint64_t seed = 0;
  std::string imbalance;  // CLASS:FACTOR, e.g. +1:10
  double perturb = 0.0;
};

void add_data_flags(CLI::App* cmd, DataOptions& opt) {
  cmd->add_option("--data", opt.uri,
                  "dataset: builtin:twopoint | builtin:worstcase:N | "
                  "builtin:random:n=..,d=..,margin=..,radius=..,seed=.. | "
                  "a file path")
      ->required();
  cmd->add_option("--format", opt.format, "file format: auto, csv, libsvm")
      ->check(CLI::IsMember({"auto", "csv", "libsvm"}));
  cmd->add_option("--subsample", opt.subsample,
                  "keep this many samples, drawn without replacement");
  cmd->add_option("--seed", opt.seed, "seed for --subsample/--perturb");
  cmd->add_option("--imbalance", opt.imbalance,
                  "repeat one class, e.g. +1:10");
  cmd->add_option("--perturb", opt.perturb,
                  "i.i.d. normal noise stddev added to features");
}

sepkit_format sniff_format(const std::string& path, const std::string& format) {
  if (format == "csv") return SEPKIT_FORMAT_CSV;
  if (format == "libsvm") return SEPKIT_FORMAT_LIBSVM;
  const std::string ext = std::filesystem::path(path).extension().string();
  if (ext == ".libsvm" || ext == ".svm") return SEPKIT_FORMAT_LIBSVM;
  if (ext == ".csv") return SEPKIT_FORMAT_CSV;
  // Peek at the first data line: "index:value" tokens mean libsvm.
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string token;
    ls >> token;  // label
    if (token.empty()) continue;
    while (ls >> token) {
      if (token.find(':') != std::string::npos) return SEPKIT_FORMAT_LIBSVM;
    }
    break;
  }
  return SEPKIT_FORMAT_CSV;
}

DatasetHandle build_dataset(const DataOptions& opt) {
  DatasetHandle data;
  if (opt.uri == "builtin:twopoint") {
    check(sepkit_dataset_two_point(&data.ptr));
  } else if (opt.uri.rfind("builtin:worstcase:", 0) == 0) {
    const std::string arg = opt.uri.substr(std::strlen("builtin:worstcase:"));
    char* end = nullptr;
    const long long n = std::strtoll(arg.c_str(), &end, 10);
    if (end == arg.c_str() || *end != '\0') {
      user_error("bad worstcase size in '" + opt.uri + "'");
    }
    check(sepkit_dataset_worst_case(n, &data.ptr));
  } else if (opt.uri.rfind("builtin:random:", 0) == 0) {
    std::int64_t n = 100, d = 5;
    double margin = 0.1, radius = 1.0;
    std::uint64_t seed = 0;
    for (const std::string& kv :
         split(opt.uri.substr(std::strlen("builtin:random:")), ',')) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) {
        user_error("expected key=value in '" + kv + "'");
      }
      const std::string key = kv.substr(0, eq);
      const std::string value = kv.substr(eq + 1);
      try {
        if (key == "n") {
          n = std::stoll(value);
        } else if (key == "d") {
          d = std::stoll(value);
        } else if (key == "margin") {
          margin = std::stod(value);
        } else if (key == "radius") {
          radius = std::stod(value);
        } else if (key == "seed") {
          seed = std::stoull(value);
        } else {
          user_error("unknown builtin:random key '" + key + "'");
        }
      } catch (const CliError&) {
        throw;
      } catch (const std::exception&) {
        user_error("bad value for builtin:random key '" + key + "'");
      }
    }
    check(sepkit_dataset_random_separable(n, d, margin, radius, seed,
                                          &data.ptr));
  } else if (opt.uri.rfind("builtin:", 0) == 0) {
    user_error("unknown builtin dataset '" + opt.uri + "'");
  } else {
    check(sepkit_dataset_load(opt.uri.c_str(),
                              sniff_format(opt.uri, opt.format), &data.ptr));
  }

  if (opt.subsample > 0) {
    DatasetHandle sub;
    check(sepkit_dataset_subsample(data.ptr, opt.subsample, opt.seed,
                                   &sub.ptr));
    data = std::move(sub);
  }
  if (!opt.imbalance.empty()) {
    const auto colon = opt.imbalance.find(':');
    if (colon == std::string::npos) {
      user_error("--imbalance expects CLASS:FACTOR, e.g. +1:10");
    }
    const std::string cls = opt.imbalance.substr(0, colon);
    int class_label = 0;
    if (cls == "+1" || cls == "1") {
      class_label = 1;
    } else if (cls == "-1") {
      class_label = -1;
    } else {
      user_error("--imbalance class must be +1 or -1");
    }
    char* end = nullptr;
    const std::string factor_text = opt.imbalance.substr(colon + 1);
    const long long factor = std::strtoll(factor_text.c_str(), &end, 10);
    if (end == factor_text.c_str() || *end != '\0') {
      user_error("bad --imbalance factor '" + factor_text + "'");
    }
    DatasetHandle fat;
    check(sepkit_dataset_imbalance(data.ptr, class_label, factor, &fat.ptr));
    data = std::move(fat);
  }
  if (opt.perturb != 0.0) {
    DatasetHandle noisy;
    check(sepkit_dataset_perturb(data.ptr, opt.perturb, opt.seed, &noisy.ptr));
    data = std::move(noisy);
  }
  return data;
}

std::string data_config(const DataOptions& opt) {
  std::ostringstream out;
  out << "data=" << opt.uri << " format=" << opt.format
      << " subsample=" << opt.subsample << " seed=" << opt.seed
      << " imbalance=" << (opt.imbalance.empty() ? "-" : opt.imbalance)
      << " perturb=" << fmt_double(opt.perturb);
  return out.str();
}

/* ----------------------------- helpers ----------------------------- */

sepkit_algorithm parse_algorithm(const std::string& name) {
  sepkit_algorithm algo;
  check(sepkit_algorithm_from_name(name.c_str(), &algo));
  return algo;
}

bool algorithm_uses_gamma(sepkit_algorithm algo) {
  return algo == SEPKIT_ALGO_LR_GD || algo == SEPKIT_ALGO_NORMALIZED_LR_GD;
}

std::vector<double> parse_gammas(const std::string& text) {
  std::vector<double> gammas;
  for (const std::string& cell : split(text, ',')) {
    char* end = nullptr;
    const double g = std::strtod(cell.c_str(), &end);
    if (end == cell.c_str() || *end != '\0' || !(g > 0.0)) {
      user_error("bad gamma '" + cell + "'");
    }
    gammas.push_back(g);
  }
  if (gammas.empty()) {
    user_error("--gammas list is empty");
  }
  return gammas;
}

std::string outcome_text(sepkit_outcome outcome, std::int64_t final_t) {
  switch (outcome) {
    case SEPKIT_OUTCOME_SOLVED:
      return "solved at t=" + std::to_string(final_t);
    case SEPKIT_OUTCOME_EXHAUSTED:
      return "timeout at t=" + std::to_string(final_t);
    case SEPKIT_OUTCOME_OVERFLOW:
      return "overflow at t=" + std::to_string(final_t);
  }
  return "?";
}

std::string trace_file_name(sepkit_algorithm algo, bool has_gamma,
                            double gamma) {
  std::string name = std::string("trace_") + sepkit_algorithm_name(algo);
  if (has_gamma) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%g", gamma);
    name += "_gamma_";
    name += buf;
  }
  return name + ".csv";
}

/* ---------------------------- subcommands -------------------------- */

struct RunArgs {
  DataOptions data;
  std::string algo;
  double gamma = 0.0;
  bool gamma_set = false;
  std::int64_t max_iters = 10000;
  std::int64_t record_every = 1;
  std::string out_dir;
};

int cmd_run(const RunArgs& args) {
  const sepkit_algorithm algo = parse_algorithm(args.algo);
  if (algorithm_uses_gamma(algo) && !args.gamma_set) {
    user_error("--gamma is required for " + args.algo +
               " (usage: run --data ... --algo " + args.algo + " --gamma G)");
  }
  if (!algorithm_uses_gamma(algo) && args.gamma_set) {
    std::cerr << "warning: --gamma is ignored by " << args.algo << "\n";
  }

  std::cout << "config: cmd=run " << data_config(args.data)
            << " algo=" << args.algo << " gamma="
            << (algorithm_uses_gamma(algo) ? fmt_double(args.gamma) : "-")
            << " max-iters=" << args.max_iters
            << " record-every=" << args.record_every
            << " out=" << (args.out_dir.empty() ? "-" : args.out_dir) << "\n";

  const DatasetHandle data = build_dataset(args.data);

  sepkit_run_config cfg;
  sepkit_run_config_init(&cfg);
  cfg.algorithm = algo;
  cfg.gamma = args.gamma;
  cfg.max_iters = args.max_iters;
  cfg.record_every = args.record_every;

  TraceHandle trace;
  check(sepkit_run(data.ptr, &cfg, &trace.ptr));

  sepkit_outcome outcome;
  std::int64_t final_t = 0;
  check(sepkit_trace_outcome(trace.ptr, &outcome, &final_t));

  if (!args.out_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(args.out_dir, ec);
    if (ec) {
      throw CliError{1, "cannot create output dir '" + args.out_dir +
                            "': " + ec.message()};
    }
    const std::string path =
        (std::filesystem::path(args.out_dir) /
         trace_file_name(algo, algorithm_uses_gamma(algo), args.gamma))
            .string();
    check(sepkit_trace_write_csv(trace.ptr, path.c_str()));
    std::cout << "trace: " << path << "\n";
  }

  std::cout << outcome_text(outcome, final_t) << "\n";
  return 0;
}

struct CompareArgs {
  DataOptions data;
  std::string algos;
  std::string gammas;  // empty = default sweep
  std::int64_t max_iters = 100000;
  std::int64_t record_every = 1;
  std::string out_dir;
  int workers = 1;
  bool inject_bound_fault = false;
};

int cmd_compare(const CompareArgs& args) {
  std::vector<sepkit_algorithm> algos;
  for (const std::string& name : split(args.algos, ',')) {
    const sepkit_algorithm algo = parse_algorithm(name);
    if (std::find(algos.begin(), algos.end(), algo) != algos.end()) {
      std::cerr << "warning: duplicate algorithm '" << name << "' ignored\n";
      continue;
    }
    algos.push_back(algo);
  }
  if (algos.empty()) {
    user_error("--algos list is empty");
  }

  const bool wants_gamma =
      std::any_of(algos.begin(), algos.end(), algorithm_uses_gamma);
  std::vector<double> gammas;
  if (!args.gammas.empty()) {
    gammas = parse_gammas(args.gammas);
  } else if (wants_gamma) {
    gammas = {0.001, 0.01, 0.1, 1.0, 10.0, 100.0, 1e6};  // default sweep
  }

  std::ostringstream gamma_echo;
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    gamma_echo << (i ? "," : "") << fmt_double(gammas[i]);
  }
  std::cout << "config: cmd=compare " << data_config(args.data)
            << " algos=" << args.algos << " gammas="
            << (gammas.empty() ? "-" : gamma_echo.str())
            << " max-iters=" << args.max_iters
            << " record-every=" << args.record_every << " out=" << args.out_dir
            << " workers=" << args.workers << "\n";

  const DatasetHandle data = build_dataset(args.data);

  sepkit_grid_config cfg;
  sepkit_grid_config_init(&cfg);
  cfg.algorithms = algos.data();
  cfg.algorithm_count = static_cast<std::int64_t>(algos.size());
  cfg.gammas = gammas.data();
  cfg.gamma_count = static_cast<std::int64_t>(gammas.size());
  cfg.max_iters = args.max_iters;
  cfg.record_every = args.record_every;
  cfg.output_dir = args.out_dir.c_str();
  cfg.workers = args.workers;

  SummaryHandle summary;
  check(sepkit_grid_run(data.ptr, &cfg, &summary.ptr));

  std::cout << sepkit_summary_text(summary.ptr);

  const std::string summary_path =
      (std::filesystem::path(args.out_dir) / "summary.csv").string();
  check(sepkit_summary_write_csv(summary.ptr, summary_path.c_str()));
  std::cout << "summary: " << summary_path << "\n";

  // Solve-step ratios between the two gradient methods, per gamma.
  const std::int64_t rows = sepkit_summary_row_count(summary.ptr);
  for (double gamma : gammas) {
    std::int64_t plain = -1, normalized = -1;
    for (std::int64_t i = 0; i < rows; ++i) {
      sepkit_summary_cell cell;
      check(sepkit_summary_row(summary.ptr, i, &cell));
      if (!cell.has_gamma || cell.gamma != gamma ||
          cell.outcome != SEPKIT_OUTCOME_SOLVED) {
        continue;
      }
      if (cell.algorithm == SEPKIT_ALGO_LR_GD) plain = cell.iterations;
      if (cell.algorithm == SEPKIT_ALGO_NORMALIZED_LR_GD) {
        normalized = cell.iterations;
      }
    }
    if (plain > 0 && normalized > 0) {
      char buf[64];
      std::snprintf(
          buf, sizeof(buf), "%.1f",
          static_cast<double>(plain) / static_cast<double>(normalized));
      std::cout << "speedup[gamma=" << fmt_double(gamma)
                << "]: lr-gd/normalized-lr-gd = " << buf << "x\n";
    }
  }

  bool violated = args.inject_bound_fault;
  if (args.inject_bound_fault) {
    std::cerr << "warning: bound fault injected for testing\n";
  }
  for (std::int64_t i = 0; i < rows; ++i) {
    sepkit_summary_cell cell;
    check(sepkit_summary_row(summary.ptr, i, &cell));
    if (cell.has_bound && cell.bound_respected == 0) {
      violated = true;
      std::cerr << "bound violated: " << sepkit_algorithm_name(cell.algorithm)
                << "\n";
    }
    const char* note = sepkit_summary_note(summary.ptr, i);
    if (note != nullptr && *note != '\0') {
      std::cerr << "note: " << note << "\n";
    }
  }
  return violated ? 3 : 0;
}

struct VerifyArgs {
  DataOptions data;
  double gamma = 1e6;
  std::int64_t horizon = 50;
  double tol = 1e-6;
  bool normalized = false;
};

int cmd_verify_reduction(const VerifyArgs& args) {
  std::cout << "config: cmd=verify-reduction " << data_config(args.data)
            << " gamma=" << fmt_double(args.gamma)
            << " horizon=" << args.horizon << " tol=" << fmt_double(args.tol)
            << " normalized=" << (args.normalized ? "true" : "false") << "\n";

  const DatasetHandle data = build_dataset(args.data);
  sepkit_reduction_report report;
  check(sepkit_verify_reduction(data.ptr, args.gamma, args.horizon, args.tol,
                                args.normalized ? 1 : 0, &report));
  std::cout << "max_deviation=" << fmt_double(report.max_deviation)
            << " degenerate_hits=" << report.degenerate_hits
            << " compared_steps=" << report.compared_steps
            << " verdict=" << (report.pass ? "pass" : "fail") << "\n";
  return report.pass ? 0 : 3;
}

struct MarginArgs {
  DataOptions data;
  double tol = 1e-8;
  std::int64_t max_iters = 100000;
  std::string gammas;
};

int cmd_margin(const MarginArgs& args) {
  std::cout << "config: cmd=margin " << data_config(args.data)
            << " tol=" << fmt_double(args.tol)
            << " max-iters=" << args.max_iters
            << " gammas=" << (args.gammas.empty() ? "-" : args.gammas) << "\n";

  const DatasetHandle data = build_dataset(args.data);
  const std::int64_t n = sepkit_dataset_size(data.ptr);

  sepkit_margin_report report;
  check(sepkit_margin(data.ptr, args.tol, args.max_iters, &report, nullptr));

  if (!report.separable) {
    std::cout << "non-separable (hull of {y_i a_i} meets the origin within "
              << fmt_double(args.tol) << ")\n";
    return 0;
  }

  double batch = 0.0, normalized = 0.0;
  check(sepkit_batch_bound(n, report.radius, report.mu, &batch));
  check(sepkit_normalized_bound(report.radius, report.mu, &normalized));
  std::cout << "mu=" << fmt_double(report.mu)
            << " R=" << fmt_double(report.radius) << " n=" << n << "\n";
  std::cout << "bound_batch=" << fmt_double(batch)
            << " bound_normalized=" << fmt_double(normalized) << "\n";
  if (!args.gammas.empty()) {
    for (double gamma : parse_gammas(args.gammas)) {
      double b = 0.0;
      check(sepkit_normalized_lrgd_bound(n, report.radius, report.mu, gamma,
                                         &b));
      std::cout << "bound_normalized_lrgd[gamma=" << fmt_double(gamma)
                << "]=" << fmt_double(b) << "\n";
    }
  }
  return 0;
}

struct GenArgs {
  DataOptions data;
  std::string out;
  std::string out_format = "auto";
};

int cmd_gen_dataset(const GenArgs& args) {
  std::cout << "config: cmd=gen-dataset " << data_config(args.data)
            << " out=" << args.out << " out-format=" << args.out_format
            << "\n";

  const DatasetHandle data = build_dataset(args.data);

  sepkit_format format = SEPKIT_FORMAT_CSV;
  if (args.out_format == "libsvm") {
    format = SEPKIT_FORMAT_LIBSVM;
  } else if (args.out_format == "auto") {
    const std::string ext =
        std::filesystem::path(args.out).extension().string();
    if (ext == ".libsvm" || ext == ".svm") format = SEPKIT_FORMAT_LIBSVM;
  }
  check(sepkit_dataset_save(data.ptr, args.out.c_str(), format));
  std::cout << "wrote " << args.out << " (n=" << sepkit_dataset_size(data.ptr)
            << ", d=" << sepkit_dataset_dim(data.ptr) << ")\n";
  return 0;
}

struct PlotArgs {
  std::string traces;
  std::string metric = "loss";
  bool log_y = false;
  std::string out;
};

int cmd_plot(const PlotArgs& args) {
  std::cout << "config: cmd=plot traces=" << args.traces
            << " metric=" << args.metric
            << " log-y=" << (args.log_y ? "true" : "false")
            << " out=" << args.out << "\n";

  sepkit_metric metric;
  if (args.metric == "loss") {
    metric = SEPKIT_METRIC_LOSS;
  } else if (args.metric == "grad_norm") {
    metric = SEPKIT_METRIC_GRAD_NORM;
  } else if (args.metric == "accuracy") {
    metric = SEPKIT_METRIC_ACCURACY;
  } else if (args.metric == "mistakes") {
    metric = SEPKIT_METRIC_MISTAKES;
  } else {
    user_error("unknown metric '" + args.metric +
               "' (expected loss, grad_norm, accuracy, or mistakes)");
  }

  std::vector<TraceHandle> traces;
  std::vector<std::string> labels;
  for (const std::string& path : split(args.traces, ',')) {
    TraceHandle trace;
    check(sepkit_trace_read_csv(path.c_str(), &trace.ptr));
    traces.push_back(std::move(trace));
    labels.push_back(std::filesystem::path(path).stem().string());
  }
  if (traces.empty()) {
    user_error("--traces list is empty");
  }

  std::vector<const sepkit_trace*> trace_ptrs;
  std::vector<const char*> label_ptrs;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    trace_ptrs.push_back(traces[i].ptr);
    label_ptrs.push_back(labels[i].c_str());
  }
  check(sepkit_plot_write_svg(trace_ptrs.data(), label_ptrs.data(),
                              static_cast<std::int64_t>(traces.size()), metric,
                              args.log_y ? 1 : 0, args.out.c_str()));
  std::cout << "wrote " << args.out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "sepkit: solvers, margin analysis, and experiment grids for "
      "linearly separable binary classification"};
  app.require_subcommand(1);

  RunArgs run_args;
  CLI::App* run_cmd =
      app.add_subcommand("run", "run one algorithm and emit its trace");
  add_data_flags(run_cmd, run_args.data);
  run_cmd
      ->add_option("--algo", run_args.algo,
                   "lr-gd, normalized-lr-gd, batch-perceptron, perceptron, "
                   "normalized-batch-perceptron")
      ->required();
  run_cmd
      ->add_option("--gamma", run_args.gamma,
                   "step size for the gradient algorithms")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--max-iters", run_args.max_iters, "iteration cap")
      ->check(CLI::PositiveNumber);
  run_cmd
      ->add_option("--record-every", run_args.record_every,
                   "trace record cadence")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--out", run_args.out_dir, "directory for the trace CSV");

  CompareArgs compare_args;
  CLI::App* compare_cmd = app.add_subcommand(
      "compare", "grid of runs with a solve-step comparison table");
  add_data_flags(compare_cmd, compare_args.data);
  compare_cmd
      ->add_option("--algos", compare_args.algos,
                   "comma-separated algorithm names")
      ->required();
  compare_cmd->add_option("--gammas", compare_args.gammas,
                          "comma-separated step sizes (default sweep: "
                          "0.001,0.01,0.1,1,10,100,1e6)");
  compare_cmd
      ->add_option("--max-iters", compare_args.max_iters, "iteration cap")
      ->check(CLI::PositiveNumber);
  compare_cmd
      ->add_option("--record-every", compare_args.record_every,
                   "trace record cadence")
      ->check(CLI::PositiveNumber);
  compare_cmd
      ->add_option("--out", compare_args.out_dir,
                   "directory for traces and summary.csv")
      ->required();
  compare_cmd
      ->add_option("--workers", compare_args.workers,
                   "parallel cells (output is identical for any value)")
      ->check(CLI::PositiveNumber);
  compare_cmd->add_flag("--inject-bound-fault", compare_args.inject_bound_fault)
      ->group("");  // test hook, hidden from help

  VerifyArgs verify_args;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify-reduction",
      "check that theta_t/gamma tracks the discrete perceptron iterates");
  add_data_flags(verify_cmd, verify_args.data);
  verify_cmd->add_option("--gamma", verify_args.gamma, "step size")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--horizon", verify_args.horizon, "steps to compare")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--tol", verify_args.tol, "sup-norm tolerance")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_flag("--normalized", verify_args.normalized,
                       "compare the normalized pair instead");

  MarginArgs margin_args;
  CLI::App* margin_cmd = app.add_subcommand(
      "margin", "certified margin, radius, and iteration bounds");
  add_data_flags(margin_cmd, margin_args.data);
  margin_cmd->add_option("--tol", margin_args.tol, "certification tolerance")
      ->check(CLI::PositiveNumber);
  margin_cmd
      ->add_option("--max-iters", margin_args.max_iters,
                   "solver iteration cap")
      ->check(CLI::PositiveNumber);
  margin_cmd->add_option("--gammas", margin_args.gammas,
                         "also print the gradient bound at these step sizes");

  GenArgs gen_args;
  CLI::App* gen_cmd =
      app.add_subcommand("gen-dataset", "materialize a dataset to a file");
  add_data_flags(gen_cmd, gen_args.data);
  gen_cmd->add_option("--out", gen_args.out, "output path")->required();
  gen_cmd
      ->add_option("--out-format", gen_args.out_format,
                   "output format: auto (by extension), csv, libsvm")
      ->check(CLI::IsMember({"auto", "csv", "libsvm"}));

  PlotArgs plot_args;
  CLI::App* plot_cmd =
      app.add_subcommand("plot", "render trace CSVs as an SVG chart");
  plot_cmd
      ->add_option("--traces", plot_args.traces,
                   "comma-separated trace CSV paths")
      ->required();
  plot_cmd->add_option("--metric", plot_args.metric,
                       "loss, grad_norm, accuracy, or mistakes");
  plot_cmd->add_flag("--log-y", plot_args.log_y, "log-scale vertical axis");
  plot_cmd->add_option("--out", plot_args.out, "output SVG path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // anything but help/version is a usage error
  }

  try {
    if (run_cmd->parsed()) {
      run_args.gamma_set = run_cmd->count("--gamma") > 0;
      return cmd_run(run_args);
    }
    if (compare_cmd->parsed()) return cmd_compare(compare_args);
    if (verify_cmd->parsed()) return cmd_verify_reduction(verify_args);
    if (margin_cmd->parsed()) return cmd_margin(margin_args);
    if (gen_cmd->parsed()) return cmd_gen_dataset(gen_args);
    if (plot_cmd->parsed()) return cmd_plot(plot_args);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
