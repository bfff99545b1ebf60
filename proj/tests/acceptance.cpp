// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Each criterion pins its tolerances in code; datasets are deterministic
// in their seeds so a pass here is reproducible bit for bit.
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sepkit/algorithms.hpp"
#include "sepkit/analysis.hpp"
#include "sepkit/experiments.hpp"
#include "sepkit/generators.hpp"
#include "sepkit/loss.hpp"

#ifndef SEPKIT_CLI_PATH
#define SEPKIT_CLI_PATH "sepkit"
#endif

using namespace sepkit;

namespace {

struct CheckResult {
  bool pass = true;
  std::ostringstream detail;
  void fail(const std::string& what) {
    pass = false;
    if (detail.tellp() > 0) detail << "; ";
    detail << what;
  }
  void expect(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }
};

Trace run_from_zero(const Dataset& data, Algorithm algo, double gamma,
                    std::int64_t max_iters) {
  RunConfig cfg;
  cfg.algorithm = algo;
  cfg.gamma = gamma;
  cfg.max_iters = max_iters;
  cfg.record_every = max_iters;  // start and final records are enough here
  return run(data, cfg);
}

/// The shared random suite for the bound criteria: 50 separable datasets
/// with n <= 200, d <= 10, certified margins well above the solver tol.
std::vector<Dataset> bound_suite() {
  std::vector<Dataset> suite;
  suite.reserve(50);
  for (int i = 0; i < 50; ++i) {
    const std::int64_t n = 20 + (7 * i) % 181;          // 20..200
    const std::int64_t d = 2 + i % 9;                   // 2..10
    const double margin = 0.15 + 0.01 * (i % 10);       // 0.15..0.24
    suite.push_back(
        random_separable(n, d, margin, 1.0, 1000 + static_cast<unsigned>(i)));
  }
  return suite;
}

std::string temp_dir(const std::string& tag) {
  const auto path = std::filesystem::temp_directory_path() /
                    ("sepkit_accept_" + tag + "_" + std::to_string(::getpid()));
  std::filesystem::create_directories(path);
  return path.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

/* 1. The gradient iterates divided by gamma match the batch-perceptron
 *    iterates to 1e-6 at gamma = 1e6 on the two-point construction and
 *    on twenty random separable datasets that pass the degeneracy probe. */
CheckResult criterion_reduction() {
  CheckResult out;
  std::vector<Dataset> datasets;
  datasets.push_back(two_point_dataset());
  std::uint64_t seed = 2000;
  while (datasets.size() < 21 && seed < 2500) {
    const std::int64_t n =
        10 + static_cast<std::int64_t>((seed * 37) % 91);  // 10..100
    const std::int64_t d = 2 + static_cast<std::int64_t>(seed % 9);
    const double margin = 0.1 + 0.02 * static_cast<double>(seed % 5);
    Dataset data = random_separable(n, d, margin, 1.0, seed++);
    if (probe_degeneracy(data, 50) == 0) {
      datasets.push_back(std::move(data));
    }
  }
  out.expect(datasets.size() == 21, "could not assemble 20 probe-clean sets");

  for (std::size_t i = 0; i < datasets.size(); ++i) {
    const ReductionReport report =
        verify_reduction(datasets[i], 1e6, 50, 1e-6, false);
    if (!report.pass) {
      out.fail("dataset " + std::to_string(i) + ": deviation " +
               std::to_string(report.max_deviation) + ", hits " +
               std::to_string(report.degenerate_hits));
    }
  }
  return out;
}

/* 2. Batch perceptron solves every suite dataset within ceil(n R^2/mu^2),
 *    mu certified at 1e-8. */
CheckResult criterion_batch_bound() {
  CheckResult out;
  int index = 0;
  for (const Dataset& data : bound_suite()) {
    const MarginReport margin = compute_margin(data, 1e-8);
    out.expect(margin.separable,
               "suite dataset " + std::to_string(index) + " not separable");
    const auto cap = static_cast<std::int64_t>(std::ceil(batch_bound(
        static_cast<std::int64_t>(data.size()), margin.radius, margin.mu)));
    const Trace trace =
        run_from_zero(data, Algorithm::batch_perceptron, 0.0, cap);
    if (trace.outcome != sepkit::Outcome::solved) {
      out.fail("dataset " + std::to_string(index) + " unsolved within " +
               std::to_string(cap));
    }
    ++index;
  }
  return out;
}

/* 3. The adversarial family forces solve steps 4 / 31 / 301 at
 *    n = 10 / 100 / 1000: linear growth in n, pinned three ways. */
CheckResult criterion_lower_bound() {
  CheckResult out;
  const std::int64_t expected[] = {4, 31, 301};
  const std::int64_t sizes[] = {10, 100, 1000};
  for (int i = 0; i < 3; ++i) {
    const Dataset data = worst_case_dataset(sizes[i]);
    const Trace trace =
        run_from_zero(data, Algorithm::batch_perceptron, 0.0, 1000);
    const std::int64_t closed_form = oracles::worst_case_solve_step(sizes[i]);
    const std::int64_t simulated =
        oracles::simulate_batch_perceptron(data, 1000);
    if (trace.outcome != sepkit::Outcome::solved ||
        trace.final_t != expected[i] || closed_form != expected[i] ||
        simulated != expected[i]) {
      out.fail("n=" + std::to_string(sizes[i]) + ": run " +
               std::to_string(trace.final_t) + ", closed form " +
               std::to_string(closed_form) + ", simulated " +
               std::to_string(simulated) + ", expected " +
               std::to_string(expected[i]));
    }
  }
  return out;
}

/* 4. Normalized batch perceptron: ceil(R^2/mu^2) on the suite and
 *    exactly two steps on the adversarial family. */
CheckResult criterion_normalized_bound() {
  CheckResult out;
  int index = 0;
  for (const Dataset& data : bound_suite()) {
    const MarginReport margin = compute_margin(data, 1e-8);
    const auto cap = static_cast<std::int64_t>(
        std::ceil(normalized_bound(margin.radius, margin.mu)));
    const Trace trace =
        run_from_zero(data, Algorithm::normalized_batch_perceptron, 0.0, cap);
    if (trace.outcome != sepkit::Outcome::solved) {
      out.fail("dataset " + std::to_string(index) + " unsolved within " +
               std::to_string(cap));
    }
    ++index;
  }
  for (std::int64_t n : {10, 100, 1000}) {
    const Trace trace = run_from_zero(worst_case_dataset(n),
                                      Algorithm::normalized_batch_perceptron,
                                      0.0, 10);
    if (trace.outcome != sepkit::Outcome::solved || trace.final_t != 2) {
      out.fail("adversarial n=" + std::to_string(n) + " solved at " +
               std::to_string(trace.final_t) + ", expected 2");
    }
  }
  return out;
}

/* 5. Normalized gradient method: within ceil(R^2/mu^2 +
 *    2 log(2n-1)/(gamma mu^2)) for gamma in {1, 100, 1e6}, and within
 *    5 steps on the 10-sample adversarial set at gamma = 100. */
CheckResult criterion_normalized_lrgd_bound() {
  CheckResult out;
  int index = 0;
  for (const Dataset& data : bound_suite()) {
    const MarginReport margin = compute_margin(data, 1e-8);
    for (double gamma : {1.0, 100.0, 1e6}) {
      const auto cap = static_cast<std::int64_t>(std::ceil(
          normalized_lrgd_bound(static_cast<std::int64_t>(data.size()),
                                margin.radius, margin.mu, gamma)));
      const Trace trace =
          run_from_zero(data, Algorithm::normalized_lr_gd, gamma, cap);
      if (trace.outcome != sepkit::Outcome::solved) {
        out.fail("dataset " + std::to_string(index) + " gamma " +
                 std::to_string(gamma) + " unsolved within " +
                 std::to_string(cap));
      }
    }
    ++index;
  }
  const Trace w10 = run_from_zero(worst_case_dataset(10),
                                  Algorithm::normalized_lr_gd, 100.0, 5);
  if (w10.outcome != sepkit::Outcome::solved) {
    out.fail("adversarial n=10, gamma=100 not solved within 5 (bound 5.2356)");
  }
  return out;
}

/* 6. Loss and gradient norm mislead: the first iterate has loss >=
 *    gamma/8 while the second solves the task with loss <= 1e-3, and
 *    ||grad f(theta_1)|| is within 1e-3 of sqrt(2)/2 at gamma = 100. */
CheckResult criterion_unreliable_metrics() {
  CheckResult out;
  const Dataset data = two_point_dataset();
  const Vector origin{0.0, 0.0};
  for (double gamma : {10.0, 100.0, 1000.0}) {
    const Vector theta1 = lr_gd_step(data, origin, gamma);
    const Vector theta2 = lr_gd_step(data, theta1, gamma);
    const double f1 = logistic_loss(data, theta1);
    const double f2 = logistic_loss(data, theta2);
    out.expect(f1 >= gamma / 8.0,
               "f(theta1) = " + std::to_string(f1) + " below gamma/8");
    out.expect(f2 <= 1e-3, "f(theta2) = " + std::to_string(f2) + " above 1e-3");
    const Vector scaled{theta2[0] / gamma, theta2[1] / gamma};
    out.expect(is_separated(data, scaled),
               "theta2/gamma does not separate at gamma " +
                   std::to_string(gamma));
    if (gamma == 100.0) {
      const double gnorm = norm(logistic_gradient(data, theta1));
      out.expect(std::abs(gnorm - std::sqrt(2.0) / 2.0) <= 1e-3,
                 "||grad f(theta1)|| = " + std::to_string(gnorm));
    }
  }
  return out;
}

/* 7. At gamma = 1e6 on the 1000-sample adversarial set, the plain
 *    gradient method needs at least 50x the steps of the normalized one. */
CheckResult criterion_speedup() {
  CheckResult out;
  const Dataset data = worst_case_dataset(1000);
  const Trace plain = run_from_zero(data, Algorithm::lr_gd, 1e6, 1000);
  const Trace normalized =
      run_from_zero(data, Algorithm::normalized_lr_gd, 1e6, 1000);
  out.expect(plain.outcome == sepkit::Outcome::solved, "plain run unsolved");
  out.expect(normalized.outcome == sepkit::Outcome::solved,
             "normalized run unsolved");
  if (out.pass) {
    const double ratio = static_cast<double>(plain.final_t) /
                         static_cast<double>(normalized.final_t);
    out.expect(ratio >= 50.0,
               "ratio " + std::to_string(plain.final_t) + "/" +
                   std::to_string(normalized.final_t) + " below 50");
    out.detail << "ratio " << plain.final_t << "/" << normalized.final_t
               << " = " << ratio << "x";
  }
  return out;
}

/* 8. The margin solver matches a one-million-direction sweep to 1e-6 on
 *    fifty random planar datasets and hits the two constructions' exact
 *    margins to 1e-8. */
CheckResult criterion_margin_oracle() {
  CheckResult out;
  for (std::int64_t n : {10, 100, 1000}) {
    const MarginReport report = compute_margin(worst_case_dataset(n), 1e-8);
    out.expect(report.separable && std::abs(report.mu - 0.5) <= 1e-8,
               "adversarial n=" + std::to_string(n) + ": mu " +
                   std::to_string(report.mu));
  }
  const MarginReport two = compute_margin(two_point_dataset(), 1e-8);
  out.expect(two.separable && std::abs(two.mu - 1.0) <= 1e-8,
             "two-point mu " + std::to_string(two.mu));

  for (int i = 0; i < 50; ++i) {
    const std::int64_t n = 3 + i % 18;
    const double margin = 0.1 + 0.004 * i;
    const Dataset data =
        random_separable(n, 2, margin, 0.8, 3000 + static_cast<unsigned>(i));
    const MarginReport report = compute_margin(data, 1e-8);
    const double swept = oracles::brute_force_margin_2d(data, 1000000);
    if (!report.separable || std::abs(report.mu - swept) > 1e-6) {
      out.fail("planar dataset " + std::to_string(i) + ": solver " +
               std::to_string(report.mu) + " vs sweep " +
               std::to_string(swept));
    }
  }
  return out;
}

/* 9. The analytic gradient agrees with central finite differences to a
 *    relative 1e-5 on a hundred small random instances. */
CheckResult criterion_gradient() {
  CheckResult out;
  std::mt19937_64 rng(4000);
  std::uniform_int_distribution<std::size_t> pick_n(1, 20);
  std::uniform_int_distribution<std::size_t> pick_d(1, 5);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  std::uniform_real_distribution<double> theta_coord(-1.5, 1.5);
  std::bernoulli_distribution coin(0.5);

  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = pick_n(rng);
    const std::size_t d = pick_d(rng);
    std::vector<double> features(n * d);
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
      labels[i] = coin(rng) ? 1 : -1;
      for (std::size_t k = 0; k < d; ++k) features[i * d + k] = coord(rng);
    }
    const Dataset data(std::move(features), std::move(labels), d);
    Vector theta(d);
    for (double& x : theta) x = theta_coord(rng);

    const Vector grad = logistic_gradient(data, theta);
    const Vector fd = oracles::finite_difference_gradient(
        [&](const Vector& th) { return logistic_loss(data, th); }, theta,
        1e-6);
    for (std::size_t k = 0; k < d; ++k) {
      const double scale =
          std::max({std::abs(fd[k]), std::abs(grad[k]), 1e-8});
      if (std::abs(grad[k] - fd[k]) / scale > 1e-5) {
        out.fail("instance " + std::to_string(rep) + " coord " +
                 std::to_string(k) + ": " + std::to_string(grad[k]) + " vs " +
                 std::to_string(fd[k]));
      }
    }
  }
  return out;
}

/* 10. The compare command is deterministic: identical flags, workers 1
 *     vs 4, byte-identical summary CSVs. */
CheckResult criterion_determinism() {
  CheckResult out;
  const std::string dir_a = temp_dir("cmp_a");
  const std::string dir_b = temp_dir("cmp_b");
  const std::string base =
      std::string(SEPKIT_CLI_PATH) +
      " compare --data builtin:worstcase:50"
      " --algos lr-gd,normalized-lr-gd,batch-perceptron,perceptron"
      " --gammas 1,100,1e6 --max-iters 20000";
  const std::string cmd_a =
      base + " --out " + dir_a + " --workers 1 > /dev/null 2>&1";
  const std::string cmd_b =
      base + " --out " + dir_b + " --workers 4 > /dev/null 2>&1";
  out.expect(std::system(cmd_a.c_str()) == 0, "workers=1 invocation failed");
  out.expect(std::system(cmd_b.c_str()) == 0, "workers=4 invocation failed");
  if (out.pass) {
    const std::string a = slurp(dir_a + "/summary.csv");
    const std::string b = slurp(dir_b + "/summary.csv");
    out.expect(!a.empty(), "summary.csv empty");
    out.expect(a == b, "summary CSVs differ between workers=1 and workers=4");
    // identical flags run twice must also reproduce the traces
    const std::string dir_c = temp_dir("cmp_c");
    const std::string cmd_c =
        base + " --out " + dir_c + " --workers 1 > /dev/null 2>&1";
    out.expect(std::system(cmd_c.c_str()) == 0, "rerun invocation failed");
    out.expect(slurp(dir_c + "/summary.csv") == a, "rerun summary differs");
  }
  std::error_code ec;
  std::filesystem::remove_all(dir_a, ec);
  std::filesystem::remove_all(dir_b, ec);
  return out;
}

struct Criterion {
  int id;
  const char* name;
  double time_limit_s;
  std::function<CheckResult()> check;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "large-step reduction to the batch perceptron", 5.0,
       criterion_reduction},
      {2, "batch perceptron iteration bound n R^2/mu^2", 10.0,
       criterion_batch_bound},
      {3, "adversarial lower bound: 4/31/301 steps", 5.0,
       criterion_lower_bound},
      {4, "normalized batch perceptron bound R^2/mu^2", 10.0,
       criterion_normalized_bound},
      {5, "normalized gradient bound with the log(2n-1)/gamma term", 10.0,
       criterion_normalized_lrgd_bound},
      {6, "loss and gradient norm are unreliable metrics", 1.0,
       criterion_unreliable_metrics},
      {7, "normalized method is >= 50x faster on the adversarial set", 10.0,
       criterion_speedup},
      {8, "margin solver vs the million-direction sweep", 20.0,
       criterion_margin_oracle},
      {9, "analytic gradient vs central finite differences", 5.0,
       criterion_gradient},
      {10, "compare command determinism across workers", 60.0,
       criterion_determinism},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult outcome;
    try {
      outcome = criterion.check();
    } catch (const std::exception& e) {
      outcome.fail(std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (seconds >= criterion.time_limit_s) {
      outcome.fail("runtime " + std::to_string(seconds) + "s over the " +
                   std::to_string(criterion.time_limit_s) + "s limit");
    }
    std::printf("criterion %2d [%s]: %s (%.2fs)%s%s\n", criterion.id,
                criterion.name, outcome.pass ? "PASS" : "FAIL", seconds,
                outcome.detail.tellp() > 0 ? " - " : "",
                outcome.detail.str().c_str());
    if (!outcome.pass) ++failures;
  }

  if (failures == 0) {
    std::printf("acceptance: all %zu criteria passed\n", criteria.size());
  } else {
    std::printf("acceptance: %d of %zu criteria FAILED\n", failures,
                criteria.size());
  }
  return failures;
}
