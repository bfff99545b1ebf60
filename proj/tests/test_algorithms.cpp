#include <doctest.h>

#include <cmath>
#include <set>

#include "oracles.hpp"
#include "sepkit/algorithms.hpp"
#include "sepkit/analysis.hpp"
#include "sepkit/generators.hpp"
#include "sepkit/loss.hpp"

using namespace sepkit;

namespace {

Trace run_from_zero(const Dataset& data, Algorithm algo, double gamma = 0.0,
                    std::int64_t max_iters = 10000) {
  RunConfig cfg;
  cfg.algorithm = algo;
  cfg.gamma = gamma;
  cfg.max_iters = max_iters;
  return run(data, cfg);
}

}  // namespace

TEST_SUITE("algorithms") {

TEST_CASE("mistake set membership") {
  const Dataset data = two_point_dataset();
  SUBCASE("everything is mistaken at the origin") {
    CHECK(mistake_set(data, Vector{0.0, 0.0}) ==
          std::vector<std::size_t>{0, 1});
  }
  SUBCASE("only the first sample at (0.5, 0.75)") {
    CHECK(mistake_set(data, Vector{0.5, 0.75}) ==
          std::vector<std::size_t>{0});
  }
  SUBCASE("empty at a solution") {
    CHECK(mistake_set(data, Vector{1.0, 0.25}).empty());
  }
  SUBCASE("an exact zero margin counts as a mistake") {
    // theta orthogonal to y1 a1 = (1,-1)
    CHECK(mistake_set(data, Vector{1.0, 1.0}) == std::vector<std::size_t>{0});
  }
}

TEST_CASE("gradient step anchors") {
  const Dataset data = two_point_dataset();
  SUBCASE("first step from zero at gamma 100") {
    const Vector next = lr_gd_step(data, Vector{0.0, 0.0}, 100.0);
    CHECK(next[0] == doctest::Approx(50.0).epsilon(1e-14));
    CHECK(next[1] == doctest::Approx(75.0).epsilon(1e-14));
  }
  SUBCASE("second step lands near (100, 25)") {
    const Vector next = lr_gd_step(data, Vector{50.0, 75.0}, 100.0);
    CHECK(std::abs(next[0] - 100.0) <= 1e-8);
    CHECK(std::abs(next[1] - 25.0) <= 1e-8);
  }
  SUBCASE("zero gradient leaves theta unchanged") {
    const Dataset paired({1.0, 2.0, 1.0, 2.0}, {1, -1}, 2);
    const Vector next = lr_gd_step(paired, Vector{0.0, 0.0}, 7.0);
    CHECK(next[0] == 0.0);
    CHECK(next[1] == 0.0);
  }
  SUBCASE("gamma must be positive") {
    CHECK_THROWS_AS(lr_gd_step(data, Vector{0.0, 0.0}, 0.0), Error);
    CHECK_THROWS_AS(lr_gd_step(data, Vector{0.0, 0.0}, -1.0), Error);
  }
}

TEST_CASE("normalized gradient step anchors") {
  SUBCASE("two-point, gamma 1, from zero: beta doubles the step") {
    const Vector next =
        normalized_lr_gd_step(two_point_dataset(), Vector{0.0, 0.0}, 1.0);
    CHECK(next[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(next[1] == doctest::Approx(1.5).epsilon(1e-14));
  }
  SUBCASE("adversarial data, huge gamma: first step is the mean update") {
    const Vector next =
        normalized_lr_gd_step(worst_case_dataset(10), Vector{0.0, 0.0}, 1e6);
    CHECK(std::abs(next[0] / 1e6 - 0.5) <= 1e-6);
    CHECK(std::abs(next[1] / 1e6 - 0.8) <= 1e-6);
  }
  SUBCASE("cancelling gradient stays at zero") {
    const Dataset paired({1.0, 2.0, 1.0, 2.0}, {1, -1}, 2);
    const Vector next = normalized_lr_gd_step(paired, Vector{0.0, 0.0}, 3.0);
    CHECK(next[0] == 0.0);
    CHECK(next[1] == 0.0);
  }
}

TEST_CASE("batch perceptron step anchors") {
  SUBCASE("two-point half step") {
    const Vector next =
        batch_perceptron_step(two_point_dataset(), Vector{0.0, 0.0}, 0);
    CHECK(next[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(next[1] == doctest::Approx(0.75).epsilon(1e-15));
  }
  SUBCASE("adversarial data half step") {
    const std::int64_t n = 10;
    const Vector next =
        batch_perceptron_step(worst_case_dataset(n), Vector{0.0, 0.0}, 0);
    CHECK(next[0] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(next[1] ==
          doctest::Approx((n - 2) / (2.0 * n)).epsilon(1e-15));
  }
  SUBCASE("adversarial data t = 1 step") {
    const std::int64_t n = 10;
    const Vector theta{0.25, (n - 2) / (2.0 * n)};
    const Vector next = batch_perceptron_step(worst_case_dataset(n), theta, 1);
    CHECK(next[0] == doctest::Approx(0.25 * (1.0 + 2.0 / n)).epsilon(1e-14));
    CHECK(next[1] == doctest::Approx((n - 4) / (2.0 * n)).epsilon(1e-14));
  }
  SUBCASE("unchanged at t >= 1 when nothing is mistaken") {
    const Vector theta{1.0, 0.25};
    const Vector next = batch_perceptron_step(two_point_dataset(), theta, 1);
    CHECK(next == theta);
  }
}

TEST_CASE("classical perceptron step") {
  const Dataset data = two_point_dataset();
  SUBCASE("lowest mistaken index from zero") {
    const Vector next = perceptron_step(data, Vector{0.0, 0.0});
    CHECK(next[0] == 1.0);
    CHECK(next[1] == -1.0);
  }
  SUBCASE("single mistake") {
    const Vector next = perceptron_step(data, Vector{0.5, 0.75});
    CHECK(next[0] == doctest::Approx(1.5));
    CHECK(next[1] == doctest::Approx(-0.25));
  }
  SUBCASE("errors once separated") {
    CHECK_THROWS_AS(perceptron_step(data, Vector{1.0, 0.25}), Error);
  }
}

TEST_CASE("normalized batch perceptron step") {
  SUBCASE("mean over all mistakes from zero") {
    const Vector next =
        normalized_batch_perceptron_step(worst_case_dataset(10),
                                         Vector{0.0, 0.0});
    CHECK(next[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(next[1] == doctest::Approx(0.8).epsilon(1e-15));
  }
  SUBCASE("second step separates the adversarial data") {
    const Vector next = normalized_batch_perceptron_step(
        worst_case_dataset(10), Vector{0.5, 0.8});
    CHECK(next[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(next[1] == doctest::Approx(-0.2).epsilon(1e-12));
    CHECK(is_separated(worst_case_dataset(10), next));
  }
  SUBCASE("singleton mistake set matches the classical step") {
    const Vector next = normalized_batch_perceptron_step(two_point_dataset(),
                                                         Vector{0.5, 0.75});
    CHECK(next[0] == doctest::Approx(1.5));
    CHECK(next[1] == doctest::Approx(-0.25));
  }
  SUBCASE("errors once separated") {
    CHECK_THROWS_AS(normalized_batch_perceptron_step(two_point_dataset(),
                                                     Vector{1.0, 0.25}),
                    Error);
  }
}

TEST_CASE("runner solves the two-point data in two batch steps") {
  const Trace trace =
      run_from_zero(two_point_dataset(), Algorithm::batch_perceptron);
  CHECK(trace.outcome == Outcome::solved);
  CHECK(trace.final_t == 2);
  CHECK(trace.final_theta[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(trace.final_theta[1] == doctest::Approx(0.25).epsilon(1e-12));
  // records at t = 0, 1, 2
  REQUIRE(trace.records.size() == 3);
  CHECK(trace.records.back().mistakes == 0);
  CHECK(trace.records.back().accuracy == 1.0);
}

TEST_CASE("runner solve steps on the adversarial construction") {
  CHECK(run_from_zero(worst_case_dataset(10), Algorithm::batch_perceptron)
            .final_t == 4);
  CHECK(run_from_zero(worst_case_dataset(10),
                      Algorithm::normalized_batch_perceptron)
            .final_t == 2);
}

TEST_CASE("solve steps agree with an independent re-simulation") {
  for (std::int64_t n : {10, 25, 100}) {
    const Dataset data = worst_case_dataset(n);
    const Trace trace = run_from_zero(data, Algorithm::batch_perceptron);
    CHECK(trace.outcome == Outcome::solved);
    CHECK(trace.final_t == oracles::simulate_batch_perceptron(data, 100000));
    CHECK(trace.final_t == oracles::worst_case_solve_step(n));
  }
}

TEST_CASE("already separating start returns Solved{0} without stepping") {
  RunConfig cfg;
  cfg.algorithm = Algorithm::batch_perceptron;
  cfg.start = {1.0, 0.25};
  const Trace trace = run(two_point_dataset(), cfg);
  CHECK(trace.outcome == Outcome::solved);
  CHECK(trace.final_t == 0);
  CHECK(trace.records.size() == 1);
  CHECK(trace.final_theta == Vector{1.0, 0.25});
}

TEST_CASE("exhausted runs report a nonempty mistake set") {
  RunConfig cfg;
  cfg.algorithm = Algorithm::lr_gd;
  cfg.gamma = 1e-3;
  cfg.max_iters = 5;
  const Trace trace = run(worst_case_dataset(50), cfg);
  CHECK(trace.outcome == Outcome::exhausted);
  CHECK(trace.final_t == 5);
  CHECK_FALSE(mistake_set(worst_case_dataset(50), trace.final_theta).empty());
}

TEST_CASE("solved runs end with an empty mistake set") {
  for (Algorithm algo :
       {Algorithm::batch_perceptron, Algorithm::perceptron,
        Algorithm::normalized_batch_perceptron, Algorithm::lr_gd,
        Algorithm::normalized_lr_gd}) {
    const double gamma = uses_gamma(algo) ? 10.0 : 0.0;
    const Trace trace = run_from_zero(worst_case_dataset(12), algo, gamma);
    REQUIRE(trace.outcome == Outcome::solved);
    CHECK(mistake_set(worst_case_dataset(12), trace.final_theta).empty());
    CHECK(is_separated(worst_case_dataset(12), trace.final_theta));
  }
}

TEST_CASE("record cadence keeps t = 0, multiples, and the final step") {
  RunConfig cfg;
  cfg.algorithm = Algorithm::lr_gd;
  cfg.gamma = 1e-3;
  cfg.max_iters = 25;
  cfg.record_every = 10;
  const Trace trace = run(worst_case_dataset(40), cfg);
  REQUIRE(trace.outcome == Outcome::exhausted);
  std::vector<std::int64_t> ts;
  for (const auto& rec : trace.records) ts.push_back(rec.t);
  CHECK(ts == std::vector<std::int64_t>{0, 10, 20, 25});
}

TEST_CASE("runs are bit-identical across repeats") {
  RunConfig cfg;
  cfg.algorithm = Algorithm::normalized_lr_gd;
  cfg.gamma = 100.0;
  cfg.record_params = true;
  const Dataset data = worst_case_dataset(30);
  const Trace a = run(data, cfg);
  const Trace b = run(data, cfg);
  REQUIRE(a.records.size() == b.records.size());
  CHECK(a.final_theta == b.final_theta);
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].loss == b.records[i].loss);
    CHECK(a.records[i].params == b.records[i].params);
  }
}

TEST_CASE("seeded tie-break still solves and is reproducible") {
  RunConfig cfg;
  cfg.algorithm = Algorithm::perceptron;
  cfg.tie_break = TieBreak::seeded_random;
  cfg.seed = 42;
  const Dataset data = worst_case_dataset(15);
  const Trace a = run(data, cfg);
  const Trace b = run(data, cfg);
  CHECK(a.outcome == Outcome::solved);
  CHECK(a.final_t == b.final_t);
  CHECK(a.final_theta == b.final_theta);
}

TEST_CASE("overflow guard aborts instead of propagating inf") {
  RunConfig cfg;
  cfg.algorithm = Algorithm::lr_gd;
  cfg.gamma = 1e303;
  cfg.max_iters = 10;
  const Trace trace = run(two_point_dataset(), cfg);
  CHECK(trace.outcome == Outcome::overflow);
  CHECK(trace.final_t == 1);
  CHECK(all_finite(trace.final_theta));
}

TEST_CASE("config validation") {
  RunConfig cfg;
  cfg.algorithm = Algorithm::lr_gd;
  SUBCASE("missing gamma") {
    CHECK_THROWS_AS(run(two_point_dataset(), cfg), Error);
  }
  SUBCASE("zero max_iters") {
    cfg.gamma = 1.0;
    cfg.max_iters = 0;
    CHECK_THROWS_AS(run(two_point_dataset(), cfg), Error);
  }
  SUBCASE("start dimension mismatch") {
    cfg.gamma = 1.0;
    cfg.start = {1.0, 2.0, 3.0};
    CHECK_THROWS_AS(run(two_point_dataset(), cfg), Error);
  }
}

TEST_CASE("bounds hold on random separable data") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const Dataset data =
        random_separable(40 + 10 * static_cast<std::int64_t>(seed), 4, 0.2,
                         1.0, seed);
    const MarginReport margin = compute_margin(data);
    REQUIRE(margin.separable);
    const std::int64_t n = static_cast<std::int64_t>(data.size());

    const Trace batch = run_from_zero(data, Algorithm::batch_perceptron);
    REQUIRE(batch.outcome == Outcome::solved);
    CHECK(batch.final_t <=
          std::ceil(batch_bound(n, margin.radius, margin.mu)));

    const Trace classical = run_from_zero(data, Algorithm::perceptron);
    REQUIRE(classical.outcome == Outcome::solved);
    CHECK(classical.final_t <=
          std::ceil(normalized_bound(margin.radius, margin.mu)));

    const Trace normalized =
        run_from_zero(data, Algorithm::normalized_batch_perceptron);
    REQUIRE(normalized.outcome == Outcome::solved);
    CHECK(normalized.final_t <=
          std::ceil(normalized_bound(margin.radius, margin.mu)));

    for (double gamma : {1.0, 100.0}) {
      const Trace fast =
          run_from_zero(data, Algorithm::normalized_lr_gd, gamma);
      REQUIRE(fast.outcome == Outcome::solved);
      CHECK(fast.final_t <= std::ceil(normalized_lrgd_bound(
                                n, margin.radius, margin.mu, gamma)));
    }
  }
}

TEST_CASE("large-gamma runs track their discrete limits") {
  const double gamma = 1e6;
  for (std::uint64_t seed : {3u, 7u}) {
    const Dataset data = random_separable(30, 3, 0.25, 1.0, seed);

    RunConfig smooth;
    smooth.algorithm = Algorithm::lr_gd;
    smooth.gamma = gamma;
    smooth.record_params = true;
    smooth.max_iters = 50;
    RunConfig discrete;
    discrete.algorithm = Algorithm::batch_perceptron;
    discrete.record_params = true;
    discrete.max_iters = 50;

    const Trace ts = run(data, smooth);
    const Trace td = run(data, discrete);
    const std::size_t window =
        std::min(ts.records.size(), td.records.size());
    for (std::size_t t = 0; t < window; ++t) {
      for (std::size_t k = 0; k < data.dim(); ++k) {
        CHECK(std::abs(ts.records[t].params[k] / gamma -
                       td.records[t].params[k]) <= 1e-6);
      }
    }
  }
}

}  // TEST_SUITE
