#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "sepkit/core.hpp"

using namespace sepkit;

TEST_SUITE("core") {

TEST_CASE("neg_sigmoid midpoint and saturation") {
  CHECK(neg_sigmoid(0.0) == 0.5);

  // Far positive: mathematically in (0, 1e-300); the double saturates.
  const double hi = neg_sigmoid(1000.0);
  CHECK(hi >= 0.0);
  CHECK(hi < 1e-300);

  CHECK(neg_sigmoid(-1000.0) ==
        doctest::Approx(1.0).epsilon(std::numeric_limits<double>::epsilon()));
}

TEST_CASE("neg_sigmoid rejects non-finite input") {
  CHECK_THROWS_AS(neg_sigmoid(std::numeric_limits<double>::infinity()), Error);
  CHECK_THROWS_AS(neg_sigmoid(std::numeric_limits<double>::quiet_NaN()), Error);
}

TEST_CASE("neg_sigmoid symmetry over [-1e3, 1e3]") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> draw(-1000.0, 1000.0);
  for (int i = 0; i < 2000; ++i) {
    const double x = draw(rng);
    CHECK(neg_sigmoid(x) + neg_sigmoid(-x) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("log1pexp anchor values") {
  CHECK(log1pexp(0.0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(log1pexp(1000.0) == doctest::Approx(1000.0).epsilon(1e-12));
  const double lo = log1pexp(-1000.0);
  CHECK(lo >= 0.0);
  CHECK(lo < 1e-300);
  CHECK_THROWS_AS(log1pexp(std::numeric_limits<double>::infinity()), Error);
}

TEST_CASE("log1pexp difference identity for |x| <= 50") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> draw(-50.0, 50.0);
  for (int i = 0; i < 2000; ++i) {
    const double x = draw(rng);
    CHECK(log1pexp(x) - log1pexp(-x) == doctest::Approx(x).epsilon(1e-10));
  }
}

TEST_CASE("scalar primitives stay finite up to |x| = 1e8") {
  for (double x : {1e8, -1e8, 1e6, -1e6, 3.7e7, -9.9e7}) {
    CHECK(std::isfinite(neg_sigmoid(x)));
    CHECK(std::isfinite(log1pexp(x)));
  }
}

TEST_CASE("dot products") {
  const Vector u{1.0, -1.0};
  const Vector v{0.5, 0.75};
  CHECK(dot(u, v) == doctest::Approx(-0.25).epsilon(1e-15));
  CHECK(dot(Vector{1.0, 4.0}, v) == doctest::Approx(3.5).epsilon(1e-15));
  CHECK(dot(u, Vector{0.0, 0.0}) == 0.0);
}

TEST_CASE("dot cross-checked by naive summation on random vectors") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> draw(-5.0, 5.0);
  for (int rep = 0; rep < 50; ++rep) {
    Vector u(7), v(7);
    double expected = 0.0;
    for (std::size_t k = 0; k < 7; ++k) {
      u[k] = draw(rng);
      v[k] = draw(rng);
      expected += u[k] * v[k];
    }
    CHECK(dot(u, v) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("dot rejects mismatched dimensions") {
  CHECK_THROWS_AS(dot(Vector{1.0}, Vector{1.0, 2.0}), Error);
}

TEST_CASE("norm helpers") {
  CHECK(norm(Vector{3.0, 4.0}) == doctest::Approx(5.0));
  CHECK(sup_norm(Vector{-3.0, 2.0}) == 3.0);
  Vector u{1.0, 2.0};
  axpy(u, 2.0, Vector{0.5, -1.0});
  CHECK(u[0] == doctest::Approx(2.0));
  CHECK(u[1] == doctest::Approx(0.0));
}

}  // TEST_SUITE
