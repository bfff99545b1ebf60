#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "sepkit/errors.hpp"

namespace sepkit {

using Vector = std::vector<double>;

namespace detail {
inline void require_finite(double x, const char* where) {
  if (!std::isfinite(x)) {
    fail(SEPKIT_ERR_NONFINITE,
         std::string(where) + ": non-finite scalar");
  }
}
}  // namespace detail

/// (1 + exp(x))^-1 without overflow for any finite x. Saturates to 0
/// once exp(-x) underflows (x beyond ~745).
inline double neg_sigmoid(double x) {
  detail::require_finite(x, "neg_sigmoid");
  if (x > 0.0) {
    const double e = std::exp(-x);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(x));
}

/// log(1 + exp(x)) via the branch max(x,0) + log1p(exp(-|x|)).
inline double log1pexp(double x) {
  detail::require_finite(x, "log1pexp");
  if (x > 0.0) {
    return x + std::log1p(std::exp(-x));
  }
  return std::log1p(std::exp(x));
}

inline double dot(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    fail(SEPKIT_ERR_DIMENSION_MISMATCH, "dot: dimension mismatch");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    acc += u[i] * v[i];
  }
  return acc;
}

inline double squared_norm(std::span<const double> v) { return dot(v, v); }

inline double norm(std::span<const double> v) {
  return std::sqrt(squared_norm(v));
}

inline double sup_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) {
    m = std::max(m, std::abs(x));
  }
  return m;
}

/// u += c * v
inline void axpy(Vector& u, double c, std::span<const double> v) {
  if (u.size() != v.size()) {
    fail(SEPKIT_ERR_DIMENSION_MISMATCH, "axpy: dimension mismatch");
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    u[i] += c * v[i];
  }
}

inline bool all_finite(std::span<const double> v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

}  // namespace sepkit
