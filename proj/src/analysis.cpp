#include "sepkit/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "sepkit/algorithms.hpp"

namespace sepkit {

double radius(const Dataset& data) {
  double r2 = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    r2 = std::max(r2, squared_norm(data.feature(i)));
  }
  return std::sqrt(r2);
}

bool is_separated(const Dataset& data, std::span<const double> theta) {
  data.require_dim(theta, "is_separated");
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data.signed_margin(i, theta) <= 0.0) return false;
  }
  return true;
}

namespace {

/// Vertex view of the polytope conv{y_i a_i}.
struct HullVertices {
  const Dataset& data;

  std::size_t count() const { return data.size(); }
  double coord(std::size_t i, std::size_t k) const {
    return static_cast<double>(data.label(i)) * data.feature(i)[k];
  }
  double inner(std::size_t i, std::span<const double> x) const {
    return static_cast<double>(data.label(i)) * dot(data.feature(i), x);
  }
  double squared(std::size_t i) const { return squared_norm(data.feature(i)); }
};

}  // namespace

MarginReport compute_margin(const Dataset& data, double tol,
                            std::int64_t max_iters) {
  if (!(tol > 0.0)) {
    fail(SEPKIT_ERR_INVALID_ARGUMENT, "compute_margin: tol must be positive");
  }
  if (max_iters < 1) {
    fail(SEPKIT_ERR_INVALID_ARGUMENT,
         "compute_margin: max_iters must be >= 1");
  }

  const HullVertices hull{data};
  const std::size_t n = hull.count();
  const std::size_t d = data.dim();

  MarginReport report;
  report.radius = radius(data);
  report.tol = tol;

  // Fully corrective scheme: keep a small active set ("corral") of
  // vertices, and after every Frank-Wolfe vertex insertion re-solve the
  // minimum-norm problem over its affine hull, dropping vertices whose
  // coefficient would go negative. Plain away steps creep near flat
  // faces; the corrective re-solve lands on them at machine precision.
  std::vector<std::size_t> active;
  std::vector<double> lambda;

  std::size_t start = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (hull.squared(i) < hull.squared(start)) start = i;
  }
  active.push_back(start);
  lambda.push_back(1.0);

  Vector x(d);
  auto rebuild_x = [&]() {
    std::fill(x.begin(), x.end(), 0.0);
    for (std::size_t j = 0; j < active.size(); ++j) {
      for (std::size_t k = 0; k < d; ++k) {
        x[k] += lambda[j] * hull.coord(active[j], k);
      }
    }
  };
  rebuild_x();

  // Affine minimizer of ||sum_j alpha_j z_j||^2 with sum alpha = 1 via
  // the KKT system [G 1; 1^T 0]. Gaussian elimination with partial
  // pivoting; a vanishing pivot (affinely dependent corral) gets a tiny
  // ridge so the minor cycle can still drop a vertex.
  auto affine_minimizer = [&](std::vector<double>& alpha) {
    const std::size_t m = active.size();
    const std::size_t dim = m + 1;
    std::vector<double> mat(dim * dim, 0.0);
    std::vector<double> rhs(dim, 0.0);
    double trace = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i; j < m; ++j) {
        double g = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
          g += hull.coord(active[i], k) * hull.coord(active[j], k);
        }
        mat[i * dim + j] = g;
        mat[j * dim + i] = g;
      }
      trace += mat[i * dim + i];
      mat[i * dim + m] = 1.0;
      mat[m * dim + i] = 1.0;
    }
    rhs[m] = 1.0;

    for (int attempt = 0; attempt < 2; ++attempt) {
      std::vector<double> a = mat;
      std::vector<double> b = rhs;
      if (attempt == 1) {
        const double ridge = std::max(trace, 1.0) * 1e-12;
        for (std::size_t i = 0; i < m; ++i) {
          a[i * dim + i] += ridge;
        }
      }
      bool singular = false;
      std::vector<std::size_t> perm(dim);
      for (std::size_t i = 0; i < dim; ++i) perm[i] = i;
      for (std::size_t col = 0; col < dim && !singular; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < dim; ++r) {
          if (std::abs(a[perm[r] * dim + col]) >
              std::abs(a[perm[pivot] * dim + col])) {
            pivot = r;
          }
        }
        std::swap(perm[col], perm[pivot]);
        const double p = a[perm[col] * dim + col];
        if (std::abs(p) < 1e-13 * std::max(trace, 1.0)) {
          singular = true;
          break;
        }
        for (std::size_t r = col + 1; r < dim; ++r) {
          const double f = a[perm[r] * dim + col] / p;
          if (f == 0.0) continue;
          for (std::size_t c = col; c < dim; ++c) {
            a[perm[r] * dim + c] -= f * a[perm[col] * dim + c];
          }
          b[perm[r]] -= f * b[perm[col]];
        }
      }
      if (singular) continue;
      std::vector<double> sol(dim, 0.0);
      for (std::size_t ri = dim; ri-- > 0;) {
        double acc = b[perm[ri]];
        for (std::size_t c = ri + 1; c < dim; ++c) {
          acc -= a[perm[ri] * dim + c] * sol[c];
        }
        sol[ri] = acc / a[perm[ri] * dim + ri];
      }
      alpha.assign(sol.begin(), sol.begin() + static_cast<long>(m));
      return true;
    }
    return false;
  };

  double best_lower = -std::numeric_limits<double>::infinity();
  Vector best_dir(d, 0.0);
  best_dir[0] = 1.0;  // placeholder until x is nonzero once

  auto finish_nonseparable = [&](std::int64_t iters) {
    report.mu = 0.0;
    report.separable = false;
    report.certifier = best_dir;
    report.lower_bound = best_lower;
    report.iterations = iters;
    return report;
  };

  for (std::int64_t iter = 1; iter <= max_iters; ++iter) {
    const double x_norm = norm(x);
    if (x_norm <= tol) {
      return finish_nonseparable(iter);
    }

    // FW vertex: least inner product with x (ties to the lowest index).
    std::size_t fw = 0;
    double fw_inner = hull.inner(0, x);
    for (std::size_t i = 1; i < n; ++i) {
      const double v = hull.inner(i, x);
      if (v < fw_inner) {
        fw_inner = v;
        fw = i;
      }
    }

    const double lower = fw_inner / x_norm;  // dual value of direction x/|x|
    if (lower > best_lower) {
      best_lower = lower;
      for (std::size_t k = 0; k < d; ++k) {
        best_dir[k] = x[k] / x_norm;
      }
    }

    // Certified bracket: best_lower <= mu <= |x|.
    if (x_norm - best_lower <= tol) {
      if (best_lower <= 0.0) {
        return finish_nonseparable(iter);
      }
      report.mu = x_norm;
      report.separable = true;
      report.certifier = best_dir;
      report.lower_bound = best_lower;
      report.iterations = iter;
      return report;
    }

    if (std::find(active.begin(), active.end(), fw) == active.end()) {
      active.push_back(fw);
      lambda.push_back(0.0);
    }

    // Minor cycle: move toward the affine minimizer, dropping vertices
    // until it is a hull point.
    bool progressed = false;
    for (std::size_t guard = 0; guard <= active.size() + 1; ++guard) {
      std::vector<double> alpha;
      if (!affine_minimizer(alpha)) break;

      double most_negative = 0.0;
      for (double a : alpha) most_negative = std::min(most_negative, a);
      if (most_negative >= -1e-12) {
        lambda = alpha;
        for (double& l : lambda) l = std::max(l, 0.0);
        // clamped-to-zero members would bloat the corral and degrade
        // the Gram system; drop them now
        for (std::size_t j = active.size(); j-- > 0;) {
          if (lambda[j] == 0.0 && active.size() > 1) {
            active.erase(active.begin() + static_cast<long>(j));
            lambda.erase(lambda.begin() + static_cast<long>(j));
          }
        }
        progressed = true;
        break;
      }

      double theta = 1.0;
      std::size_t drop = active.size();
      for (std::size_t j = 0; j < active.size(); ++j) {
        if (alpha[j] < -1e-12) {
          const double step = lambda[j] / (lambda[j] - alpha[j]);
          if (step < theta) {
            theta = step;
            drop = j;
          }
        }
      }
      if (drop == active.size()) break;
      for (std::size_t j = 0; j < active.size(); ++j) {
        lambda[j] = (1.0 - theta) * lambda[j] + theta * alpha[j];
      }
      active.erase(active.begin() + static_cast<long>(drop));
      lambda.erase(lambda.begin() + static_cast<long>(drop));
      // renormalize the survivors against rounding drift
      double total = 0.0;
      for (double l : lambda) total += std::max(l, 0.0);
      for (double& l : lambda) l = std::max(l, 0.0) / total;
      progressed = true;
    }
    if (!progressed) break;  // numerically stuck; report the bracket below
    rebuild_x();
  }

  std::ostringstream msg;
  msg << "compute_margin: tolerance " << tol << " not certified after "
      << max_iters << " iterations; best bracket [" << best_lower << ", "
      << norm(x) << "]";
  fail(SEPKIT_ERR_SOLVER_STALLED, msg.str());
}

double batch_bound(std::int64_t n, double radius, double mu) {
  if (!(mu > 0.0)) {
    fail(SEPKIT_ERR_NOT_SEPARABLE, "batch_bound: not separable (mu <= 0)");
  }
  if (n < 1 || !(radius >= 0.0)) {
    fail(SEPKIT_ERR_INVALID_ARGUMENT, "batch_bound: bad n or radius");
  }
  return static_cast<double>(n) * radius * radius / (mu * mu);
}

double normalized_bound(double radius, double mu) {
  if (!(mu > 0.0)) {
    fail(SEPKIT_ERR_NOT_SEPARABLE, "normalized_bound: not separable (mu <= 0)");
  }
  if (!(radius >= 0.0)) {
    fail(SEPKIT_ERR_INVALID_ARGUMENT, "normalized_bound: bad radius");
  }
  return radius * radius / (mu * mu);
}

double normalized_lrgd_bound(std::int64_t n, double radius, double mu,
                             double gamma) {
  if (!(mu > 0.0)) {
    fail(SEPKIT_ERR_NOT_SEPARABLE,
         "normalized_lrgd_bound: not separable (mu <= 0)");
  }
  if (n < 1 || !(radius >= 0.0)) {
    fail(SEPKIT_ERR_INVALID_ARGUMENT, "normalized_lrgd_bound: bad n or radius");
  }
  if (!(gamma > 0.0)) {
    fail(SEPKIT_ERR_INVALID_ARGUMENT,
         "normalized_lrgd_bound: gamma must be positive");
  }
  const double mu_sq = mu * mu;
  return radius * radius / mu_sq +
         2.0 * std::log(2.0 * static_cast<double>(n) - 1.0) / (gamma * mu_sq);
}

ReductionReport verify_reduction(const Dataset& data, double gamma,
                                 std::int64_t horizon, double tol,
                                 bool normalized) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    fail(SEPKIT_ERR_INVALID_ARGUMENT,
         "verify_reduction: gamma must be positive and finite");
  }
  if (horizon < 1) {
    fail(SEPKIT_ERR_INVALID_ARGUMENT, "verify_reduction: horizon must be >= 1");
  }
  if (!(tol > 0.0)) {
    fail(SEPKIT_ERR_INVALID_ARGUMENT, "verify_reduction: tol must be positive");
  }

  RunConfig smooth_cfg;
  smooth_cfg.algorithm =
      normalized ? Algorithm::normalized_lr_gd : Algorithm::lr_gd;
  smooth_cfg.gamma = gamma;
  smooth_cfg.max_iters = horizon;
  smooth_cfg.record_every = 1;
  smooth_cfg.record_params = true;
  smooth_cfg.record_metrics = false;

  RunConfig discrete_cfg;
  discrete_cfg.algorithm = normalized ? Algorithm::normalized_batch_perceptron
                                      : Algorithm::batch_perceptron;
  discrete_cfg.max_iters = horizon;
  discrete_cfg.record_every = 1;
  discrete_cfg.record_params = true;
  discrete_cfg.record_metrics = false;

  const Trace smooth = run(data, smooth_cfg);
  const Trace discrete = run(data, discrete_cfg);

  // The theorem says nothing past the earlier solve time: the discrete
  // iterates freeze there while the smooth ones keep drifting.
  std::int64_t window = horizon;
  if (smooth.solved()) window = std::min(window, smooth.final_t);
  if (discrete.solved()) window = std::min(window, discrete.final_t);
  window = std::min({window,
                     static_cast<std::int64_t>(smooth.records.size()) - 1,
                     static_cast<std::int64_t>(discrete.records.size()) - 1});

  double max_dev = 0.0;
  for (std::int64_t t = 0; t <= window; ++t) {
    const Vector& ths = smooth.records[static_cast<std::size_t>(t)].params;
    const Vector& thd = discrete.records[static_cast<std::size_t>(t)].params;
    for (std::size_t k = 0; k < ths.size(); ++k) {
      max_dev = std::max(max_dev, std::abs(ths[k] / gamma - thd[k]));
    }
  }

  ReductionReport report;
  report.gamma = gamma;
  report.horizon = horizon;
  report.compared_steps = window;
  report.max_deviation = max_dev;
  report.degenerate_hits = discrete.zero_margin_hits;
  report.tol = tol;
  report.pass = max_dev <= tol && discrete.zero_margin_hits == 0;
  return report;
}

std::int64_t probe_degeneracy(const Dataset& data, std::int64_t horizon) {
  if (horizon < 1) {
    fail(SEPKIT_ERR_INVALID_ARGUMENT, "probe_degeneracy: horizon must be >= 1");
  }
  RunConfig cfg;
  cfg.algorithm = Algorithm::batch_perceptron;
  cfg.max_iters = horizon;
  cfg.record_every = horizon;  // metrics are irrelevant here
  cfg.record_metrics = false;
  return run(data, cfg).zero_margin_hits;
}

}  // namespace sepkit
