#include "ivm/min_norm_point.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "ivm/errors.hpp"

namespace ivm {

namespace {

// Flat n x d buffer of the query-shifted points.
struct Shifted {
  std::size_t n;
  std::size_t d;
  std::vector<double> data;

  const double* row(std::size_t i) const { return data.data() + i * d; }
};

double row_dot(const double* a, const double* b, std::size_t d) {
  double s = 0.0;
  for (std::size_t k = 0; k < d; ++k) s += a[k] * b[k];
  return s;
}

// Affine minimiser of |sum_i alpha_i p_i| subject to sum alpha = 1 over the
// corral. Solved as min |p_0 + D beta| with D = [p_i - p_0] by modified
// Gram-Schmidt QR; empty when the corral is numerically affinely dependent.
std::optional<std::vector<double>> affine_minimizer(const Shifted& pts,
                                                    const std::vector<std::size_t>& corral,
                                                    double scale) {
  const std::size_t k = corral.size();
  if (k == 1) return std::vector<double>{1.0};
  const std::size_t d = pts.d;
  const std::size_t m = k - 1;
  const double* p0 = pts.row(corral[0]);

  std::vector<double> q(d * m);  // column-major
  std::vector<double> r(m * m, 0.0);
  for (std::size_t c = 0; c < m; ++c) {
    const double* pc = pts.row(corral[c + 1]);
    double* qc = q.data() + c * d;
    for (std::size_t t = 0; t < d; ++t) qc[t] = pc[t] - p0[t];
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t p = 0; p < c; ++p) {
        const double* qp = q.data() + p * d;
        const double proj = row_dot(qp, qc, d);
        r[p * m + c] += proj;
        for (std::size_t t = 0; t < d; ++t) qc[t] -= proj * qp[t];
      }
    }
    const double nrm = std::sqrt(row_dot(qc, qc, d));
    if (!(nrm > 1e-13 * scale)) return std::nullopt;
    r[c * m + c] = nrm;
    for (std::size_t t = 0; t < d; ++t) qc[t] /= nrm;
  }

  // beta = -R^{-1} Q^T p0
  std::vector<double> beta(m);
  for (std::size_t c = 0; c < m; ++c) beta[c] = -row_dot(q.data() + c * d, p0, d);
  for (std::size_t c = m; c-- > 0;) {
    double s = beta[c];
    for (std::size_t p = c + 1; p < m; ++p) s -= r[c * m + p] * beta[p];
    beta[c] = s / r[c * m + c];
  }

  std::vector<double> alpha(k);
  double rest = 1.0;
  for (std::size_t c = 0; c < m; ++c) {
    alpha[c + 1] = beta[c];
    rest -= beta[c];
  }
  alpha[0] = rest;
  return alpha;
}

void combine(const Shifted& pts, const std::vector<std::size_t>& corral,
             const std::vector<double>& weights, std::vector<double>& x) {
  std::fill(x.begin(), x.end(), 0.0);
  for (std::size_t i = 0; i < corral.size(); ++i) {
    const double* p = pts.row(corral[i]);
    for (std::size_t t = 0; t < pts.d; ++t) x[t] += weights[i] * p[t];
  }
}

struct Attempt {
  bool converged = false;
  std::vector<double> x;
  double gap = 0.0;
  std::size_t iterations = 0;
};

Attempt run_wolfe(const Shifted& pts, std::size_t start, double tol, double scale) {
  const std::size_t d = pts.d;
  const std::size_t max_major = std::max<std::size_t>(10 * pts.n, 50);
  const double gap_tol = std::max(0.5 * tol, 1e-14 * scale);

  std::vector<std::size_t> corral{start};
  std::vector<double> weights{1.0};
  Attempt out;
  out.x.assign(pts.row(start), pts.row(start) + d);

  for (std::size_t it = 0; it < max_major; ++it) {
    out.iterations = it + 1;
    const double xx = row_dot(out.x.data(), out.x.data(), d);
    const double xn = std::sqrt(xx);
    if (xn <= 0.5 * tol) {
      out.gap = xn;
      out.converged = true;
      return out;
    }

    std::size_t best = 0;
    double best_dot = row_dot(out.x.data(), pts.row(0), d);
    for (std::size_t i = 1; i < pts.n; ++i) {
      const double v = row_dot(out.x.data(), pts.row(i), d);
      if (v < best_dot) {
        best_dot = v;
        best = i;
      }
    }
    // Separating hyperplane {y : <x,y> = best_dot} bounds the distance below.
    out.gap = xn - std::max(0.0, best_dot) / xn;
    if (out.gap <= gap_tol) {
      out.converged = true;
      return out;
    }
    // A stall is only legitimate once <x,x> - min <x,p> is at rounding level.
    const bool at_floor = xx - best_dot <= 1e-13 * scale * scale;
    if (std::find(corral.begin(), corral.end(), best) != corral.end()) {
      out.converged = at_floor;
      return out;
    }

    corral.push_back(best);
    weights.push_back(0.0);

    for (;;) {
      auto alpha = affine_minimizer(pts, corral, scale);
      if (!alpha) {
        // Newest point is numerically in the affine hull of the corral.
        corral.pop_back();
        weights.pop_back();
        out.converged = at_floor;
        return out;
      }
      const bool interior =
          std::all_of(alpha->begin(), alpha->end(), [](double a) { return a > 1e-15; });
      if (interior) {
        weights = std::move(*alpha);
        break;
      }
      double theta = 1.0;
      for (std::size_t i = 0; i < corral.size(); ++i) {
        if ((*alpha)[i] <= 1e-15) {
          const double denom = weights[i] - (*alpha)[i];
          if (denom > 0.0) theta = std::min(theta, weights[i] / denom);
        }
      }
      for (std::size_t i = 0; i < corral.size(); ++i)
        weights[i] = theta * (*alpha)[i] + (1.0 - theta) * weights[i];
      // The line search zeroes at least one weight; rounding may leave it tiny.
      const std::size_t weakest = static_cast<std::size_t>(
          std::min_element(weights.begin(), weights.end()) - weights.begin());
      std::vector<std::size_t> kept_idx;
      std::vector<double> kept_w;
      for (std::size_t i = 0; i < corral.size(); ++i) {
        if (i != weakest && weights[i] > 1e-15) {
          kept_idx.push_back(corral[i]);
          kept_w.push_back(weights[i]);
        }
      }
      double total = 0.0;
      for (double w : kept_w) total += w;
      for (double& w : kept_w) w /= total;
      corral = std::move(kept_idx);
      weights = std::move(kept_w);
      if (corral.size() <= 1) {
        weights.assign(corral.size(), 1.0);
        break;
      }
    }
    combine(pts, corral, weights, out.x);
  }
  return out;
}

}  // namespace

MinNormPoint min_norm_point(std::span<const Vector> points, std::span<const double> query,
                            double tol) {
  if (points.empty()) throw DomainError("min_norm_point: empty point set");
  if (!(tol > 0.0)) throw DomainError("min_norm_point: tolerance must be positive");
  const std::size_t d = query.size();
  Shifted pts{points.size(), d, std::vector<double>(points.size() * d)};
  double scale = 0.0;
  std::size_t nearest = 0;
  double nearest_sq = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != d) throw DimensionMismatch("min_norm_point: point dimension");
    double sq = 0.0;
    for (std::size_t t = 0; t < d; ++t) {
      const double v = points[i][t] - query[t];
      pts.data[i * d + t] = v;
      sq += v * v;
    }
    scale = std::max(scale, std::sqrt(sq));
    if (i == 0 || sq < nearest_sq) {
      nearest_sq = sq;
      nearest = i;
    }
  }
  scale = std::max(scale, 1e-300);

  MinNormPoint result;
  Attempt attempt = run_wolfe(pts, nearest, tol, scale);
  std::size_t total_iter = attempt.iterations;
  if (!attempt.converged) {
    // Restart from the point that minimises <x, p> at the stalled iterate.
    std::size_t alt = (nearest + 1) % pts.n;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.n; ++i) {
      const double v = row_dot(attempt.x.data(), pts.row(i), d);
      if (i != nearest && v < best) {
        best = v;
        alt = i;
      }
    }
    Attempt second = run_wolfe(pts, alt, tol, scale);
    total_iter += second.iterations;
    result.restarts = 1;
    if (!second.converged) {
      // Either stall is acceptable when its certified gap already meets tol.
      const Attempt& better = second.gap < attempt.gap ? second : attempt;
      if (better.gap > tol)
        throw NonConvergence("min_norm_point: stalled with duality gap " +
                             std::to_string(better.gap) + " after restart");
      attempt = better;
    } else {
      attempt = std::move(second);
    }
  }
  result.iterations = total_iter;
  result.gap = attempt.gap;
  result.distance = norm(attempt.x);
  result.point = add(attempt.x, query);
  return result;
}

}  // namespace ivm
