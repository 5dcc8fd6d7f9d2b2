#include "ivm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ivm/errors.hpp"
#include "ivm/parallel.hpp"
#include "ivm/polygon.hpp"

namespace ivm {

namespace {

constexpr double kBoxInflation = 1e-9;

bool use_exact(SamplingMode mode, std::size_t j) {
  if (mode == SamplingMode::exact && j >= 3)
    throw UnsupportedMode("exact volumes are only available for j <= 2 (got j=" +
                          std::to_string(j) + ")");
  return mode != SamplingMode::monte_carlo && j <= 2;
}

struct Box {
  Vector lo, hi;

  explicit Box(std::size_t d)
      : lo(d, std::numeric_limits<double>::infinity()),
        hi(d, -std::numeric_limits<double>::infinity()) {}

  void cover(const VPolytope& body) {
    for (const auto& v : body.vertices())
      for (std::size_t k = 0; k < v.size(); ++k) {
        lo[k] = std::min(lo[k], v[k]);
        hi[k] = std::max(hi[k], v[k]);
      }
  }

  void inflate(double by) {
    for (std::size_t k = 0; k < lo.size(); ++k) {
      lo[k] -= by;
      hi[k] += by;
    }
  }

  double volume() const {
    double v = 1.0;
    for (std::size_t k = 0; k < lo.size(); ++k) v *= hi[k] - lo[k];
    return v;
  }

  Vector sample(RngStream& s) const {
    Vector p(lo.size());
    for (std::size_t k = 0; k < lo.size(); ++k) p[k] = lo[k] + (hi[k] - lo[k]) * s.uniform();
    return p;
  }
};

MetricEstimate hit_or_miss(double box_volume, std::size_t hits, std::size_t n) {
  MetricEstimate e;
  const double p = static_cast<double>(hits) / static_cast<double>(n);
  e.value = box_volume * p;
  e.std_error = box_volume * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
  e.n_subspaces = 1;
  e.n_points_per_subspace = n;
  return e;
}

MetricEstimate exact_value(double v) {
  MetricEstimate e;
  e.value = v;
  e.exact = true;
  e.n_subspaces = 1;
  return e;
}

std::pair<double, double> extent_1d(const VPolytope& body) {
  double lo = body.vertex(0)[0], hi = lo;
  for (const auto& v : body.vertices()) {
    lo = std::min(lo, v[0]);
    hi = std::max(hi, v[0]);
  }
  return {lo, hi};
}

void require_points(std::size_t n) {
  if (n == 0) throw DomainError("Monte Carlo estimate needs n_points >= 1");
}

}  // namespace

MetricEstimate body_volume(const VPolytope& body, SamplingMode mode, std::size_t n_points,
                           RngStream stream) {
  const std::size_t j = body.ambient_dim();
  if (use_exact(mode, j)) {
    if (j == 1) {
      const auto [lo, hi] = extent_1d(body);
      return exact_value(hi - lo);
    }
    return exact_value(polygon_area(hull_2d(body.vertices())));
  }
  require_points(n_points);
  Box box(j);
  box.cover(body);
  box.inflate(kBoxInflation);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < n_points; ++i)
    if (membership(box.sample(stream), body)) ++hits;
  return hit_or_miss(box.volume(), hits, n_points);
}

MetricEstimate symdiff_volume(const BodyOperand& a_in, const BodyOperand& b_in,
                              SamplingMode mode, std::size_t n_points, RngStream stream) {
  if (!a_in && !b_in) return exact_value(0.0);
  if (!a_in) return body_volume(*b_in, mode, n_points, stream);
  if (!b_in) return body_volume(*a_in, mode, n_points, stream);
  if (a_in->ambient_dim() != b_in->ambient_dim())
    throw DimensionMismatch("symdiff_volume: operands live in different dimensions");
  const std::size_t j = a_in->ambient_dim();
  const bool exact = use_exact(mode, j);
  if (a_in->vertices() == b_in->vertices()) {
    MetricEstimate zero = exact_value(0.0);
    zero.exact = exact;
    return zero;
  }

  // Canonical operand order makes the arithmetic independent of call order.
  const bool swap = b_in->vertices() < a_in->vertices();
  const VPolytope& a = swap ? *b_in : *a_in;
  const VPolytope& b = swap ? *a_in : *b_in;

  if (exact) {
    if (j == 1) {
      const auto [a_lo, a_hi] = extent_1d(a);
      const auto [b_lo, b_hi] = extent_1d(b);
      const double overlap = std::max(0.0, std::min(a_hi, b_hi) - std::max(a_lo, b_lo));
      return exact_value(std::max(0.0, (a_hi - a_lo) + (b_hi - b_lo) - 2.0 * overlap));
    }
    return exact_value(polygon_symdiff_area(hull_2d(a.vertices()), hull_2d(b.vertices())));
  }

  require_points(n_points);
  Box box(j);
  box.cover(a);
  box.cover(b);
  box.inflate(kBoxInflation);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < n_points; ++i) {
    const Vector p = box.sample(stream);
    if (membership(p, a) != membership(p, b)) ++hits;
  }
  return hit_or_miss(box.volume(), hits, n_points);
}

MetricEstimate projected_volume(const VPolytope& body, const Subspace& h,
                                const SamplingPlan& plan) {
  return body_volume(project_body(h, body), plan.mode, plan.n_points,
                     derive_stream(plan.seed, StreamPurpose::points, 0));
}

MetricEstimate symdiff_volume(const VPolytope& a, const VPolytope& b, const SamplingPlan& plan) {
  return symdiff_volume(BodyOperand(a), BodyOperand(b), plan.mode, plan.n_points,
                        derive_stream(plan.seed, StreamPurpose::points, 0));
}

MetricEstimate delta_j(const BodyOperand& k, const BodyOperand& l, std::size_t j,
                       const SamplingPlan& plan) {
  if (!k && !l) return exact_value(0.0);
  const std::size_t d = k ? k->ambient_dim() : l->ambient_dim();
  if (k && l && l->ambient_dim() != d)
    throw DimensionMismatch("delta_j: bodies live in different ambient dimensions");
  if (j < 1 || j > d)
    throw DomainError("delta_j: need 1 <= j <= d, got d=" + std::to_string(d) +
                      " j=" + std::to_string(j));
  if (plan.n_subspaces < 1) throw DomainError("delta_j: n_subspaces must be >= 1");
  use_exact(plan.mode, j);  // reject unsupported modes before sampling

  if (k && l && k->vertices() == l->vertices()) {
    MetricEstimate zero;
    zero.exact = true;
    return zero;
  }

  if (j == d) {
    // delta_d is the symmetric difference metric; no Grassmannian average.
    MetricEstimate e = symdiff_volume(k, l, plan.mode, plan.n_points,
                                      derive_stream(plan.seed, StreamPurpose::points, 0));
    if (plan.record_per_subspace) e.per_subspace = {{0, e.value}};
    return e;
  }

  const std::size_t n = plan.n_subspaces;
  std::vector<MetricEstimate> inner(n);
  parallel_for(n, plan.workers, [&](std::size_t idx) {
    const Subspace h = haar_sample(d, j, derive_stream(plan.seed, StreamPurpose::subspace, idx));
    BodyOperand pk, pl;
    if (k) pk = project_body(h, *k);
    if (l) pl = project_body(h, *l);
    inner[idx] = symdiff_volume(pk, pl, plan.mode, plan.n_points,
                                derive_stream(plan.seed, StreamPurpose::points, idx));
  });

  const double flag = flag_coefficient(static_cast<int>(d), static_cast<int>(j));
  double sum = 0.0;
  for (const auto& e : inner) sum += e.value;
  const double mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (const auto& e : inner) ss += (e.value - mean) * (e.value - mean);

  MetricEstimate out;
  out.value = flag * mean;
  out.n_subspaces = n;
  out.exact = false;
  out.n_points_per_subspace = inner.front().exact ? 0 : plan.n_points;
  if (n > 1) {
    out.std_error = flag * std::sqrt(ss / static_cast<double>(n - 1)) / std::sqrt(static_cast<double>(n));
  } else {
    out.std_error = flag * inner.front().std_error;
  }
  if (plan.record_per_subspace) {
    out.per_subspace.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.per_subspace.push_back({i, inner[i].value});
  }
  return out;
}

MetricEstimate intrinsic_volume(const VPolytope& body, std::size_t j, const SamplingPlan& plan) {
  return delta_j(BodyOperand(body), std::nullopt, j, plan);
}

double hausdorff(const VPolytope& k, const VPolytope& l, double tol) {
  if (k.ambient_dim() != l.ambient_dim())
    throw DimensionMismatch("hausdorff: bodies live in different ambient dimensions");
  if (k.vertices() == l.vertices()) return 0.0;
  // The farthest point of a polytope from a convex set is one of its vertices.
  double worst = 0.0;
  for (const auto& v : k.vertices()) worst = std::max(worst, distance_to_hull(v, l, tol));
  for (const auto& w : l.vertices()) worst = std::max(worst, distance_to_hull(w, k, tol));
  return worst;
}

double fiber_difference_at(const VPolytope& projected_plus, const VPolytope& projected,
                           const AxisSplit& split, std::span<const double> y, double tol) {
  const Vector base = split.e_h_basis * y;
  const double plus = line_fiber(projected_plus, base, split.u_h, tol).length();
  const double plain = line_fiber(projected, base, split.u_h, tol).length();
  return plus - plain;
}

FiberProfile fiber_profile(const VPolytope& k_plus, const VPolytope& k, const Subspace& h,
                           std::span<const double> u, std::size_t grid_n,
                           const std::optional<VPolytope>& tube_section, double tol) {
  if (grid_n < 1) throw DomainError("fiber_profile: grid_n must be >= 1");
  if (k_plus.ambient_dim() != k.ambient_dim() || k.ambient_dim() != h.ambient_dim())
    throw DimensionMismatch("fiber_profile: dimension mismatch");
  for (const auto& v : k.vertices())
    if (!membership(v, k_plus, tol))
      throw DomainError("fiber_profile: inner body is not contained in the outer body");

  const AxisSplit split = axis_split(h, u);
  const VPolytope p_plus = project_body(h, k_plus);
  const VPolytope p_plain = project_body(h, k);
  const std::size_t t = h.dim() - 1;  // transverse dimension

  FiberProfile out;
  out.ell_h = split.ell;

  auto transverse = [&](std::span<const double> ambient) {
    const Vector in_h = project_point(h, ambient);
    return split.e_h_basis.transposed() * std::span<const double>(in_h);
  };

  // Tube cross-section in E_H coordinates.
  std::optional<VPolytope> tube;
  {
    std::vector<Vector> pts;
    if (tube_section) {
      for (const auto& v : tube_section->vertices()) pts.push_back(transverse(v));
    } else {
      for (const auto& v : k_plus.vertices())
        if (!membership(v, k, tol)) pts.push_back(transverse(v));
    }
    if (!pts.empty() && t > 0) tube = VPolytope(t, std::move(pts));
  }

  if (t == 0) {
    // j = 1: a single fiber, no transverse directions.
    const Vector y;
    FiberRow row{y, fiber_difference_at(p_plus, p_plain, split, y, tol), false};
    out.cell_measure = 1.0;
    out.max_diff = row.diff;
    if (row.diff > 2.0 * tol) out.diff_measure = out.diff_outside_tube = 1.0;
    out.rows.push_back(std::move(row));
    return out;
  }

  Vector lo(t, std::numeric_limits<double>::infinity());
  Vector hi(t, -std::numeric_limits<double>::infinity());
  for (const auto& v : p_plus.vertices()) {
    const Vector c = split.e_h_basis.transposed() * std::span<const double>(v);
    for (std::size_t a = 0; a < t; ++a) {
      lo[a] = std::min(lo[a], c[a]);
      hi[a] = std::max(hi[a], c[a]);
    }
  }
  out.cell_measure = 1.0;
  for (std::size_t a = 0; a < t; ++a)
    out.cell_measure *= (hi[a] - lo[a]) / static_cast<double>(grid_n);

  std::size_t total = 1;
  for (std::size_t a = 0; a < t; ++a) total *= grid_n;
  out.rows.reserve(total);
  std::vector<std::size_t> idx(t, 0);
  for (std::size_t cell = 0; cell < total; ++cell) {
    std::size_t rem = cell;
    for (std::size_t a = t; a-- > 0;) {
      idx[a] = rem % grid_n;
      rem /= grid_n;
    }
    FiberRow row;
    row.y.resize(t);
    for (std::size_t a = 0; a < t; ++a)
      row.y[a] = lo[a] + (hi[a] - lo[a]) * (static_cast<double>(idx[a]) + 0.5) /
                             static_cast<double>(grid_n);
    row.diff = fiber_difference_at(p_plus, p_plain, split, row.y, tol);
    row.in_tube = tube && membership(row.y, *tube, tol);
    if (row.in_tube) out.tube_measure += out.cell_measure;
    if (row.diff > 2.0 * tol) {
      out.diff_measure += out.cell_measure;
      if (!row.in_tube) out.diff_outside_tube += out.cell_measure;
    }
    out.max_diff = std::max(out.max_diff, row.diff);
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace ivm
