#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "ivm/bodies.hpp"
#include "ivm/polygon.hpp"
#include "ivm/rng.hpp"

namespace ivm::testing {

inline RngStream gen(std::uint64_t seed) { return derive_stream(seed, StreamPurpose::user, 0); }

inline Vector random_vector(RngStream& s, std::size_t d, double scale = 1.0) {
  Vector v(d);
  for (auto& x : v) x = scale * s.gaussian();
  return v;
}

inline VPolytope random_body(RngStream& s, std::size_t d, std::size_t n, double scale = 1.0) {
  std::vector<Vector> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(random_vector(s, d, scale));
  return VPolytope(d, std::move(v));
}

// Points scattered in a disk around a random centre; the hull is a random
// convex polygon with 3..10 vertices.
inline std::vector<Vector> random_polygon_points(RngStream& s) {
  const double cx = s.uniform() - 0.5, cy = s.uniform() - 0.5;
  const double r = 0.4 + s.uniform();
  const int count = 3 + static_cast<int>(s.uniform() * 8.0);
  std::vector<Vector> pts;
  for (int i = 0; i < count; ++i) {
    const double t = 2.0 * std::numbers::pi * s.uniform();
    const double rr = r * std::sqrt(s.uniform());
    pts.push_back({cx + rr * std::cos(t), cy + rr * std::sin(t)});
  }
  return pts;
}

inline VPolytope square(double lo = 0.0, double hi = 1.0) {
  return VPolytope(2, {{lo, lo}, {hi, lo}, {hi, hi}, {lo, hi}});
}

inline VPolytope cube3() {
  std::vector<Vector> v;
  for (int m = 0; m < 8; ++m) v.push_back({double(m & 1), double((m >> 1) & 1), double((m >> 2) & 1)});
  return VPolytope(3, std::move(v));
}

// Exact distance from p to a convex polygon given CCW, by edges.
inline double polygon_distance(const Ring& ring, Point2 p) {
  if (ring_contains(ring, p, 0.0)) return 0.0;
  double best = INFINITY;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const Point2 a = ring[i], b = ring[(i + 1) % ring.size()];
    const double dx = b.x - a.x, dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0.0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    best = std::min(best, std::hypot(p.x - a.x - t * dx, p.y - a.y - t * dy));
  }
  return best;
}

}  // namespace ivm::testing
