#include "ivm/polygon.hpp"

#include <algorithm>
#include <cmath>

#include "ivm/errors.hpp"

namespace ivm {

namespace {

double cross(Point2 o, Point2 a, Point2 b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

}  // namespace

Ring hull_2d(std::span<const Point2> input) {
  std::vector<Point2> pts(input.begin(), input.end());
  std::sort(pts.begin(), pts.end(),
            [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 1) return pts;

  double min_x = pts.front().x, max_x = pts.back().x;
  double min_y = pts.front().y, max_y = pts.front().y;
  for (const auto& p : pts) {
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const double extent = std::max(max_x - min_x, max_y - min_y);
  const double cross_tol = 1e-12 * extent * extent;

  Ring hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= cross_tol) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    const Point2 p = pts[i];
    while (k >= lower && cross(hull[k - 2], hull[k - 1], p) <= cross_tol) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  return hull;
}

Ring hull_2d(std::span<const Vector> points) {
  std::vector<Point2> pts;
  pts.reserve(points.size());
  for (const auto& v : points) {
    if (v.size() != 2) throw DimensionMismatch("hull_2d: points must be 2-D");
    pts.push_back({v[0], v[1]});
  }
  return hull_2d(std::span<const Point2>(pts));
}

double polygon_area(const Ring& ring) {
  if (ring.size() < 3) return 0.0;
  // Relative to the first vertex to limit cancellation for far-off polygons.
  const Point2 o = ring.front();
  double twice = 0.0;
  for (std::size_t i = 1; i + 1 < ring.size(); ++i) twice += cross(o, ring[i], ring[i + 1]);
  return std::max(0.0, 0.5 * twice);
}

Ring polygon_clip(const Ring& subject, const Ring& clip) {
  if (subject.size() < 3 || clip.size() < 3) return {};
  Ring output = subject;
  for (std::size_t e = 0; e < clip.size() && !output.empty(); ++e) {
    const Point2 a = clip[e];
    const Point2 b = clip[(e + 1) % clip.size()];
    Ring input = std::move(output);
    output.clear();
    for (std::size_t i = 0; i < input.size(); ++i) {
      const Point2 cur = input[i];
      const Point2 prev = input[(i + input.size() - 1) % input.size()];
      const double s_cur = cross(a, b, cur);
      const double s_prev = cross(a, b, prev);
      const bool in_cur = s_cur >= 0.0;
      const bool in_prev = s_prev >= 0.0;
      if (in_cur != in_prev) {
        const double t = s_prev / (s_prev - s_cur);
        output.push_back({prev.x + t * (cur.x - prev.x), prev.y + t * (cur.y - prev.y)});
      }
      if (in_cur) output.push_back(cur);
    }
  }
  return output;
}

double polygon_symdiff_area(const Ring& a, const Ring& b) {
  const double inter = polygon_area(polygon_clip(a, b));
  return std::max(0.0, polygon_area(a) + polygon_area(b) - 2.0 * inter);
}

namespace {

// Signed area of triangle (0, a, b) intersected with the disk |x| <= r.
double triangle_disk_area(Point2 a, Point2 b, double r) {
  const double r2 = r * r;
  const double da = a.x * a.x + a.y * a.y;
  const double db = b.x * b.x + b.y * b.y;
  const double crs = a.x * b.y - a.y * b.x;
  auto sector = [r2](Point2 p, Point2 q) {
    return 0.5 * r2 * std::atan2(p.x * q.y - p.y * q.x, p.x * q.x + p.y * q.y);
  };
  if (da <= r2 && db <= r2) return 0.5 * crs;

  // Parametrise a + t (b - a) and intersect with the circle.
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double qa = dx * dx + dy * dy;
  if (qa == 0.0) return 0.0;
  const double qb = 2.0 * (a.x * dx + a.y * dy);
  const double qc = da - r2;
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc <= 0.0) return sector(a, b);
  const double sq = std::sqrt(disc);
  const double t1 = (-qb - sq) / (2.0 * qa);
  const double t2 = (-qb + sq) / (2.0 * qa);
  const Point2 p1{a.x + t1 * dx, a.y + t1 * dy};
  const Point2 p2{a.x + t2 * dx, a.y + t2 * dy};
  if (da <= r2) return 0.5 * (a.x * p2.y - a.y * p2.x) + sector(p2, b);
  if (db <= r2) return sector(a, p1) + 0.5 * (p1.x * b.y - p1.y * b.x);
  if (t1 >= 1.0 || t2 <= 0.0) return sector(a, b);
  return sector(a, p1) + 0.5 * (p1.x * p2.y - p1.y * p2.x) + sector(p2, b);
}

}  // namespace

double polygon_disk_intersection_area(const Ring& ring, double radius) {
  if (ring.size() < 3 || !(radius > 0.0)) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < ring.size(); ++i)
    total += triangle_disk_area(ring[i], ring[(i + 1) % ring.size()], radius);
  return std::max(0.0, total);
}

bool ring_contains(const Ring& ring, Point2 p, double tol) {
  if (ring.empty()) return false;
  if (ring.size() == 1) return std::hypot(p.x - ring[0].x, p.y - ring[0].y) <= tol;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const Point2 a = ring[i];
    const Point2 b = ring[(i + 1) % ring.size()];
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    if (cross(a, b, p) < -tol * len) return false;
  }
  if (ring.size() == 2) {
    // Segment: also bounded along its own direction.
    const double dx = ring[1].x - ring[0].x, dy = ring[1].y - ring[0].y;
    const double t = ((p.x - ring[0].x) * dx + (p.y - ring[0].y) * dy) / (dx * dx + dy * dy);
    const double len = std::hypot(dx, dy);
    return t >= -tol / len && t <= 1.0 + tol / len;
  }
  return true;
}

}  // namespace ivm
