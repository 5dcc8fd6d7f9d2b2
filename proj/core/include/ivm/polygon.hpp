#pragma once

#include <span>
#include <vector>

#include "ivm/numerics.hpp"

namespace ivm {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point2&) const = default;
};

/// Counter-clockwise convex polygon. One vertex = point, two = segment.
using Ring = std::vector<Point2>;

/// Monotone-chain convex hull, counter-clockwise, starting at the
/// lexicographically smallest point. Collinear points are dropped using a
/// cross-product threshold of 1e-12 on inputs normalised to unit extent.
Ring hull_2d(std::span<const Point2> points);
Ring hull_2d(std::span<const Vector> points);

/// Shoelace area of a CCW ring; zero for fewer than three vertices.
double polygon_area(const Ring& ring);

/// Intersection of two CCW convex rings by successive half-plane clipping of
/// `subject` against each edge of `clip`.
Ring polygon_clip(const Ring& subject, const Ring& clip);

/// Exact area(A) + area(B) - 2 area(A intersect B).
double polygon_symdiff_area(const Ring& a, const Ring& b);

/// Area of ring intersected with the disk of the given radius about the
/// origin, as a sum of signed triangle-disk intersections over the edges.
double polygon_disk_intersection_area(const Ring& ring, double radius);

/// Point-in-convex-ring test with absolute slack `tol`.
bool ring_contains(const Ring& ring, Point2 p, double tol = 1e-12);

}  // namespace ivm
