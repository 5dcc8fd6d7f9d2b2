#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "ivm/numerics.hpp"

namespace ivm {

inline constexpr double kDefaultHullTol = 1e-9;

/// A convex body given as the convex hull of a finite vertex list.
///
/// Vertices are kept exactly as supplied: duplicates and interior points are
/// allowed and every oracle below is correct in their presence. Lower
/// dimensional bodies (segments, flat polygons in R^3, ...) are ordinary
/// values.
class VPolytope {
 public:
  VPolytope(std::size_t ambient_dim, std::vector<Vector> vertices);

  static VPolytope point(Vector p);

  std::size_t ambient_dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  const std::vector<Vector>& vertices() const noexcept { return vertices_; }
  const Vector& vertex(std::size_t i) const { return vertices_[i]; }

  VPolytope translated(std::span<const double> t) const;

  bool operator==(const VPolytope&) const = default;

 private:
  std::size_t dim_;
  std::vector<Vector> vertices_;
};

/// Set {t : base + t*dir in K}; convex, hence an interval.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool empty = true;

  double length() const noexcept { return empty ? 0.0 : hi - lo; }

  static Interval none() { return {}; }
  static Interval of(double lo, double hi) { return {lo, hi, false}; }
};

VPolytope read_body(std::istream& in, const std::string& source_name = "<stream>");
void write_body(std::ostream& out, const VPolytope& body);
VPolytope load_body(const std::filesystem::path& path);
void save_body(const VPolytope& body, const std::filesystem::path& path);

/// sup{|x| : x in K}, attained at a vertex.
double bounding_radius(const VPolytope& body);

/// Largest pairwise vertex distance.
double diameter(const VPolytope& body);

Vector centroid(const VPolytope& body);

double support(const VPolytope& body, std::span<const double> direction);

/// Euclidean distance from p to conv(vertices) by the min-norm-point method,
/// accurate to `tol`. Throws NonConvergence if the iteration stalls twice.
double distance_to_hull(std::span<const double> p, const VPolytope& body,
                        double tol = kDefaultHullTol);

bool membership(std::span<const double> p, const VPolytope& body,
                double tol = kDefaultHullTol);

/// Fiber of K along the line base + t*dir. Endpoints are bracketed by the
/// support function along dir and refined by bisection over membership.
Interval line_fiber(const VPolytope& body, std::span<const double> base,
                    std::span<const double> dir, double tol = kDefaultHullTol);

}  // namespace ivm
