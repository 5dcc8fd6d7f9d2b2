#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ivm/bodies.hpp"
#include "ivm/numerics.hpp"
#include "ivm/rng.hpp"

namespace ivm {

/// A j-dimensional linear subspace of R^d, carried by an orthonormal basis
/// (columns of a d x j matrix). All projected geometry is expressed in the
/// coordinates of this basis.
class Subspace {
 public:
  /// Takes an already orthonormal basis; throws DomainError if
  /// |B^T B - I| exceeds 1e-10.
  explicit Subspace(Matrix basis);

  /// Orthonormalises the given spanning columns first.
  static Subspace span_of(const Matrix& columns);
  /// span{e_i : i in axes} (zero-based axes).
  static Subspace coordinate(std::size_t ambient_dim, std::span<const std::size_t> axes);
  /// span{e_1, ..., e_j}.
  static Subspace leading(std::size_t ambient_dim, std::size_t dim);

  std::size_t ambient_dim() const noexcept { return basis_.rows(); }
  std::size_t dim() const noexcept { return basis_.cols(); }
  const Matrix& basis() const noexcept { return basis_; }

  /// Ambient point for H-coordinates c (basis * c).
  Vector embed(std::span<const double> coords) const;

 private:
  Matrix basis_;
};

/// Haar-distributed element of Gr(d,j): Gram-Schmidt of a d x j Gaussian
/// matrix drawn from `stream`. A rank-deficient draw is redrawn from the
/// next counter block, at most five times.
Subspace haar_sample(std::size_t d, std::size_t j, RngStream stream);

Vector project_point(const Subspace& h, std::span<const double> x);

/// Vertex-wise projection; the result lives in R^j (H-coordinates).
VPolytope project_body(const Subspace& h, const VPolytope& body);

/// Orthonormal completion of a unit vector w in R^k: a k x (k-1) matrix
/// whose columns together with w form an orthonormal basis. Built from the
/// Householder reflector of w, each column signed so that its first entry
/// of magnitude > 1e-14 is positive.
Matrix orthonormal_complement(std::span<const double> w);

/// H = R u_H (+) E_H, in H-coordinates.
struct AxisSplit {
  Vector u_h;          // unit, length j
  Matrix e_h_basis;    // j x (j-1)
  double ell = 0.0;    // |P_H u|
};

/// Throws DegenerateDirection when |P_H u| <= 1e-12.
AxisSplit axis_split(const Subspace& h, std::span<const double> u);

/// Ambient d x (j-1) orthonormal basis of u^perp within E.
Matrix transverse_basis(const Subspace& e, std::span<const double> u);

/// Quantities certifying that H is a good subspace for the plane E and
/// axis u: P_H|_E has full rank and the transverse map
/// T_H = (pi_H o P_H)|_{u^perp cap E} is an isomorphism onto E_H.
struct GoodnessCertificate {
  double sigma_min = 0.0;  // smallest singular value of P_H|_E
  double ell_h = 0.0;      // |P_H u|
  Vector u_h;
  Matrix e_h_basis;
  Matrix t_h;              // (j-1) x (j-1), orthonormal bases on both sides
  double jacobian = 0.0;   // J_{j-1}(T_H)
  double b_h = 0.0;        // jacobian * vol_{j-1}(B_{j-1})
  double c_h = 0.0;        // 2 * ell_h * b_h
  bool degenerate = false; // axis_split failed; jacobian/b_h/c_h are zero

  bool good(double sigma_floor = 1e-8) const { return !degenerate && sigma_min >= sigma_floor; }
};

GoodnessCertificate goodness(const Subspace& h, const Subspace& e, std::span<const double> u);

}  // namespace ivm
