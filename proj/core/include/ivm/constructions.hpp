#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "ivm/bodies.hpp"
#include "ivm/grassmann.hpp"

namespace ivm {

enum class NeedleKind {
  prism,    // {x0 + t u + v : t in [0, L], v in cross-section}
  spindle,  // conv(x0 + [-L, L] u, x0 + cross-section)
};

/// Thin needle attached inside the plane E. The round eps-ball cross-section
/// is replaced by the inscribed (j-1)-cross-polytope, which has an exact
/// closed-form volume.
struct NeedleSpec {
  Vector x0;
  Vector u;  // unit, in span(E)
  Subspace plane;
  double length = 1.0;  // prism: full length; spindle: half-length
  double eps = 1.0;     // transverse radius
  NeedleKind kind = NeedleKind::prism;

  std::size_t j() const { return plane.dim(); }
  std::size_t cross_vertices() const { return 2 * (j() - 1); }

  /// Throws DomainError unless u is a unit vector in span(E), L > 0 and eps > 0.
  void validate() const;
};

/// Cross-polytope with vertices +-eps b_i, {b_i} an orthonormal basis of
/// u^perp cap E. Its (j-1)-volume is (2 eps)^(j-1) / (j-1)!.
VPolytope cross_section(const Subspace& plane, std::span<const double> u, double eps);

double cross_section_volume(std::size_t j, double eps);

VPolytope prism_needle(const NeedleSpec& spec);
VPolytope spindle_needle(const NeedleSpec& spec);
VPolytope make_needle(const NeedleSpec& spec);

/// Exact j-volume of the needle inside its plane: L * vol(cross) for a prism,
/// (2L/j) * vol(cross) for the double cone.
double needle_volume(const NeedleSpec& spec);

/// conv(K union N) represented by the concatenated vertex lists.
VPolytope augment(const VPolytope& k, const VPolytope& n);

struct ScheduleRow {
  int m = 0;
  double length = 0.0;  // L_m
  double eps = 0.0;     // eps_m
  double offset = 0.0;  // T_m
  Vector base;          // x_m = x0 + T_m u
  double exclusion_radius = 0.0;  // R_m = rho_m + 1
  double body_radius = 0.0;       // rho_m, ambient bounding radius of the current body
  double claimed_step_bound = 0.0;
};

struct SequenceStep {
  ScheduleRow row;
  NeedleSpec needle_spec;
  VPolytope needle;
  VPolytope body;  // K_i for the unboundedness sequence, K_{m+1} for the Cauchy sequences
};

using LengthSchedule = std::function<double(int)>;

/// L_m = 2^m.
LengthSchedule dyadic_lengths();
/// L_i = l0 * 2^i.
LengthSchedule dyadic_lengths(double l0);

/// Prism needles of length L_i = l0 2^i and width eps_i = L_i^-2 attached at
/// x0; body_i = conv(K union N_i). The recorded bound is C(d,j) L_i eps_i^(j-1)
/// with the one-sided constant. Throws DomainError if x0 is not in K.
std::vector<SequenceStep> unboundedness_sequence(const VPolytope& k, const Subspace& plane,
                                                 std::span<const double> x0,
                                                 std::span<const double> u, double l0,
                                                 int steps);

/// Spindles at x_m = x0 + T_m u, T_m = m max(1, diam K0), with
/// C2 eps_m^(j-1) L_m = 2^-(m+1) (two-sided C2).
std::vector<SequenceStep> cauchy_sequence(const VPolytope& k0, const Subspace& plane,
                                          std::span<const double> x0, std::span<const double> u,
                                          const LengthSchedule& lengths, int steps);

/// As cauchy_sequence with C2 eps_m^(j-1) L_m = (a0/4) 2^-(m+1).
std::vector<SequenceStep> cauchy_sequence_scaled(const VPolytope& k0, const Subspace& plane,
                                                 std::span<const double> x0,
                                                 std::span<const double> u,
                                                 const LengthSchedule& lengths, int steps,
                                                 double a0);

struct BlockBounds {
  double paper = 0.0;      // c(H) eps^(j-1) L, full block with ball cross-section
  double corrected = 0.0;  // exact projected volume of the polytopal needle
};

/// Lower bounds on vol_j(P_H N) for a good H. The corrected value is
/// ell_H J(T_H) times the needle's in-plane volume, which is the exact
/// projected volume since P_H|_E has determinant ell_H J(T_H).
BlockBounds block_bounds(const GoodnessCertificate& cert, const NeedleSpec& spec);

}  // namespace ivm
