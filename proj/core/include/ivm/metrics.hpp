#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ivm/bodies.hpp"
#include "ivm/grassmann.hpp"
#include "ivm/rng.hpp"

namespace ivm {

enum class SamplingMode { automatic, monte_carlo, exact };

struct SamplingPlan {
  std::size_t n_subspaces = 2000;
  std::size_t n_points = 2000;
  std::uint64_t seed = 0;
  SamplingMode mode = SamplingMode::automatic;
  unsigned workers = 1;
  bool record_per_subspace = false;
};

struct SubspaceValue {
  std::size_t index = 0;
  double f = 0.0;  // unscaled inner volume for the index-th Haar subspace
};

struct MetricEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t n_subspaces = 0;
  std::size_t n_points_per_subspace = 0;  // zero when inner volumes are exact
  bool exact = false;
  std::vector<SubspaceValue> per_subspace;

  double relative_error() const { return value > 0.0 ? std_error / value : 0.0; }
};

/// Body or the empty set.
using BodyOperand = std::optional<VPolytope>;

/// Volume of a body living in R^j: interval length (j = 1) or shoelace of
/// its hull (j = 2) when exact, otherwise hit-or-miss sampling in the
/// bounding box. `stream` supplies the sample points.
MetricEstimate body_volume(const VPolytope& body, SamplingMode mode, std::size_t n_points,
                           RngStream stream);

/// vol_j(A triangle B) for two bodies (either may be empty) in R^j.
/// Symmetric in its operands bit-for-bit.
MetricEstimate symdiff_volume(const BodyOperand& a, const BodyOperand& b, SamplingMode mode,
                              std::size_t n_points, RngStream stream);

MetricEstimate projected_volume(const VPolytope& body, const Subspace& h,
                                const SamplingPlan& plan);

MetricEstimate symdiff_volume(const VPolytope& a, const VPolytope& b, const SamplingPlan& plan);

/// Intrinsic volume metric: flag coefficient times the Haar mean of
/// vol_j(P_H K triangle P_H L). j = d uses the identity subspace alone.
MetricEstimate delta_j(const BodyOperand& k, const BodyOperand& l, std::size_t j,
                       const SamplingPlan& plan);

/// V_j(K) through the Kubota average; identical to delta_j(K, empty).
MetricEstimate intrinsic_volume(const VPolytope& body, std::size_t j, const SamplingPlan& plan);

double hausdorff(const VPolytope& k, const VPolytope& l, double tol = kDefaultHullTol);

struct FiberRow {
  Vector y;           // E_H coordinates of the transverse base point
  double diff = 0.0;  // |fiber of P_H K_plus| - |fiber of P_H K| along u_H
  bool in_tube = false;
};

struct FiberProfile {
  std::vector<FiberRow> rows;
  double ell_h = 0.0;
  double cell_measure = 0.0;       // transverse measure per grid point
  double diff_measure = 0.0;       // measure of y with diff > 2 tol
  double diff_outside_tube = 0.0;  // ... restricted to y outside the tube
  double tube_measure = 0.0;
  double max_diff = 0.0;
};

/// Fiber difference along u_H at one transverse point y (E_H coordinates).
double fiber_difference_at(const VPolytope& projected_plus, const VPolytope& projected,
                           const AxisSplit& split, std::span<const double> y,
                           double tol = kDefaultHullTol);

/// Lays a grid_n^(j-1) cell-centred grid over the E_H bounding box of
/// P_H K_plus and measures fiber differences. The tube is the projection
/// along u_H of `tube_section` if given, else of the vertices of K_plus
/// lying outside K. Requires K subset of K_plus.
FiberProfile fiber_profile(const VPolytope& k_plus, const VPolytope& k, const Subspace& h,
                           std::span<const double> u, std::size_t grid_n,
                           const std::optional<VPolytope>& tube_section = std::nullopt,
                           double tol = kDefaultHullTol);

}  // namespace ivm
