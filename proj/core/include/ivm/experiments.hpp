#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ivm/bodies.hpp"
#include "ivm/csv.hpp"
#include "ivm/grassmann.hpp"
#include "ivm/metrics.hpp"

namespace ivm {

struct ExperimentConfig {
  std::size_t d = 3;
  std::size_t j = 2;
  std::uint64_t seed = 0;
  std::size_t n_subspaces = 2000;
  std::size_t n_points = 2000;
  int steps = 6;
  double l0 = 2.0;
  unsigned workers = 1;
  SamplingMode mode = SamplingMode::automatic;
  std::optional<double> a0;  // scaled Cauchy runner only; computed when absent

  /// Desk-scale guard: 2 <= j <= d <= 8, 1 <= steps <= 12,
  /// n_subspaces * n_points <= 1e8. Throws ConfigError.
  void validate() const;
  SamplingPlan plan() const;
};

/// Unit j-cube in span{e_1..e_j} inside R^d.
VPolytope unit_cube_in_plane(std::size_t d, std::size_t j);

struct LineFit {
  double slope = 0.0;
  double slope_se = 0.0;
  double intercept = 0.0;
};

/// Ordinary least squares of log(y) on log(x) over the positive pairs.
LineFit fit_loglog(std::span<const double> x, std::span<const double> y);

/// Unboundedness harness: prism needles of growing length and eps = L^-2 on
/// the unit cube. Hard check per row: d_H(K_i, K) >= L_i - |x0| - R_K.
CsvTable run_thm1(const ExperimentConfig& cfg);

/// Dyadic Cauchy sequence of spindles. Hard checks: schedule identity to
/// 1e-12, measured needle projection >= corrected block bound, and mass
/// outside R_m >= corrected block whenever the projected needle clears R_m.
CsvTable run_thm2(const ExperimentConfig& cfg);

/// Cauchy sequence scaled by a0 = delta_j(K0, empty). Hard checks: schedule
/// identity, delta_j(K0, empty) == V_j(K0) bit-exactly, claimed steps sum to
/// at most a0/4.
CsvTable run_thm3(const ExperimentConfig& cfg);

struct LemmaSummary {
  std::size_t samples = 0;
  double sigma_min_min = 0.0, sigma_min_mean = 0.0;
  double ell_min = 0.0, ell_mean = 0.0;
  double jacobian_min = 0.0, jacobian_mean = 0.0;
  std::size_t near_singular = 0;  // sigma_min < 1e-8
  double mean_proj_e1_sq = 0.0;
  double target_proj_e1_sq = 0.0;  // j/d
};

struct LemmaReport {
  CsvTable table;  // one row per Haar sample
  LemmaSummary summary;
};

/// Good-subspace statistics over cfg.n_subspaces Haar draws for
/// E = span{e_1..e_j}, u = e_1.
LemmaReport run_lemma(const ExperimentConfig& cfg);

struct ValidationReport {
  CsvTable table;
  bool all_passed = false;
};

/// Monte Carlo versus exact cross-checks, Kubota oracles and flag table.
ValidationReport run_validation(const ExperimentConfig& cfg);

/// "e1e2" or "random:<seed>" (a Haar plane drawn from that seed).
Subspace parse_plane(std::string_view spec, std::size_t ambient_dim);
/// "e<k>" (1-based axis) or a comma-separated coordinate list; normalised.
Vector parse_axis(std::string_view spec, std::size_t ambient_dim);

struct FiberReport {
  CsvTable table;
  FiberProfile profile;
};

/// Fiber diagnostic for body_b inside body_a on the given plane.
FiberReport run_fibers(const VPolytope& body_a, const VPolytope& body_b, const Subspace& plane,
                       std::span<const double> axis, std::size_t grid_n);

}  // namespace ivm
