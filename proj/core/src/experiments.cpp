#include "ivm/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

#include "ivm/constructions.hpp"
#include "ivm/errors.hpp"
#include "ivm/parallel.hpp"
#include "ivm/polygon.hpp"

namespace ivm {

void ExperimentConfig::validate() const {
  if (j < 2 || j > d || d > 8)
    throw ConfigError("need 2 <= j <= d <= 8, got d=" + std::to_string(d) +
                      " j=" + std::to_string(j));
  if (steps < 1 || steps > 12) throw ConfigError("steps must be in [1, 12]");
  if (n_subspaces < 1 || n_points < 1) throw ConfigError("sample counts must be >= 1");
  if (static_cast<double>(n_subspaces) * static_cast<double>(n_points) > 1e8)
    throw ConfigError("n_subspaces * n_points exceeds the 1e8 desk-scale limit");
  if (!(l0 > 0.0) || !std::isfinite(l0)) throw ConfigError("l0 must be positive");
  if (workers < 1) throw ConfigError("workers must be >= 1");
  if (a0 && !(*a0 > 0.0)) throw ConfigError("a0 must be positive");
}

SamplingPlan ExperimentConfig::plan() const {
  SamplingPlan p;
  p.n_subspaces = n_subspaces;
  p.n_points = n_points;
  p.seed = seed;
  p.mode = mode;
  p.workers = workers;
  return p;
}

VPolytope unit_cube_in_plane(std::size_t d, std::size_t j) {
  if (j < 1 || j > d) throw DomainError("unit_cube_in_plane: need 1 <= j <= d");
  std::vector<Vector> verts;
  for (std::size_t mask = 0; mask < (std::size_t{1} << j); ++mask) {
    Vector v(d, 0.0);
    for (std::size_t k = 0; k < j; ++k) v[k] = (mask >> k) & 1u ? 1.0 : 0.0;
    verts.push_back(std::move(v));
  }
  return VPolytope(d, std::move(verts));
}

LineFit fit_loglog(std::span<const double> x, std::span<const double> y) {
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i)
    if (x[i] > 0.0 && y[i] > 0.0) pts.emplace_back(std::log(x[i]), std::log(y[i]));
  LineFit fit;
  const double n = static_cast<double>(pts.size());
  if (pts.size() < 2) return fit;
  double mx = 0.0, my = 0.0;
  for (auto [a, b] : pts) mx += a, my += b;
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (auto [a, b] : pts) {
    sxx += (a - mx) * (a - mx);
    sxy += (a - mx) * (b - my);
  }
  if (sxx <= 0.0) return fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (pts.size() > 2) {
    double rss = 0.0;
    for (auto [a, b] : pts) {
      const double r = b - fit.intercept - fit.slope * a;
      rss += r * r;
    }
    fit.slope_se = std::sqrt(rss / (n - 2.0) / sxx);
  }
  return fit;
}

namespace {

std::string row_tag(const char* runner, int m) {
  return std::string(runner) + " row " + std::to_string(m) + ": ";
}

Vector unit_axis(std::size_t d, std::size_t k) {
  Vector e(d, 0.0);
  e[k] = 1.0;
  return e;
}

// First Haar draw that passes the goodness test; used as the probe plane.
GoodnessCertificate probe_certificate(const ExperimentConfig& cfg, const Subspace& plane,
                                      std::span<const double> u, Subspace& probe) {
  for (std::uint64_t k = 0; k < 64; ++k) {
    Subspace h = haar_sample(cfg.d, cfg.j, derive_stream(cfg.seed, StreamPurpose::certificate, k));
    GoodnessCertificate cert = goodness(h, plane, u);
    if (cert.good()) {
      probe = std::move(h);
      return cert;
    }
  }
  throw AssertionFailure("no good subspace among 64 Haar draws");
}

double good_fraction(const ExperimentConfig& cfg, const Subspace& plane,
                     std::span<const double> u) {
  std::vector<char> good(cfg.n_subspaces, 0);
  parallel_for(cfg.n_subspaces, cfg.workers, [&](std::size_t k) {
    const Subspace h = haar_sample(cfg.d, cfg.j, derive_stream(cfg.seed, StreamPurpose::lemma, k));
    good[k] = goodness(h, plane, u).good() ? 1 : 0;
  });
  std::size_t count = 0;
  for (char g : good) count += g ? 1u : 0u;
  return static_cast<double>(count) / static_cast<double>(cfg.n_subspaces);
}

// vol_j((P_H K_next \ P_H K_prev) \ B_H(0, radius)).
MetricEstimate outside_mass(const VPolytope& next, const VPolytope& prev, const Subspace& h,
                            double radius, const SamplingPlan& plan, std::uint64_t row) {
  const VPolytope pn = project_body(h, next);
  const VPolytope pp = project_body(h, prev);
  if (h.dim() == 2 && plan.mode != SamplingMode::monte_carlo) {
    // P_H K_prev lies inside the ball, so only the ball needs removing.
    const Ring ring = hull_2d(pn.vertices());
    MetricEstimate e;
    e.exact = true;
    e.n_subspaces = 1;
    e.value = std::max(0.0, polygon_area(ring) - polygon_disk_intersection_area(ring, radius));
    return e;
  }
  RngStream stream = derive_stream(plan.seed, StreamPurpose::points, (std::uint64_t{1} << 32) + row);
  const std::size_t j = h.dim();
  Vector lo(j, std::numeric_limits<double>::infinity()), hi(j, -lo[0]);
  for (const auto& v : pn.vertices())
    for (std::size_t k = 0; k < j; ++k) {
      lo[k] = std::min(lo[k], v[k]);
      hi[k] = std::max(hi[k], v[k]);
    }
  double box = 1.0;
  for (std::size_t k = 0; k < j; ++k) {
    lo[k] -= 1e-9;
    hi[k] += 1e-9;
    box *= hi[k] - lo[k];
  }
  std::size_t hits = 0;
  Vector y(j);
  for (std::size_t i = 0; i < plan.n_points; ++i) {
    for (std::size_t k = 0; k < j; ++k) y[k] = lo[k] + (hi[k] - lo[k]) * stream.uniform();
    if (norm(y) > radius && membership(y, pn) && !membership(y, pp)) ++hits;
  }
  const double n = static_cast<double>(plan.n_points);
  const double p = static_cast<double>(hits) / n;
  MetricEstimate e;
  e.value = box * p;
  e.std_error = box * std::sqrt(p * (1.0 - p) / n);
  e.n_subspaces = 1;
  e.n_points_per_subspace = plan.n_points;
  return e;
}

// Floating-point slack for comparisons between two exact evaluations of
// the same area (projection and hull rounding on thin needles).
double exact_slack(double magnitude) { return 1e-6 * std::abs(magnitude) + 1e-12; }

}  // namespace

CsvTable run_thm1(const ExperimentConfig& cfg) {
  cfg.validate();
  const Subspace plane = Subspace::leading(cfg.d, cfg.j);
  const VPolytope k = unit_cube_in_plane(cfg.d, cfg.j);
  const Vector x0 = centroid(k);
  const Vector u = unit_axis(cfg.d, 0);
  const double r_k = bounding_radius(k);
  const double x0_norm = norm(x0);
  const SamplingPlan plan = cfg.plan();

  CsvTable table;
  table.header = {"i",          "L_i",         "eps_i",       "claimed_bound", "delta_hat",
                  "delta_se",   "d_hausdorff", "drift_floor", "bound_ratio",   "precision"};
  const auto seq = unboundedness_sequence(k, plane, x0, u, cfg.l0, cfg.steps);
  std::vector<double> lengths, deltas;
  for (const auto& step : seq) {
    const ScheduleRow& row = step.row;
    const MetricEstimate delta = delta_j(step.body, k, cfg.j, plan);
    const double d_h = hausdorff(step.body, k);
    const double floor = row.length - x0_norm - r_k;
    if (d_h < floor - kDefaultHullTol)
      throw AssertionFailure(row_tag("thm1", row.m) + "d_H = " + format_real(d_h) +
                             " below drift floor " + format_real(floor));
    const bool precise = delta.value > 0.0 && delta.relative_error() <= 0.05;
    table.add_row({format_int(row.m), format_real(row.length), format_real(row.eps),
                   format_real(row.claimed_step_bound), format_real(delta.value),
                   format_real(delta.std_error), format_real(d_h), format_real(floor),
                   format_real(delta.value / row.claimed_step_bound),
                   precise ? "ok" : "low-precision"});
    lengths.push_back(row.length);
    deltas.push_back(delta.value);
  }
  const LineFit fit = fit_loglog(lengths, deltas);
  table.footer.push_back("d=" + std::to_string(cfg.d) + " j=" + std::to_string(cfg.j) +
                         " seed=" + std::to_string(cfg.seed) +
                         " n_subspaces=" + std::to_string(cfg.n_subspaces) +
                         " n_points=" + std::to_string(cfg.n_points) +
                         " base=unit cube, x0=centroid, u=e1");
  table.footer.push_back("claimed decay exponent 3-2j = " +
                         std::to_string(3 - 2 * static_cast<int>(cfg.j)));
  table.footer.push_back("loglog_slope=" + format_real(fit.slope) +
                         " slope_se=" + format_real(fit.slope_se));
  return table;
}

CsvTable run_thm2(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.j >= cfg.d) throw ConfigError("thm2 requires 2 <= j <= d-1");
  const Subspace plane = Subspace::leading(cfg.d, cfg.j);
  const VPolytope k0 = unit_cube_in_plane(cfg.d, cfg.j);
  const Vector x0 = centroid(k0);
  const Vector u = unit_axis(cfg.d, 0);
  const SamplingPlan plan = cfg.plan();
  const int d = static_cast<int>(cfg.d), j = static_cast<int>(cfg.j);
  const double c2 = needle_constant(d, j, Sidedness::two_sided);

  Subspace probe = plane;
  const GoodnessCertificate cert = probe_certificate(cfg, plane, u, probe);
  const double good = good_fraction(cfg, plane, u);

  CsvTable table;
  table.header = {"m",           "L_m",           "eps_m",           "T_m",
                  "R_m",         "claimed_step",  "step_delta_hat",  "step_se",
                  "good_H_fraction", "paper_block", "corrected_block", "measured_block",
                  "measured_se", "outside_mass_hat", "outside_se",   "needle_outside_R"};
  const auto seq = cauchy_sequence(k0, plane, x0, u, dyadic_lengths(cfg.l0), cfg.steps);
  const VPolytope* previous = &k0;
  for (const auto& step : seq) {
    const ScheduleRow& row = step.row;
    const std::string tag = row_tag("thm2", row.m);
    const double identity = c2 * std::pow(row.eps, j - 1) * row.length;
    if (std::abs(identity - std::ldexp(1.0, -(row.m + 1))) > 1e-12)
      throw AssertionFailure(tag + "schedule identity off by " +
                             format_real(identity - std::ldexp(1.0, -(row.m + 1))));

    const MetricEstimate step_delta = delta_j(step.body, *previous, cfg.j, plan);
    const BlockBounds blocks = block_bounds(cert, step.needle_spec);
    const MetricEstimate measured = projected_volume(step.needle, probe, plan);
    const double slack = measured.exact ? exact_slack(blocks.corrected) : 0.0;
    if (measured.value < blocks.corrected - 4.0 * measured.std_error - slack)
      throw AssertionFailure(tag + "projected needle volume " + format_real(measured.value) +
                             " below corrected block " + format_real(blocks.corrected));

    const MetricEstimate outside =
        outside_mass(step.body, *previous, probe, row.exclusion_radius, plan,
                     static_cast<std::uint64_t>(row.m));
    const VPolytope needle_h = project_body(probe, step.needle);
    const Vector origin(cfg.j, 0.0);
    const bool clears = distance_to_hull(origin, needle_h) > row.exclusion_radius;
    if (clears) {
      const double oslack = outside.exact ? exact_slack(blocks.corrected) : 0.0;
      if (outside.value < blocks.corrected - 4.0 * outside.std_error - oslack)
        throw AssertionFailure(tag + "mass outside R_m " + format_real(outside.value) +
                               " below corrected block " + format_real(blocks.corrected));
    }

    table.add_row({format_int(row.m), format_real(row.length), format_real(row.eps),
                   format_real(row.offset), format_real(row.exclusion_radius),
                   format_real(row.claimed_step_bound), format_real(step_delta.value),
                   format_real(step_delta.std_error), format_real(good),
                   format_real(blocks.paper), format_real(blocks.corrected),
                   format_real(measured.value), format_real(measured.std_error),
                   format_real(outside.value), format_real(outside.std_error),
                   clears ? "1" : "0"});
    previous = &step.body;
  }

  const GoodnessCertificate at_e = goodness(plane, plane, u);
  NeedleSpec ref = seq.front().needle_spec;
  const BlockBounds ref_blocks = block_bounds(at_e, ref);
  table.footer.push_back("d=" + std::to_string(cfg.d) + " j=" + std::to_string(cfg.j) +
                         " seed=" + std::to_string(cfg.seed) + " C2=" + format_real(c2) +
                         " T_m=m*max(1,diam K0) L_m=l0*2^m");
  table.footer.push_back("probe H: sigma_min=" + format_real(cert.sigma_min) +
                         " ell_H=" + format_real(cert.ell_h) + " J=" + format_real(cert.jacobian) +
                         " c_H=" + format_real(cert.c_h));
  table.footer.push_back("H=E reference: paper_block/corrected_block=" +
                         format_real(ref_blocks.paper / ref_blocks.corrected));
  return table;
}

CsvTable run_thm3(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.j >= cfg.d) throw ConfigError("thm3 requires 2 <= j <= d-1");
  const Subspace plane = Subspace::leading(cfg.d, cfg.j);
  const VPolytope k0 = unit_cube_in_plane(cfg.d, cfg.j);
  const Vector x0 = centroid(k0);
  const Vector u = unit_axis(cfg.d, 0);
  const SamplingPlan plan = cfg.plan();
  const int d = static_cast<int>(cfg.d), j = static_cast<int>(cfg.j);
  const double c2 = needle_constant(d, j, Sidedness::two_sided);

  const MetricEstimate to_empty = delta_j(k0, std::nullopt, cfg.j, plan);
  const MetricEstimate kubota = intrinsic_volume(k0, cfg.j, plan);
  if (to_empty.value != kubota.value || to_empty.std_error != kubota.std_error)
    throw AssertionFailure("thm3: delta_j(K0, empty) and V_j(K0) differ");
  const double a0 = cfg.a0.value_or(to_empty.value);

  CsvTable table;
  table.header = {"m",   "L_m", "eps_m",          "claimed_step",     "delta_to_empty_hat",
                  "se",  "claimed_floor",         "schedule_residual"};
  const auto seq = cauchy_sequence_scaled(k0, plane, x0, u, dyadic_lengths(cfg.l0), cfg.steps, a0);
  double claimed_sum = 0.0;
  for (const auto& step : seq) {
    const ScheduleRow& row = step.row;
    const double target = a0 / 4.0 * std::ldexp(1.0, -(row.m + 1));
    const double residual = c2 * std::pow(row.eps, j - 1) * row.length - target;
    if (std::abs(residual) > 1e-12)
      throw AssertionFailure(row_tag("thm3", row.m) + "schedule identity off by " +
                             format_real(residual));
    claimed_sum += row.claimed_step_bound;
    const MetricEstimate delta = delta_j(step.body, std::nullopt, cfg.j, plan);
    table.add_row({format_int(row.m), format_real(row.length), format_real(row.eps),
                   format_real(row.claimed_step_bound), format_real(delta.value),
                   format_real(delta.std_error), format_real(0.75 * a0), format_real(residual)});
  }
  if (claimed_sum > a0 / 4.0 + 1e-12)
    throw AssertionFailure("thm3: claimed steps sum to " + format_real(claimed_sum) +
                           " > a0/4");
  table.footer.push_back("d=" + std::to_string(cfg.d) + " j=" + std::to_string(cfg.j) +
                         " seed=" + std::to_string(cfg.seed) + " C2=" + format_real(c2) +
                         " T_m=m*max(1,diam K0) L_m=l0*2^m; rows measure K_{m+1}");
  table.footer.push_back("a0=" + format_real(a0) + (cfg.a0 ? " (given)" : " (estimated)") +
                         " a0_hat=" + format_real(to_empty.value) +
                         " a0_se=" + format_real(to_empty.std_error));
  table.footer.push_back("sum_claimed_step=" + format_real(claimed_sum) +
                         " a0/4=" + format_real(a0 / 4.0));
  return table;
}

LemmaReport run_lemma(const ExperimentConfig& cfg) {
  if (cfg.j < 1 || cfg.j > cfg.d || cfg.d > 8)
    throw ConfigError("lemma needs 1 <= j <= d <= 8");
  if (cfg.n_subspaces < 1) throw ConfigError("lemma needs at least one sample");
  const Subspace plane = Subspace::leading(cfg.d, cfg.j);
  const Vector u = unit_axis(cfg.d, 0);
  const std::size_t n = cfg.n_subspaces;

  struct Sample {
    double sigma = 0.0, ell = 0.0, jac = 0.0, e1 = 0.0;
  };
  std::vector<Sample> samples(n);
  parallel_for(n, cfg.workers, [&](std::size_t k) {
    const Subspace h = haar_sample(cfg.d, cfg.j, derive_stream(cfg.seed, StreamPurpose::lemma, k));
    const GoodnessCertificate cert = goodness(h, plane, u);
    const Vector pe1 = project_point(h, u);
    samples[k] = {cert.sigma_min, cert.ell_h, cert.jacobian, dot(pe1, pe1)};
  });

  LemmaReport report;
  report.table.header = {"sample", "sigma_min", "ell_H", "jacobian", "proj_e1_sq"};
  LemmaSummary& s = report.summary;
  s.samples = n;
  s.sigma_min_min = s.ell_min = s.jacobian_min = std::numeric_limits<double>::infinity();
  double sum_sigma = 0.0, sum_ell = 0.0, sum_jac = 0.0, sum_e1 = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const Sample& x = samples[k];
    report.table.add_row({format_int(static_cast<long long>(k)), format_real(x.sigma),
                          format_real(x.ell), format_real(x.jac), format_real(x.e1)});
    s.sigma_min_min = std::min(s.sigma_min_min, x.sigma);
    s.ell_min = std::min(s.ell_min, x.ell);
    s.jacobian_min = std::min(s.jacobian_min, x.jac);
    sum_sigma += x.sigma;
    sum_ell += x.ell;
    sum_jac += x.jac;
    sum_e1 += x.e1;
    if (x.sigma < 1e-8) ++s.near_singular;
  }
  const double dn = static_cast<double>(n);
  s.sigma_min_mean = sum_sigma / dn;
  s.ell_mean = sum_ell / dn;
  s.jacobian_mean = sum_jac / dn;
  s.mean_proj_e1_sq = sum_e1 / dn;
  s.target_proj_e1_sq = static_cast<double>(cfg.j) / static_cast<double>(cfg.d);

  auto& f = report.table.footer;
  f.push_back("d=" + std::to_string(cfg.d) + " j=" + std::to_string(cfg.j) +
              " seed=" + std::to_string(cfg.seed) + " samples=" + std::to_string(n));
  f.push_back("sigma_min min=" + format_real(s.sigma_min_min) +
              " mean=" + format_real(s.sigma_min_mean));
  f.push_back("ell_H min=" + format_real(s.ell_min) + " mean=" + format_real(s.ell_mean));
  f.push_back("jacobian min=" + format_real(s.jacobian_min) +
              " mean=" + format_real(s.jacobian_mean));
  f.push_back("near_singular(sigma_min<1e-8)=" + std::to_string(s.near_singular));
  f.push_back("mean_proj_e1_sq=" + format_real(s.mean_proj_e1_sq) +
              " target=" + format_real(s.target_proj_e1_sq));
  return report;
}

namespace {

Ring random_polygon(RngStream& s) {
  const double cx = s.uniform() - 0.5, cy = s.uniform() - 0.5;
  const double radius = 0.5 + s.uniform();
  const int count = 3 + static_cast<int>(s.uniform() * 8.0);
  std::vector<Point2> pts;
  for (int i = 0; i < count; ++i) {
    const double theta = 2.0 * std::numbers::pi * s.uniform();
    const double r = radius * std::sqrt(s.uniform());
    pts.push_back({cx + r * std::cos(theta), cy + r * std::sin(theta)});
  }
  return hull_2d(std::span<const Point2>(pts));
}

VPolytope ring_body(const Ring& ring) {
  std::vector<Vector> v;
  for (const auto& p : ring) v.push_back({p.x, p.y});
  return VPolytope(2, std::move(v));
}

}  // namespace

ValidationReport run_validation(const ExperimentConfig& cfg) {
  ValidationReport report;
  CsvTable& t = report.table;
  t.header = {"check", "measured", "expected", "tolerance", "std_error", "pass"};
  bool all = true;
  auto add = [&](const std::string& name, double measured, double expected, double tol,
                 double se, bool pass) {
    all = all && pass;
    t.add_row({name, format_real(measured), format_real(expected), format_real(tol),
               format_real(se), pass ? "pass" : "FAIL"});
  };

  for (int d = 1; d <= 8; ++d) {
    const double f = flag_coefficient(d, d);
    add("flag[" + std::to_string(d) + "," + std::to_string(d) + "]", f, 1.0, 1e-12, 0.0,
        std::abs(f - 1.0) <= 1e-12);
  }
  {
    const double f21 = flag_coefficient(2, 1);
    add("flag[2,1]", f21, std::numbers::pi / 2.0, 1e-12, 0.0,
        std::abs(f21 - std::numbers::pi / 2.0) <= 1e-12);
    const double f32 = flag_coefficient(3, 2);
    add("flag[3,2]", f32, 2.0, 1e-12, 0.0, std::abs(f32 - 2.0) <= 1e-12);
  }

  SamplingPlan kubota;
  kubota.n_subspaces = 4000;
  kubota.n_points = 1;
  kubota.seed = cfg.seed;
  kubota.mode = SamplingMode::automatic;
  kubota.workers = cfg.workers;
  {
    const MetricEstimate v = intrinsic_volume(unit_cube_in_plane(3, 3), 2, kubota);
    const double err = std::abs(v.value - 3.0);
    add("V2(unit cube in R3)", v.value, 3.0, 0.05, v.std_error,
        err < 0.05 && err <= 3.0 * v.std_error);
  }
  {
    const VPolytope seg(3, {{0.0, 0.0, 0.0}, {3.0, 4.0, 0.0}});
    const MetricEstimate v = intrinsic_volume(seg, 1, kubota);
    const double err = std::abs(v.value - 5.0);
    add("V1(segment of length 5 in R3)", v.value, 5.0, 0.05, v.std_error,
        err < 0.05 && err <= 3.0 * v.std_error);
  }
  {
    const MetricEstimate v = intrinsic_volume(unit_cube_in_plane(3, 2), 2, kubota);
    const double err = std::abs(v.value - 1.0);
    add("V2(unit square in R3)", v.value, 1.0, 3.0 * v.std_error, v.std_error,
        err <= 3.0 * v.std_error);
  }

  constexpr std::size_t kPairs = 20;
  constexpr std::size_t kPoints = 100000;
  struct PairResult {
    double exact = 0.0, mc = 0.0, se = 0.0;
  };
  std::vector<PairResult> pairs(kPairs);
  parallel_for(kPairs, cfg.workers, [&](std::size_t i) {
    RngStream shape = derive_stream(cfg.seed, StreamPurpose::validation, i);
    const VPolytope a = ring_body(random_polygon(shape));
    const VPolytope b = ring_body(random_polygon(shape));
    const MetricEstimate ex = symdiff_volume(a, b, SamplingMode::exact, 1, shape);
    const MetricEstimate mc = symdiff_volume(
        a, b, SamplingMode::monte_carlo, kPoints,
        derive_stream(cfg.seed, StreamPurpose::validation, (std::uint64_t{1} << 32) + i));
    pairs[i] = {ex.value, mc.value, mc.std_error};
  });
  std::size_t within = 0;
  for (std::size_t i = 0; i < kPairs; ++i) {
    const auto& p = pairs[i];
    const bool ok = std::abs(p.mc - p.exact) <= 4.0 * p.se;
    within += ok ? 1 : 0;
    t.add_row({"symdiff pair " + std::to_string(i), format_real(p.mc), format_real(p.exact),
               format_real(4.0 * p.se), format_real(p.se), ok ? "pass" : "miss"});
  }
  add("symdiff pairs within 4 se", static_cast<double>(within), 19.0, 0.0, 0.0, within >= 19);

  report.all_passed = all;
  t.footer.push_back("seed=" + std::to_string(cfg.seed) + " workers-independent");
  return report;
}

Subspace parse_plane(std::string_view spec, std::size_t ambient_dim) {
  if (ambient_dim < 2) throw ConfigError("a plane needs ambient dimension >= 2");
  if (spec == "e1e2") {
    const std::size_t axes[] = {0, 1};
    return Subspace::coordinate(ambient_dim, axes);
  }
  constexpr std::string_view prefix = "random:";
  if (spec.substr(0, prefix.size()) == prefix) {
    std::uint64_t seed = 0;
    const auto rest = spec.substr(prefix.size());
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), seed);
    if (ec != std::errc() || ptr != rest.data() + rest.size() || rest.empty())
      throw ConfigError("bad plane seed in '" + std::string(spec) + "'");
    return haar_sample(ambient_dim, 2, derive_stream(seed, StreamPurpose::fibers, 0));
  }
  throw ConfigError("plane must be 'e1e2' or 'random:<seed>', got '" + std::string(spec) + "'");
}

Vector parse_axis(std::string_view spec, std::size_t ambient_dim) {
  Vector v(ambient_dim, 0.0);
  if (!spec.empty() && spec.front() == 'e') {
    std::size_t k = 0;
    auto [ptr, ec] = std::from_chars(spec.data() + 1, spec.data() + spec.size(), k);
    if (ec != std::errc() || ptr != spec.data() + spec.size() || k < 1 || k > ambient_dim)
      throw ConfigError("bad axis '" + std::string(spec) + "'");
    v[k - 1] = 1.0;
    return v;
  }
  std::size_t idx = 0;
  std::size_t start = 0;
  while (start <= spec.size()) {
    const std::size_t comma = std::min(spec.find(',', start), spec.size());
    const auto tok = spec.substr(start, comma - start);
    if (idx >= ambient_dim) throw ConfigError("axis has too many coordinates");
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v[idx]);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
      throw ConfigError("bad axis coordinate '" + std::string(tok) + "'");
    ++idx;
    start = comma + 1;
  }
  if (idx != ambient_dim) throw ConfigError("axis needs " + std::to_string(ambient_dim) + " coordinates");
  const double n = norm(v);
  if (!(n > 0.0)) throw ConfigError("axis must be nonzero");
  return scaled(v, 1.0 / n);
}

FiberReport run_fibers(const VPolytope& body_a, const VPolytope& body_b, const Subspace& plane,
                       std::span<const double> axis, std::size_t grid_n) {
  if (body_a.ambient_dim() != body_b.ambient_dim() ||
      body_a.ambient_dim() != plane.ambient_dim())
    throw ConfigError("fibers: bodies and plane must share the ambient dimension");
  for (const auto& v : body_b.vertices())
    if (!membership(v, body_a))
      throw ConfigError("fibers: body-b is not contained in body-a");

  FiberReport report;
  report.profile = fiber_profile(body_a, body_b, plane, axis, grid_n);
  const FiberProfile& p = report.profile;
  CsvTable& t = report.table;
  const std::size_t dims = plane.dim() - 1;
  for (std::size_t a = 0; a < dims; ++a) t.header.push_back("y" + std::to_string(a + 1));
  t.header.push_back("fiber_diff_length");
  t.header.push_back("in_tube");
  for (const auto& row : p.rows) {
    std::vector<std::string> cells;
    for (double y : row.y) cells.push_back(format_real(y));
    cells.push_back(format_real(row.diff));
    cells.push_back(row.in_tube ? "1" : "0");
    t.add_row(std::move(cells));
  }
  t.footer.push_back("grid=" + std::to_string(grid_n) + " ell_H=" + format_real(p.ell_h) +
                     " cell_measure=" + format_real(p.cell_measure));
  t.footer.push_back("diff_measure=" + format_real(p.diff_measure) +
                     " diff_outside_tube=" + format_real(p.diff_outside_tube) +
                     " tube_measure=" + format_real(p.tube_measure) +
                     " max_diff=" + format_real(p.max_diff));
  return report;
}

}  // namespace ivm
