#include "ivm/constructions.hpp"

#include <cmath>
#include <string>

#include "ivm/errors.hpp"

namespace ivm {

void NeedleSpec::validate() const {
  if (x0.size() != plane.ambient_dim() || u.size() != plane.ambient_dim())
    throw DimensionMismatch("NeedleSpec: x0/u dimension mismatch");
  if (!(length > 0.0)) throw DomainError("NeedleSpec: length must be positive");
  if (!(eps > 0.0)) throw DomainError("NeedleSpec: eps must be positive");
  if (std::abs(norm(u) - 1.0) > 1e-10) throw DomainError("NeedleSpec: u must be a unit vector");
  const Vector back = plane.embed(project_point(plane, u));
  if (norm(subtract(back, u)) > 1e-10) throw DomainError("NeedleSpec: u must lie in span(E)");
  if (plane.dim() < 2) throw DomainError("NeedleSpec: plane dimension must be >= 2");
}

VPolytope cross_section(const Subspace& plane, std::span<const double> u, double eps) {
  if (plane.dim() < 2) throw DomainError("cross_section: needs dim(E) >= 2");
  const Matrix basis = transverse_basis(plane, u);
  std::vector<Vector> verts;
  verts.reserve(2 * basis.cols());
  for (std::size_t c = 0; c < basis.cols(); ++c) {
    const Vector b = basis.column(c);
    verts.push_back(scaled(b, eps));
    verts.push_back(scaled(b, -eps));
  }
  return VPolytope(plane.ambient_dim(), std::move(verts));
}

double cross_section_volume(std::size_t j, double eps) {
  if (j < 2) throw DomainError("cross_section_volume: needs j >= 2");
  const int k = static_cast<int>(j) - 1;
  return std::pow(2.0 * eps, k) / factorial(k);
}

VPolytope prism_needle(const NeedleSpec& spec) {
  spec.validate();
  const VPolytope cross = cross_section(spec.plane, spec.u, spec.eps);
  const Vector tip = axpy(spec.x0, spec.length, spec.u);
  std::vector<Vector> verts;
  verts.reserve(2 * cross.size());
  for (const auto& q : cross.vertices()) verts.push_back(add(spec.x0, q));
  for (const auto& q : cross.vertices()) verts.push_back(add(tip, q));
  return VPolytope(spec.x0.size(), std::move(verts));
}

VPolytope spindle_needle(const NeedleSpec& spec) {
  spec.validate();
  const VPolytope cross = cross_section(spec.plane, spec.u, spec.eps);
  std::vector<Vector> verts;
  verts.reserve(2 + cross.size());
  verts.push_back(axpy(spec.x0, -spec.length, spec.u));
  verts.push_back(axpy(spec.x0, spec.length, spec.u));
  for (const auto& q : cross.vertices()) verts.push_back(add(spec.x0, q));
  return VPolytope(spec.x0.size(), std::move(verts));
}

VPolytope make_needle(const NeedleSpec& spec) {
  return spec.kind == NeedleKind::prism ? prism_needle(spec) : spindle_needle(spec);
}

double needle_volume(const NeedleSpec& spec) {
  const double cross = cross_section_volume(spec.j(), spec.eps);
  if (spec.kind == NeedleKind::prism) return spec.length * cross;
  return 2.0 * spec.length / static_cast<double>(spec.j()) * cross;
}

VPolytope augment(const VPolytope& k, const VPolytope& n) {
  if (k.ambient_dim() != n.ambient_dim())
    throw DimensionMismatch("augment: bodies live in different ambient dimensions");
  std::vector<Vector> verts = k.vertices();
  verts.insert(verts.end(), n.vertices().begin(), n.vertices().end());
  return VPolytope(k.ambient_dim(), std::move(verts));
}

LengthSchedule dyadic_lengths() { return dyadic_lengths(1.0); }

LengthSchedule dyadic_lengths(double l0) {
  return [l0](int m) { return l0 * std::ldexp(1.0, m); };
}

std::vector<SequenceStep> unboundedness_sequence(const VPolytope& k, const Subspace& plane,
                                                 std::span<const double> x0,
                                                 std::span<const double> u, double l0,
                                                 int steps) {
  if (!(l0 > 0.0)) throw DomainError("unboundedness_sequence: l0 must be positive");
  if (!membership(x0, k)) throw DomainError("unboundedness_sequence: x0 must lie in K");
  const int d = static_cast<int>(plane.ambient_dim());
  const int j = static_cast<int>(plane.dim());
  const double c1 = needle_constant(d, j, Sidedness::one_sided);

  std::vector<SequenceStep> out;
  out.reserve(static_cast<std::size_t>(std::max(steps, 0)));
  for (int i = 0; i < steps; ++i) {
    const double len = l0 * std::ldexp(1.0, i);
    const double eps = 1.0 / (len * len);
    NeedleSpec spec{Vector(x0.begin(), x0.end()), Vector(u.begin(), u.end()), plane, len, eps,
                    NeedleKind::prism};
    VPolytope needle = prism_needle(spec);
    VPolytope body = augment(k, needle);
    ScheduleRow row;
    row.m = i;
    row.length = len;
    row.eps = eps;
    row.offset = 0.0;
    row.base = spec.x0;
    row.body_radius = bounding_radius(body);
    row.exclusion_radius = row.body_radius + 1.0;
    row.claimed_step_bound = c1 * len * std::pow(eps, j - 1);
    out.push_back({std::move(row), std::move(spec), std::move(needle), std::move(body)});
  }
  return out;
}

namespace {

std::vector<SequenceStep> build_cauchy(const VPolytope& k0, const Subspace& plane,
                                       std::span<const double> x0, std::span<const double> u,
                                       const LengthSchedule& lengths, int steps,
                                       double step_scale) {
  const int d = static_cast<int>(plane.ambient_dim());
  const int j = static_cast<int>(plane.dim());
  if (j < 2) throw DomainError("Cauchy sequence needs j >= 2");
  if (k0.ambient_dim() != plane.ambient_dim())
    throw DimensionMismatch("Cauchy sequence: body/plane dimension mismatch");
  const double c2 = needle_constant(d, j, Sidedness::two_sided);
  const double spacing = std::max(1.0, diameter(k0));

  std::vector<SequenceStep> out;
  out.reserve(static_cast<std::size_t>(std::max(steps, 0)));
  VPolytope current = k0;
  for (int m = 0; m < steps; ++m) {
    const double len = lengths(m);
    if (!(len > 0.0)) throw DomainError("Cauchy sequence: lengths must be positive");
    const double target = step_scale * std::ldexp(1.0, -(m + 1));
    const double eps = std::pow(target / (c2 * len), 1.0 / (j - 1));

    ScheduleRow row;
    row.m = m;
    row.length = len;
    row.eps = eps;
    row.offset = m * spacing;
    row.base = axpy(x0, row.offset, u);
    row.body_radius = bounding_radius(current);
    row.exclusion_radius = row.body_radius + 1.0;
    row.claimed_step_bound = target;

    NeedleSpec spec{row.base, Vector(u.begin(), u.end()), plane, len, eps, NeedleKind::spindle};
    VPolytope needle = spindle_needle(spec);
    VPolytope next = augment(current, needle);
    out.push_back({std::move(row), std::move(spec), std::move(needle), next});
    current = std::move(next);
  }
  return out;
}

}  // namespace

std::vector<SequenceStep> cauchy_sequence(const VPolytope& k0, const Subspace& plane,
                                          std::span<const double> x0, std::span<const double> u,
                                          const LengthSchedule& lengths, int steps) {
  return build_cauchy(k0, plane, x0, u, lengths, steps, 1.0);
}

std::vector<SequenceStep> cauchy_sequence_scaled(const VPolytope& k0, const Subspace& plane,
                                                 std::span<const double> x0,
                                                 std::span<const double> u,
                                                 const LengthSchedule& lengths, int steps,
                                                 double a0) {
  if (!(a0 > 0.0)) throw DomainError("cauchy_sequence_scaled: a0 must be positive");
  return build_cauchy(k0, plane, x0, u, lengths, steps, a0 / 4.0);
}

BlockBounds block_bounds(const GoodnessCertificate& cert, const NeedleSpec& spec) {
  if (cert.degenerate || !(cert.sigma_min > 0.0)) return {};
  const int j = static_cast<int>(spec.j());
  BlockBounds out;
  out.paper = cert.c_h * std::pow(spec.eps, j - 1) * spec.length;
  out.corrected = cert.ell_h * cert.jacobian * needle_volume(spec);
  return out;
}

}  // namespace ivm
