#include "ivm/bodies.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

#include "ivm/errors.hpp"
#include "ivm/min_norm_point.hpp"

namespace ivm {

VPolytope::VPolytope(std::size_t ambient_dim, std::vector<Vector> vertices)
    : dim_(ambient_dim), vertices_(std::move(vertices)) {
  if (dim_ == 0) throw DomainError("VPolytope: ambient dimension must be >= 1");
  if (vertices_.empty()) throw DomainError("VPolytope: at least one vertex required");
  for (const auto& v : vertices_) {
    if (v.size() != dim_)
      throw DimensionMismatch("VPolytope: vertex of length " + std::to_string(v.size()) +
                              " in ambient dimension " + std::to_string(dim_));
    if (!all_finite(v)) throw DomainError("VPolytope: non-finite coordinate");
  }
}

VPolytope VPolytope::point(Vector p) {
  const std::size_t d = p.size();
  return VPolytope(d, {std::move(p)});
}

VPolytope VPolytope::translated(std::span<const double> t) const {
  if (t.size() != dim_) throw DimensionMismatch("translate: dimension mismatch");
  std::vector<Vector> moved;
  moved.reserve(vertices_.size());
  for (const auto& v : vertices_) moved.push_back(add(v, t));
  return VPolytope(dim_, std::move(moved));
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

bool parse_double(std::string_view tok, double& out) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

bool parse_count(std::string_view tok, long long& out) {
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

VPolytope read_body(std::istream& in, const std::string& source_name) {
  long long dim = -1;
  long long count = -1;
  std::vector<Vector> vertices;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto tokens = split_ws(line);

    if (dim < 0) {
      if (tokens.size() != 2 || tokens[0] != "d" || !parse_count(tokens[1], dim) || dim < 1)
        throw ParseError(source_name, line_no, "expected 'd <positive int>'");
      continue;
    }
    if (count < 0) {
      if (tokens.size() != 2 || tokens[0] != "n" || !parse_count(tokens[1], count) || count < 1)
        throw ParseError(source_name, line_no, "expected 'n <positive int>'");
      vertices.reserve(static_cast<std::size_t>(std::min<long long>(count, 1 << 20)));
      continue;
    }
    if (static_cast<long long>(vertices.size()) == count)
      throw ParseError(source_name, line_no, "more vertex rows than declared n");
    if (static_cast<long long>(tokens.size()) != dim)
      throw ParseError(source_name, line_no,
                       "vertex row has " + std::to_string(tokens.size()) +
                           " coordinates, expected " + std::to_string(dim));
    Vector v(static_cast<std::size_t>(dim));
    for (std::size_t k = 0; k < v.size(); ++k)
      if (!parse_double(tokens[k], v[k]))
        throw ParseError(source_name, line_no,
                         "invalid coordinate '" + std::string(tokens[k]) + "'");
    vertices.push_back(std::move(v));
  }
  if (dim < 0) throw ParseError(source_name, line_no, "missing 'd' header");
  if (count < 0) throw ParseError(source_name, line_no, "missing 'n' header");
  if (static_cast<long long>(vertices.size()) != count)
    throw ParseError(source_name, line_no,
                     "declared " + std::to_string(count) + " vertices, found " +
                         std::to_string(vertices.size()));
  return VPolytope(static_cast<std::size_t>(dim), std::move(vertices));
}

void write_body(std::ostream& out, const VPolytope& body) {
  out << "d " << body.ambient_dim() << '\n' << "n " << body.size() << '\n';
  char buf[32];
  for (const auto& v : body.vertices()) {
    for (std::size_t k = 0; k < v.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", v[k]);
      if (k) out << ' ';
      out << buf;
    }
    out << '\n';
  }
}

VPolytope load_body(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open body file '" + path.string() + "'");
  return read_body(in, path.string());
}

void save_body(const VPolytope& body, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write body file '" + path.string() + "'");
  write_body(out, body);
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

double bounding_radius(const VPolytope& body) {
  double r = 0.0;
  for (const auto& v : body.vertices()) r = std::max(r, norm(v));
  return r;
}

double diameter(const VPolytope& body) {
  double best = 0.0;
  const auto& vs = body.vertices();
  for (std::size_t a = 0; a < vs.size(); ++a)
    for (std::size_t b = a + 1; b < vs.size(); ++b) best = std::max(best, norm(subtract(vs[a], vs[b])));
  return best;
}

Vector centroid(const VPolytope& body) {
  Vector c(body.ambient_dim(), 0.0);
  for (const auto& v : body.vertices())
    for (std::size_t k = 0; k < c.size(); ++k) c[k] += v[k];
  for (double& x : c) x /= static_cast<double>(body.size());
  return c;
}

double support(const VPolytope& body, std::span<const double> direction) {
  if (direction.size() != body.ambient_dim())
    throw DimensionMismatch("support: direction dimension mismatch");
  double best = dot(body.vertex(0), direction);
  for (const auto& v : body.vertices()) best = std::max(best, dot(v, direction));
  return best;
}

double distance_to_hull(std::span<const double> p, const VPolytope& body, double tol) {
  if (p.size() != body.ambient_dim())
    throw DimensionMismatch("distance_to_hull: point dimension mismatch");
  if (!(tol > 0.0)) throw DomainError("distance_to_hull: tol must be positive");
  return min_norm_point(body.vertices(), p, tol).distance;
}

bool membership(std::span<const double> p, const VPolytope& body, double tol) {
  return distance_to_hull(p, body, tol) <= tol;
}

Interval line_fiber(const VPolytope& body, std::span<const double> base,
                    std::span<const double> dir, double tol) {
  if (base.size() != body.ambient_dim() || dir.size() != body.ambient_dim())
    throw DimensionMismatch("line_fiber: dimension mismatch");
  const double dd = dot(dir, dir);
  if (!(dd > 0.0)) throw DomainError("line_fiber: direction must be nonzero");

  const double s = dot(base, dir);
  const double h_plus = support(body, dir);
  const double h_minus = -support(body, scaled(dir, -1.0));
  double t_lo = (h_minus - s) / dd;
  double t_hi = (h_plus - s) / dd;

  auto dist_at = [&](double t) { return distance_to_hull(axpy(base, t, dir), body, tol); };

  // Distance along the line is convex, so golden-section search finds a
  // member whenever the fiber is nonempty.
  double found = 0.0;
  bool have_member = false;
  {
    const double mid = 0.5 * (t_lo + t_hi);
    if (dist_at(mid) <= tol) {
      found = mid;
      have_member = true;
    }
  }
  if (!have_member) {
    constexpr double kInvPhi = 0.6180339887498949;
    double a = t_lo, b = t_hi;
    double c = b - kInvPhi * (b - a);
    double e = a + kInvPhi * (b - a);
    double fc = dist_at(c), fe = dist_at(e);
    for (int it = 0; it < 200; ++it) {
      if (fc <= tol) { found = c; have_member = true; break; }
      if (fe <= tol) { found = e; have_member = true; break; }
      if (b - a <= 1e-15 * (1.0 + std::abs(a) + std::abs(b))) break;
      if (fc < fe) {
        b = e; e = c; fe = fc;
        c = b - kInvPhi * (b - a);
        fc = dist_at(c);
      } else {
        a = c; c = e; fc = fe;
        e = a + kInvPhi * (b - a);
        fe = dist_at(e);
      }
    }
    if (!have_member) {
      for (double t : {t_lo, t_hi}) {
        if (dist_at(t) <= tol) { found = t; have_member = true; break; }
      }
    }
  }
  if (!have_member) return Interval::none();

  const double t_tol = tol / std::sqrt(dd);
  constexpr int kMinBisect = 40;
  constexpr int kMaxBisect = 200;
  auto refine = [&](double inside, double outside) {
    if (dist_at(outside) <= tol) return outside;
    for (int it = 0; it < kMaxBisect; ++it) {
      if (it >= kMinBisect && std::abs(outside - inside) <= t_tol) break;
      const double mid = 0.5 * (inside + outside);
      if (mid == inside || mid == outside) break;
      (dist_at(mid) <= tol ? inside : outside) = mid;
    }
    return inside;
  };
  // Widen the bracket by the tolerance so members of the tol-inflated body are covered.
  t_lo -= 2.0 * t_tol;
  t_hi += 2.0 * t_tol;
  return Interval::of(refine(found, t_lo), refine(found, t_hi));
}

}  // namespace ivm
