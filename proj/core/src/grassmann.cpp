#include "ivm/grassmann.hpp"

#include <cmath>
#include <string>

#include "ivm/errors.hpp"

namespace ivm {

Subspace::Subspace(Matrix basis) : basis_(std::move(basis)) {
  const std::size_t d = basis_.rows();
  const std::size_t j = basis_.cols();
  if (j < 1 || j > d)
    throw DomainError("Subspace: need 1 <= j <= d, got d=" + std::to_string(d) +
                      " j=" + std::to_string(j));
  const Matrix gram = basis_.transposed() * basis_;
  if (max_abs_diff(gram, Matrix::identity(j)) >= 1e-10)
    throw DomainError("Subspace: basis is not orthonormal");
}

Subspace Subspace::span_of(const Matrix& columns) { return Subspace(gram_schmidt(columns)); }

Subspace Subspace::coordinate(std::size_t ambient_dim, std::span<const std::size_t> axes) {
  Matrix b(ambient_dim, axes.size());
  for (std::size_t c = 0; c < axes.size(); ++c) {
    if (axes[c] >= ambient_dim) throw DomainError("Subspace::coordinate: axis out of range");
    b(axes[c], c) = 1.0;
  }
  return Subspace(std::move(b));
}

Subspace Subspace::leading(std::size_t ambient_dim, std::size_t dim) {
  std::vector<std::size_t> axes(dim);
  for (std::size_t i = 0; i < dim; ++i) axes[i] = i;
  return coordinate(ambient_dim, axes);
}

Vector Subspace::embed(std::span<const double> coords) const { return basis_ * coords; }

Subspace haar_sample(std::size_t d, std::size_t j, RngStream stream) {
  if (j < 1 || j > d) throw DomainError("haar_sample: need 1 <= j <= d");
  for (int attempt = 0; attempt <= 5; ++attempt) {
    Matrix g(d, j);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < j; ++c) g(r, c) = stream.gaussian();
    try {
      return Subspace(gram_schmidt(g));
    } catch (const RankDeficient&) {
      // measure-zero event; the stream counter has already moved on
    }
  }
  throw RankDeficient("haar_sample: rank-deficient Gaussian draw after 5 resamples");
}

Vector project_point(const Subspace& h, std::span<const double> x) {
  if (x.size() != h.ambient_dim()) throw DimensionMismatch("project_point: dimension mismatch");
  const Matrix& b = h.basis();
  Vector out(h.dim(), 0.0);
  for (std::size_t c = 0; c < h.dim(); ++c) {
    double s = 0.0;
    for (std::size_t r = 0; r < h.ambient_dim(); ++r) s += b(r, c) * x[r];
    out[c] = s;
  }
  return out;
}

VPolytope project_body(const Subspace& h, const VPolytope& body) {
  if (body.ambient_dim() != h.ambient_dim())
    throw DimensionMismatch("project_body: body and subspace ambient dimensions differ");
  std::vector<Vector> out;
  out.reserve(body.size());
  for (const auto& v : body.vertices()) out.push_back(project_point(h, v));
  return VPolytope(h.dim(), std::move(out));
}

Matrix orthonormal_complement(std::span<const double> w) {
  const std::size_t k = w.size();
  Matrix out(k, k == 0 ? 0 : k - 1);
  if (k <= 1) return out;
  // Reflector I - 2 v v^T / v^T v with v = w + sign(w_0) e_0 maps w to a
  // multiple of e_0; its remaining columns span w^perp.
  Vector v(w.begin(), w.end());
  const double s = v[0] >= 0.0 ? 1.0 : -1.0;
  v[0] += s * norm(w);
  const double vv = dot(v, v);
  for (std::size_t c = 1; c < k; ++c) {
    Vector col(k);
    for (std::size_t r = 0; r < k; ++r)
      col[r] = (r == c ? 1.0 : 0.0) - 2.0 * v[r] * v[c] / vv;
    for (double x : col) {
      if (std::abs(x) > 1e-14) {
        if (x < 0.0)
          for (double& y : col) y = -y;
        break;
      }
    }
    out.set_column(c - 1, col);
  }
  return out;
}

AxisSplit axis_split(const Subspace& h, std::span<const double> u) {
  const Vector pu = project_point(h, u);
  const double ell = norm(pu);
  if (!(ell > 1e-12))
    throw DegenerateDirection("axis_split: |P_H u| = " + std::to_string(ell) + " <= 1e-12");
  AxisSplit out;
  out.ell = ell;
  out.u_h = scaled(pu, 1.0 / ell);
  out.e_h_basis = orthonormal_complement(out.u_h);
  return out;
}

Matrix transverse_basis(const Subspace& e, std::span<const double> u) {
  const Vector ue = project_point(e, u);
  const double n = norm(ue);
  if (!(n > 1e-12)) throw DegenerateDirection("transverse_basis: u has no component in E");
  return e.basis() * orthonormal_complement(scaled(ue, 1.0 / n));
}

GoodnessCertificate goodness(const Subspace& h, const Subspace& e, std::span<const double> u) {
  if (h.dim() != e.dim() || h.ambient_dim() != e.ambient_dim())
    throw DimensionMismatch("goodness: H and E must be subspaces of equal dimension");
  if (u.size() != h.ambient_dim()) throw DimensionMismatch("goodness: u dimension mismatch");
  if (std::abs(norm(u) - 1.0) > 1e-10) throw DomainError("goodness: u must be a unit vector");
  const Vector u_in_e = e.embed(project_point(e, u));
  if (norm(subtract(u_in_e, u)) > 1e-10) throw DomainError("goodness: u must lie in E");

  const std::size_t j = h.dim();
  GoodnessCertificate cert;
  // Matrix of P_H|_E in the orthonormal bases of E and H.
  const Matrix restricted = h.basis().transposed() * e.basis();
  cert.sigma_min = singular_min(restricted);
  cert.ell_h = norm(project_point(h, u));

  AxisSplit split;
  try {
    split = axis_split(h, u);
  } catch (const DegenerateDirection&) {
    cert.degenerate = true;
    cert.t_h = Matrix(j - 1, j - 1);
    return cert;
  }
  cert.u_h = split.u_h;
  cert.e_h_basis = split.e_h_basis;

  // Columns: pi_H P_H w for an orthonormal basis w of u^perp cap E, written in
  // the E_H frame.
  const Matrix w = transverse_basis(e, u);
  cert.t_h = split.e_h_basis.transposed() * (h.basis().transposed() * w);
  cert.jacobian = j == 1 ? 1.0 : gram_jacobian(cert.t_h);
  cert.b_h = cert.jacobian * ball_volume(static_cast<int>(j) - 1);
  cert.c_h = 2.0 * cert.ell_h * cert.b_h;
  return cert;
}

}  // namespace ivm
