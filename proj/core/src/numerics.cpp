#include "ivm/numerics.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>
#include <string>

#include "ivm/errors.hpp"

namespace ivm {

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DimensionMismatch("ragged matrix initializer");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::from_columns(std::span<const Vector> columns) {
  if (columns.empty()) return {};
  Matrix m(columns.front().size(), columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) m.set_column(c, columns[c]);
  return m;
}

Vector Matrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void Matrix::set_column(std::size_t c, std::span<const double> v) {
  if (v.size() != rows_) throw DimensionMismatch("column length does not match row count");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product shape mismatch");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

Vector operator*(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw DimensionMismatch("matrix-vector shape mismatch");
  Vector out(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * x[k];
    out[i] = s;
  }
  return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

Vector add(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Vector subtract(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vector scaled(std::span<const double> a, double s) {
  Vector out(a.begin(), a.end());
  for (double& x : out) x *= s;
  return out;
}

Vector axpy(std::span<const double> a, double s, std::span<const double> b) {
  assert(a.size() == b.size());
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + s * b[i];
  return out;
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("max_abs_diff shape mismatch");
  double worst = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      worst = std::max(worst, std::abs(a(r, c) - b(r, c)));
  return worst;
}

double ball_volume(int m) {
  if (m < 0) throw DomainError("ball_volume: negative dimension " + std::to_string(m));
  double v = (m % 2 == 0) ? 1.0 : 2.0;
  for (int k = (m % 2 == 0) ? 2 : 3; k <= m; k += 2) v *= 2.0 * std::numbers::pi / k;
  return v;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

double factorial(int n) {
  if (n < 0) throw DomainError("factorial of negative integer");
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

double flag_coefficient(int d, int j) {
  if (j < 1 || j > d)
    throw DomainError("flag_coefficient: need 1 <= j <= d, got d=" + std::to_string(d) +
                      " j=" + std::to_string(j));
  if (j == d) return 1.0;
  return binomial(d, j) * ball_volume(d) / (ball_volume(j) * ball_volume(d - j));
}

double needle_constant(int d, int j, Sidedness sided) {
  if (j < 2 || j > d)
    throw DomainError("needle_constant: need 2 <= j <= d, got d=" + std::to_string(d) +
                      " j=" + std::to_string(j));
  const double one = flag_coefficient(d, j) * ball_volume(j - 1);
  return sided == Sidedness::two_sided ? 2.0 * one : one;
}

Matrix gram_schmidt(const Matrix& m) {
  Matrix q = m;
  const std::size_t rows = m.rows();
  for (std::size_t c = 0; c < m.cols(); ++c) {
    Vector v = q.column(c);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t p = 0; p < c; ++p) {
        const Vector qp = q.column(p);
        const double proj = dot(qp, v);
        for (std::size_t r = 0; r < rows; ++r) v[r] -= proj * qp[r];
      }
    }
    const double n = norm(v);
    if (!(n >= 1e-12))
      throw RankDeficient("gram_schmidt: column " + std::to_string(c) +
                          " is linearly dependent on its predecessors");
    for (double& x : v) x /= n;
    q.set_column(c, v);
  }
  return q;
}

namespace {

// Columns of `a` are rotated in place until mutually orthogonal; their norms
// are then the singular values.
Vector one_sided_jacobi(Matrix a) {
  const std::size_t n = a.cols();
  const std::size_t m = a.rows();
  constexpr double kEps = 1e-15;
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          alpha += a(i, p) * a(i, p);
          beta += a(i, q) * a(i, q);
          gamma += a(i, p) * a(i, q);
        }
        if (gamma == 0.0 || std::abs(gamma) <= kEps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const double ap = a(i, p);
          const double aq = a(i, q);
          a(i, p) = c * ap - s * aq;
          a(i, q) = s * ap + c * aq;
        }
      }
    }
    if (!rotated) break;
  }
  Vector sv(n);
  for (std::size_t c = 0; c < n; ++c) sv[c] = norm(a.column(c));
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

}  // namespace

Vector singular_values(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return {};
  if (m.cols() > m.rows()) return one_sided_jacobi(m.transposed());
  return one_sided_jacobi(m);
}

double gram_jacobian(const Matrix& m) {
  if (m.cols() > m.rows()) throw DimensionMismatch("gram_jacobian needs cols <= rows");
  if (m.cols() == 0) return 1.0;
  double prod = 1.0;
  for (double s : singular_values(m)) prod *= s;
  return prod;
}

double singular_min(const Matrix& m) {
  const Vector sv = singular_values(m);
  return sv.empty() ? 0.0 : sv.back();
}

}  // namespace ivm
