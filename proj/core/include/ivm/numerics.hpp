#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace ivm {

using Vector = std::vector<double>;

/// Dense row-major matrix. Only the handful of kernels the geometry code
/// needs are provided; this is not a general linear-algebra type.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix from_columns(std::span<const Vector> columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector column(std::size_t c) const;
  void set_column(std::size_t c, std::span<const double> v);

  Matrix transposed() const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, std::span<const double> x);

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);
Vector add(std::span<const double> a, std::span<const double> b);
Vector subtract(std::span<const double> a, std::span<const double> b);
Vector scaled(std::span<const double> a, double s);
/// a + s*b
Vector axpy(std::span<const double> a, double s, std::span<const double> b);
bool all_finite(std::span<const double> v);

/// Largest |entry| of A - B; matrices must have equal shape.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// vol_m(B_m), built from vol_0 = 1, vol_1 = 2 and vol_m = (2*pi/m) vol_{m-2}.
double ball_volume(int m);

/// Flag coefficient binom(d,j) vol_d(B_d) / (vol_j(B_j) vol_{d-j}(B_{d-j})).
double flag_coefficient(int d, int j);

enum class Sidedness { one_sided, two_sided };

/// Needle constant C(d,j) = [d j] vol_{j-1}(B_{j-1}); doubled for needles that
/// extend to both sides of their base point.
double needle_constant(int d, int j, Sidedness sided);

double binomial(int n, int k);
double factorial(int n);

/// Modified Gram-Schmidt with one reorthogonalisation pass.
/// Throws RankDeficient when a residual column norm drops below 1e-12.
Matrix gram_schmidt(const Matrix& m);

/// All singular values, descending, by cyclic one-sided Jacobi rotations.
Vector singular_values(const Matrix& m);

/// sqrt(det(M^T M)) for an r x c matrix with c <= r; zero when rank-deficient.
double gram_jacobian(const Matrix& m);

double singular_min(const Matrix& m);

}  // namespace ivm
