#include <algorithm>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "ivm/errors.hpp"
#include "ivm/grassmann.hpp"
#include "test_support.hpp"

namespace ivm {
namespace {

Subspace span2(std::size_t d, std::size_t a, std::size_t b) {
  const std::size_t axes[] = {a, b};
  return Subspace::coordinate(d, axes);
}

TEST(Haar, OrthonormalAndDeterministic) {
  for (std::size_t d = 1; d <= 8; ++d)
    for (std::size_t j = 1; j <= d; ++j) {
      const Subspace h = haar_sample(d, j, RngStream{1, d * 10 + j, 0});
      EXPECT_LT(max_abs_diff(h.basis().transposed() * h.basis(), Matrix::identity(j)), 1e-10);
      EXPECT_EQ(h.basis(), haar_sample(d, j, RngStream{1, d * 10 + j, 0}).basis());
    }
  // d = j: projection is an isometry of R^d.
  const Subspace full = haar_sample(3, 3, RngStream{2, 0, 0});
  const Vector x{1.0, -2.0, 0.5};
  EXPECT_NEAR(norm(project_point(full, x)), norm(x), 1e-12);
}

TEST(Haar, TraceIdentity) {
  double sum = 0.0;
  const int n = 10000;
  const Vector e1{1.0, 0.0, 0.0};
  for (int k = 0; k < n; ++k) {
    const Vector p = project_point(haar_sample(3, 2, derive_stream(3, StreamPurpose::user, k)), e1);
    sum += dot(p, p);
  }
  EXPECT_NEAR(sum / n, 2.0 / 3.0, 0.02);
}

// A uniform random line in R^3 has <h, e1> uniform on [-1, 1]; the KS
// statistic against that law checks rotation invariance of the sampler.
TEST(Haar, RotationInvarianceKolmogorovSmirnov) {
  const int n = 10000;
  std::vector<double> c;
  const Vector v = [] {
    Vector w{0.3, -0.5, 0.8};
    return scaled(w, 1.0 / norm(w));
  }();
  for (int k = 0; k < n; ++k) {
    const Subspace h = haar_sample(3, 1, derive_stream(4, StreamPurpose::user, k));
    c.push_back(dot(h.basis().column(0), v));
  }
  std::sort(c.begin(), c.end());
  double ks = 0.0;
  for (int i = 0; i < n; ++i) {
    const double cdf = (c[i] + 1.0) / 2.0;
    ks = std::max({ks, std::abs(cdf - double(i) / n), std::abs(cdf - double(i + 1) / n)});
  }
  EXPECT_LT(ks, 0.03);
}

TEST(Project, Examples) {
  const Subspace h = span2(3, 0, 1);
  EXPECT_EQ(project_point(h, Vector{3.0, 4.0, 5.0}), (Vector{3.0, 4.0}));
  EXPECT_EQ(project_point(h, Vector{0.0, 0.0, 7.0}), (Vector{0.0, 0.0}));
  const VPolytope shadow = project_body(h, testing::cube3());
  EXPECT_EQ(shadow.size(), 8u);
  EXPECT_NEAR(polygon_area(hull_2d(shadow.vertices())), 1.0, 1e-15);
  const VPolytope seg(3, {{0.0, 0.0, 0.0}, {0.0, 0.0, 2.0}});
  const VPolytope flat = project_body(h, seg);
  EXPECT_EQ(flat.vertex(0), flat.vertex(1));
}

TEST(Project, IsometryOnH) {
  auto s = testing::gen(30);
  for (int trial = 0; trial < 50; ++trial) {
    const Subspace h = haar_sample(5, 3, RngStream{5, std::uint64_t(trial), 0});
    const Vector c = testing::random_vector(s, 3);
    EXPECT_NEAR(norm(project_point(h, h.embed(c))), norm(c), 1e-12);
  }
}

TEST(AxisSplit, Examples) {
  const Subspace h = span2(3, 0, 1);
  const AxisSplit a = axis_split(h, Vector{0.6, 0.8, 0.0});
  EXPECT_NEAR(a.ell, 1.0, 1e-15);
  EXPECT_NEAR(a.u_h[0], 0.6, 1e-15);
  EXPECT_NEAR(a.u_h[1], 0.8, 1e-15);
  // j = 2: E_H is the perpendicular with first nonzero coordinate positive.
  ASSERT_EQ(a.e_h_basis.cols(), 1u);
  EXPECT_NEAR(a.e_h_basis(0, 0), 0.8, 1e-15);
  EXPECT_NEAR(a.e_h_basis(1, 0), -0.6, 1e-15);
  EXPECT_THROW(axis_split(h, Vector{0.0, 0.0, 1.0}), DegenerateDirection);
}

TEST(Goodness, IdentityAndDegenerate) {
  const Subspace e = span2(3, 0, 1);
  const Vector u{1.0, 0.0, 0.0};
  const GoodnessCertificate c = goodness(e, e, u);
  EXPECT_NEAR(c.sigma_min, 1.0, 1e-14);
  EXPECT_NEAR(c.ell_h, 1.0, 1e-14);
  EXPECT_NEAR(c.jacobian, 1.0, 1e-14);
  EXPECT_NEAR(c.b_h, ball_volume(1), 1e-14);
  EXPECT_NEAR(c.c_h, 2.0 * ball_volume(1), 1e-14);
  EXPECT_TRUE(c.good());

  const GoodnessCertificate bad = goodness(span2(3, 0, 2), e, u);
  EXPECT_NEAR(bad.sigma_min, 0.0, 1e-15);
  EXPECT_FALSE(bad.good());

  const GoodnessCertificate perp = goodness(span2(4, 2, 3), span2(4, 0, 1), Vector{1, 0, 0, 0});
  EXPECT_TRUE(perp.degenerate);
  EXPECT_EQ(perp.c_h, 0.0);
}

// det(P_H restricted to E) equals ell_H * J(T_H): the axis and transverse
// parts of the map are block triangular in the split bases.
TEST(Goodness, DeterminantFactorisation) {
  for (std::size_t d : {3u, 4u, 5u, 6u})
    for (std::size_t j = 2; j < d; ++j) {
      const Subspace e = Subspace::leading(d, j);
      Vector u(d, 0.0);
      u[0] = 1.0;
      for (int k = 0; k < 20; ++k) {
        const Subspace h = haar_sample(d, j, RngStream{9, d * 100 + j * 10, std::uint64_t(k) * 1000});
        const GoodnessCertificate c = goodness(h, e, u);
        const double det = gram_jacobian(h.basis().transposed() * e.basis());
        EXPECT_NEAR(c.ell_h * c.jacobian, det, 1e-10) << d << "," << j;
        EXPECT_LE(c.sigma_min, c.ell_h + 1e-12);
      }
    }
}

TEST(Goodness, Lemma4d2d) {
  const Subspace e = Subspace::leading(4, 2);
  const Vector u{1.0, 0.0, 0.0, 0.0};
  int near_singular = 0;
  for (int k = 0; k < 10000; ++k)
    near_singular += goodness(haar_sample(4, 2, derive_stream(0, StreamPurpose::lemma, k)), e, u)
                             .sigma_min < 1e-8
                         ? 1
                         : 0;
  EXPECT_EQ(near_singular, 0);
}

TEST(Goodness, RejectsBadAxis) {
  const Subspace e = span2(3, 0, 1);
  EXPECT_THROW(goodness(e, e, Vector{0.0, 0.0, 1.0}), DomainError);
  EXPECT_THROW(goodness(e, e, Vector{2.0, 0.0, 0.0}), DomainError);
}

}  // namespace
}  // namespace ivm
