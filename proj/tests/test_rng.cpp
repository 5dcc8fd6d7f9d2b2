#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "ivm/rng.hpp"

namespace ivm {
namespace {

TEST(Rng, CellIsPure) {
  EXPECT_EQ(rng_cell(1, 2, 3), rng_cell(1, 2, 3));
  EXPECT_NE(rng_cell(1, 2, 3), rng_cell(1, 2, 4));
  RngStream a{7, 9, 0}, b{7, 9, 0};
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(Rng, StreamsSeparate) {
  RngStream a{3, 0, 0}, b{3, 1, 0};
  EXPECT_NE(a.uniform(), b.uniform());
  std::set<std::uint64_t> firsts;
  for (std::uint64_t k = 0; k < 1000; ++k)
    firsts.insert(derive_stream(0, StreamPurpose::subspace, k).next_u64());
  EXPECT_EQ(firsts.size(), 1000u);
  EXPECT_NE(derive_stream(0, StreamPurpose::subspace, 5).stream,
            derive_stream(0, StreamPurpose::points, 5).stream);
}

TEST(Rng, UniformMean) {
  RngStream s{42, 0, 0};
  double sum = 0.0, lo = 1.0, hi = 0.0;
  const int n = 1'000'000;
  for (int i = 0; i < n; ++i) {
    const double u = s.uniform();
    sum += u;
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  EXPECT_GE(lo, 0.0);
  EXPECT_LT(hi, 1.0);
  EXPECT_NEAR(sum / n, 0.5, 0.002);
}

TEST(Rng, GaussianMoments) {
  RngStream s{42, 1, 0};
  double sum = 0.0, sum2 = 0.0;
  const int n = 1'000'000;
  for (int i = 0; i < n; ++i) {
    const double g = s.gaussian();
    ASSERT_TRUE(std::isfinite(g));
    sum += g;
    sum2 += g * g;
  }
  const double mean = sum / n;
  EXPECT_NEAR(mean, 0.0, 0.005);
  EXPECT_NEAR(sum2 / n - mean * mean, 1.0, 0.01);
}

}  // namespace
}  // namespace ivm
