#include <gtest/gtest.h>

#include <numbers>

#include "rtsl/linalg.hpp"
#include "support.hpp"

using namespace rtsl;

TEST(Mat2, ProductInverseDeterminant) {
  const Mat2 m{2.0, 1.0, 7.0, 4.0};
  EXPECT_DOUBLE_EQ(m.det(), 1.0);
  EXPECT_EQ(m * m.inverse(), Mat2::identity());
  EXPECT_EQ((m * Mat2::identity()), m);
  const Vec2 v = m * Vec2{1.0, -1.0};
  EXPECT_DOUBLE_EQ(v.x, 1.0);
  EXPECT_DOUBLE_EQ(v.y, 3.0);
  EXPECT_EQ(m.transpose(), (Mat2{2.0, 7.0, 1.0, 4.0}));
}

TEST(Mat2, PropertyNormMatchesGramEigenvalue) {
  rtsl_test::Gen g(10);
  for (int trial = 0; trial < 500; ++trial) {
    const Mat2 m{g.real(-5, 5), g.real(-5, 5), g.real(-5, 5), g.real(-5, 5)};
    const Mat2 gram = m.transpose() * m;
    const double tr = gram.trace();
    const double disc = std::sqrt(std::max(0.0, tr * tr / 4 - gram.det()));
    const double want = std::sqrt(tr / 2 + disc);
    EXPECT_NEAR(sl2_norm(m), want, 1e-12 * want);
  }
}

TEST(Mat2, NormOfDiagonal) {
  EXPECT_DOUBLE_EQ(sl2_norm(Mat2::diagonal(-3.0, 0.5)), 3.0);
  EXPECT_DOUBLE_EQ(max_abs_entry(Mat2{1, -4, 2, 3}), 4.0);
}

TEST(DenseEigen, PathGraphClosedForm) {
  const std::size_t n = 40;
  DenseMatrix a(n);
  for (std::size_t i = 0; i + 1 < n; ++i) a(i, i + 1) = a(i + 1, i) = 1.0;
  const auto ev = symmetric_eigenvalues_dense(a);
  ASSERT_EQ(ev.size(), n);
  for (std::size_t k = 1; k <= n; ++k) {
    const double want = 2.0 * std::cos(static_cast<double>(n + 1 - k) * std::numbers::pi / (n + 1));
    EXPECT_NEAR(ev[k - 1], want, 1e-12);
  }
}

TEST(DenseEigen, PropertyTraceAndFrobenius) {
  rtsl_test::Gen g(11);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = static_cast<std::size_t>(g.integer(1, 30));
    DenseMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = g.real(-1, 1);
    const auto ev = symmetric_eigenvalues_dense(a);
    double s = 0.0, s2 = 0.0;
    for (double x : ev) {
      s += x;
      s2 += x * x;
    }
    EXPECT_NEAR(s, a.trace(), 1e-11);
    EXPECT_NEAR(std::sqrt(s2), a.frobenius(), 1e-11);
    EXPECT_TRUE(std::is_sorted(ev.begin(), ev.end()));
  }
}

TEST(DenseEigen, TwoByTwoClosedForm) {
  DenseMatrix a(2);
  a(0, 0) = 1.0;
  a(1, 1) = 3.0;
  a(0, 1) = a(1, 0) = 2.0;
  const auto ev = symmetric_eigenvalues_dense(a);
  EXPECT_NEAR(ev[0], 2.0 - std::sqrt(5.0), 1e-14);
  EXPECT_NEAR(ev[1], 2.0 + std::sqrt(5.0), 1e-14);
}

TEST(DenseEigen, Errors) {
  DenseMatrix a(2);
  a(0, 1) = 1.0;
  EXPECT_THROW(symmetric_eigenvalues_dense(a), std::invalid_argument);
  EXPECT_THROW(symmetric_eigenvalues_dense(DenseMatrix(kDenseLimit + 1)), std::invalid_argument);
  EXPECT_THROW(a * std::vector<double>(3), std::invalid_argument);
}
