#include <gtest/gtest.h>

#include <numbers>

#include "rtsl/experiments.hpp"
#include "support.hpp"

using namespace rtsl;

namespace {

std::size_t longest_run(const BranchingSequence& w, int value) {
  std::size_t best = 0, cur = 0;
  for (int v : w.values()) {
    cur = v == value ? cur + 1 : 0;
    best = std::max(best, cur);
  }
  return best;
}

}  // namespace

TEST(Engineered, RunCoveringEverythingIsConstant) {
  const auto w = engineered_sequence(BranchingDistribution::uniform(2, 3), 3, 0, 50, 50, 1);
  EXPECT_EQ(longest_run(w, 3), 50u);
}

TEST(Engineered, OutsideRunUnchanged) {
  const auto dist = BranchingDistribution::uniform(2, 4);
  const auto base = sample_sequence(dist, 300, 9);
  const auto w = engineered_sequence(dist, 4, 100, 64, 300, 9);
  for (std::size_t i = 0; i < 300; ++i) {
    if (i >= 100 && i < 164)
      EXPECT_EQ(w[i], 4);
    else
      EXPECT_EQ(w[i], base[i]);
  }
  EXPECT_GE(longest_run(w, 4), 64u);
}

TEST(Engineered, Errors) {
  const auto dist = BranchingDistribution::uniform(2, 3);
  EXPECT_THROW(engineered_sequence(dist, 3, 10, 5, 14, 1), std::invalid_argument);
  EXPECT_THROW(engineered_sequence(dist, 5, 0, 5, 14, 1), std::invalid_argument);
  EXPECT_NO_THROW(engineered_sequence(dist, 3, 14, 0, 14, 1));
}

TEST(Weyl, VectorHasUnitNorm) {
  const WeylVector psi{7, 33, 0.9};
  double s = 0.0;
  for (std::size_t j = 0; j < 60; ++j) s += std::norm(psi(j));
  EXPECT_NEAR(s, 1.0, 1e-14);
  EXPECT_EQ(psi(6), std::complex<double>(0.0, 0.0));
  EXPECT_EQ(psi(40), std::complex<double>(0.0, 0.0));
}

TEST(Weyl, ConstantRunResidualClosedForm) {
  // only the two boundary rows on each side survive, each of size sqrt(d/R)
  for (int d : {2, 3, 5})
    for (std::size_t r : {4u, 16u, 100u})
      for (double frac : {-0.9, -0.3, 0.0, 0.4, 1.0}) {
        const double e = frac * 2.0 * std::sqrt(d);
        const BranchingSequence w(std::vector<int>(r + 20, d));
        EXPECT_NEAR(weyl_residual(w, d, e, 5, r), 2.0 * std::sqrt(d / static_cast<double>(r)), 1e-12);
        // equality at E = 0, so compare up to rounding
        EXPECT_LE(weyl_residual(w, d, e, 5, r), weyl_bound(d, e, r) * (1 + 1e-12));
      }
}

TEST(Weyl, PropertyMatchesDirectComplexApplication) {
  rtsl_test::Gen g(60);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t k = static_cast<std::size_t>(g.integer(0, 10));
    const std::size_t r = static_cast<std::size_t>(g.integer(1, 40));
    const BranchingSequence w(g.branching(k + r + 5, 2, 4));
    const double e = g.real(-4, 4);
    const double theta = std::acos(e / 4.0);
    const std::size_t len = k + r + 3;
    std::vector<std::complex<double>> psi(len), out(len);
    for (std::size_t j = k; j < k + r; ++j)
      psi[j] = std::exp(std::complex<double>(0, theta * static_cast<double>(j))) /
               std::sqrt(static_cast<double>(r));
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < len; ++i) {
      std::complex<double> v = -e * psi[i];
      if (i > 0) v += std::sqrt(static_cast<double>(w[i - 1])) * psi[i - 1];
      v += std::sqrt(static_cast<double>(w[i])) * psi[i + 1];
      s += std::norm(v);
    }
    EXPECT_NEAR(weyl_residual(w, 4, e, k, r), std::sqrt(s), 1e-12);
  }
}

TEST(Weyl, QuarterScaling) {
  const auto dist = BranchingDistribution::uniform(2, 3);
  for (double e : {0.0, 1.0, 2.0 * std::sqrt(3.0)})
    for (std::size_t r : {16u, 64u, 256u}) {
      const auto a = weyl_residual(engineered_sequence(dist, 3, 9, r + 2, 4 * r + 40, 5), 3, e, 10, r);
      const auto b =
          weyl_residual(engineered_sequence(dist, 3, 9, 4 * r + 2, 4 * r + 40, 5), 3, e, 10, 4 * r);
      EXPECT_NEAR(b / a, 0.5, 0.5 / 1.5);
    }
}

TEST(Weyl, OutsideSpectrum) {
  const BranchingSequence w(std::vector<int>(30, 3));
  try {
    weyl_residual(w, 3, 3.5, 1, 10);
    FAIL();
  } catch (const std::domain_error& e) {
    EXPECT_STREQ(e.what(), "outside asymptotic spectrum");
  }
  EXPECT_NO_THROW(weyl_residual(w, 3, 2.0 * std::sqrt(3.0), 1, 10));
  EXPECT_THROW(weyl_residual(w, 3, 0.0, 25, 10), std::invalid_argument);
}

TEST(Histogram, FreeOperatorClosedForm) {
  const auto dist = BranchingDistribution::point(2);
  const auto ev = truncation_spectrum(dist, 100, 1);
  ASSERT_EQ(ev.size(), 100u);
  std::vector<double> want;
  for (int k = 1; k <= 100; ++k) want.push_back(2.0 * std::sqrt(2.0) * std::cos(k * std::numbers::pi / 101));
  std::sort(want.begin(), want.end());
  for (std::size_t i = 0; i < 100; ++i) EXPECT_NEAR(ev[i], want[i], 1e-10);

  const std::size_t bins = 16;
  const auto h = spectrum_histogram(dist, 100, 1, bins);
  const double edge = 2.0 * std::sqrt(2.0);
  std::vector<std::size_t> counts(bins, 0);
  for (double x : want) {
    auto b = static_cast<std::size_t>((x + edge) / (2 * edge) * bins);
    counts[std::min(b, bins - 1)]++;
  }
  EXPECT_EQ(h.counts, counts);
  EXPECT_EQ(h.outside, 0u);
  EXPECT_NEAR(h.max_eigenvalue, want.back(), 1e-12);
  EXPECT_NEAR(h.min_eigenvalue, want.front(), 1e-12);
}

TEST(Histogram, PropertyInclusion) {
  rtsl_test::Gen g(61);
  for (int trial = 0; trial < 15; ++trial) {
    const int lo = g.integer(2, 5);
    const auto dist = BranchingDistribution::uniform(lo, lo + g.integer(0, 3));
    const std::size_t n = static_cast<std::size_t>(g.integer(1, 3000));
    const auto h = spectrum_histogram(dist, n, g.seed(), 40);
    std::size_t total = 0;
    for (auto c : h.counts) total += c;
    EXPECT_EQ(total, n);
    EXPECT_EQ(h.outside, 0u);
    EXPECT_LE(std::max(-h.min_eigenvalue, h.max_eigenvalue), h.edge + 1e-9);
    EXPECT_GE(h.empty_bin_fraction, 0.0);
  }
  EXPECT_THROW(spectrum_histogram(BranchingDistribution::point(2), 50001, 1, 10),
               std::invalid_argument);
}

TEST(DecayFit, ExactExponential) {
  std::vector<double> u(80);
  for (std::size_t j = 0; j < u.size(); ++j) u[j] = std::exp(-0.3 * static_cast<double>(j));
  const auto r = decay_rate_fit(u);
  EXPECT_NEAR(r.fitted_rate, 0.3, 1e-9);
  EXPECT_NEAR(r.fit_residual, 0.0, 1e-9);
  EXPECT_EQ(r.window_first, 0u);
}

TEST(DecayFit, BoundedMultiplicativeNoise) {
  std::vector<double> u(80);
  for (std::size_t j = 0; j < u.size(); ++j)
    u[j] = std::exp(-0.3 * static_cast<double>(j)) * (1.0 + 0.1 * (j % 2 ? -1.0 : 1.0));
  EXPECT_NEAR(decay_rate_fit(u).fitted_rate, 0.3, 0.02);
}

TEST(DecayFit, WindowStartsAtPeakAndStopsAtFloor) {
  std::vector<double> u(200, 0.0);
  for (std::size_t j = 0; j < 20; ++j) u[j] = 1e-3 * static_cast<double>(j);
  for (std::size_t j = 20; j < 200; ++j) u[j] = std::exp(-0.5 * static_cast<double>(j - 20));
  const auto r = decay_rate_fit(u);
  EXPECT_EQ(r.window_first, 20u);
  // last index with exp(-0.5 m) > 1e-12 is m = 55
  EXPECT_EQ(r.window_last, 75u);
  EXPECT_NEAR(r.fitted_rate, 0.5, 1e-9);
}

TEST(DecayFit, Errors) {
  try {
    decay_rate_fit(std::vector<double>(50, 1.0));
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_STREQ(e.what(), "insufficient decay window");
  }
  EXPECT_THROW(decay_rate_fit(std::vector<double>(50, 0.0)), std::invalid_argument);
  EXPECT_THROW(decay_rate_fit(std::vector<double>(5, 1.0), 0, 5), std::invalid_argument);
}

TEST(Localization, FreeOperatorHasNoDecay) {
  const auto reports =
      localization_report(BranchingDistribution::point(2), 400, 1, 0.5, 1.5, {20000, 1, 1});
  ASSERT_FALSE(reports.empty());
  std::vector<double> rates;
  for (const auto& r : reports) {
    EXPECT_LE(r.eigen_residual, 1e-8);
    EXPECT_GE(r.eigenvalue, 0.5);
    EXPECT_LT(r.eigenvalue, 1.5);
    rates.push_back(r.fitted_rate);
  }
  EXPECT_LE(std::abs(finite_median(rates)), 0.02);
}

TEST(Localization, DisorderGivesDecay) {
  const auto reports =
      localization_report(BranchingDistribution::uniform(2, 3), 600, 3, 0.9, 1.1, {20000, 4, 1});
  ASSERT_FALSE(reports.empty());
  std::vector<double> rates;
  for (const auto& r : reports) {
    EXPECT_LE(r.eigen_residual, 1e-8);
    EXPECT_GT(r.reference_rate, 0.0);
    rates.push_back(r.fitted_rate);
  }
  EXPECT_GT(finite_median(rates), 0.0);
}

TEST(Localization, WindowErrorsAndEmptyReport) {
  const auto dist = BranchingDistribution::uniform(2, 3);
  EXPECT_THROW(localization_report(dist, 100, 1, -0.5, 0.5), std::invalid_argument);
  EXPECT_THROW(localization_report(dist, 100, 1, 1.0, 4.0), std::invalid_argument);
  EXPECT_THROW(localization_report(dist, 100, 1, 1.0, 0.5), std::invalid_argument);
  // a 1-site truncation has the single eigenvalue 0
  EXPECT_TRUE(localization_report(dist, 1, 1, 0.5, 1.0).empty());
}

TEST(Median, IgnoresNaN) {
  EXPECT_EQ(finite_median({3.0, std::nan(""), 1.0, 2.0}), 2.0);
  EXPECT_EQ(finite_median({4.0, 1.0}), 2.5);
  EXPECT_TRUE(std::isnan(finite_median({})));
}

TEST(TreeDecay, BinaryTreeAddsExactlyHalfLogTwo) {
  const RadialTree t(std::vector<int>(30, 2), 30);
  std::vector<double> u(30);
  for (std::size_t j = 0; j < u.size(); ++j)
    u[j] = std::exp(-0.2 * static_cast<double>(j)) * (1.0 + 0.1 * std::cos(static_cast<double>(j)));
  const auto rep = tree_decay_check(t, 1, 1, u, 0.2, 0.05);
  EXPECT_NEAR(rep.tree.fitted_rate - rep.half_line.fitted_rate, 0.5 * std::numbers::ln2, 1e-12);
  EXPECT_TRUE(rep.ok);
}

TEST(TreeDecay, TernaryTreeAddsHalfLogThree) {
  const RadialTree t(std::vector<int>(30, 3), 30);
  std::vector<double> u(28);
  for (std::size_t j = 0; j < u.size(); ++j) u[j] = std::exp(-0.1 * static_cast<double>(j));
  const auto rep = tree_decay_check(t, 2, 5, u, 0.1, 0.0);
  EXPECT_NEAR(rep.tree.fitted_rate - rep.half_line.fitted_rate, 0.5 * std::log(3.0), 1e-12);
  EXPECT_TRUE(rep.ok);
}

TEST(TreeDecay, FailureReportsBothRates) {
  const RadialTree t(std::vector<int>(25, 2), 25);
  std::vector<double> u(25);
  for (std::size_t j = 0; j < u.size(); ++j) u[j] = std::exp(-0.1 * static_cast<double>(j));
  const auto rep = tree_decay_check(t, 0, 1, u, 1.0, 0.05);
  EXPECT_FALSE(rep.ok);
  EXPECT_NE(rep.message.find("half-line rate"), std::string::npos);
}

TEST(TreeDecay, DeltaAndShallowTreeAreErrors) {
  const RadialTree t(std::vector<int>(30, 2), 30);
  std::vector<double> delta(30, 0.0);
  delta[0] = 1.0;
  EXPECT_THROW(tree_decay_check(t, 0, 1, delta, 0.0, 0.05), std::invalid_argument);
  const RadialTree shallow(std::vector<int>(19, 2), 19);
  EXPECT_THROW(tree_decay_check(shallow, 0, 1, std::vector<double>(20, 1.0), 0.0, 0.05),
               std::invalid_argument);
}
