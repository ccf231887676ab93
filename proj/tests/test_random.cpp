#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "rtsl/random.hpp"
#include "support.hpp"

using namespace rtsl;

TEST(Distribution, ParsesLiteralAndSortsAtoms) {
  const auto d = BranchingDistribution::parse("3:0.25,2:0.75");
  ASSERT_EQ(d.atoms().size(), 2u);
  EXPECT_EQ(d.atoms()[0].value, 2);
  EXPECT_DOUBLE_EQ(d.atoms()[0].weight, 0.75);
  EXPECT_EQ(d.d_mu(), 3);
  EXPECT_EQ(d.d_min(), 2);
  EXPECT_FALSE(d.degenerate());
}

TEST(Distribution, RenormalizesNearlyUnitWeights) {
  const auto d = BranchingDistribution::parse("2:0.3333333,3:0.6666666");
  EXPECT_NEAR(d.atoms()[0].weight + d.atoms()[1].weight, 1.0, 1e-15);
}

TEST(Distribution, RejectsBadLiterals) {
  for (const char* bad : {"", "2", "2:0.5,3", "1:1", "2:0.5,2:0.5", "2:-1,3:2", "2:0.4,3:0.4",
                          "x:1", "2:1abc"})
    EXPECT_THROW(BranchingDistribution::parse(bad), std::invalid_argument) << bad;
}

TEST(Distribution, BelowTwoMessage) {
  try {
    BranchingDistribution::point(1);
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_STREQ(e.what(), "branching value below 2");
  }
}

TEST(Distribution, StringRoundTrip) {
  const auto d = BranchingDistribution::parse("2:0.1,5:0.2,7:0.7");
  const auto e = BranchingDistribution::parse(d.to_string());
  ASSERT_EQ(d.atoms().size(), e.atoms().size());
  for (std::size_t i = 0; i < d.atoms().size(); ++i) {
    EXPECT_EQ(d.atoms()[i].value, e.atoms()[i].value);
    EXPECT_EQ(d.atoms()[i].weight, e.atoms()[i].weight);
  }
}

TEST(Substream, UniformMatchesEngineBits) {
  std::mt19937_64 ref(derive_seed(9, 4));
  Substream s(9, 4);
  for (int i = 0; i < 100; ++i) {
    const double want = static_cast<double>(ref() >> 11) / 9007199254740992.0;
    EXPECT_EQ(s.uniform(), want);
  }
}

TEST(Substream, DerivedSeedsAreDistinct) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t seed = 0; seed < 20; ++seed)
    for (std::uint64_t stream = 0; stream < 200; ++stream) seen.insert(derive_seed(seed, stream));
  EXPECT_EQ(seen.size(), 20u * 200u);
}

TEST(Sequence, SameSeedSameSequence) {
  const auto d = BranchingDistribution::uniform(2, 5);
  EXPECT_EQ(sample_sequence(d, 500, 11), sample_sequence(d, 500, 11));
  EXPECT_FALSE(sample_sequence(d, 500, 11) == sample_sequence(d, 500, 12));
}

TEST(Sequence, PrefixStable) {
  const auto d = BranchingDistribution::uniform(2, 3);
  const auto a = sample_sequence(d, 100, 3);
  const auto b = sample_sequence(d, 1000, 3);
  for (std::size_t i = 0; i < 100; ++i) EXPECT_EQ(a[i], b[i]);
}

TEST(Sequence, EmpiricalFrequenciesMatchWeights) {
  const auto d = BranchingDistribution::parse("2:0.2,3:0.5,4:0.3");
  const std::size_t n = 200000;
  const auto w = sample_sequence(d, n, 77);
  for (const auto& atom : d.atoms()) {
    std::size_t hits = 0;
    for (int v : w.values()) hits += (v == atom.value);
    const double p = atom.weight;
    const double sigma = std::sqrt(p * (1 - p) / n);
    EXPECT_NEAR(static_cast<double>(hits) / n, p, 5 * sigma);
  }
}

TEST(Sequence, EmptyIsAnError) {
  EXPECT_THROW(sample_sequence(BranchingDistribution::point(2), 0, 1), std::invalid_argument);
}

TEST(Sequence, DegenerateLawIsConstant) {
  const auto w = sample_sequence(BranchingDistribution::point(4), 300, 5);
  for (int v : w.values()) EXPECT_EQ(v, 4);
}

TEST(Shift, PropertyShiftComposes) {
  rtsl_test::Gen g(1);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t len = static_cast<std::size_t>(g.integer(1, 60));
    const BranchingSequence w(g.branching(len, 2, 6));
    const auto j = static_cast<std::size_t>(g.integer(0, static_cast<int>(len)));
    const auto k = static_cast<std::size_t>(g.integer(0, static_cast<int>(len - j)));
    const auto s = shift(shift(w, j), k);
    EXPECT_EQ(s, shift(w, j + k));
    EXPECT_EQ(s.origin(), j + k);
    for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(s[i], w[i + j + k]);
  }
}

TEST(Shift, PastEndThrows) {
  const BranchingSequence w({2, 3});
  EXPECT_NO_THROW(shift(w, 2));
  EXPECT_THROW(shift(w, 3), std::invalid_argument);
}
