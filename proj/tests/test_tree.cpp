#include <gtest/gtest.h>

#include <complex>
#include <deque>
#include <utility>

#include "rtsl/tree.hpp"
#include "support.hpp"

using namespace rtsl;

namespace {

// Edge list of the tree with vertices numbered in the order a plain queue
// discovers them; independent of the library's index arithmetic.
std::vector<std::pair<std::size_t, std::size_t>> queue_edges(const std::vector<int>& b,
                                                             std::size_t depth) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::deque<std::pair<std::size_t, std::size_t>> q{{0, 0}};  // (id, generation)
  std::size_t next = 1;
  while (!q.empty()) {
    auto [id, gen] = q.front();
    q.pop_front();
    if (gen == depth) continue;
    for (int c = 0; c < b[gen]; ++c) {
      edges.emplace_back(id, next);
      q.emplace_back(next++, gen + 1);
    }
  }
  return edges;
}

}  // namespace

TEST(RadialTree, FigureOneShape) {
  const RadialTree t({3, 2, 3}, 3);
  const std::vector<std::uint64_t> want{1, 3, 6, 18};
  EXPECT_EQ(std::vector<std::uint64_t>(t.generation_sizes().begin(), t.generation_sizes().end()),
            want);
  EXPECT_EQ(t.vertex_count(), 28u);
  EXPECT_EQ(t.max_branching(), 3);
  EXPECT_EQ(t.descendants(1, 2), 6u);
}

TEST(RadialTree, LongerListIsTruncatedToDepth) {
  const RadialTree t({2, 2, 2, 9}, 2);
  EXPECT_EQ(t.depth(), 2u);
  EXPECT_EQ(t.vertex_count(), 7u);
}

TEST(RadialTree, ConstructionErrors) {
  EXPECT_THROW(RadialTree({2, 2}, 3), std::invalid_argument);
  EXPECT_THROW(RadialTree({2, 1, 2}, 3), std::invalid_argument);
  EXPECT_THROW(RadialTree(std::vector<int>(10, 100000), 10), std::overflow_error);
}

TEST(RadialTree, DepthZeroIsASingleVertex) {
  const RadialTree t({}, 0);
  EXPECT_EQ(t.vertex_count(), 1u);
  TreeFunction<double> f(t);
  f(0, 0) = 5.0;
  EXPECT_EQ(apply_laplacian(t, f)(0, 0), 0.0);
}

TEST(RadialTree, PropertyParentChildInverse) {
  rtsl_test::Gen g(2);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t depth = static_cast<std::size_t>(g.integer(1, 6));
    const RadialTree t(g.branching(depth, 2, 4), depth);
    for (std::size_t n = 0; n < depth; ++n)
      for (std::uint64_t i = 0; i < t.generation_size(n); ++i)
        for (int c = 0; c < t.b(n); ++c) {
          const Vertex v{n, i};
          EXPECT_EQ(t.parent(t.child(v, c)), v);
        }
  }
}

TEST(RadialTree, BfsIndexMatchesQueueOrder) {
  rtsl_test::Gen g(3);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t depth = static_cast<std::size_t>(g.integer(1, 5));
    const auto b = g.branching(depth, 2, 4);
    const RadialTree t(b, depth);
    const auto edges = queue_edges(b, depth);
    std::size_t e = 0;
    for (std::size_t n = 0; n < depth; ++n)
      for (std::uint64_t i = 0; i < t.generation_size(n); ++i)
        for (int c = 0; c < t.b(n); ++c, ++e) {
          EXPECT_EQ(t.bfs_index({n, i}), edges[e].first);
          EXPECT_EQ(t.bfs_index(t.child({n, i}, c)), edges[e].second);
        }
    EXPECT_EQ(e, edges.size());
  }
}

TEST(Laplacian, PropertyMatchesEdgeListOracle) {
  rtsl_test::Gen g(4);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t depth = static_cast<std::size_t>(g.integer(1, 5));
    const auto b = g.branching(depth, 2, 3);
    const RadialTree t(b, depth);
    std::vector<double> flat(t.vertex_count());
    for (auto& x : flat) x = g.real(-1, 1);
    const auto f = TreeFunction<double>::unflatten(t, flat);
    std::vector<double> want(flat.size(), 0.0);
    for (auto [p, q] : queue_edges(b, depth)) {
      want[p] += flat[q];
      want[q] += flat[p];
    }
    const auto got = apply_laplacian(t, f).flatten();
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-14);
    const auto a = adjacency_matrix(t);
    const auto dense = a * flat;
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(dense[i], want[i], 1e-14);
  }
}

TEST(Laplacian, PropertySymmetric) {
  rtsl_test::Gen g(5);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t depth = static_cast<std::size_t>(g.integer(1, 6));
    const RadialTree t(g.branching(depth, 2, 3), depth);
    TreeFunction<double> f(t), h(t);
    for (std::size_t n = 0; n <= depth; ++n) {
      for (auto& x : f.generation(n)) x = g.real(-1, 1);
      for (auto& x : h.generation(n)) x = g.real(-1, 1);
    }
    EXPECT_NEAR(inner(f, apply_laplacian(t, h)), inner(apply_laplacian(t, f), h), 1e-12);
  }
}

TEST(Laplacian, DimensionMismatch) {
  const RadialTree t({2, 2}, 2);
  const RadialTree u({3, 2}, 2);
  EXPECT_THROW(apply_laplacian(t, TreeFunction<double>(u)), std::invalid_argument);
}

TEST(Laplacian, DenseLimit) {
  const RadialTree t({3, 3, 3, 3, 3, 3, 3}, 7);
  EXPECT_THROW(adjacency_matrix(t), std::invalid_argument);
  EXPECT_NO_THROW(adjacency_matrix(t, 5000));
}

TEST(TreeFunction, ComplexInnerConjugatesLeft) {
  const RadialTree t({2}, 1);
  TreeFunction<std::complex<double>> f(t), h(t);
  f(0, 0) = {0.0, 1.0};
  h(0, 0) = {0.0, 1.0};
  EXPECT_EQ(inner(f, h), std::complex<double>(1.0, 0.0));
  EXPECT_DOUBLE_EQ(l2_norm(f), 1.0);
}

TEST(TreeFunction, FlattenRoundTrip) {
  const RadialTree t({2, 3}, 2);
  std::vector<double> flat(t.vertex_count());
  for (std::size_t i = 0; i < flat.size(); ++i) flat[i] = static_cast<double>(i);
  EXPECT_EQ(TreeFunction<double>::unflatten(t, flat).flatten(), flat);
  EXPECT_EQ(sup_norm<double>(flat), static_cast<double>(flat.size() - 1));
}
