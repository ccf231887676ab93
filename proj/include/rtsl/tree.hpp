#pragma once

// Finite-depth radial rooted trees with breadth-first vertex indexing and the
// adjacency Laplacian (Delta f)(v) = sum of f over the neighbours of v.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "rtsl/linalg.hpp"

namespace rtsl {

/// Vertex i of generation n.
struct Vertex {
  std::size_t generation;
  std::uint64_t index;
  friend bool operator==(const Vertex&, const Vertex&) = default;
};

class RadialTree {
 public:
  /// Generation n has g_n vertices, g_0 = 1, g_{n+1} = g_n * b_n. Throws when a
  /// generation size does not fit in 64 bits.
  RadialTree(std::vector<int> branching, std::size_t depth) {
    if (branching.size() < depth) throw std::invalid_argument("branching list shorter than depth");
    branching.resize(depth);
    for (int b : branching)
      if (b < 2) throw std::invalid_argument("branching value below 2");
    branching_ = std::move(branching);
    sizes_.assign(depth + 1, 1);
    offsets_.assign(depth + 2, 0);
    for (std::size_t n = 0; n < depth; ++n) {
      const auto b = static_cast<std::uint64_t>(branching_[n]);
      if (sizes_[n] > std::numeric_limits<std::uint64_t>::max() / b)
        throw std::overflow_error("tree too large to index");
      sizes_[n + 1] = sizes_[n] * b;
    }
    for (std::size_t n = 0; n <= depth; ++n) {
      if (offsets_[n] > std::numeric_limits<std::uint64_t>::max() - sizes_[n]) {
        offsets_.resize(n + 1);
        overflow_ = true;
        break;
      }
      offsets_[n + 1] = offsets_[n] + sizes_[n];
    }
  }

  std::size_t depth() const noexcept { return branching_.size(); }
  std::span<const int> branching() const noexcept { return branching_; }
  int b(std::size_t n) const { return branching_.at(n); }
  int max_branching() const {
    int m = 0;
    for (int b : branching_) m = std::max(m, b);
    return m;
  }
  std::span<const std::uint64_t> generation_sizes() const noexcept { return sizes_; }
  std::uint64_t generation_size(std::size_t n) const { return sizes_.at(n); }

  std::uint64_t vertex_count() const {
    if (overflow_) throw std::overflow_error("tree too large to index");
    return offsets_.back();
  }
  /// Position of (n, i) in the global breadth-first order.
  std::uint64_t bfs_index(const Vertex& v) const { return offsets_.at(v.generation) + v.index; }

  Vertex parent(const Vertex& v) const {
    if (v.generation == 0) throw std::invalid_argument("root has no parent");
    return {v.generation - 1, v.index / static_cast<std::uint64_t>(b(v.generation - 1))};
  }
  /// Child c of v, c in [0, b_n).
  Vertex child(const Vertex& v, int c) const {
    if (v.generation >= depth()) throw std::invalid_argument("leaf generation has no children");
    return {v.generation + 1, v.index * static_cast<std::uint64_t>(b(v.generation)) +
                                  static_cast<std::uint64_t>(c)};
  }
  /// Number of generation-(n+j) descendants of a generation-n vertex.
  std::uint64_t descendants(std::size_t n, std::size_t j) const {
    std::uint64_t m = 1;
    for (std::size_t i = n; i < n + j; ++i) m *= static_cast<std::uint64_t>(b(i));
    return m;
  }

 private:
  std::vector<int> branching_;
  std::vector<std::uint64_t> sizes_;
  std::vector<std::uint64_t> offsets_;
  bool overflow_ = false;
};

inline RadialTree build_tree(std::span<const int> branching, std::size_t depth) {
  return RadialTree(std::vector<int>(branching.begin(), branching.end()), depth);
}

/// Function on the vertices of a tree, stored generation by generation.
template <typename T = double>
class TreeFunction {
 public:
  TreeFunction() = default;
  explicit TreeFunction(const RadialTree& tree) {
    const auto sizes = tree.generation_sizes();
    values_.reserve(sizes.size());
    for (auto g : sizes) values_.emplace_back(static_cast<std::size_t>(g), T{});
  }

  std::size_t generations() const noexcept { return values_.size(); }
  std::span<T> generation(std::size_t n) { return values_.at(n); }
  std::span<const T> generation(std::size_t n) const { return values_.at(n); }
  T& operator()(std::size_t n, std::uint64_t i) { return values_[n][i]; }
  const T& operator()(std::size_t n, std::uint64_t i) const { return values_[n][i]; }
  T& operator[](const Vertex& v) { return values_[v.generation][v.index]; }
  const T& operator[](const Vertex& v) const { return values_[v.generation][v.index]; }

  bool matches(const RadialTree& tree) const {
    const auto sizes = tree.generation_sizes();
    if (sizes.size() != values_.size()) return false;
    for (std::size_t n = 0; n < sizes.size(); ++n)
      if (values_[n].size() != sizes[n]) return false;
    return true;
  }

  /// Concatenation in breadth-first order.
  std::vector<T> flatten() const {
    std::vector<T> out;
    for (const auto& g : values_) out.insert(out.end(), g.begin(), g.end());
    return out;
  }

  static TreeFunction unflatten(const RadialTree& tree, std::span<const T> flat) {
    TreeFunction f(tree);
    std::size_t k = 0;
    for (auto& g : f.values_)
      for (auto& x : g) x = flat[k++];
    return f;
  }

 private:
  std::vector<std::vector<T>> values_;
};

template <typename T>
double l2_norm(const TreeFunction<T>& f) {
  double s = 0.0;
  for (std::size_t n = 0; n < f.generations(); ++n)
    for (const auto& x : f.generation(n)) s += std::norm(x);
  return std::sqrt(s);
}

template <typename T>
double sup_norm(std::span<const T> values) {
  double m = 0.0;
  for (const auto& x : values) m = std::max(m, static_cast<double>(std::abs(x)));
  return m;
}

template <typename T>
T inner(const TreeFunction<T>& f, const TreeFunction<T>& h) {
  T s{};
  for (std::size_t n = 0; n < f.generations(); ++n) {
    const auto fg = f.generation(n);
    const auto hg = h.generation(n);
    for (std::size_t i = 0; i < fg.size(); ++i) {
      if constexpr (std::is_floating_point_v<T>)
        s += fg[i] * hg[i];
      else
        s += std::conj(fg[i]) * hg[i];
    }
  }
  return s;
}

/// (Delta f)(v) = f(parent) + sum over children. The truncation at depth D
/// leaves the last generation without a children term.
template <typename T>
TreeFunction<T> apply_laplacian(const RadialTree& tree, const TreeFunction<T>& f) {
  if (!f.matches(tree)) throw std::invalid_argument("dimension mismatch");
  TreeFunction<T> out(tree);
  const std::size_t depth = tree.depth();
  for (std::size_t n = 0; n <= depth; ++n) {
    auto dst = out.generation(n);
    if (n > 0) {
      const auto up = f.generation(n - 1);
      const auto b = static_cast<std::uint64_t>(tree.b(n - 1));
      for (std::uint64_t i = 0; i < dst.size(); ++i) dst[i] += up[i / b];
    }
    if (n < depth) {
      const auto down = f.generation(n + 1);
      const auto b = static_cast<std::uint64_t>(tree.b(n));
      for (std::uint64_t i = 0; i < dst.size(); ++i)
        for (std::uint64_t c = 0; c < b; ++c) dst[i] += down[i * b + c];
    }
  }
  return out;
}

/// Dense adjacency matrix in breadth-first vertex order.
inline DenseMatrix adjacency_matrix(const RadialTree& tree, std::size_t dense_limit = kDenseLimit) {
  if (tree.vertex_count() > dense_limit) throw std::invalid_argument("dense limit exceeded");
  DenseMatrix a(static_cast<std::size_t>(tree.vertex_count()));
  for (std::size_t n = 0; n < tree.depth(); ++n) {
    const auto g = tree.generation_size(n);
    for (std::uint64_t i = 0; i < g; ++i) {
      const Vertex v{n, i};
      for (int c = 0; c < tree.b(n); ++c) {
        const auto p = tree.bfs_index(v);
        const auto q = tree.bfs_index(tree.child(v, c));
        a(p, q) = a(q, p) = 1.0;
      }
    }
  }
  return a;
}

}  // namespace rtsl
