#pragma once

// Orthogonal decomposition of l2 of a radial tree into copies of half-line
// Jacobi blocks: multiplicities, the explicit spherical basis phi_{N,k,j}, the
// lift from a block back to the tree, and finite-depth checks that the
// Laplacian acts on each block as J_N.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rtsl/jacobi.hpp"
#include "rtsl/linalg.hpp"
#include "rtsl/tree.hpp"

namespace rtsl {

struct MultiplicityTable {
  std::vector<std::uint64_t> beta;  // beta_0 ... beta_D

  std::uint64_t operator[](std::size_t n) const { return beta.at(n); }
  std::size_t size() const noexcept { return beta.size(); }
};

/// beta_0 = 1, beta_1 = b_0 - 1, beta_k = (b_{k-1} - 1) prod_{j<k-1} b_j.
inline MultiplicityTable multiplicities(const RadialTree& tree) {
  MultiplicityTable t;
  t.beta.reserve(tree.depth() + 1);
  t.beta.push_back(1);
  for (std::size_t k = 1; k <= tree.depth(); ++k)
    t.beta.push_back(static_cast<std::uint64_t>(tree.b(k - 1) - 1) * tree.generation_size(k - 1));
  return t;
}

/// Sum over N of beta_N * (D - N + 1); equals the vertex count.
inline std::uint64_t block_dimension_total(const RadialTree& tree) {
  const auto beta = multiplicities(tree);
  std::uint64_t total = 0;
  for (std::size_t n = 0; n <= tree.depth(); ++n) total += beta[n] * (tree.depth() - n + 1);
  return total;
}

/// Row r (1 <= r < b) of the Helmert completion of the constant vector.
inline std::vector<double> helmert_row(int b, int r) {
  if (r < 1 || r >= b) throw std::invalid_argument("Helmert row out of range");
  std::vector<double> w(static_cast<std::size_t>(b), 0.0);
  const double s = std::sqrt(static_cast<double>(r) * (r + 1));
  for (int c = 0; c < r; ++c) w[static_cast<std::size_t>(c)] = 1.0 / s;
  w[static_cast<std::size_t>(r)] = -static_cast<double>(r) / s;
  return w;
}

/// phi_{N,k,j}: supported on generation N + j. For N >= 1 it equals
/// w_c / sqrt(M_j) on the generation-(N+j) descendants of child c of the
/// anchor, with M_j the number of such descendants per child.
struct SphericalBasisFunction {
  std::size_t N = 0;
  std::uint64_t k = 1;
  std::size_t j = 0;
  std::optional<Vertex> anchor;  // absent for N = 0
  std::vector<double> weights;   // empty for N = 0

  std::size_t generation() const noexcept { return N + j; }

  /// Value shared by every vertex of the support that descends from child c
  /// (c is ignored for N = 0).
  double level(const RadialTree& tree, std::size_t c = 0) const {
    if (N == 0) return 1.0 / std::sqrt(static_cast<double>(tree.generation_size(j)));
    return weights[c] / std::sqrt(static_cast<double>(tree.descendants(N, j)));
  }

  double sup_norm(const RadialTree& tree) const {
    if (N == 0) return level(tree);
    double m = 0.0;
    for (double w : weights) m = std::max(m, std::abs(w));
    return m / std::sqrt(static_cast<double>(tree.descendants(N, j)));
  }

  template <typename T = double>
  void add_to(const RadialTree& tree, TreeFunction<T>& f, T coefficient) const {
    auto g = f.generation(generation());
    if (N == 0) {
      const double v = level(tree);
      for (auto& x : g) x += coefficient * v;
      return;
    }
    const auto m = tree.descendants(N, j);
    for (std::size_t c = 0; c < weights.size(); ++c) {
      const auto child = tree.child(*anchor, static_cast<int>(c));
      const double v = level(tree, c);
      const auto first = child.index * m;
      for (std::uint64_t i = first; i < first + m; ++i) g[i] += coefficient * v;
    }
  }

  TreeFunction<double> to_function(const RadialTree& tree) const {
    TreeFunction<double> f(tree);
    add_to(tree, f, 1.0);
    return f;
  }
};

/// phi_{N,k,0..D-N}. For N >= 1, k - 1 = a * (b_{N-1} - 1) + (r - 1) where a
/// is the anchor's index in generation N - 1 and r the Helmert row.
inline std::vector<SphericalBasisFunction> spherical_basis(const RadialTree& tree, std::size_t N,
                                                           std::uint64_t k) {
  if (N > tree.depth()) throw std::invalid_argument("block generation beyond depth");
  const auto beta = multiplicities(tree);
  if (k < 1 || k > beta[N]) throw std::invalid_argument("copy index out of range");
  SphericalBasisFunction proto;
  proto.N = N;
  proto.k = k;
  if (N > 0) {
    const int b = tree.b(N - 1);
    const auto per_anchor = static_cast<std::uint64_t>(b - 1);
    proto.anchor = Vertex{N - 1, (k - 1) / per_anchor};
    proto.weights = helmert_row(b, static_cast<int>((k - 1) % per_anchor) + 1);
  }
  std::vector<SphericalBasisFunction> out;
  for (std::size_t j = 0; j + N <= tree.depth(); ++j) {
    out.push_back(proto);
    out.back().j = j;
  }
  return out;
}

struct BlockActionReport {
  bool ok = true;
  double max_residual = 0.0;
  std::size_t worst_j = 0;
  /// <phi_{j+1}, Delta phi_j>, expected sqrt(b_{N+j}).
  std::vector<double> off_diagonals;
  std::string message;
};

/// Checks Delta phi_j = sqrt(b_{N+j}) phi_{j+1} + sqrt(b_{N+j-1}) phi_{j-1}
/// (out-of-range terms dropped) for every j; residuals are l2 norms.
inline BlockActionReport verify_block_action(const RadialTree& tree, std::size_t N, std::uint64_t k,
                                             double tol) {
  const auto basis = spherical_basis(tree, N, k);
  std::vector<TreeFunction<double>> phi;
  phi.reserve(basis.size());
  for (const auto& f : basis) phi.push_back(f.to_function(tree));
  BlockActionReport report;
  for (std::size_t j = 0; j < phi.size(); ++j) {
    auto r = apply_laplacian(tree, phi[j]);
    if (j + 1 < phi.size()) {
      report.off_diagonals.push_back(inner(phi[j + 1], r));
      basis[j + 1].add_to(tree, r, -std::sqrt(static_cast<double>(tree.b(N + j))));
    }
    if (j > 0) basis[j - 1].add_to(tree, r, -std::sqrt(static_cast<double>(tree.b(N + j - 1))));
    const double res = l2_norm(r);
    if (res > report.max_residual) {
      report.max_residual = res;
      report.worst_j = j;
    }
  }
  if (report.max_residual > tol) {
    report.ok = false;
    report.message = "block action residual " + std::to_string(report.max_residual) +
                     " at (N,k,j) = (" + std::to_string(N) + "," + std::to_string(k) + "," +
                     std::to_string(report.worst_j) + ")";
  }
  return report;
}

/// sum_j u_j phi_{N,k,j} on the tree.
template <typename T = double>
TreeFunction<T> lift(const RadialTree& tree, std::size_t N, std::uint64_t k, std::span<const T> u) {
  if (N > tree.depth()) throw std::invalid_argument("block generation beyond depth");
  if (u.size() > tree.depth() - N + 1) throw std::invalid_argument("half-line vector longer than block");
  const auto basis = spherical_basis(tree, N, k);
  TreeFunction<T> f(tree);
  for (std::size_t j = 0; j < u.size(); ++j) basis[j].add_to(tree, f, u[j]);
  return f;
}

/// Per-generation sup of lift(tree, N, k, u) for generations 0..D without
/// materializing the tree: |u_{m-N}| * ||phi_{N,k,m-N}||_inf, zero for m < N.
inline std::vector<double> lift_generation_sup(const RadialTree& tree, std::size_t N,
                                               std::uint64_t k, std::span<const double> u) {
  if (N > tree.depth()) throw std::invalid_argument("block generation beyond depth");
  if (u.size() > tree.depth() - N + 1) throw std::invalid_argument("half-line vector longer than block");
  // Only the sup of the weight vector matters, so the anchor is not needed.
  double weight_sup = 1.0;
  if (N > 0) {
    const auto beta = multiplicities(tree);
    if (k < 1 || k > beta[N]) throw std::invalid_argument("copy index out of range");
    const int b = tree.b(N - 1);
    const auto w = helmert_row(b, static_cast<int>((k - 1) % static_cast<std::uint64_t>(b - 1)) + 1);
    weight_sup = 0.0;
    for (double x : w) weight_sup = std::max(weight_sup, std::abs(x));
  }
  std::vector<double> sup(tree.depth() + 1, 0.0);
  // log-space running scale so deep trees do not underflow prematurely
  double log_scale = N == 0 ? 0.0 : std::log(weight_sup);
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (j > 0) log_scale -= 0.5 * std::log(static_cast<double>(tree.b(N + j - 1)));
    sup[N + j] = std::abs(u[j]) * std::exp(log_scale);
  }
  return sup;
}

struct SpectralMultisetReport {
  bool ok = true;
  bool sizes_match = true;
  double max_discrepancy = 0.0;
  std::vector<double> tree_eigenvalues;
  std::vector<double> block_eigenvalues;
};

/// Eigenvalues of the truncated J_N block, J_0 of the shifted branching
/// sequence restricted to D - N + 1 sites starting at site 0.
inline std::vector<double> block_eigenvalues(const RadialTree& tree, std::size_t N) {
  const BranchingSequence w(std::vector<int>(tree.branching().begin(), tree.branching().end()));
  const auto t = truncate(w, tree.depth() - N + 1, N);
  return tridiag_eigenvalues(t, 1e-13 * std::max(1.0, t.radius()));
}

/// Sorted spectrum of the dense adjacency matrix against the union over N of
/// beta_N copies of the truncated block spectra.
inline SpectralMultisetReport spectral_multiset_check(const RadialTree& tree, double tol,
                                                      std::size_t dense_limit = kDenseLimit) {
  SpectralMultisetReport report;
  report.tree_eigenvalues = symmetric_eigenvalues_dense(adjacency_matrix(tree, dense_limit));
  const auto beta = multiplicities(tree);
  for (std::size_t n = 0; n <= tree.depth(); ++n) {
    const auto block = block_eigenvalues(tree, n);
    for (std::uint64_t copy = 0; copy < beta[n]; ++copy)
      report.block_eigenvalues.insert(report.block_eigenvalues.end(), block.begin(), block.end());
  }
  std::sort(report.block_eigenvalues.begin(), report.block_eigenvalues.end());
  if (report.tree_eigenvalues.size() != report.block_eigenvalues.size()) {
    report.ok = report.sizes_match = false;
    return report;
  }
  for (std::size_t i = 0; i < report.tree_eigenvalues.size(); ++i)
    report.max_discrepancy = std::max(
        report.max_discrepancy, std::abs(report.tree_eigenvalues[i] - report.block_eigenvalues[i]));
  report.ok = report.max_discrepancy <= tol;
  return report;
}

}  // namespace rtsl
