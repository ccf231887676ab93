#pragma once

// Monte Carlo estimation of the Lyapunov exponent
//   L(E) = lim (1/n) log ||M_n^E(w)||
// from independent long products, plus the closed form at E = 0.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "rtsl/cocycle.hpp"
#include "rtsl/parallel.hpp"
#include "rtsl/random.hpp"

namespace rtsl {

struct LyapunovEstimate {
  double energy = 0.0;
  std::size_t n = 0;
  std::size_t samples = 0;
  double mean = 0.0;
  double std_err = 0.0;
  std::uint64_t seed = 0;
};

/// (1/n) log ||M_n^E(w)|| for the sequence drawn from sub-stream `stream` of
/// `seed`. The draws are exactly those of
/// sample_sequence(dist, n + 1, derive_seed(seed, stream)); w_0 is drawn and
/// discarded because the first factor reads w_1.
inline double lyapunov_sample(const BranchingDistribution& dist, double energy, std::size_t n,
                              std::uint64_t seed, std::uint64_t stream) {
  const auto atoms = dist.atoms();
  std::vector<Mat2> table;
  table.reserve(atoms.size());
  for (const auto& a : atoms) table.push_back(transfer_matrix_for(a.value, energy));
  Substream rng(derive_seed(seed, stream));
  (void)rng.uniform();
  auto p = CocycleProduct::identity();
  for (std::size_t i = 0; i < n; ++i) p.step(table[dist.index_of(rng.uniform())]);
  return p.log_norm() / static_cast<double>(n);
}

namespace detail {

inline void summarize(LyapunovEstimate& e, std::span<const double> values) {
  const double s = static_cast<double>(values.size());
  e.mean = std::accumulate(values.begin(), values.end(), 0.0) / s;
  if (values.size() < 2) {
    e.std_err = 0.0;
    return;
  }
  double ss = 0.0;
  for (double v : values) ss += (v - e.mean) * (v - e.mean);
  e.std_err = std::sqrt(ss / (s - 1.0)) / std::sqrt(s);
}

inline void check_sizes(std::size_t n, std::size_t samples) {
  if (n < 100) throw std::invalid_argument("need at least 100 steps per sample");
  if (samples < 1) throw std::invalid_argument("need at least one sample");
}

}  // namespace detail

/// Sample s uses sub-stream s of `seed`; the result does not depend on the
/// number of worker threads.
inline LyapunovEstimate estimate_lyapunov(const BranchingDistribution& dist, double energy,
                                          std::size_t n, std::size_t samples, std::uint64_t seed,
                                          unsigned threads = worker_count()) {
  detail::check_sizes(n, samples);
  std::vector<double> values(samples);
  parallel_for(
      samples, [&](std::size_t s) { values[s] = lyapunov_sample(dist, energy, n, seed, s); },
      threads);
  LyapunovEstimate e{energy, n, samples, 0.0, 0.0, seed};
  detail::summarize(e, values);
  return e;
}

/// One estimate per grid energy, sorted by energy. Grid point i (in sorted
/// order) uses master seed derive_seed(seed, i).
inline std::vector<LyapunovEstimate> lyapunov_curve(const BranchingDistribution& dist,
                                                    std::vector<double> grid, std::size_t n,
                                                    std::size_t samples, std::uint64_t seed,
                                                    unsigned threads = worker_count()) {
  if (grid.empty()) throw std::invalid_argument("empty energy grid");
  detail::check_sizes(n, samples);
  std::sort(grid.begin(), grid.end());
  std::vector<double> values(grid.size() * samples);
  parallel_for(
      values.size(),
      [&](std::size_t t) {
        const std::size_t g = t / samples;
        values[t] = lyapunov_sample(dist, grid[g], n, derive_seed(seed, g), t % samples);
      },
      threads);
  std::vector<LyapunovEstimate> out(grid.size());
  for (std::size_t g = 0; g < grid.size(); ++g) {
    out[g] = {grid[g], n, samples, 0.0, 0.0, derive_seed(seed, g)};
    detail::summarize(out[g], std::span<const double>(values).subspan(g * samples, samples));
  }
  return out;
}

/// `steps` equally spaced energies from emin to emax inclusive.
inline std::vector<double> energy_grid(double emin, double emax, std::size_t steps) {
  if (steps == 0) throw std::invalid_argument("empty energy grid");
  if (steps == 1) return {emin};
  std::vector<double> g(steps);
  for (std::size_t i = 0; i < steps; ++i)
    g[i] = emin + (emax - emin) * static_cast<double>(i) / static_cast<double>(steps - 1);
  return g;
}

/// Grid over [-2 sqrt(d), 2 sqrt(d)] with the open window (-1/l, 1/l) around
/// zero removed.
inline std::vector<double> energy_window_grid(int d, double l, std::size_t steps) {
  if (!(l > 1.0)) throw std::invalid_argument("window parameter must exceed 1");
  const double edge = 2.0 * std::sqrt(static_cast<double>(d));
  std::vector<double> out;
  for (double e : energy_grid(-edge, edge, steps))
    if (std::abs(e) >= 1.0 / l) out.push_back(e);
  return out;
}

/// (1/n) |sum_{i=1}^{n/2} xi_i| with xi_i = log(w_{2i-1} / w_{2i}) / 2, which
/// is (1/n) log ||M_n^0(w)|| exactly.
inline double zero_energy_exact(const BranchingSequence& w, std::size_t n_even) {
  if (n_even % 2 != 0) throw std::invalid_argument("odd step count");
  if (w.size() <= n_even) throw std::invalid_argument("branching sequence too short");
  if (n_even == 0) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 1; i <= n_even / 2; ++i)
    sum += 0.5 * std::log(static_cast<double>(w[2 * i - 1]) / static_cast<double>(w[2 * i]));
  return std::abs(sum) / static_cast<double>(n_even);
}

/// Lyapunov exponent of the constant cocycle for a one-point law {c}:
/// log of the spectral radius of M^E, zero inside the band |E| <= 2 sqrt(c).
inline double constant_cocycle_exponent(int c, double energy) {
  const double t = std::abs(energy) / std::sqrt(static_cast<double>(c));
  if (t <= 2.0) return 0.0;
  return std::log(0.5 * (t + std::sqrt(t * t - 4.0)));
}

}  // namespace rtsl
