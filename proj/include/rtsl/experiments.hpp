#pragma once

// Spectral experiments on truncated Jacobi matrices: Weyl trial vectors,
// eigenvalue histograms, decay-rate fits of eigenvectors and the decay of
// their lifts to the tree.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rtsl/decomposition.hpp"
#include "rtsl/jacobi.hpp"
#include "rtsl/lyapunov.hpp"
#include "rtsl/parallel.hpp"
#include "rtsl/random.hpp"
#include "rtsl/tree.hpp"

namespace rtsl {

/// psi(j) = R^{-1/2} e^{i j theta} on [start, start + length), zero elsewhere.
struct WeylVector {
  std::size_t start = 0;
  std::size_t length = 1;
  double theta = 0.0;

  std::complex<double> operator()(std::size_t j) const {
    if (j < start || j >= start + length) return {0.0, 0.0};
    return std::polar(1.0 / std::sqrt(static_cast<double>(length)),
                      static_cast<double>(j) * theta);
  }
};

inline BranchingSequence engineered_sequence(const BranchingDistribution& dist, int run_value,
                                             std::size_t run_start, std::size_t run_len,
                                             std::size_t length, std::uint64_t seed) {
  if (!dist.contains(run_value)) throw std::invalid_argument("run value not in support");
  if (run_start > length || run_len > length - run_start)
    throw std::invalid_argument("run window out of range");
  const auto sample = sample_sequence(dist, length, seed);
  std::vector<int> values(sample.values().begin(), sample.values().end());
  std::fill_n(values.begin() + static_cast<std::ptrdiff_t>(run_start), run_len, run_value);
  return BranchingSequence(std::move(values));
}

inline double weyl_theta(int d_mu, double energy) {
  const double edge = 2.0 * std::sqrt(static_cast<double>(d_mu));
  if (std::abs(energy) > edge * (1.0 + 1e-15)) throw std::domain_error("outside asymptotic spectrum");
  return std::acos(std::clamp(energy / edge, -1.0, 1.0));
}

/// ||(J_0(w) - E) psi|| for the Weyl vector of start k and length R, by direct
/// application on rows k-1 .. k+R.
inline double weyl_residual(const BranchingSequence& w, int d_mu, double energy, std::size_t k,
                            std::size_t R) {
  const WeylVector psi{k, R, weyl_theta(d_mu, energy)};
  if (R == 0) throw std::invalid_argument("empty Weyl support");
  if (w.size() < k + R) throw std::invalid_argument("Weyl support outside sequence");
  const auto coupling = [&](std::size_t i) { return std::sqrt(static_cast<double>(w[i])); };
  double sum = 0.0;
  for (std::size_t row = (k == 0 ? 0 : k - 1); row <= k + R; ++row) {
    std::complex<double> v = -energy * psi(row);
    if (row > 0) v += coupling(row - 1) * psi(row - 1);
    if (row + 1 < k + R) v += coupling(row) * psi(row + 1);
    sum += std::norm(v);
  }
  return std::sqrt(sum);
}

/// The constant 2(sqrt(d) + |E|) R^{-1/2} used as the residual bound.
inline double weyl_bound(int d_mu, double energy, std::size_t R) {
  return 2.0 * (std::sqrt(static_cast<double>(d_mu)) + std::abs(energy)) /
         std::sqrt(static_cast<double>(R));
}

struct SpectrumHistogram {
  std::size_t n = 0;
  double edge = 0.0;  // 2 sqrt(d_mu)
  std::vector<double> bin_edges;  // bins + 1 nominal edges over [-edge, edge]
  std::vector<std::size_t> counts;
  std::size_t outside = 0;  // eigenvalues beyond edge + 1e-9 in magnitude
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  double empty_bin_fraction = 0.0;
};

inline constexpr double kInclusionSlack = 1e-9;

/// Histogram of the size-n truncation of J_0(w), w drawn with `seed`. Counts
/// come from Sturm counts at the bin edges; the two outer edges are widened
/// by the inclusion slack.
inline SpectrumHistogram spectrum_histogram(const BranchingDistribution& dist, std::size_t n,
                                            std::uint64_t seed, std::size_t bins) {
  if (n == 0 || n > 50000) throw std::invalid_argument("size must be in [1, 50000]");
  if (bins == 0) throw std::invalid_argument("need at least one bin");
  const auto t = truncate(sample_sequence(dist, n, seed), n);
  SpectrumHistogram h;
  h.n = n;
  h.edge = 2.0 * std::sqrt(static_cast<double>(dist.d_mu()));
  h.bin_edges.resize(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i)
    h.bin_edges[i] = -h.edge + 2.0 * h.edge * static_cast<double>(i) / static_cast<double>(bins);
  std::vector<std::size_t> below(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) {
    double x = h.bin_edges[i];
    if (i == 0) x = -h.edge - kInclusionSlack;
    if (i == bins) x = h.edge + kInclusionSlack;
    below[i] = sturm_count(t, x);
  }
  h.counts.resize(bins);
  std::size_t empty = 0;
  for (std::size_t i = 0; i < bins; ++i) {
    h.counts[i] = below[i + 1] - below[i];
    if (h.counts[i] == 0) ++empty;
  }
  h.outside = n - (below[bins] - below[0]);
  h.empty_bin_fraction = static_cast<double>(empty) / static_cast<double>(bins);
  const double tol = 1e-13 * std::max(1.0, t.radius());
  h.min_eigenvalue = kth_eigenvalue(t, 0, tol);
  h.max_eigenvalue = kth_eigenvalue(t, n - 1, tol);
  return h;
}

/// All eigenvalues of the same truncation, for small n.
inline std::vector<double> truncation_spectrum(const BranchingDistribution& dist, std::size_t n,
                                               std::uint64_t seed) {
  const auto t = truncate(sample_sequence(dist, n, seed), n);
  return tridiag_eigenvalues(t, 1e-13 * std::max(1.0, t.radius()));
}

struct DecayReport {
  double eigenvalue = std::numeric_limits<double>::quiet_NaN();
  double fitted_rate = std::numeric_limits<double>::quiet_NaN();
  std::size_t window_first = 0;
  std::size_t window_last = 0;  // inclusive
  double fit_residual = 0.0;
  double reference_rate = std::numeric_limits<double>::quiet_NaN();
  double eigen_residual = 0.0;

  double ratio() const {
    if (!(reference_rate > 1e-12)) return std::numeric_limits<double>::quiet_NaN();
    return fitted_rate / reference_rate;
  }
};

/// Least-squares line through (j, log|u_j|) for j in [first, last], skipping
/// exact zeros. The rate is the negated slope; the residual is the RMS misfit.
inline DecayReport decay_rate_fit(std::span<const double> u, std::size_t first, std::size_t last) {
  if (last >= u.size() || first > last) throw std::invalid_argument("fit window out of range");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t m = 0;
  for (std::size_t j = first; j <= last; ++j) {
    if (u[j] == 0.0) continue;
    const double x = static_cast<double>(j - first);
    const double y = std::log(std::abs(u[j]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m < 10) throw std::invalid_argument("insufficient decay window");
  const double mm = static_cast<double>(m);
  const double slope = (mm * sxy - sx * sy) / (mm * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / mm;
  double ss = 0.0;
  for (std::size_t j = first; j <= last; ++j) {
    if (u[j] == 0.0) continue;
    const double r = std::log(std::abs(u[j])) - (intercept + slope * static_cast<double>(j - first));
    ss += r * r;
  }
  DecayReport rep;
  rep.fitted_rate = -slope;
  rep.window_first = first;
  rep.window_last = last;
  rep.fit_residual = std::sqrt(ss / mm);
  return rep;
}

/// Fit from the peak of |u| (last index attaining the maximum) to the last
/// index with |u_j| > 1e-12 max|u|.
inline DecayReport decay_rate_fit(std::span<const double> u) {
  double peak = 0.0;
  std::size_t first = 0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (std::abs(u[j]) >= peak) {
      peak = std::abs(u[j]);
      first = j;
    }
  }
  if (!(peak > 0.0)) throw std::invalid_argument("zero vector");
  std::size_t last = first;
  for (std::size_t j = first; j < u.size(); ++j)
    if (std::abs(u[j]) > 1e-12 * peak) last = j;
  if (last - first + 1 < 10) throw std::invalid_argument("insufficient decay window");
  return decay_rate_fit(u, first, last);
}

struct LocalizationOptions {
  std::size_t reference_steps = 20000;
  std::size_t reference_samples = 8;
  unsigned threads = worker_count();
};

/// One report per truncation eigenvalue in [lo, hi). Eigenvectors are
/// reversed when needed so the longer tail lies to the right of the peak.
/// Eigenvectors without a usable decay window keep a NaN rate.
inline std::vector<DecayReport> localization_report(const BranchingDistribution& dist,
                                                    std::size_t n, std::uint64_t seed, double lo,
                                                    double hi, const LocalizationOptions& opt = {}) {
  const double edge = 2.0 * std::sqrt(static_cast<double>(dist.d_mu()));
  if (!(lo < hi) || lo <= -edge || hi >= edge)
    throw std::invalid_argument("energy window must lie inside the asymptotic spectrum");
  if (lo <= 0.0 && hi >= 0.0) throw std::invalid_argument("energy window must exclude zero");
  const auto t = truncate(sample_sequence(dist, n, seed), n);
  const double tol = 1e-13 * std::max(1.0, t.radius());
  const auto eigenvalues = tridiag_eigenvalues_in(t, lo, hi, tol);
  const auto vectors = tridiag_eigenvectors(t, eigenvalues, tol);
  std::vector<DecayReport> out(eigenvalues.size());
  parallel_for(
      eigenvalues.size(),
      [&](std::size_t i) {
        auto v = vectors[i];
        const double residual = eigen_residual(t, v, eigenvalues[i]);
        std::size_t peak = 0;
        for (std::size_t j = 0; j < v.size(); ++j)
          if (std::abs(v[j]) >= std::abs(v[peak])) peak = j;
        if (peak > v.size() - 1 - peak) std::reverse(v.begin(), v.end());
        DecayReport rep;
        try {
          rep = decay_rate_fit(v);
        } catch (const std::invalid_argument&) {
        }
        rep.eigenvalue = eigenvalues[i];
        rep.eigen_residual = residual;
        rep.reference_rate = estimate_lyapunov(dist, eigenvalues[i], opt.reference_steps,
                                               opt.reference_samples, derive_seed(seed, 1000 + i), 1)
                                 .mean;
        out[i] = rep;
      },
      opt.threads);
  return out;
}

/// Median of the finite entries; NaN when there are none.
inline double finite_median(std::vector<double> values) {
  std::erase_if(values, [](double x) { return !std::isfinite(x); });
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size() / 2;
  return values.size() % 2 ? values[m] : 0.5 * (values[m - 1] + values[m]);
}

struct TreeDecayReport {
  bool ok = false;
  DecayReport half_line;
  DecayReport tree;
  double required = 0.0;  // L_ref + log(2)/2 - eps
  std::vector<double> generation_sup;
  std::string message;
};

/// Fits the decay of the per-generation sup of lift(tree, N, k, u) over the
/// same sites as the half-line fit of u, and compares it with
/// L_ref + log(2)/2 - eps.
inline TreeDecayReport tree_decay_check(const RadialTree& tree, std::size_t N, std::uint64_t k,
                                        std::span<const double> u, double l_ref, double eps) {
  if (N > tree.depth() || tree.depth() - N < 20)
    throw std::invalid_argument("tree too shallow for a decay check");
  TreeDecayReport rep;
  rep.half_line = decay_rate_fit(u);
  rep.generation_sup = lift_generation_sup(tree, N, k, u);
  const std::span<const double> tail(rep.generation_sup.data() + N, rep.generation_sup.size() - N);
  rep.tree = decay_rate_fit(tail, rep.half_line.window_first, rep.half_line.window_last);
  rep.required = l_ref + 0.5 * std::log(2.0) - eps;
  rep.ok = rep.tree.fitted_rate >= rep.required;
  if (!rep.ok)
    rep.message = "tree rate " + std::to_string(rep.tree.fitted_rate) + " below required " +
                  std::to_string(rep.required) + " (half-line rate " +
                  std::to_string(rep.half_line.fitted_rate) + ")";
  return rep;
}

}  // namespace rtsl
