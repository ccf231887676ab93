#pragma once

// Half-line Jacobi operators with zero diagonal and off-diagonals sqrt(w_n):
//   (J u)(0) = sqrt(w_0) u(1)
//   (J u)(n) = sqrt(w_{n-1}) u(n-1) + sqrt(w_n) u(n+1)
// their finite truncations, leading principal minors, Green's functions, and a
// Sturm-bisection / inverse-iteration eigensolver for the truncations.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "rtsl/random.hpp"

namespace rtsl {

class JacobiOperator {
 public:
  explicit JacobiOperator(BranchingSequence w) : w_(std::move(w)) {}
  const BranchingSequence& sequence() const noexcept { return w_; }
  /// Coupling between sites n and n+1.
  double off_diagonal(std::size_t n) const { return std::sqrt(static_cast<double>(w_.at(n))); }

 private:
  BranchingSequence w_;
};

/// Applies J to a finitely supported u; the row for the last entry of u has
/// no forward term.
inline std::vector<double> jacobi_apply(const BranchingSequence& w, std::span<const double> u) {
  const std::size_t n = u.size();
  if (n == 0) return {};
  if (n > 1 && w.size() < n - 1) throw std::invalid_argument("branching sequence too short");
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) out[i] += std::sqrt(static_cast<double>(w[i - 1])) * u[i - 1];
    if (i + 1 < n) out[i] += std::sqrt(static_cast<double>(w[i])) * u[i + 1];
  }
  return out;
}

/// Symmetric tridiagonal matrix with zero diagonal.
class TruncatedJacobi {
 public:
  TruncatedJacobi() = default;
  /// `off_diagonal[i]` couples local sites i and i+1.
  explicit TruncatedJacobi(std::vector<double> off_diagonal)
      : off_(std::move(off_diagonal)) {}

  std::size_t size() const noexcept { return off_.size() + 1; }
  std::span<const double> off_diagonal() const noexcept { return off_; }

  /// Gershgorin radius: every eigenvalue lies in [-radius, radius].
  double radius() const noexcept {
    double r = 0.0;
    for (std::size_t i = 0; i < size(); ++i) {
      const double left = i > 0 ? std::abs(off_[i - 1]) : 0.0;
      const double right = i < off_.size() ? std::abs(off_[i]) : 0.0;
      r = std::max(r, left + right);
    }
    return r;
  }

  std::vector<double> apply(std::span<const double> v) const {
    const std::size_t n = size();
    if (v.size() != n) throw std::invalid_argument("dimension mismatch");
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      out[i] += off_[i] * v[i + 1];
      out[i + 1] += off_[i] * v[i];
    }
    return out;
  }

 private:
  std::vector<double> off_{};
};

/// Restriction of J to the sites [offset, offset + n). The default offset 1
/// gives the [1, n] window whose couplings are sqrt(w_1), ..., sqrt(w_{n-1});
/// offset 0 gives the block seen by the tree decomposition.
inline TruncatedJacobi truncate(const BranchingSequence& w, std::size_t n, std::size_t offset = 1) {
  if (n == 0) throw std::invalid_argument("empty truncation");
  if (w.size() < offset + n - 1) throw std::invalid_argument("branching sequence too short");
  std::vector<double> off(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) off[i] = std::sqrt(static_cast<double>(w[offset + i]));
  return TruncatedJacobi(std::move(off));
}

/// D_0 ... D_n, the leading principal minors of E - J restricted to [1, n].
struct PolynomialSequence {
  double energy = 0.0;
  std::vector<double> values;

  double operator[](std::size_t k) const { return values.at(k); }
  /// D_k with the convention D_{-1} = 0.
  double at_signed(long k) const { return k < 0 ? 0.0 : values.at(static_cast<std::size_t>(k)); }
};

/// D_0 = 1, D_1 = E, D_k = E D_{k-1} - w_{k-1} D_{k-2}.
inline PolynomialSequence char_poly_seq(const BranchingSequence& w, double energy, std::size_t n) {
  if (n >= 2 && w.size() < n) throw std::invalid_argument("branching sequence too short");
  PolynomialSequence p{energy, std::vector<double>(n + 1)};
  p.values[0] = 1.0;
  if (n >= 1) p.values[1] = energy;
  for (std::size_t k = 2; k <= n; ++k)
    p.values[k] = energy * p.values[k - 1] - static_cast<double>(w[k - 1]) * p.values[k - 2];
  return p;
}

namespace detail {

/// Solves (T - shift) x = rhs with partial pivoting (LAPACK dgtsv scheme).
/// Zero pivots are replaced by `tiny` when tiny > 0; otherwise the solve
/// reports singularity by returning false. `log_abs_det` receives
/// log|det(T - shift)| (sum over pivots).
inline bool tridiagonal_solve(std::span<const double> off, double shift, std::span<double> x,
                              double tiny, double* log_abs_det = nullptr) {
  const std::size_t n = x.size();
  std::vector<double> d(n, -shift);
  std::vector<double> dl(off.begin(), off.end());
  std::vector<double> du(off.begin(), off.end());
  auto guard = [&](double& p) {
    if (p != 0.0) return true;
    if (tiny <= 0.0) return false;
    p = tiny;
    return true;
  };
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (!guard(d[i])) return false;
      const double fact = dl[i] / d[i];
      d[i + 1] -= fact * du[i];
      x[i + 1] -= fact * x[i];
      dl[i] = 0.0;
    } else {
      const double fact = d[i] / dl[i];
      d[i] = dl[i];
      const double temp = d[i + 1];
      d[i + 1] = du[i] - fact * temp;
      if (i + 2 < n) {
        dl[i] = du[i + 1];
        du[i + 1] = -fact * dl[i];
      } else {
        dl[i] = 0.0;
      }
      du[i] = temp;
      const double tb = x[i];
      x[i] = x[i + 1];
      x[i + 1] = tb - fact * x[i + 1];
    }
  }
  if (!guard(d[n - 1])) return false;
  if (log_abs_det) {
    double s = 0.0;
    for (double p : d) s += std::log(std::abs(p));
    *log_abs_det = s;
  }
  x[n - 1] /= d[n - 1];
  if (n > 1) x[n - 2] = (x[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
  for (std::size_t i = n < 2 ? 0 : n - 2; i-- > 0;)
    x[i] = (x[i] - du[i] * x[i + 1] - dl[i] * x[i + 2]) / d[i];
  return true;
}

}  // namespace detail

/// Number of eigenvalues of T strictly below lambda (Sturm sequence count).
inline std::size_t sturm_count(const TruncatedJacobi& t, double lambda) {
  const auto off = t.off_diagonal();
  const double pivmin =
      std::numeric_limits<double>::min() * std::max(1.0, t.radius() * t.radius());
  std::size_t count = 0;
  double q = -lambda;
  if (std::abs(q) < pivmin) q = -pivmin;
  if (q < 0.0) ++count;
  for (std::size_t i = 0; i < off.size(); ++i) {
    q = -lambda - off[i] * off[i] / q;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

inline double default_bisection_tol(const TruncatedJacobi& t) {
  return 1e-10 * std::max(1.0, t.radius());
}

namespace detail {

inline void isolate(const TruncatedJacobi& t, double lo, double hi, std::size_t count_lo,
                    std::size_t count_hi, double tol, std::vector<double>& out) {
  while (count_hi > count_lo) {
    if (hi - lo <= tol) {
      out.insert(out.end(), count_hi - count_lo, 0.5 * (lo + hi));
      return;
    }
    const double mid = 0.5 * (lo + hi);
    const std::size_t count_mid = sturm_count(t, mid);
    if (count_hi - count_lo > 1 && count_mid > count_lo && count_mid < count_hi) {
      isolate(t, lo, mid, count_lo, count_mid, tol, out);
      lo = mid;
      count_lo = count_mid;
    } else if (count_mid > count_lo) {
      hi = mid;
      count_hi = count_mid;
    } else {
      lo = mid;
    }
  }
}

}  // namespace detail

/// Eigenvalues of T lying in [lo, hi), ascending, each within tol.
inline std::vector<double> tridiag_eigenvalues_in(const TruncatedJacobi& t, double lo, double hi,
                                                  double tol) {
  std::vector<double> out;
  if (!(hi > lo)) return out;
  const std::size_t c_lo = sturm_count(t, lo);
  const std::size_t c_hi = sturm_count(t, hi);
  out.reserve(c_hi - c_lo);
  detail::isolate(t, lo, hi, c_lo, c_hi, tol, out);
  std::sort(out.begin(), out.end());
  return out;
}

/// All eigenvalues of T, ascending, each within tol.
inline std::vector<double> tridiag_eigenvalues(const TruncatedJacobi& t, double tol) {
  const double r = t.radius();
  const double margin = 1e-12 * std::max(1.0, r) + tol;
  return tridiag_eigenvalues_in(t, -r - margin, r + margin, tol);
}

/// The k-th smallest eigenvalue (k = 0 is the minimum), within tol.
inline double kth_eigenvalue(const TruncatedJacobi& t, std::size_t k, double tol) {
  if (k >= t.size()) throw std::invalid_argument("eigenvalue index out of range");
  const double r = t.radius();
  double lo = -r - tol - 1e-12 * std::max(1.0, r);
  double hi = r + tol + 1e-12 * std::max(1.0, r);
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (sturm_count(t, mid) > k)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

inline std::vector<double> tridiag_eigenvalues(const TruncatedJacobi& t) {
  return tridiag_eigenvalues(t, default_bisection_tol(t));
}

inline double rayleigh_quotient(const TruncatedJacobi& t, std::span<const double> v) {
  const auto tv = t.apply(v);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    num += v[i] * tv[i];
    den += v[i] * v[i];
  }
  return num / den;
}

inline double eigen_residual(const TruncatedJacobi& t, std::span<const double> v, double lambda) {
  const auto tv = t.apply(v);
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += (tv[i] - lambda * v[i]) * (tv[i] - lambda * v[i]);
  return std::sqrt(s);
}

namespace detail {

inline void normalize(std::span<double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  s = std::sqrt(s);
  for (double& x : v) x /= s;
}

inline double norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

inline std::vector<double> inverse_iterate(const TruncatedJacobi& t, double lambda,
                                           std::span<const std::vector<double>> deflate,
                                           std::size_t seed) {
  const std::size_t n = t.size();
  const double scale = std::max(1.0, t.radius());
  const double shift = lambda + 1e-12 * scale;
  const double tiny = std::numeric_limits<double>::epsilon() * scale;
  std::vector<double> v(n);
  Substream rng(0x5eedull, seed);
  for (auto& x : v) x = rng.uniform() - 0.5;
  normalize(v);
  constexpr int kMaxIterations = 12;
  for (int it = 0; it < kMaxIterations; ++it) {
    for (const auto& q : deflate) {
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += q[i] * v[i];
      for (std::size_t i = 0; i < n; ++i) v[i] -= dot * q[i];
    }
    tridiagonal_solve(t.off_diagonal(), shift, v, tiny);
    for (const auto& q : deflate) {
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += q[i] * v[i];
      for (std::size_t i = 0; i < n; ++i) v[i] -= dot * q[i];
    }
    normalize(v);
    const double rq = rayleigh_quotient(t, v);
    if (it >= 1 && eigen_residual(t, v, rq) <= 1e-13 * scale) return v;
  }
  const double rq = rayleigh_quotient(t, v);
  if (!(eigen_residual(t, v, rq) <= 1e-8)) throw std::runtime_error("inverse iteration did not converge");
  return v;
}

}  // namespace detail

/// Unit eigenvector for an eigenvalue approximation lambda.
inline std::vector<double> eigenvector_inverse_iteration(const TruncatedJacobi& t, double lambda) {
  return detail::inverse_iterate(t, lambda, {}, 0);
}

/// Eigenvectors for ascending eigenvalue approximations. Eigenvalues closer
/// than 2*tol form a cluster; vectors within a cluster are orthogonalized
/// against the earlier members.
inline std::vector<std::vector<double>> tridiag_eigenvectors(const TruncatedJacobi& t,
                                                             std::span<const double> eigenvalues,
                                                             double tol) {
  std::vector<std::vector<double>> out;
  out.reserve(eigenvalues.size());
  std::size_t cluster_start = 0;
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    if (i > 0 && eigenvalues[i] - eigenvalues[i - 1] >= 2.0 * tol) cluster_start = i;
    const std::span<const std::vector<double>> previous(out.data() + cluster_start,
                                                        i - cluster_start);
    out.push_back(detail::inverse_iterate(t, eigenvalues[i], previous, i));
  }
  return out;
}

/// Entry (j, k) of (J_0^n - E)^{-1}, sites j, k in [1, n], by a direct
/// tridiagonal solve.
inline double green_entry(const BranchingSequence& w, std::size_t n, double energy, std::size_t j,
                          std::size_t k) {
  if (j < 1 || k < 1 || j > n || k > n) throw std::invalid_argument("site outside [1, n]");
  const auto t = truncate(w, n);
  // an eigenvalue within 1e-12 * scale of E makes the entry meaningless
  const double delta = 1e-12 * (std::abs(energy) + t.radius() + 1.0);
  if (sturm_count(t, energy - delta) != sturm_count(t, energy + delta))
    throw std::domain_error("E in spectrum of truncation");
  std::vector<double> x(n, 0.0);
  x[k - 1] = 1.0;
  if (!detail::tridiagonal_solve(t.off_diagonal(), energy, x, 0.0))
    throw std::domain_error("E in spectrum of truncation");
  return x[j - 1];
}

/// The same entry from minors: for j <= k,
///   G(j, k) = -D_{j-1}(w) D_{n-k}(T^k w) / D_n(w) * prod_{i=j}^{k-1} sqrt(w_i).
inline double green_entry_polynomial(const BranchingSequence& w, std::size_t n, double energy,
                                     std::size_t j, std::size_t k) {
  if (j < 1 || k < 1 || j > n || k > n) throw std::invalid_argument("site outside [1, n]");
  if (j > k) std::swap(j, k);
  const auto head = char_poly_seq(w, energy, n);
  const auto tail = char_poly_seq(shift(w, k), energy, n - k);
  double coupling = 1.0;
  for (std::size_t i = j; i < k; ++i) coupling *= std::sqrt(static_cast<double>(w[i]));
  return -head[j - 1] * tail[n - k] / head[n] * coupling;
}

}  // namespace rtsl
