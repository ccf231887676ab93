#pragma once

// Small numerical core: 2x2 matrices for transfer-matrix work and a dense
// symmetric eigensolver (cyclic Jacobi rotations) used as an oracle.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace rtsl {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

/// Row-major 2x2 matrix [[a, b], [c, d]].
struct Mat2 {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static constexpr Mat2 diagonal(double p, double q) { return {p, 0.0, 0.0, q}; }

  constexpr double det() const { return a * d - b * c; }
  constexpr double trace() const { return a + d; }

  /// Inverse, assuming det() is (numerically) nonzero.
  constexpr Mat2 inverse() const {
    const double k = 1.0 / det();
    return {d * k, -b * k, -c * k, a * k};
  }

  constexpr Mat2 transpose() const { return {a, c, b, d}; }

  friend constexpr Mat2 operator*(const Mat2& l, const Mat2& r) {
    return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d,
            l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
  }
  friend constexpr Vec2 operator*(const Mat2& m, const Vec2& v) {
    return {m.a * v.x + m.b * v.y, m.c * v.x + m.d * v.y};
  }
  friend constexpr Mat2 operator*(double s, const Mat2& m) {
    return {s * m.a, s * m.b, s * m.c, s * m.d};
  }
  friend constexpr bool operator==(const Mat2&, const Mat2&) = default;
};

/// Operator (spectral) norm. Uses sigma_max = (|z1| + |z2|) / 2 with
/// z1 = (a+d, c-b) and z2 = (a-d, c+b), which avoids the cancellation of the
/// Gram-matrix eigenvalue formula.
inline double sl2_norm(const Mat2& m) {
  return 0.5 * (std::hypot(m.a + m.d, m.c - m.b) + std::hypot(m.a - m.d, m.c + m.b));
}

inline double max_abs_entry(const Mat2& m) {
  return std::max({std::abs(m.a), std::abs(m.b), std::abs(m.c), std::abs(m.d)});
}

/// Square dense matrix, row-major.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  std::size_t size() const noexcept { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }

  std::vector<double> operator*(std::span<const double> v) const {
    if (v.size() != n_) throw std::invalid_argument("dimension mismatch");
    std::vector<double> out(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n_; ++j) s += data_[i * n_ + j] * v[j];
      out[i] = s;
    }
    return out;
  }

  double trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius() const {
    double s = 0.0;
    for (double x : data_) s += x * x;
    return std::sqrt(s);
  }

  bool symmetric(double tol) const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) return false;
    return true;
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

inline constexpr std::size_t kDenseLimit = 2000;

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, sorted
/// ascending. Sweeps until the off-diagonal Frobenius mass is below
/// tol * ||A||_F.
inline std::vector<double> symmetric_eigenvalues_dense(DenseMatrix a, double tol = 1e-14) {
  const std::size_t n = a.size();
  if (n > kDenseLimit) throw std::invalid_argument("dense limit exceeded");
  if (!a.symmetric(1e-12)) throw std::invalid_argument("matrix is not symmetric");
  const double scale = a.frobenius();
  auto off_mass = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
    return std::sqrt(2.0 * s);
  };
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps && scale > 0.0 && off_mass() > tol * scale; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rutishauser's stable rotation
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(1.0, theta));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = a(r, p);
          const double arq = a(r, q);
          const double np = arp - s * (arq + tau * arp);
          const double nq = arq + s * (arp - tau * arq);
          a(r, p) = a(p, r) = np;
          a(r, q) = a(q, r) = nq;
        }
      }
    }
  }
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

}  // namespace rtsl
