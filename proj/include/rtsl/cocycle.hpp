#pragma once

// Transfer matrices of the eigenvalue recursion
//   sqrt(w_{n-1}) u(n-1) + sqrt(w_n) u(n+1) = E u(n),  sqrt(w_0) u(1) = E u(0),
// their cocycle products, and finite witnesses for the structure of the
// generated matrix group.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "rtsl/jacobi.hpp"
#include "rtsl/linalg.hpp"
#include "rtsl/random.hpp"

namespace rtsl {

/// [[E/sqrt(a), -1/sqrt(a)], [sqrt(a), 0]] for the branching value a.
inline Mat2 transfer_matrix_for(int value, double energy) {
  const double r = std::sqrt(static_cast<double>(value));
  return {energy / r, -1.0 / r, r, 0.0};
}

/// Transfer matrix at w; note that it reads w_1, not w_0.
inline Mat2 transfer_matrix(const BranchingSequence& w, double energy) {
  if (w.size() < 2) throw std::invalid_argument("branching sequence too short");
  return transfer_matrix_for(w[1], energy);
}

/// Product of 2x2 matrices kept as M = Q R, Q a rotation and
/// R = [[e^{r1}, y e^{r1}], [0, s e^{r2}]] with r1, r2 stored as logarithms,
/// so neither the growing nor the decaying singular direction is lost to
/// overflow or underflow.
class CocycleProduct {
 public:
  static CocycleProduct identity() { return CocycleProduct{}; }

  static CocycleProduct from_matrix(const Mat2& m) {
    CocycleProduct p;
    const double h = std::hypot(m.a, m.c);
    if (h == 0.0) throw std::invalid_argument("singular matrix");
    p.cos_ = m.a / h;
    p.sin_ = m.c / h;
    const double r12 = p.cos_ * m.b + p.sin_ * m.d;
    const double r22 = -p.sin_ * m.b + p.cos_ * m.d;
    if (r22 == 0.0) throw std::invalid_argument("singular matrix");
    p.log_r1_ = std::log(h);
    p.log_r2_ = std::log(std::abs(r22));
    p.sign2_ = r22 < 0.0 ? -1.0 : 1.0;
    p.coupling_ = r12 / h;
    p.steps_ = 1;
    return p;
  }

  /// this <- t * this.
  void step(const Mat2& t) {
    // t * Q
    const double q11 = t.a * cos_ + t.b * sin_;
    const double q21 = t.c * cos_ + t.d * sin_;
    const double q12 = -t.a * sin_ + t.b * cos_;
    const double q22 = -t.c * sin_ + t.d * cos_;
    const double p = std::hypot(q11, q21);
    cos_ = q11 / p;
    sin_ = q21 / p;
    const double r12 = cos_ * q12 + sin_ * q22;
    const double r22 = -sin_ * q12 + cos_ * q22;
    coupling_ += (r12 / p) * sign2_ * std::exp(log_r2_ - log_r1_);
    log_r1_ += std::log(p);
    log_r2_ += std::log(std::abs(r22));
    if (r22 < 0.0) sign2_ = -sign2_;
    ++steps_;
  }

  std::size_t steps() const noexcept { return steps_; }

  double log_norm() const { return scaled().log_scale + std::log(sl2_norm(scaled().r)); }

  /// M / ||M||.
  Mat2 normalized() const {
    const auto s = scaled();
    return (1.0 / sl2_norm(s.r)) * (rotation() * s.r);
  }

  /// det M rebuilt from the stored logarithms.
  double determinant() const { return sign2_ * std::exp(log_r1_ + log_r2_); }

  /// exp-scale reconstruction of M; overflows once log_norm() exceeds ~700.
  Mat2 matrix() const {
    const double e1 = std::exp(log_r1_);
    return rotation() * Mat2{e1, coupling_ * e1, 0.0, sign2_ * std::exp(log_r2_)};
  }

  /// a * b.
  friend CocycleProduct compose(const CocycleProduct& a, const CocycleProduct& b) {
    // Ua * Qb with Ua = [[1, ya], [0, tau]], tau = sa e^{ra2 - ra1}
    const double tau = a.sign2_ * std::exp(a.log_r2_ - a.log_r1_);
    const double c11 = b.cos_ + a.coupling_ * b.sin_;
    const double c12 = -b.sin_ + a.coupling_ * b.cos_;
    const double c21 = tau * b.sin_;
    const double c22 = tau * b.cos_;
    const double p = std::hypot(c11, c21);
    const double cc = c11 / p;
    const double sc = c21 / p;
    const double rc12 = cc * c12 + sc * c22;
    CocycleProduct out;
    out.cos_ = a.cos_ * cc - a.sin_ * sc;
    out.sin_ = a.sin_ * cc + a.cos_ * sc;
    // det(Ua Qb) = tau, so the (2,2) entry of its triangular factor is tau / p
    out.coupling_ = b.coupling_ + (rc12 / p) * b.sign2_ * std::exp(b.log_r2_ - b.log_r1_);
    out.log_r1_ = a.log_r1_ + b.log_r1_ + std::log(p);
    out.log_r2_ = a.log_r2_ + b.log_r2_ - std::log(p);
    out.sign2_ = a.sign2_ * b.sign2_;
    out.steps_ = a.steps_ + b.steps_;
    return out;
  }

 private:
  struct Scaled {
    double log_scale;
    Mat2 r;
  };

  Mat2 rotation() const { return {cos_, -sin_, sin_, cos_}; }

  Scaled scaled() const {
    const double lb = coupling_ != 0.0 ? log_r1_ + std::log(std::abs(coupling_)) : -INFINITY;
    const double m = std::max({log_r1_, lb, log_r2_});
    return {m, Mat2{std::exp(log_r1_ - m), std::copysign(std::exp(lb - m), coupling_), 0.0,
                    sign2_ * std::exp(log_r2_ - m)}};
  }

  double cos_ = 1.0, sin_ = 0.0;
  double log_r1_ = 0.0, log_r2_ = 0.0;
  double sign2_ = 1.0;
  double coupling_ = 0.0;
  std::size_t steps_ = 0;
};

/// M_n = M(T^{n-1} w) ... M(w); factor i consumes w_{i+1}.
inline CocycleProduct cocycle_product(const BranchingSequence& w, double energy, std::size_t n) {
  if (w.size() < n + 1) throw std::invalid_argument("branching sequence too short");
  auto p = CocycleProduct::identity();
  for (std::size_t i = 0; i < n; ++i) p.step(transfer_matrix_for(w[i + 1], energy));
  return p;
}

/// u_0 ... u_{n+1} with u_0 = 1. Satisfies
/// (u_{n+1}, sqrt(w_n) u_n) = M_n (u_1, sqrt(w_0) u_0).
inline std::vector<double> solve_recursion(const BranchingSequence& w, double energy,
                                           std::size_t n) {
  if (w.size() < n + 1) throw std::invalid_argument("branching sequence too short");
  std::vector<double> u(n + 2);
  u[0] = 1.0;
  u[1] = energy * u[0] / std::sqrt(static_cast<double>(w[0]));
  for (std::size_t m = 1; m <= n; ++m)
    u[m + 1] = (energy * u[m] - std::sqrt(static_cast<double>(w[m - 1])) * u[m - 1]) /
               std::sqrt(static_cast<double>(w[m]));
  return u;
}

/// M_n rebuilt from leading principal minors:
///   M_n = [[D_n(w), -D_{n-1}(Tw)], [w_n D_{n-1}(w), -w_n D_{n-2}(Tw)]]
///         / prod_{i=1}^{n} sqrt(w_i).
inline Mat2 transfer_from_minors(const BranchingSequence& w, double energy, std::size_t n) {
  if (n == 0) return Mat2::identity();
  if (w.size() < n + 1) throw std::invalid_argument("branching sequence too short");
  const auto head = char_poly_seq(w, energy, n);
  const auto tail = char_poly_seq(shift(w, 1), energy, n - 1);
  double scale = 1.0;
  for (std::size_t i = 1; i <= n; ++i) scale *= std::sqrt(static_cast<double>(w[i]));
  const double wn = static_cast<double>(w[n]);
  const long m = static_cast<long>(n);
  return (1.0 / scale) * Mat2{head[n], -tail.at_signed(m - 1), wn * head[n - 1],
                              -wn * tail.at_signed(m - 2)};
}

struct FurstenbergWitness {
  Mat2 matrix;          // (M_alpha M_beta^{-1})^n
  double expected_11;   // (beta/alpha)^{n/2}
  double expected_22;   // (alpha/beta)^{n/2}
  double residual;      // worst deviation relative to ||A_n||
  double norm;
  bool ok;
};

/// A_n = (M_alpha M_beta^{-1})^n, which is diagonal for every energy.
inline FurstenbergWitness furstenberg_witness(int alpha, int beta, double energy, std::size_t n,
                                              double tol = 1e-9) {
  if (alpha == beta) throw std::invalid_argument("witness needs two distinct branching values");
  if (alpha < 2 || beta < 2) throw std::invalid_argument("branching value below 2");
  const Mat2 step = transfer_matrix_for(alpha, energy) * transfer_matrix_for(beta, energy).inverse();
  Mat2 a = Mat2::identity();
  for (std::size_t i = 0; i < n; ++i) a = step * a;
  FurstenbergWitness w;
  w.matrix = a;
  const double half = static_cast<double>(n) / 2.0;
  w.expected_11 = std::pow(static_cast<double>(beta) / alpha, half);
  w.expected_22 = std::pow(static_cast<double>(alpha) / beta, half);
  w.norm = sl2_norm(a);
  w.residual = std::max({std::abs(a.b), std::abs(a.c), std::abs(a.a - w.expected_11),
                         std::abs(a.d - w.expected_22)}) /
               w.norm;
  w.ok = w.residual <= tol;
  return w;
}

/// |sin| of the angle between two directions.
inline double projective_distance(const Vec2& u, const Vec2& v) {
  return std::abs(u.x * v.y - u.y * v.x) / (std::hypot(u.x, u.y) * std::hypot(v.x, v.y));
}

struct AtomDirections {
  int value;
  Vec2 image_v1;      // M e_1
  Vec2 image_v2;      // M e_2
  Vec2 preimage_v2;   // M^{-1} e_2
  bool v1_to_v1 = false, v1_to_v2 = false, v2_to_v1 = false, v2_to_v2 = false;
  bool image_v1_outside = false;     // M V_1 not in {V_1, V_2}
  bool preimage_v2_outside = false;  // M^{-1} V_2 not in {V_1, V_2}
};

struct InvariantDirectionReport {
  double energy;
  std::vector<AtomDirections> atoms;
  bool v1_invariant = false;
  bool v2_invariant = false;
  bool union_invariant = false;
  /// every atom exchanges V_1 and V_2
  bool swap = false;
  /// no direction of {V_1, V_2} is fixed by all atoms; the diagonal witness
  /// A_n leaves no other candidate, so this certifies an empty fixed set
  bool fix_empty = false;
  /// none of V_1, V_2, V_1 u V_2 is invariant
  bool no_invariant_set = false;
};

inline InvariantDirectionReport invariant_direction_check(const BranchingDistribution& dist,
                                                          double energy, double tol = 1e-9) {
  if (dist.degenerate()) throw std::invalid_argument("distribution is degenerate");
  const Vec2 e1{1.0, 0.0}, e2{0.0, 1.0};
  auto same = [tol](const Vec2& u, const Vec2& v) { return projective_distance(u, v) < tol; };
  InvariantDirectionReport r{energy, {}};
  bool all_11 = true, all_22 = true, all_union = true, all_swap = true;
  for (const auto& atom : dist.atoms()) {
    const Mat2 m = transfer_matrix_for(atom.value, energy);
    AtomDirections a;
    a.value = atom.value;
    a.image_v1 = m * e1;
    a.image_v2 = m * e2;
    a.preimage_v2 = m.inverse() * e2;
    a.v1_to_v1 = same(a.image_v1, e1);
    a.v1_to_v2 = same(a.image_v1, e2);
    a.v2_to_v1 = same(a.image_v2, e1);
    a.v2_to_v2 = same(a.image_v2, e2);
    a.image_v1_outside = !a.v1_to_v1 && !a.v1_to_v2;
    a.preimage_v2_outside = !same(a.preimage_v2, e1) && !same(a.preimage_v2, e2);
    all_11 = all_11 && a.v1_to_v1;
    all_22 = all_22 && a.v2_to_v2;
    all_union = all_union && (a.v1_to_v1 || a.v1_to_v2) && (a.v2_to_v1 || a.v2_to_v2);
    all_swap = all_swap && a.v1_to_v2 && a.v2_to_v1;
    r.atoms.push_back(a);
  }
  r.v1_invariant = all_11;
  r.v2_invariant = all_22;
  r.union_invariant = all_union;
  r.swap = all_swap;
  r.fix_empty = !all_11 && !all_22;
  r.no_invariant_set = !all_11 && !all_22 && !all_union;
  return r;
}

}  // namespace rtsl
