#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "meander/params.hpp"

namespace meander {

struct PolarPoint {
  double r = 0.0;
  double phi = 0.0;
};

struct PolarVelocity {
  double dr = 0.0;
  double dphi = 0.0;
};

struct CartPoint {
  double x = 0.0;
  double y = 0.0;

  double radius() const { return std::sqrt(x * x + y * y); }
  double angle() const { return wrap_angle(std::atan2(y, x)); }
  std::complex<double> z() const { return {x, y}; }
  static CartPoint from(std::complex<double> z) { return {z.real(), z.imag()}; }
};

struct CartVelocity {
  double dx = 0.0;
  double dy = 0.0;
};

inline CartPoint to_cartesian(PolarPoint p) { return {p.r * std::cos(p.phi), p.r * std::sin(p.phi)}; }
inline PolarPoint to_polar(CartPoint c) { return {c.radius(), c.angle()}; }

using Matrix2 = std::array<std::array<double, 2>, 2>;

namespace detail {

inline void require_normalized(const ModelParams& p, const char* who) {
  if (!p.is_normalized())
    throw std::invalid_argument(std::string(who) +
                                ": params must be rotation-normalized (b2 = 0, b1 >= 0); call normalize_rotation");
}

// r^(2k) weighted sums over the A_k coefficients.
struct RadialSums {
  double p1 = 0.0;   // eps1 + sum a1_k r^2k
  double q1 = 0.0;   // eps2 + sum a2_k r^2k
  double dp1 = 0.0;  // d/dr of p1
  double dq1 = 0.0;  // d/dr of q1
};

inline RadialSums radial_sums(const ModelParams& p, double r) {
  RadialSums s{p.eps1, p.eps2, 0.0, 0.0};
  const double r2 = r * r;
  double pw = 1.0;  // r^(2k-2)
  for (int k = 1; k <= p.s(); ++k) {
    const double pw_2k = pw * r2;
    s.p1 += p.a1[k - 1] * pw_2k;
    s.q1 += p.a2[k - 1] * pw_2k;
    s.dp1 += 2.0 * k * p.a1[k - 1] * pw * r;
    s.dq1 += 2.0 * k * p.a2[k - 1] * pw * r;
    pw = pw_2k;
  }
  return s;
}

}  // namespace detail

/// Right-hand side of the field in polar coordinates, B already real and >= 0.
inline PolarVelocity eval_polar(const ModelParams& p, PolarPoint pt) {
  detail::require_normalized(p, "eval_polar");
  const auto s = detail::radial_sums(p, pt.r);
  const double brn2 = p.b1 * std::pow(pt.r, p.n - 2);
  return {pt.r * (s.p1 + brn2 * std::cos(p.n * pt.phi)), s.q1 - brn2 * std::sin(p.n * pt.phi)};
}

/// z' = eps*z + z*A(|z|^2) + B*conj(z)^(n-1), evaluated with complex arithmetic.
inline std::complex<double> eval_complex(const ModelParams& p, std::complex<double> z) {
  const double r2 = std::norm(z);
  std::complex<double> a_sum{0.0, 0.0};
  double pw = 1.0;
  for (int k = 1; k <= p.s(); ++k) {
    pw *= r2;
    a_sum += p.a(k) * pw;
  }
  // Plain real arithmetic: std::complex operator* goes through the slow
  // NaN-recovering path without -ffast-math.
  const double x = z.real(), y = -z.imag();
  double ur = 1.0, ui = 0.0;
  for (int i = 0; i < p.n - 1; ++i) {
    const double t = ur * x - ui * y;
    ui = ur * y + ui * x;
    ur = t;
  }
  const std::complex<double> c = p.eps() + a_sum;
  const std::complex<double> b = p.b_complex();
  return {c.real() * z.real() - c.imag() * z.imag() + b.real() * ur - b.imag() * ui,
          c.real() * z.imag() + c.imag() * z.real() + b.real() * ui + b.imag() * ur};
}

inline CartVelocity eval_cartesian(const ModelParams& p, CartPoint pt) {
  const auto v = eval_complex(p, pt.z());
  return {v.real(), v.imag()};
}

/// Jacobian of the Cartesian field d(dx,dy)/d(x,y).
inline Matrix2 jacobian_cartesian(const ModelParams& p, CartPoint pt) {
  const std::complex<double> z = pt.z();
  const std::complex<double> zbar = std::conj(z);
  const double r2 = std::norm(z);
  // f = eps z + sum A_k z^(k+1) zbar^k + B zbar^(n-1); a = df/dz, b = df/dzbar.
  std::complex<double> a = p.eps();
  std::complex<double> b{0.0, 0.0};
  double pw = 1.0;
  std::complex<double> z2 = z * z;
  std::complex<double> zk1_zbk1{1.0, 0.0};  // z^(k+1) zbar^(k-1) = z^2 * r^(2k-2)
  for (int k = 1; k <= p.s(); ++k) {
    zk1_zbk1 = z2 * pw;
    pw *= r2;
    a += p.a(k) * static_cast<double>(k + 1) * pw;
    b += p.a(k) * static_cast<double>(k) * zk1_zbk1;
  }
  std::complex<double> zbar_pow{1.0, 0.0};
  for (int i = 0; i < p.n - 2; ++i) zbar_pow *= zbar;
  b += p.b_complex() * static_cast<double>(p.n - 1) * zbar_pow;
  const auto col_x = a + b;
  const auto col_y = std::complex<double>(0.0, 1.0) * (a - b);
  return {{{col_x.real(), col_y.real()}, {col_x.imag(), col_y.imag()}}};
}

/// Exact Jacobian of the polar system (r', phi') with respect to (r, phi).
/// At an equilibrium with r > 0 it is similar to the Cartesian Jacobian.
inline Matrix2 jacobian_polar(const ModelParams& p, PolarPoint pt) {
  detail::require_normalized(p, "jacobian_polar");
  const auto s = detail::radial_sums(p, pt.r);
  const int n = p.n;
  const double r = pt.r;
  const double c = std::cos(n * pt.phi);
  const double sn = std::sin(n * pt.phi);
  const double brn2 = p.b1 * std::pow(r, n - 2);
  const double brn3 = n >= 3 ? p.b1 * std::pow(r, n - 3) : 0.0;
  const double p_r = (s.p1 + brn2 * c) + r * s.dp1 + (n - 2) * brn2 * c;
  const double p_phi = -n * r * brn2 * sn;
  const double q_r = s.dq1 - (n - 2) * brn3 * sn;
  const double q_phi = -n * brn2 * c;
  return {{{p_r, p_phi}, {q_r, q_phi}}};
}

/// Divergence of the Cartesian field at radius r: 2(eps1 + sum (k+1) a1_k r^2k).
inline double divergence(const ModelParams& p, double r) {
  double acc = p.eps1;
  const double r2 = r * r;
  double pw = 1.0;
  for (int k = 1; k <= p.s(); ++k) {
    pw *= r2;
    acc += (k + 1) * p.a1[k - 1] * pw;
  }
  return 2.0 * acc;
}

inline bool is_hamiltonian(const ModelParams& p, double tol = 0.0) {
  if (tol < 0.0) throw std::invalid_argument("is_hamiltonian: tol must be >= 0");
  if (std::abs(p.eps1) > tol) return false;
  for (double a : p.a1)
    if (std::abs(a) > tol) return false;
  return true;
}

/// H = eps2 r^2/2 + sum a2_k r^(2k+2)/(2k+2) - B r^n/n sin(n phi), with the
/// additive constant fixed so that H(origin) = 0. For non-Hamiltonian params
/// this is the same function, used as a Lyapunov-like indicator.
inline double hamiltonian(const ModelParams& p, PolarPoint pt) {
  detail::require_normalized(p, "hamiltonian");
  const double r2 = pt.r * pt.r;
  double h = p.eps2 * r2 / 2.0;
  double pw = r2;
  for (int k = 1; k <= p.s(); ++k) {
    pw *= r2;
    h += p.a2[k - 1] * pw / (2.0 * k + 2.0);
  }
  h -= p.b1 * std::pow(pt.r, p.n) / p.n * std::sin(p.n * pt.phi);
  return h;
}

inline double hamiltonian(const ModelParams& p, CartPoint c) {
  detail::require_normalized(p, "hamiltonian");
  // r^n sin(n phi) = Im z^n
  double ur = 1.0, ui = 0.0;
  for (int i = 0; i < p.n; ++i) {
    const double t = ur * c.x - ui * c.y;
    ui = ur * c.y + ui * c.x;
    ur = t;
  }
  const double r2 = c.x * c.x + c.y * c.y;
  double h = p.eps2 * r2 / 2.0;
  double pw = r2;
  for (int k = 1; k <= p.s(); ++k) {
    pw *= r2;
    h += p.a2[k - 1] * pw / (2.0 * k + 2.0);
  }
  return h - p.b1 / p.n * ui;
}

/// dH/dt along the full field by the chain rule.
inline double dH_dt(const ModelParams& p, PolarPoint pt) {
  const auto v = eval_polar(p, pt);
  const auto s = detail::radial_sums(p, pt.r);
  const double rn1 = std::pow(pt.r, p.n - 1);
  // dH/dr = r * (q1 - B r^(n-2) sin), dH/dphi = -B r^n cos.
  const double h_r = pt.r * s.q1 - p.b1 * rn1 * std::sin(p.n * pt.phi);
  const double h_phi = -p.b1 * rn1 * pt.r * std::cos(p.n * pt.phi);
  return h_r * v.dr + h_phi * v.dphi;
}

struct Eigen2 {
  double trace = 0.0;
  double det = 0.0;
  std::complex<double> lambda1;  // larger real part first
  std::complex<double> lambda2;
  /// Real eigenvectors (unit length) when the eigenvalues are real.
  std::array<double, 2> v1{0.0, 0.0};
  std::array<double, 2> v2{0.0, 0.0};
  bool real = false;
};

inline Eigen2 eigen(const Matrix2& m) {
  Eigen2 e;
  e.trace = m[0][0] + m[1][1];
  e.det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  const double disc = e.trace * e.trace / 4.0 - e.det;
  if (disc >= 0.0) {
    const double sq = std::sqrt(disc);
    e.real = true;
    // Stable form avoiding cancellation.
    const double big = e.trace / 2.0 + (e.trace >= 0.0 ? sq : -sq);
    const double small = big != 0.0 ? e.det / big : e.trace / 2.0 - sq;
    const double l1 = std::max(big, small);
    const double l2 = std::min(big, small);
    e.lambda1 = l1;
    e.lambda2 = l2;
    auto vec = [&](double l) -> std::array<double, 2> {
      // (m - l I) v = 0; pick the better-conditioned row.
      const double a = m[0][0] - l, b = m[0][1], c = m[1][0], d = m[1][1] - l;
      std::array<double, 2> v;
      if (std::hypot(a, b) >= std::hypot(c, d))
        v = {-b, a};
      else
        v = {-d, c};
      const double nv = std::hypot(v[0], v[1]);
      if (nv == 0.0) return {1.0, 0.0};
      return {v[0] / nv, v[1] / nv};
    };
    e.v1 = vec(l1);
    e.v2 = vec(l2);
  } else {
    const double im = std::sqrt(-disc);
    e.lambda1 = {e.trace / 2.0, im};
    e.lambda2 = {e.trace / 2.0, -im};
  }
  return e;
}

}  // namespace meander
