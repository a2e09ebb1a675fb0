#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace meander {

/// Number of A_k coefficients carried by the field of resonance order n.
constexpr int coefficient_count(int n) { return n / 2 - 1; }

/// Coefficients of z' = eps*z + z*A(|z|^2) + B*conj(z)^(n-1), with
/// A(|z|^2) = sum_k (a1[k] + i*a2[k]) |z|^(2k), k = 1..s.
struct ModelParams {
  int n = 4;
  double eps1 = 0.0;
  double eps2 = 0.0;
  std::vector<double> a1;
  std::vector<double> a2;
  double b1 = 0.0;
  double b2 = 0.0;

  int s() const { return coefficient_count(n); }
  double b() const { return std::hypot(b1, b2); }
  bool is_normalized() const { return b2 == 0.0 && b1 >= 0.0; }

  std::complex<double> eps() const { return {eps1, eps2}; }
  std::complex<double> a(int k) const { return {a1[k - 1], a2[k - 1]}; }
  std::complex<double> b_complex() const { return {b1, b2}; }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// Throws std::invalid_argument describing the first violated invariant.
inline void validate(const ModelParams& p) {
  if (p.n < 4)
    throw std::invalid_argument("n must be >= 4 (got " + std::to_string(p.n) + ")");
  const auto s = static_cast<std::size_t>(p.s());
  if (p.a1.size() != s || p.a2.size() != s)
    throw std::invalid_argument("n=" + std::to_string(p.n) + " needs exactly " +
                                std::to_string(s) + " entries in a1 and a2 (got " +
                                std::to_string(p.a1.size()) + ", " +
                                std::to_string(p.a2.size()) + ")");
  auto finite = [](double v) { return std::isfinite(v); };
  bool ok = finite(p.eps1) && finite(p.eps2) && finite(p.b1) && finite(p.b2);
  for (double v : p.a1) ok = ok && finite(v);
  for (double v : p.a2) ok = ok && finite(v);
  if (!ok) throw std::invalid_argument("coefficients must be finite");
}

/// Params with zero coefficients of the right length for n.
inline ModelParams make_params(int n) {
  ModelParams p;
  p.n = n;
  const auto s = static_cast<std::size_t>(std::max(coefficient_count(n), 0));
  p.a1.assign(s, 0.0);
  p.a2.assign(s, 0.0);
  return p;
}

/// Result of rotating B onto the positive real axis.
///
/// `beta` is arg(B). Substituting z = w * exp(i*beta/n) turns the field into
/// the same equation in w with B replaced by |B|, so `plane_angle` = beta/n is
/// the rotation of the phase plane that carries normalized coordinates back to
/// the original ones.
struct NormalizedParams {
  ModelParams params;
  double beta = 0.0;
  double plane_angle = 0.0;

  std::complex<double> to_original(std::complex<double> w) const {
    return w * std::polar(1.0, plane_angle);
  }
  std::complex<double> from_original(std::complex<double> z) const {
    return z * std::polar(1.0, -plane_angle);
  }
};

inline NormalizedParams normalize_rotation(const ModelParams& p) {
  NormalizedParams out{p, 0.0, 0.0};
  if (p.b2 == 0.0 && p.b1 >= 0.0) return out;
  out.beta = std::atan2(p.b2, p.b1);
  out.plane_angle = out.beta / p.n;
  out.params.b1 = p.b();
  out.params.b2 = 0.0;
  return out;
}

/// Angle reduced to [0, 2*pi).
inline double wrap_angle(double phi) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double w = std::fmod(phi, two_pi);
  if (w < 0.0) w += two_pi;
  if (w >= two_pi) w = 0.0;
  return w;
}

}  // namespace meander
