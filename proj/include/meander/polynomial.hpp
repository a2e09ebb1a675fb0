#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace meander {

enum class PolyTag { P0, Pplus, Pminus, P1, Q1, F };

constexpr std::string_view to_string(PolyTag t) {
  switch (t) {
    case PolyTag::P0: return "P0";
    case PolyTag::Pplus: return "P+";
    case PolyTag::Pminus: return "P-";
    case PolyTag::P1: return "P1";
    case PolyTag::Q1: return "Q1";
    case PolyTag::F: return "F";
  }
  return "?";
}

/// Real polynomial in r, coefficients by ascending power.
struct RadialPolynomial {
  std::vector<double> coeffs;
  PolyTag tag = PolyTag::P0;

  int degree() const {
    for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i)
      if (coeffs[i] != 0.0) return i;
    return -1;
  }
  bool is_zero() const { return degree() < 0; }

  double operator()(double r) const {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * r + *it;
    return acc;
  }

  /// sum |c_i| r^i; the natural rounding scale of evaluating at r.
  double magnitude(double r) const {
    double acc = 0.0;
    const double ar = std::abs(r);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * ar + std::abs(*it);
    return acc;
  }

  RadialPolynomial derivative() const {
    RadialPolynomial d{{}, tag};
    for (std::size_t i = 1; i < coeffs.size(); ++i)
      d.coeffs.push_back(static_cast<double>(i) * coeffs[i]);
    return d;
  }

  friend RadialPolynomial operator*(const RadialPolynomial& a, const RadialPolynomial& b) {
    RadialPolynomial out{{}, PolyTag::F};
    if (a.coeffs.empty() || b.coeffs.empty()) return out;
    out.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs.size(); ++j) out.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
    return out;
  }

  friend RadialPolynomial operator+(RadialPolynomial a, const RadialPolynomial& b) {
    if (a.coeffs.size() < b.coeffs.size()) a.coeffs.resize(b.coeffs.size(), 0.0);
    for (std::size_t i = 0; i < b.coeffs.size(); ++i) a.coeffs[i] += b.coeffs[i];
    return a;
  }
};

/// Sign changes between consecutive nonzero coefficients (Descartes' rule):
/// an upper bound on the number of positive roots counted with multiplicity.
inline int descartes_bound(const RadialPolynomial& q) {
  if (q.is_zero()) throw std::invalid_argument("descartes_bound: zero polynomial");
  int changes = 0;
  int last = 0;
  for (double c : q.coeffs) {
    if (c == 0.0) continue;
    const int sign = c > 0.0 ? 1 : -1;
    if (last != 0 && sign != last) ++changes;
    last = sign;
  }
  return changes;
}

struct PolyRoot {
  double value = 0.0;
  int multiplicity = 1;
};

struct RootSet {
  std::vector<PolyRoot> roots;  // ascending
  /// Two distinct roots closer than the requested tolerance, or a critical
  /// value too close to zero to decide between "double root" and "no root".
  bool ill_conditioned = false;

  std::size_t size() const { return roots.size(); }
  bool has_multiple() const {
    return std::any_of(roots.begin(), roots.end(), [](const PolyRoot& r) { return r.multiplicity > 1; });
  }
};

namespace detail {

// Relative threshold below which p(x) is treated as an exact zero.
inline constexpr double kZeroRel = 1e-11;

inline bool near_zero(const RadialPolynomial& p, double x) {
  return std::abs(p(x)) <= kZeroRel * p.magnitude(x);
}

// Root of p on [lo, hi] where p(lo), p(hi) have strictly opposite signs and
// p is monotone. Bisection to adjacent doubles then one guarded Newton step.
inline double refine_bracketed(const RadialPolynomial& p, const RadialPolynomial& dp, double lo, double hi) {
  double flo = p(lo);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = p(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  double x = 0.5 * (lo + hi);
  const double d = dp(x);
  if (d != 0.0) {
    const double xn = x - p(x) / d;
    if (xn >= lo && xn <= hi && std::abs(p(xn)) <= std::abs(p(x))) x = xn;
  }
  return x;
}

// All real roots of p in the open interval (lo, hi), ascending, found by
// recursing on the derivative: between consecutive critical points p is
// monotone and has at most one simple root.
inline std::vector<PolyRoot> roots_in(const RadialPolynomial& p, double lo, double hi, bool& ill) {
  std::vector<PolyRoot> out;
  const int deg = p.degree();
  if (deg <= 0) return out;
  const RadialPolynomial dp = p.derivative();
  if (deg == 1) {
    const double x = -p.coeffs[0] / p.coeffs[1];
    if (x > lo && x < hi) out.push_back({x, 1});
    return out;
  }
  const std::vector<PolyRoot> crit = roots_in(dp, lo, hi, ill);
  std::vector<double> pts;
  pts.reserve(crit.size() + 2);
  pts.push_back(lo);
  for (const auto& c : crit) pts.push_back(c.value);
  pts.push_back(hi);

  std::vector<char> zero(pts.size(), 0);
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) zero[i] = near_zero(p, pts[i]);

  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (i > 0 && zero[i]) {
      // A root sitting on a critical point of p has multiplicity >= 2.
      int mult = 1 + crit[i - 1].multiplicity;
      if (std::abs(p(pts[i])) != 0.0 && std::abs(p(pts[i])) > 1e-14 * p.magnitude(pts[i])) ill = true;
      out.push_back({pts[i], mult});
    }
    if (zero[i] || zero[i + 1]) continue;
    const double fa = p(pts[i]);
    const double fb = p(pts[i + 1]);
    if (fa == 0.0 || fb == 0.0) continue;
    if ((fa > 0.0) != (fb > 0.0)) out.push_back({refine_bracketed(p, dp, pts[i], pts[i + 1]), 1});
  }
  // Endpoint hi is never a root (it lies beyond the Cauchy bound or is the
  // caller's bound); endpoint lo is excluded by contract.
  return out;
}

}  // namespace detail

/// Cauchy bound: every root satisfies |x| < 1 + max |c_i / c_deg|.
inline double cauchy_bound(const RadialPolynomial& q) {
  const int deg = q.degree();
  if (deg <= 0) return 0.0;
  double m = 0.0;
  for (int i = 0; i < deg; ++i) m = std::max(m, std::abs(q.coeffs[i] / q.coeffs[deg]));
  return 1.0 + m;
}

/// All distinct real roots r > tol, ascending, with multiplicities.
inline RootSet positive_roots(const RadialPolynomial& q, double tol = 1e-10) {
  if (!(tol > 0.0)) throw std::invalid_argument("positive_roots: tol must be > 0");
  RootSet out;
  if (q.degree() <= 0) return out;
  const double hi = 2.0 * cauchy_bound(q);
  out.roots = detail::roots_in(q, tol, hi, out.ill_conditioned);
  for (std::size_t i = 1; i < out.roots.size(); ++i) {
    const double a = out.roots[i - 1].value;
    const double b = out.roots[i].value;
    if (b - a < tol * std::max(1.0, b)) out.ill_conditioned = true;
  }
  return out;
}

}  // namespace meander
