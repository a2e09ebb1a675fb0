#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "meander/field.hpp"
#include "meander/params.hpp"
#include "meander/polynomial.hpp"

namespace meander {

enum class Locus { Origin, Peripheral, QuasiEquilibriumCycle, RadialLimitCycle };
enum class Ray { Plus, Minus, None };
enum class Kind { Saddle, Center, StableSpiral, UnstableSpiral, StableNode, UnstableNode, Weak };

constexpr std::string_view to_string(Locus l) {
  switch (l) {
    case Locus::Origin: return "origin";
    case Locus::Peripheral: return "peripheral";
    case Locus::QuasiEquilibriumCycle: return "quasi-equilibrium-cycle";
    case Locus::RadialLimitCycle: return "radial-limit-cycle";
  }
  return "?";
}

constexpr std::string_view to_string(Ray r) {
  switch (r) {
    case Ray::Plus: return "plus";
    case Ray::Minus: return "minus";
    case Ray::None: return "none";
  }
  return "?";
}

constexpr std::string_view to_string(Kind k) {
  switch (k) {
    case Kind::Saddle: return "saddle";
    case Kind::Center: return "center";
    case Kind::StableSpiral: return "stable-spiral";
    case Kind::UnstableSpiral: return "unstable-spiral";
    case Kind::StableNode: return "stable-node";
    case Kind::UnstableNode: return "unstable-node";
    case Kind::Weak: return "weak";
  }
  return "?";
}

/// Center or spiral: something orbits can wind around.
constexpr bool is_focal(Kind k) {
  return k == Kind::Center || k == Kind::StableSpiral || k == Kind::UnstableSpiral;
}

struct Equilibrium {
  Locus locus = Locus::Peripheral;
  double r = 0.0;
  double phi = 0.0;
  Ray ray = Ray::None;
  int multiplicity = 1;       // symmetry copies (n for peripheral points)
  int root_multiplicity = 1;  // > 1 at a tangency of the radial equation
  Kind kind = Kind::Weak;
  Matrix2 jacobian{};
  Eigen2 eig;
  bool refined = true;
  double bracket_lo = 0.0;  // diagnostic interval when refinement stalls
  double bracket_hi = 0.0;
  std::string diagnostic;

  CartPoint position() const { return to_cartesian({r, phi}); }
};

inline constexpr double kRootTol = 1e-10;
inline constexpr double kClassifyTol = 1e-8;

// ---------------------------------------------------------------------------
// Radial polynomials

/// P1(r) = eps1 + sum a1_k r^2k (radial growth rate of the B = 0 system).
inline RadialPolynomial p1_polynomial(const ModelParams& p) {
  RadialPolynomial q{std::vector<double>(2 * p.s() + 1, 0.0), PolyTag::P1};
  q.coeffs[0] = p.eps1;
  for (int k = 1; k <= p.s(); ++k) q.coeffs[2 * k] = p.a1[k - 1];
  return q;
}

/// Q1(r) = eps2 + sum a2_k r^2k (angular velocity of the B = 0 system).
inline RadialPolynomial q1_polynomial(const ModelParams& p) {
  RadialPolynomial q{std::vector<double>(2 * p.s() + 1, 0.0), PolyTag::Q1};
  q.coeffs[0] = p.eps2;
  for (int k = 1; k <= p.s(); ++k) q.coeffs[2 * k] = p.a2[k - 1];
  return q;
}

/// P1^2 + Q1^2 - B^2 r^(2(n-2)); its positive roots are the radii of all
/// peripheral equilibria.
inline RadialPolynomial f_polynomial(const ModelParams& p) {
  const auto p1 = p1_polynomial(p);
  const auto q1 = q1_polynomial(p);
  RadialPolynomial f = p1 * p1 + q1 * q1;
  const std::size_t top = 2 * static_cast<std::size_t>(p.n - 2);
  if (f.coeffs.size() < top + 1) f.coeffs.resize(top + 1, 0.0);
  const double b = p.b();
  f.coeffs[top] -= b * b;
  f.tag = PolyTag::F;
  return f;
}

struct HamiltonianPolynomials {
  RadialPolynomial p0;
  RadialPolynomial plus;
  RadialPolynomial minus;
};

/// P0 = eps2 + sum a2_k r^2k and P+- = P0 -+ B r^(n-2); the radii of
/// peripheral equilibria on the rays phi = +-pi/(2n) are their positive roots.
inline HamiltonianPolynomials build_radial_polynomials(const ModelParams& p) {
  detail::require_normalized(p, "build_radial_polynomials");
  if (!is_hamiltonian(p, 0.0))
    throw std::invalid_argument("build_radial_polynomials: params are not Hamiltonian (eps1 and a1 must vanish)");
  HamiltonianPolynomials out;
  out.p0 = RadialPolynomial{std::vector<double>(p.n - 1, 0.0), PolyTag::P0};
  out.p0.coeffs[0] = p.eps2;
  for (int k = 1; k <= p.s(); ++k) out.p0.coeffs[2 * k] += p.a2[k - 1];
  out.plus = out.p0;
  out.plus.tag = PolyTag::Pplus;
  out.plus.coeffs[p.n - 2] -= p.b1;
  out.minus = out.p0;
  out.minus.tag = PolyTag::Pminus;
  out.minus.coeffs[p.n - 2] += p.b1;
  return out;
}

// ---------------------------------------------------------------------------
// Classification

inline double jacobian_scale(const Matrix2& m) {
  double s = 0.0;
  for (const auto& row : m)
    for (double v : row) s = std::max(s, std::abs(v));
  return s;
}

/// Kind from the trace/determinant of a Jacobian. Thresholds are `tol`
/// scaled by the magnitude of the Cartesian Jacobian entries (squared for
/// the determinant) so the verdict does not depend on the units of r.
inline Kind kind_from_jacobian(const Eigen2& e, double scale, bool hamiltonian, double tol) {
  const double s = std::max(1.0, scale);
  const double tol_trace = tol * s;
  const double tol_det = tol * s * s;
  if (e.det < -tol_det) return Kind::Saddle;
  if (e.det <= tol_det) return Kind::Weak;
  if (std::abs(e.trace) <= tol_trace) return hamiltonian ? Kind::Center : Kind::Weak;
  const bool node = e.trace * e.trace / 4.0 - e.det >= 0.0;
  if (e.trace < 0.0) return node ? Kind::StableNode : Kind::StableSpiral;
  return node ? Kind::UnstableNode : Kind::UnstableSpiral;
}

/// Fills jacobian/eig/kind of `e` from the polar Jacobian at (r, phi).
inline Kind classify(const ModelParams& p, Equilibrium& e, double tol = kClassifyTol) {
  detail::require_normalized(p, "classify");
  const CartPoint c = e.position();
  const Matrix2 jc = jacobian_cartesian(p, c);
  if (e.r > 0.0) {
    e.jacobian = jacobian_polar(p, {e.r, e.phi});
  } else {
    e.jacobian = jc;
  }
  e.eig = eigen(e.jacobian);
  e.kind = kind_from_jacobian(e.eig, jacobian_scale(jc), is_hamiltonian(p, 0.0), tol);
  return e.kind;
}

// ---------------------------------------------------------------------------
// Origin

struct OriginReport {
  Equilibrium eq;
  int rotation = 0;  // +1 counterclockwise, -1 clockwise near the origin
  double first_lyapunov = 0.0;
  double second_lyapunov = 0.0;
  std::string stability;  // center | weakly unstable | weakly stable | unstable | stable | degenerate
};

/// |eps1| below this fraction of |eps2| makes the origin a weak focus.
inline constexpr double kWeakFocusRatio = 2e-3;

inline OriginReport origin_analysis(const ModelParams& p) {
  OriginReport out;
  out.eq.locus = Locus::Origin;
  out.eq.ray = Ray::None;
  out.eq.r = 0.0;
  out.eq.phi = 0.0;
  out.eq.jacobian = {{{p.eps1, -p.eps2}, {p.eps2, p.eps1}}};
  out.eq.eig = eigen(out.eq.jacobian);
  const bool ham = is_hamiltonian(p, 0.0);
  out.eq.kind = kind_from_jacobian(out.eq.eig, jacobian_scale(out.eq.jacobian), ham, kClassifyTol);
  if (p.eps1 == 0.0 && p.eps2 != 0.0) out.eq.kind = Kind::Center;
  out.rotation = p.eps2 > 0.0 ? 1 : (p.eps2 < 0.0 ? -1 : 0);
  out.first_lyapunov = p.s() >= 1 ? p.a1[0] : 0.0;
  out.second_lyapunov = p.s() >= 2 ? p.a1[1] : 0.0;
  if (p.eps1 == 0.0 && p.eps2 == 0.0) {
    out.stability = "degenerate";
  } else if (p.eps1 == 0.0) {
    out.stability = "center";
  } else if (std::abs(p.eps1) <= kWeakFocusRatio * std::abs(p.eps2)) {
    out.stability = p.eps1 > 0.0 ? "weakly unstable" : "weakly stable";
  } else {
    out.stability = p.eps1 > 0.0 ? "unstable" : "stable";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Peripheral equilibria

namespace detail {

// Newton on (r' / r, phi') = 0 in (r, phi). Returns true on convergence.
inline bool refine_peripheral(const ModelParams& p, double& r, double& phi) {
  const int n = p.n;
  for (int it = 0; it < 60; ++it) {
    const auto s = radial_sums(p, r);
    const double brn2 = p.b1 * std::pow(r, n - 2);
    const double brn3 = p.b1 * std::pow(r, n - 3);
    const double c = std::cos(n * phi), sn = std::sin(n * phi);
    const double f1 = s.p1 + brn2 * c;
    const double f2 = s.q1 - brn2 * sn;
    const double scale = std::abs(s.p1) + std::abs(s.q1) + brn2 + 1e-300;
    if (std::abs(f1) + std::abs(f2) <= 1e-15 * scale) return true;
    const double a = s.dp1 + (n - 2) * brn3 * c, b = -n * brn2 * sn;
    const double cc = s.dq1 - (n - 2) * brn3 * sn, d = -n * brn2 * c;
    const double det = a * d - b * cc;
    if (det == 0.0 || !std::isfinite(det)) return false;
    const double dr = (d * f1 - b * f2) / det;
    const double dphi = (-cc * f1 + a * f2) / det;
    r -= dr;
    phi -= dphi;
    if (!(r > 0.0)) return false;
    if (std::abs(dr) <= 4e-16 * r && std::abs(dphi) <= 4e-16) return true;
  }
  const auto s = radial_sums(p, r);
  const double brn2 = p.b1 * std::pow(r, n - 2);
  const double resid = std::abs(s.p1 + brn2 * std::cos(n * phi)) + std::abs(s.q1 - brn2 * std::sin(n * phi));
  return resid <= 1e-12 * (std::abs(s.p1) + std::abs(s.q1) + brn2 + 1e-300);
}

inline Equilibrium make_peripheral(double r, double phi, Ray ray, int n, int root_mult) {
  Equilibrium e;
  e.locus = Locus::Peripheral;
  e.r = r;
  e.phi = wrap_angle(phi);
  e.ray = ray;
  e.multiplicity = n;
  e.root_multiplicity = root_mult;
  return e;
}

}  // namespace detail

struct PeripheralResult {
  std::vector<Equilibrium> equilibria;  // one representative per symmetry orbit, by radius
  bool degenerate = false;              // tangency, ill-conditioned roots or a circle of equilibria
  std::vector<std::string> notes;
};

/// Representative peripheral equilibria (j = 0 copy), sorted by radius.
inline PeripheralResult peripheral_equilibria(const ModelParams& p, double root_tol = kRootTol,
                                              double classify_tol = kClassifyTol) {
  detail::require_normalized(p, "peripheral_equilibria");
  PeripheralResult out;
  const int n = p.n;
  const double pi = std::numbers::pi;
  if (p.b1 == 0.0) {
    // Only circles of equilibria can occur, where P1 and Q1 share a root.
    const auto q = q1_polynomial(p);
    const auto pp = p1_polynomial(p);
    if (!q.is_zero())
      for (const auto& r : positive_roots(q, root_tol).roots)
        if (std::abs(pp(r.value)) <= 1e-12 * pp.magnitude(r.value)) {
          out.degenerate = true;
          out.notes.push_back("circle of equilibria at r=" + std::to_string(r.value));
        }
    return out;
  }

  if (is_hamiltonian(p, 0.0)) {
    const auto polys = build_radial_polynomials(p);
    const double phi_plus = pi / (2.0 * n);
    for (auto [poly, ray, phi] : {std::tuple{&polys.plus, Ray::Plus, phi_plus},
                                  std::tuple{&polys.minus, Ray::Minus, -phi_plus}}) {
      if (poly->is_zero()) {
        out.degenerate = true;
        out.notes.push_back(std::string(to_string(poly->tag)) + " vanishes identically");
        continue;
      }
      const auto roots = positive_roots(*poly, root_tol);
      if (roots.ill_conditioned) {
        out.degenerate = true;
        out.notes.push_back(std::string(to_string(poly->tag)) + " has ill-conditioned roots");
      }
      for (const auto& root : roots.roots) {
        auto e = detail::make_peripheral(root.value, phi, ray, n, root.multiplicity);
        if (root.multiplicity > 1) {
          out.degenerate = true;
          out.notes.push_back("multiple root of " + std::string(to_string(poly->tag)) +
                              " at r=" + std::to_string(root.value));
        }
        out.equilibria.push_back(e);
      }
    }
  } else {
    const auto f = f_polynomial(p);
    const auto p1 = p1_polynomial(p);
    const auto q1 = q1_polynomial(p);
    if (f.is_zero()) {
      out.degenerate = true;
      out.notes.push_back("F vanishes identically");
      return out;
    }
    const auto roots = positive_roots(f, root_tol);
    if (roots.ill_conditioned) {
      out.degenerate = true;
      out.notes.push_back("F has ill-conditioned roots");
    }
    for (const auto& root : roots.roots) {
      double r = root.value;
      double phi = std::atan2(q1(r), -p1(r)) / n;  // representative in (-pi/n, pi/n]
      const double r0 = r;
      const bool ok = detail::refine_peripheral(p, r, phi);
      Ray ray = Ray::None;
      auto e = detail::make_peripheral(ok ? r : r0, phi, ray, n, root.multiplicity);
      if (!ok) {
        e.refined = false;
        e.bracket_lo = r0 * (1.0 - 1e-6);
        e.bracket_hi = r0 * (1.0 + 1e-6);
        e.diagnostic = "Newton refinement stalled; root of F bracketed in [" + std::to_string(e.bracket_lo) + ", " +
                       std::to_string(e.bracket_hi) + "]";
      }
      if (root.multiplicity > 1) {
        out.degenerate = true;
        out.notes.push_back("tangency (multiple root of F) at r=" + std::to_string(root.value));
      }
      out.equilibria.push_back(e);
    }
  }
  for (auto& e : out.equilibria) {
    classify(p, e, classify_tol);
    if (e.root_multiplicity > 1) e.kind = Kind::Weak;
  }
  std::stable_sort(out.equilibria.begin(), out.equilibria.end(),
                   [](const Equilibrium& a, const Equilibrium& b) { return a.r < b.r; });
  return out;
}

/// All n symmetry copies of a representative peripheral equilibrium.
inline std::vector<Equilibrium> symmetry_copies(const Equilibrium& rep, int n) {
  std::vector<Equilibrium> out;
  const double step = 2.0 * std::numbers::pi / n;
  for (int j = 0; j < n; ++j) {
    Equilibrium e = rep;
    e.phi = wrap_angle(rep.phi + j * step);
    out.push_back(e);
  }
  return out;
}

// ---------------------------------------------------------------------------
// B = 0 structure

/// Radii where the angular velocity of the B = 0 system vanishes while the
/// radial one does not.
inline std::vector<double> quasi_equilibria(const ModelParams& p, double root_tol = kRootTol) {
  std::vector<double> out;
  const auto q = q1_polynomial(p);
  const auto pp = p1_polynomial(p);
  if (q.is_zero()) return out;
  for (const auto& r : positive_roots(q, root_tol).roots)
    if (std::abs(pp(r.value)) > 1e-12 * std::max(1.0, pp.magnitude(r.value))) out.push_back(r.value);
  return out;
}

enum class CycleStability { Stable, Unstable, SemiStable };

constexpr std::string_view to_string(CycleStability s) {
  switch (s) {
    case CycleStability::Stable: return "stable";
    case CycleStability::Unstable: return "unstable";
    case CycleStability::SemiStable: return "semi-stable";
  }
  return "?";
}

struct LimitCycle {
  double r = 0.0;
  CycleStability stability = CycleStability::Stable;
  bool approximate = false;  // B != 0: only a seed for the true cycle
};

/// Circles r = const where P1 vanishes; exact limit cycles when B = 0.
inline std::vector<LimitCycle> radial_limit_cycles(const ModelParams& p, double root_tol = kRootTol) {
  std::vector<LimitCycle> out;
  const auto pp = p1_polynomial(p);
  if (pp.is_zero()) return out;
  const bool approx = p.b() != 0.0;
  const auto dp = pp.derivative();
  for (const auto& root : positive_roots(pp, root_tol).roots) {
    CycleStability st;
    if (root.multiplicity % 2 == 0) {
      st = CycleStability::SemiStable;
    } else {
      // Sign of P1 just past the root decides: negative-going means attracting.
      const double h = 1e-6 * std::max(1.0, root.value);
      st = pp(root.value + h) < pp(root.value - h) ? CycleStability::Stable : CycleStability::Unstable;
      if (dp(root.value) != 0.0) st = dp(root.value) < 0.0 ? CycleStability::Stable : CycleStability::Unstable;
    }
    out.push_back({root.value, st, approx});
  }
  return out;
}

}  // namespace meander
