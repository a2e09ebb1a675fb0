#pragma once

#include <string>
#include <vector>

#include "meander/asymptotics.hpp"
#include "meander/equilibria.hpp"
#include "meander/patterns.hpp"
#include "meander/polynomial.hpp"

namespace meander {

struct PolynomialRoots {
  RadialPolynomial poly;
  RootSet roots;
  int descartes = 0;

  int count() const {
    int c = 0;
    for (const auto& r : roots.roots) c += r.multiplicity;
    return c;
  }
};

struct BoundCheck {
  std::string name;
  int value = 0;
  int bound = 0;
  bool ok = true;
};

/// Everything that follows from the coefficients without integrating orbits.
struct Analysis {
  ModelParams params;
  NormalizedParams frame;
  bool hamiltonian = false;
  std::vector<PolynomialRoots> polynomials;  // P0, P+, P- (Hamiltonian) or P1, Q1, F
  OriginReport origin;
  PeripheralResult peripheral;
  EquatorResult equator;
  std::vector<double> quasi_radii;
  std::vector<LimitCycle> limit_cycles;
  RegimeLabel regime;
  std::vector<BoundCheck> bounds;
  std::vector<std::string> degeneracy;
  int plus_roots = -1;
  int minus_roots = -1;

  bool degenerate() const { return !degeneracy.empty(); }
  bool bounds_ok() const {
    for (const auto& b : bounds)
      if (!b.ok) return false;
    return true;
  }
  /// Kinds of the representative peripheral equilibria by radius, e.g. "S,C,S".
  std::string signature() const {
    std::string s;
    for (const auto& e : peripheral.equilibria) {
      if (!s.empty()) s += ",";
      switch (e.kind) {
        case Kind::Saddle: s += "S"; break;
        case Kind::Center: s += "C"; break;
        case Kind::StableSpiral:
        case Kind::UnstableSpiral: s += "F"; break;
        case Kind::StableNode:
        case Kind::UnstableNode: s += "N"; break;
        case Kind::Weak: s += "W"; break;
      }
    }
    return s;
  }
};

inline PolynomialRoots solve(const RadialPolynomial& q) {
  PolynomialRoots out{q, {}, 0};
  if (q.is_zero()) return out;
  out.roots = positive_roots(q, kRootTol);
  out.descartes = descartes_bound(q);
  return out;
}

inline Analysis analyze(const ModelParams& params) {
  validate(params);
  Analysis a;
  a.params = params;
  a.frame = normalize_rotation(params);
  const ModelParams& p = a.frame.params;
  a.hamiltonian = is_hamiltonian(p, 0.0);

  if (a.hamiltonian) {
    const auto polys = build_radial_polynomials(p);
    a.polynomials = {solve(polys.p0), solve(polys.plus), solve(polys.minus)};
    a.plus_roots = a.polynomials[1].count();
    a.minus_roots = a.polynomials[2].count();
  } else {
    a.polynomials = {solve(p1_polynomial(p)), solve(q1_polynomial(p))};
    const auto f = f_polynomial(p);
    if (!f.is_zero()) a.polynomials.push_back(solve(f));
  }
  for (const auto& pr : a.polynomials)
    if (pr.roots.ill_conditioned) a.degeneracy.push_back(std::string(to_string(pr.poly.tag)) + " roots ill-conditioned");

  a.origin = origin_analysis(p);
  if (a.origin.eq.kind == Kind::Weak) a.degeneracy.push_back("degenerate origin (eps = 0)");
  a.peripheral = peripheral_equilibria(p);
  for (const auto& note : a.peripheral.notes) a.degeneracy.push_back(note);
  if (a.peripheral.degenerate && a.peripheral.notes.empty()) a.degeneracy.push_back("degenerate peripheral equilibria");
  for (const auto& e : a.peripheral.equilibria)
    if (e.kind == Kind::Weak) a.degeneracy.push_back("weak equilibrium at r=" + std::to_string(e.r));
  a.equator = equator_equilibria(p);
  if (a.equator.verdict == EquatorVerdict::Degenerate) a.degeneracy.push_back("degenerate equator");
  a.quasi_radii = quasi_equilibria(p);
  a.limit_cycles = radial_limit_cycles(p);
  a.regime = regime(params);
  if (a.regime.supported && a.regime.label == "boundary") a.degeneracy.push_back("on regime boundary");

  if (a.plus_roots >= 0) {
    const int bound = root_count_bound(p.n);
    a.bounds.push_back({"P+ positive roots", a.plus_roots, bound, a.plus_roots <= bound});
    a.bounds.push_back({"P- positive roots", a.minus_roots, bound, a.minus_roots <= bound});
    const int s = p.s();
    const double as = s > 0 ? std::abs(p.a2[s - 1]) : 0.0;
    if (p.n % 2 == 0 && p.eps2 != 0.0 && p.b1 != as) {
      // Total root count is odd exactly when B exceeds |a2_s|.
      const int total = a.plus_roots + a.minus_roots;
      const int expect = p.b1 > as ? 1 : 0;
      a.bounds.push_back({"P+ and P- root parity", total % 2, expect, total % 2 == expect});
    }
  }
  return a;
}

}  // namespace meander
