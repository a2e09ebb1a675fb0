#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "meander/asymptotics.hpp"
#include "meander/equilibria.hpp"
#include "meander/field.hpp"
#include "meander/integrator.hpp"
#include "meander/params.hpp"

namespace meander {

// ---------------------------------------------------------------------------
// Regime labels (analytic boundaries known for n = 4 and n = 5)

struct RegimeLabel {
  bool supported = false;
  std::string label;       // "Domain 1", "Domain 2", "Domain 3", "boundary"
  double indicator = 0.0;  // n=5: 27 eps2 B^2 + 4 a2^3; n=4: B - |a2|
  std::string detail;
};

inline RegimeLabel regime(const ModelParams& raw) {
  RegimeLabel out;
  const ModelParams p = normalize_rotation(raw).params;
  if (p.n != 4 && p.n != 5) {
    out.detail = "no analytic regime map for n=" + std::to_string(p.n);
    return out;
  }
  if (!is_hamiltonian(p, 0.0)) {
    out.detail = "no analytic regime map for non-Hamiltonian params";
    return out;
  }
  out.supported = true;
  const double b = p.b1;
  const double a = p.a2[0];
  if (p.n == 5) {
    out.indicator = 27.0 * p.eps2 * b * b + 4.0 * a * a * a;
    const double scale = 27.0 * std::abs(p.eps2) * b * b + 4.0 * std::abs(a * a * a);
    if (std::abs(out.indicator) <= 1e-12 * std::max(scale, 1e-300))
      out.label = "boundary";
    else
      out.label = out.indicator > 0.0 ? "Domain 1" : "Domain 2";
    out.detail = "C: 27*eps2*B^2 + 4*a2^3 = " + std::to_string(out.indicator);
  } else {
    out.indicator = b - std::abs(a);
    if (std::abs(out.indicator) <= 1e-12 * std::max({1.0, b, std::abs(a)}))
      out.label = "boundary";
    else if (out.indicator > 0.0)
      out.label = "Domain 2";
    else
      out.label = a > 0.0 ? "Domain 1" : "Domain 3";
    out.detail = "boundaries B = +-a2: B - |a2| = " + std::to_string(out.indicator);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Portrait

struct PortraitOptions {
  int orbits_per_region = 3;
  bool sample_orbits = true;
  bool trace_separatrices = true;
  int windings = 1;
  double orbit_max_time = 100.0;
  double separatrix_max_time = 200.0;
  std::size_t max_steps = 100000;
  double max_step = 0.05;      // integrator step cap; keeps polylines smooth
  bool copy_samples = true;    // false: rotated separatrix copies carry no polyline
  double separatrix_rel_tol = 1e-12;
  double separatrix_abs_tol = 1e-14;
  double escape_radius = 0.0;  // 0: 50x outermost equilibrium radius, or 1e3
  double window = 0.0;         // 0: outermost critical radius sits at 0.8 w
  int census_count = 0;        // > 0 runs a destination census
  double census_r0 = 0.0;      // 0: picked automatically
  double census_max_time = 2000.0;
};

struct PortraitEquilibrium {
  int id = 0;
  int family = -1;  // index into Portrait::representatives, -1 for the origin
  int copy = 0;     // symmetry index j
  Equilibrium eq;
};

struct Portrait {
  ModelParams params;      // as given
  NormalizedParams frame;  // normalized params and the rotation back to the given frame
  bool hamiltonian = false;
  OriginReport origin;
  std::vector<Equilibrium> representatives;    // peripheral, by radius
  std::vector<PortraitEquilibrium> equilibria;  // origin + every symmetry copy, by radius then angle
  std::vector<SeparatrixSet> separatrices;     // one per saddle copy, ordered like `equilibria`
  std::vector<Orbit> orbits;
  EquatorResult equator;
  std::vector<double> quasi_radii;
  std::vector<LimitCycle> limit_cycles;
  std::optional<CensusResult> census;
  std::vector<std::string> degeneracy;
  double escape_radius = 0.0;
  double window = 1.0;

  bool degenerate() const { return !degeneracy.empty(); }
  const ModelParams& normalized() const { return frame.params; }

  int id_of(int family, int copy) const {
    for (const auto& e : equilibria)
      if (e.family == family && e.copy == copy) return e.id;
    return -1;
  }
  const PortraitEquilibrium& at(int id) const { return equilibria.at(static_cast<std::size_t>(id)); }
};

namespace detail {

inline CartPoint rotate(CartPoint c, double angle) {
  const double cs = std::cos(angle), sn = std::sin(angle);
  return {cs * c.x - sn * c.y, sn * c.x + cs * c.y};
}

inline int mod(int a, int n) { return ((a % n) + n) % n; }

}  // namespace detail

inline std::vector<CaptureTarget> capture_targets(const Portrait& pt, double saddle_radius_scale,
                                                  double other_radius_scale) {
  std::vector<CaptureTarget> out;
  for (const auto& e : pt.equilibria) {
    CaptureTarget t;
    t.id = e.id;
    t.at = e.eq.position();
    t.saddle = e.eq.kind == Kind::Saddle;
    t.radius = (t.saddle ? saddle_radius_scale : other_radius_scale) * (1.0 + e.eq.r);
    if (t.saddle && pt.hamiltonian) {
      // x' = -H_y, y' = H_x, so the Hessian is read off the Jacobian.
      const Matrix2 j = jacobian_cartesian(pt.frame.params, t.at);
      const double hxx = j[1][0], hyy = -j[0][1], hxy = j[1][1];
      const double mean = 0.5 * (hxx + hyy), rad = std::hypot(0.5 * (hxx - hyy), hxy);
      t.hess_min = std::min(std::abs(mean + rad), std::abs(mean - rad));
    }
    out.push_back(t);
  }
  return out;
}

/// Critical radii ordering the phase plane into annuli.
inline std::vector<double> critical_radii(const Portrait& pt) {
  std::vector<double> r;
  for (const auto& e : pt.representatives) r.push_back(e.r);
  for (double q : pt.quasi_radii) r.push_back(q);
  for (const auto& c : pt.limit_cycles) r.push_back(c.r);
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end(), [](double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, b); }),
          r.end());
  return r;
}

/// Seed circle for the destination census: halfway between the innermost
/// peripheral center/spiral/node ring and the nearest saddle ring inside it.
inline double census_radius(const Portrait& pt) {
  const auto& reps = pt.representatives;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    if (reps[i].kind == Kind::Saddle || reps[i].kind == Kind::Weak) continue;
    double inner = 0.0;
    for (std::size_t j = 0; j < i; ++j)
      if (reps[j].kind == Kind::Saddle) inner = reps[j].r;
    return 0.5 * (inner + reps[i].r);
  }
  return reps.empty() ? 0.5 : 0.5 * reps.front().r;
}

/// Equilibria, separatrices, sample orbits and equator structure of the field.
inline Portrait build_portrait(const ModelParams& params, const PortraitOptions& opts = {}) {
  validate(params);
  Portrait pt;
  pt.params = params;
  pt.frame = normalize_rotation(params);
  const ModelParams& p = pt.frame.params;
  const int n = p.n;
  const double two_pi = 2.0 * std::numbers::pi;
  pt.hamiltonian = is_hamiltonian(p, 0.0);

  pt.origin = origin_analysis(p);
  auto per = peripheral_equilibria(p);
  pt.representatives = per.equilibria;
  for (auto& note : per.notes) pt.degeneracy.push_back(note);
  for (const auto& e : pt.representatives)
    if (e.kind == Kind::Weak) pt.degeneracy.push_back("weak equilibrium at r=" + std::to_string(e.r));
  pt.equator = equator_equilibria(p);
  if (pt.equator.verdict == EquatorVerdict::Degenerate) pt.degeneracy.push_back("degenerate equator");
  pt.quasi_radii = quasi_equilibria(p);
  pt.limit_cycles = radial_limit_cycles(p);

  // Expanded equilibrium list: origin, then each family's copies by angle.
  pt.equilibria.push_back({0, -1, 0, pt.origin.eq});
  for (int f = 0; f < static_cast<int>(pt.representatives.size()); ++f) {
    const auto copies = symmetry_copies(pt.representatives[f], n);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return copies[a].phi < copies[b].phi; });
    for (int j : order) pt.equilibria.push_back({static_cast<int>(pt.equilibria.size()), f, j, copies[j]});
  }

  const auto crit = critical_radii(pt);
  double outer_eq = 0.0;
  for (const auto& e : pt.representatives) outer_eq = std::max(outer_eq, e.r);
  pt.escape_radius = opts.escape_radius > 0.0 ? opts.escape_radius : (outer_eq > 0.0 ? 50.0 * outer_eq : 1e3);
  const double outer_crit = crit.empty() ? 1.0 : crit.back();
  pt.window = opts.window > 0.0 ? opts.window : outer_crit / 0.8;

  OrbitOptions base;
  base.escape_radius = pt.escape_radius;
  base.max_steps = opts.max_steps;
  base.max_dt = opts.max_step;
  base.h_check_radius = 2.0 * pt.window;
  base.blowup_radius = 2.0 * outer_crit;

  // Separatrices: trace each family's j = 0 copy, rotate for the others.
  if (opts.trace_separatrices) {
    std::map<int, SeparatrixSet> family_sets, bare_sets;
    SeparatrixOptions so;
    so.orbit = base;
    so.orbit.max_time = opts.separatrix_max_time;
    so.orbit.rel_tol = opts.separatrix_rel_tol;
    so.orbit.abs_tol = opts.separatrix_abs_tol;
    so.orbit.targets = capture_targets(pt, 1e-5, 1e-3);
    for (int f = 0; f < static_cast<int>(pt.representatives.size()); ++f) {
      const auto& sd = pt.representatives[f];
      if (sd.kind != Kind::Saddle) continue;
      // Weak saddles need about log(1/delta)/lambda just to leave.
      SeparatrixOptions fo = so;
      const double lambda = std::min(std::abs(sd.eig.lambda1.real()), std::abs(sd.eig.lambda2.real()));
      if (lambda > 0.0) fo.orbit.max_time = std::max(so.orbit.max_time, 40.0 / lambda);
      family_sets[f] = trace_separatrices(p, sd, pt.id_of(f, 0), fo);
      if (!opts.copy_samples) {
        SeparatrixSet bare = family_sets[f];
        for (auto& b : bare.branches) {
          b.orbit.samples.clear();
          b.orbit.times.clear();
        }
        bare_sets[f] = std::move(bare);
      }
    }
    for (const auto& e : pt.equilibria) {
      if (e.family < 0 || e.eq.kind != Kind::Saddle) continue;
      const SeparatrixSet& base_set = opts.copy_samples || e.copy == 0 ? family_sets.at(e.family) : bare_sets.at(e.family);
      const double angle = two_pi * e.copy / n;
      SeparatrixSet s = base_set;
      s.saddle_id = e.id;
      s.saddle = detail::rotate(base_set.saddle, angle);
      for (auto& b : s.branches) {
        b.launch = detail::rotate(b.launch, angle);
        const double cs = std::cos(angle), sn = std::sin(angle);
        for (auto& c : b.orbit.samples) c = {cs * c.x - sn * c.y, sn * c.x + cs * c.y};
        if (b.orbit.termination == Termination::Escaped) b.orbit.exit_angle = wrap_angle(b.orbit.exit_angle + angle);
        if (b.connection.target_id > 0) {
          const auto& t = pt.at(b.connection.target_id);
          b.connection.target_id = pt.id_of(t.family, detail::mod(t.copy + e.copy, n));
          b.orbit.equilibrium_id = b.connection.target_id;
        }
      }
      pt.separatrices.push_back(std::move(s));
    }
  }

  if (opts.sample_orbits) {
    OrbitOptions oo = base;
    oo.max_time = opts.orbit_max_time;
    oo.windings = opts.windings;
    oo.targets = capture_targets(pt, 1e-6, 1e-3);
    std::vector<CartPoint> seeds;
    std::vector<double> bounds{0.0};
    bounds.insert(bounds.end(), crit.begin(), crit.end());
    bounds.push_back(std::max(pt.window, outer_crit * 1.05));
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i)
      for (int k = 1; k <= opts.orbits_per_region; ++k) {
        const double r = bounds[i] + (bounds[i + 1] - bounds[i]) * k / (opts.orbits_per_region + 1.0);
        seeds.push_back({r, 0.0});
      }
    // One seed inside each peripheral center/spiral leaf.
    for (std::size_t f = 0; f < pt.representatives.size(); ++f) {
      const auto& e = pt.representatives[f];
      if (!is_focal(e.kind)) continue;
      double gap = e.r;
      for (double c : crit)
        if (std::abs(c - e.r) > 1e-9 * e.r) gap = std::min(gap, std::abs(c - e.r));
      seeds.push_back(to_cartesian({e.r + 0.1 * gap, e.phi}));
    }
    for (const auto& s : seeds) pt.orbits.push_back(integrate_orbit(p, s, oo));
  }

  if (opts.census_count > 0) {
    CensusOptions co;
    co.orbit = base;
    co.orbit.max_time = opts.census_max_time;
    co.orbit.detect_closure = false;
    co.orbit.targets = capture_targets(pt, 1e-6, 1e-2);
    const double r0 = opts.census_r0 > 0.0 ? opts.census_r0 : census_radius(pt);
    pt.census = destination_census(p, r0, std::max(opts.census_count, 10 * n), co);
  }
  return pt;
}

// ---------------------------------------------------------------------------
// Pattern classification

struct NCycle {
  double radius = 0.0;
  int offset = 0;     // each arc joins copy j to copy j + offset
  std::string shape;  // star | convex | unresolved
  double area = 0.0;
  double r_min = 0.0;
  double r_max = 0.0;
};

struct FlowerRing {
  double radius = 0.0;         // radius of the enclosed centers/spirals
  double boundary_radius = 0;  // radius of the saddles whose separatrices form the leaves
  std::string leaf;            // "cycle" (two-arc lens) or "loop"
};

struct IndeterminacySummary {
  double r0 = 0.0;
  int seeds = 0;
  int forward_destinations = 0;
  int backward_destinations = 0;
  std::map<std::string, int> forward;
  std::map<std::string, int> backward;
};

struct PatternReport {
  int n = 0;
  int centroids = 0;
  std::vector<double> center_radii;  // peripheral focal radii (origin excluded)
  bool origin_centroid = false;
  int flower_rings = 0;
  std::vector<FlowerRing> rings;
  std::vector<NCycle> n_cycles;
  bool spider_net = false;
  int spider_sectors = 0;
  std::optional<IndeterminacySummary> indeterminacy;
  std::optional<std::string> regime_label;
  int flower_ring_bound = 0;
  bool within_bounds = true;
  bool degenerate = false;
  std::vector<std::string> unresolved;
};

/// Upper bound on flower rings: (n-3)/2 for odd n, (n-2)/2 for even n.
constexpr int flower_ring_bound(int n) { return n % 2 == 1 ? (n - 3) / 2 : (n - 2) / 2; }

/// Upper bound on positive roots of each of P+ and P-.
constexpr int root_count_bound(int n) { return n % 2 == 1 ? (n - 1) / 2 : (n - 2) / 2; }

namespace detail {

inline double shoelace(const std::vector<CartPoint>& poly) {
  double a = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& u = poly[i];
    const auto& v = poly[(i + 1) % poly.size()];
    a += u.x * v.y - v.x * u.y;
  }
  return 0.5 * a;
}

/// Winding number of a closed polyline around q.
inline int winding_number(const std::vector<CartPoint>& poly, CartPoint q) {
  int wn = 0;
  const std::size_t m = poly.size();
  for (std::size_t i = 0; i < m; ++i) {
    const auto& u = poly[i];
    const auto& v = poly[(i + 1) % m];
    const double side = (v.x - u.x) * (q.y - u.y) - (q.x - u.x) * (v.y - u.y);
    if (u.y <= q.y) {
      if (v.y > q.y && side > 0.0) ++wn;
    } else if (v.y <= q.y && side < 0.0) {
      --wn;
    }
  }
  return wn;
}

/// Resamples a closed polyline to `count` points equally spaced in arclength.
inline std::vector<CartPoint> resample_closed(const std::vector<CartPoint>& poly, int count) {
  std::vector<double> cum{0.0};
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& u = poly[i];
    const auto& v = poly[(i + 1) % poly.size()];
    const double dx = v.x - u.x, dy = v.y - u.y;
    cum.push_back(cum.back() + std::sqrt(dx * dx + dy * dy));
  }
  const double total = cum.back();
  std::vector<CartPoint> out;
  std::size_t seg = 0;
  for (int k = 0; k < count; ++k) {
    const double s = total * k / count;
    while (seg + 1 < cum.size() - 1 && cum[seg + 1] < s) ++seg;
    const auto& u = poly[seg];
    const auto& v = poly[(seg + 1) % poly.size()];
    const double len = cum[seg + 1] - cum[seg];
    const double t = len > 0.0 ? (s - cum[seg]) / len : 0.0;
    out.push_back({u.x + t * (v.x - u.x), u.y + t * (v.y - u.y)});
  }
  return out;
}

/// Convex iff all turning cross products share one sign (up to tol * scale^2).
inline bool is_convex(const std::vector<CartPoint>& pts, double scale) {
  const double tol = 1e-9 * scale * scale;
  int sign = 0;
  const std::size_t m = pts.size();
  for (std::size_t i = 0; i < m; ++i) {
    const auto& a = pts[i];
    const auto& b = pts[(i + 1) % m];
    const auto& c = pts[(i + 2) % m];
    const double cross = (b.x - a.x) * (c.y - b.y) - (b.y - a.y) * (c.x - b.x);
    if (std::abs(cross) <= tol) continue;
    const int s = cross > 0.0 ? 1 : -1;
    if (sign == 0) sign = s;
    if (s != sign) return false;
  }
  return true;
}

inline std::vector<CartPoint> rotated(const std::vector<CartPoint>& v, double angle) {
  std::vector<CartPoint> out;
  out.reserve(v.size());
  const double cs = std::cos(angle), sn = std::sin(angle);
  for (const auto& c : v) out.push_back({cs * c.x - sn * c.y, sn * c.x + cs * c.y});
  return out;
}

}  // namespace detail

/// Closed chain of separatrix arcs through a saddle ring: `arc` runs from
/// copy 0 to copy k; its rotations by 2 pi k / n are chained until the
/// chain returns to copy 0.
inline std::vector<CartPoint> separatrix_chain(const std::vector<CartPoint>& arc, int k, int n) {
  std::vector<CartPoint> chain;
  const int steps = n / std::gcd(n, detail::mod(k, n));
  for (int i = 0; i < steps; ++i) {
    const auto part = detail::rotated(arc, 2.0 * std::numbers::pi * detail::mod(i * k, n) / n);
    chain.insert(chain.end(), part.begin(), part.end() - 1);
  }
  return chain;
}

inline PatternReport classify_patterns(const Portrait& pt) {
  PatternReport rep;
  const ModelParams& p = pt.normalized();
  const int n = p.n;
  rep.n = n;
  rep.degenerate = pt.degenerate();
  rep.flower_ring_bound = flower_ring_bound(n);

  rep.origin_centroid = is_focal(pt.origin.eq.kind);
  rep.centroids = rep.origin_centroid ? 1 : 0;
  for (const auto& e : pt.representatives)
    if (is_focal(e.kind)) {
      rep.centroids += n;
      rep.center_radii.push_back(e.r);
    }

  // Saddle-connection graph per saddle family, from the j = 0 copy.
  struct Arc {
    int offset;  // target copy relative to the source
    const SeparatrixBranch* branch;
  };
  std::set<int> ring_families;
  for (int f = 0; f < static_cast<int>(pt.representatives.size()); ++f) {
    const auto& rep_eq = pt.representatives[f];
    if (rep_eq.kind != Kind::Saddle) continue;
    const int sid = pt.id_of(f, 0);
    const SeparatrixSet* set = nullptr;
    for (const auto& s : pt.separatrices)
      if (s.saddle_id == sid) set = &s;
    if (set == nullptr) continue;

    bool undecided = false;
    std::vector<Arc> arcs;
    for (const auto& b : set->branches) {
      if (b.connection.type == ConnectionType::Undecided) undecided = true;
      if (!b.unstable || b.connection.type != ConnectionType::LoopsToSaddle) continue;
      const auto& target = pt.at(b.connection.target_id);
      if (target.family != f) continue;
      arcs.push_back({detail::mod(target.copy, n), &b});
    }
    if (undecided) rep.unresolved.push_back("undecided separatrix at r=" + std::to_string(rep_eq.r));

    // n-cycles: every branch of the ring loops to a saddle of the same ring;
    // each arc to another copy closes into one chain around the origin.
    int looping = 0;
    for (const auto& b : set->branches)
      if (b.connection.type == ConnectionType::LoopsToSaddle && pt.at(b.connection.target_id).family == f) ++looping;
    if (looping == 4) {
      for (const auto& a : arcs) {
        if (a.offset == 0) continue;
        const auto chain = separatrix_chain(a.branch->orbit.samples, a.offset, n);
        NCycle cyc;
        cyc.radius = rep_eq.r;
        cyc.offset = a.offset;
        cyc.area = std::abs(detail::shoelace(chain));
        cyc.r_min = std::numeric_limits<double>::infinity();
        for (const auto& c : chain) {
          cyc.r_min = std::min(cyc.r_min, c.radius());
          cyc.r_max = std::max(cyc.r_max, c.radius());
        }
        const auto dense = detail::resample_closed(chain, 32 * n);
        cyc.shape = detail::is_convex(dense, cyc.r_max) ? "convex" : "star";
        rep.n_cycles.push_back(cyc);
      }
    } else if (undecided && std::none_of(set->branches.begin(), set->branches.end(), [](const SeparatrixBranch& b) {
                 return b.connection.type == ConnectionType::Escapes || b.connection.type == ConnectionType::Converges;
               })) {
      NCycle cyc;
      cyc.radius = rep_eq.r;
      cyc.shape = "unresolved";
      rep.n_cycles.push_back(cyc);
    }

    // Leaves: homoclinic loops, or lenses made of an arc 0 -> k and the
    // rotated arc k -> 0.
    std::vector<std::pair<std::vector<CartPoint>, std::string>> leaves;
    for (const auto& a : arcs) {
      if (a.offset == 0) {
        leaves.push_back({a.branch->orbit.samples, "loop"});
        continue;
      }
      for (const auto& b : arcs) {
        if (&b == &a || detail::mod(a.offset + b.offset, n) != 0) continue;
        auto lens = a.branch->orbit.samples;
        const auto back = detail::rotated(b.branch->orbit.samples, 2.0 * std::numbers::pi * a.offset / n);
        lens.insert(lens.end(), back.begin() + 1, back.end());
        leaves.push_back({lens, "cycle"});
      }
    }
    for (const auto& [poly, how] : leaves) {
      if (detail::winding_number(poly, {0.0, 0.0}) != 0) continue;
      for (int g = 0; g < static_cast<int>(pt.representatives.size()); ++g) {
        if (!is_focal(pt.representatives[g].kind) || ring_families.count(g)) continue;
        bool inside = false;
        for (const auto& c : symmetry_copies(pt.representatives[g], n))
          if (detail::winding_number(poly, c.position()) != 0) inside = true;
        if (inside) {
          ring_families.insert(g);
          rep.rings.push_back({pt.representatives[g].r, rep_eq.r, how});
        }
      }
    }
  }
  std::sort(rep.n_cycles.begin(), rep.n_cycles.end(), [](const NCycle& a, const NCycle& b) {
    return a.radius != b.radius ? a.radius < b.radius : a.area < b.area;
  });
  std::sort(rep.rings.begin(), rep.rings.end(), [](const FlowerRing& a, const FlowerRing& b) { return a.radius < b.radius; });
  rep.flower_rings = static_cast<int>(rep.rings.size());

  // Spider-nets: escaping separatrices with nodes on the equator.
  std::set<int> escaping_saddles;
  for (const auto& s : pt.separatrices)
    for (const auto& b : s.branches)
      if (b.connection.type == ConnectionType::Escapes) escaping_saddles.insert(s.saddle_id);
  if (pt.equator.verdict == EquatorVerdict::Nodes && !escaping_saddles.empty()) {
    rep.spider_net = true;
    rep.spider_sectors = static_cast<int>(escaping_saddles.size());
  } else {
    rep.spider_sectors = 0;
  }

  if (pt.census) {
    IndeterminacySummary ind;
    ind.r0 = pt.census->r0;
    ind.seeds = pt.census->count;
    ind.forward = pt.census->forward;
    ind.backward = pt.census->backward;
    auto peripheral = [&](const std::set<int>& ids) {
      return static_cast<int>(std::count_if(ids.begin(), ids.end(), [&](int id) { return pt.at(id).family >= 0; }));
    };
    ind.forward_destinations = peripheral(pt.census->forward_destinations);
    ind.backward_destinations = peripheral(pt.census->backward_destinations);
    rep.indeterminacy = ind;
  }

  const auto reg = regime(pt.params);
  if (reg.supported) rep.regime_label = reg.label;
  rep.within_bounds = rep.flower_rings <= rep.flower_ring_bound;
  return rep;
}

}  // namespace meander
