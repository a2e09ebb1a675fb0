#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "meander/patterns.hpp"

namespace meander {

using json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "meander.portrait/1";
inline constexpr std::size_t kMaxPolyline = 4000;

// ---------------------------------------------------------------------------
// Document model: what goes over the wire. Coordinates are in the frame of
// the params as given (B not rotated).

using XY = std::array<double, 2>;

struct DocEquilibrium {
  int id = 0;
  std::string locus;
  std::string kind;
  std::string ray;
  int family = -1;
  int copy = 0;
  int root_multiplicity = 1;
  double r = 0.0;
  double phi = 0.0;
  double x = 0.0;
  double y = 0.0;
  double trace = 0.0;
  double det = 0.0;
  friend bool operator==(const DocEquilibrium&, const DocEquilibrium&) = default;
};

struct DocBranch {
  std::string direction;  // unstable | stable
  int sign = 1;
  std::string connection;
  int target_id = -1;
  std::string termination;
  std::vector<XY> points;
  friend bool operator==(const DocBranch&, const DocBranch&) = default;
};

struct DocSeparatrix {
  int saddle_id = -1;
  double delta = 0.0;
  std::vector<DocBranch> branches;
  friend bool operator==(const DocSeparatrix&, const DocSeparatrix&) = default;
};

struct DocOrbit {
  XY start{0.0, 0.0};
  std::string termination;
  double period = 0.0;
  int windings = 0;
  int equilibrium_id = -1;
  double h_drift = 0.0;
  std::vector<XY> points;
  friend bool operator==(const DocOrbit&, const DocOrbit&) = default;
};

struct DocEquatorNode {
  double phi = 0.0;
  std::string kind;
  double lambda_rho = 0.0;
  double lambda_phi = 0.0;
  friend bool operator==(const DocEquatorNode&, const DocEquatorNode&) = default;
};

struct DocEquator {
  std::string verdict;
  double margin = 0.0;
  std::vector<DocEquatorNode> nodes;
  friend bool operator==(const DocEquator&, const DocEquator&) = default;
};

struct DocLimitCycle {
  double r = 0.0;
  std::string stability;
  bool approximate = false;
  friend bool operator==(const DocLimitCycle&, const DocLimitCycle&) = default;
};

struct DocNCycle {
  double radius = 0.0;
  int offset = 0;
  std::string shape;
  double area = 0.0;
  double r_min = 0.0;
  double r_max = 0.0;
  friend bool operator==(const DocNCycle&, const DocNCycle&) = default;
};

struct DocRing {
  double radius = 0.0;
  double boundary_radius = 0.0;
  std::string leaf;
  friend bool operator==(const DocRing&, const DocRing&) = default;
};

struct DocCensus {
  double r0 = 0.0;
  int seeds = 0;
  int forward_destinations = 0;
  int backward_destinations = 0;
  std::map<std::string, int> forward;
  std::map<std::string, int> backward;
  friend bool operator==(const DocCensus&, const DocCensus&) = default;
};

struct DocReport {
  int centroids = 0;
  bool origin_centroid = false;
  std::vector<double> center_radii;
  int flower_rings = 0;
  std::vector<DocRing> rings;
  std::vector<DocNCycle> n_cycles;
  bool spider_net = false;
  int spider_sectors = 0;
  std::optional<DocCensus> indeterminacy;
  std::optional<std::string> regime_label;
  int flower_ring_bound = 0;
  bool within_bounds = true;
  bool degenerate = false;
  std::vector<std::string> unresolved;
  friend bool operator==(const DocReport&, const DocReport&) = default;
};

struct PortraitDocument {
  std::string schema = kSchemaVersion;
  ModelParams params;
  double plane_angle = 0.0;
  bool hamiltonian = false;
  double window = 1.0;
  double escape_radius = 0.0;
  std::vector<DocEquilibrium> equilibria;
  std::vector<DocSeparatrix> separatrices;
  std::vector<DocOrbit> orbits;
  DocEquator equator;
  std::vector<double> quasi_radii;
  std::vector<DocLimitCycle> limit_cycles;
  std::vector<std::string> degeneracy;
  DocReport report;
  friend bool operator==(const PortraitDocument&, const PortraitDocument&) = default;
};

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ModelParams, n, eps1, eps2, a1, a2, b1, b2)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(DocEquilibrium, id, locus, kind, ray, family, copy, root_multiplicity, r, phi, x, y,
                                   trace, det)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(DocBranch, direction, sign, connection, target_id, termination, points)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(DocSeparatrix, saddle_id, delta, branches)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(DocOrbit, start, termination, period, windings, equilibrium_id, h_drift, points)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(DocEquatorNode, phi, kind, lambda_rho, lambda_phi)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(DocEquator, verdict, margin, nodes)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(DocLimitCycle, r, stability, approximate)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(DocNCycle, radius, offset, shape, area, r_min, r_max)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(DocRing, radius, boundary_radius, leaf)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(DocCensus, r0, seeds, forward_destinations, backward_destinations, forward, backward)

inline void to_json(json& j, const DocReport& r) {
  j = json{{"centroids", r.centroids},
           {"origin_centroid", r.origin_centroid},
           {"center_radii", r.center_radii},
           {"flower_rings", r.flower_rings},
           {"rings", r.rings},
           {"n_cycles", r.n_cycles},
           {"spider_net", r.spider_net},
           {"spider_sectors", r.spider_sectors},
           {"indeterminacy", r.indeterminacy ? json(*r.indeterminacy) : json(nullptr)},
           {"regime_label", r.regime_label ? json(*r.regime_label) : json(nullptr)},
           {"flower_ring_bound", r.flower_ring_bound},
           {"within_bounds", r.within_bounds},
           {"degenerate", r.degenerate},
           {"unresolved", r.unresolved}};
}

inline void from_json(const json& j, DocReport& r) {
  j.at("centroids").get_to(r.centroids);
  j.at("origin_centroid").get_to(r.origin_centroid);
  j.at("center_radii").get_to(r.center_radii);
  j.at("flower_rings").get_to(r.flower_rings);
  j.at("rings").get_to(r.rings);
  j.at("n_cycles").get_to(r.n_cycles);
  j.at("spider_net").get_to(r.spider_net);
  j.at("spider_sectors").get_to(r.spider_sectors);
  const auto& ind = j.at("indeterminacy");
  r.indeterminacy = ind.is_null() ? std::nullopt : std::optional<DocCensus>(ind.get<DocCensus>());
  const auto& reg = j.at("regime_label");
  r.regime_label = reg.is_null() ? std::nullopt : std::optional<std::string>(reg.get<std::string>());
  j.at("flower_ring_bound").get_to(r.flower_ring_bound);
  j.at("within_bounds").get_to(r.within_bounds);
  j.at("degenerate").get_to(r.degenerate);
  j.at("unresolved").get_to(r.unresolved);
}

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(PortraitDocument, schema, params, plane_angle, hamiltonian, window, escape_radius,
                                   equilibria, separatrices, orbits, equator, quasi_radii, limit_cycles, degeneracy,
                                   report)

// ---------------------------------------------------------------------------
// Portrait -> document

/// Keeps at most `cap` points, spending them where the polyline turns:
/// each vertex weighs its turning angle plus its share of the arclength.
inline std::vector<CartPoint> decimate(const std::vector<CartPoint>& pts, std::size_t cap = kMaxPolyline) {
  if (pts.size() <= cap || cap < 2) return pts;
  const std::size_t m = pts.size();
  std::vector<double> len(m, 0.0);
  double total_len = 0.0;
  for (std::size_t i = 1; i < m; ++i) {
    len[i] = std::hypot(pts[i].x - pts[i - 1].x, pts[i].y - pts[i - 1].y);
    total_len += len[i];
  }
  std::vector<double> cum(m, 0.0);
  for (std::size_t i = 1; i < m; ++i) {
    double turn = 0.0;
    if (i + 1 < m) {
      const double a1 = std::atan2(pts[i].y - pts[i - 1].y, pts[i].x - pts[i - 1].x);
      const double a2 = std::atan2(pts[i + 1].y - pts[i].y, pts[i + 1].x - pts[i].x);
      turn = std::abs(std::remainder(a2 - a1, 2.0 * std::numbers::pi));
    }
    const double arc = total_len > 0.0 ? std::numbers::pi * len[i] / total_len * 8.0 : 0.0;
    cum[i] = cum[i - 1] + turn + arc;
  }
  std::vector<CartPoint> out{pts.front()};
  const double step = cum.back() / static_cast<double>(cap - 1);
  double next = step;
  for (std::size_t i = 1; i + 1 < m && out.size() + 1 < cap; ++i)
    if (cum[i] >= next) {
      out.push_back(pts[i]);
      while (next <= cum[i]) next += step;
    }
  out.push_back(pts.back());
  return out;
}

namespace detail {

inline std::vector<XY> to_xy(const std::vector<CartPoint>& pts, double angle) {
  std::vector<XY> out;
  out.reserve(pts.size());
  const double cs = std::cos(angle), sn = std::sin(angle);
  for (const auto& c : decimate(pts)) out.push_back({cs * c.x - sn * c.y, sn * c.x + cs * c.y});
  return out;
}

}  // namespace detail

inline PortraitDocument make_document(const Portrait& pt, const PatternReport& rep) {
  PortraitDocument d;
  d.params = pt.params;
  d.plane_angle = pt.frame.plane_angle;
  d.hamiltonian = pt.hamiltonian;
  d.window = pt.window;
  d.escape_radius = pt.escape_radius;
  const double rot = pt.frame.plane_angle;

  for (const auto& e : pt.equilibria) {
    DocEquilibrium q;
    q.id = e.id;
    q.locus = to_string(e.eq.locus);
    q.kind = to_string(e.eq.kind);
    q.ray = to_string(e.eq.ray);
    q.family = e.family;
    q.copy = e.copy;
    q.root_multiplicity = e.eq.root_multiplicity;
    q.r = e.eq.r;
    q.phi = e.eq.r > 0.0 ? wrap_angle(e.eq.phi + rot) : 0.0;
    const auto c = detail::rotate(e.eq.position(), rot);
    q.x = c.x;
    q.y = c.y;
    q.trace = e.eq.eig.trace;
    q.det = e.eq.eig.det;
    d.equilibria.push_back(q);
  }
  for (const auto& s : pt.separatrices) {
    DocSeparatrix ds;
    ds.saddle_id = s.saddle_id;
    ds.delta = s.delta;
    for (const auto& b : s.branches) {
      DocBranch db;
      db.direction = b.unstable ? "unstable" : "stable";
      db.sign = b.sign;
      db.connection = to_string(b.connection.type);
      db.target_id = b.connection.target_id;
      db.termination = to_string(b.orbit.termination);
      db.points = detail::to_xy(b.orbit.samples, rot);
      ds.branches.push_back(std::move(db));
    }
    d.separatrices.push_back(std::move(ds));
  }
  for (const auto& o : pt.orbits) {
    DocOrbit d_o;
    const auto s = detail::rotate(o.samples.front(), rot);
    d_o.start = {s.x, s.y};
    d_o.termination = to_string(o.termination);
    d_o.period = o.period;
    d_o.windings = o.windings;
    d_o.equilibrium_id = o.equilibrium_id;
    d_o.h_drift = o.h_drift;
    d_o.points = detail::to_xy(o.samples, rot);
    d.orbits.push_back(std::move(d_o));
  }
  d.equator.verdict = to_string(pt.equator.verdict);
  d.equator.margin = pt.equator.margin;
  for (const auto& nd : pt.equator.nodes)
    d.equator.nodes.push_back({wrap_angle(nd.phi + rot), std::string(to_string(nd.kind)), nd.lambda_rho, nd.lambda_phi});
  d.quasi_radii = pt.quasi_radii;
  for (const auto& c : pt.limit_cycles) d.limit_cycles.push_back({c.r, std::string(to_string(c.stability)), c.approximate});
  d.degeneracy = pt.degeneracy;

  auto& r = d.report;
  r.centroids = rep.centroids;
  r.origin_centroid = rep.origin_centroid;
  r.center_radii = rep.center_radii;
  r.flower_rings = rep.flower_rings;
  for (const auto& g : rep.rings) r.rings.push_back({g.radius, g.boundary_radius, g.leaf});
  for (const auto& c : rep.n_cycles) r.n_cycles.push_back({c.radius, c.offset, c.shape, c.area, c.r_min, c.r_max});
  r.spider_net = rep.spider_net;
  r.spider_sectors = rep.spider_sectors;
  if (rep.indeterminacy) {
    const auto& ind = *rep.indeterminacy;
    r.indeterminacy = DocCensus{ind.r0, ind.seeds, ind.forward_destinations, ind.backward_destinations, ind.forward,
                                ind.backward};
  }
  r.regime_label = rep.regime_label;
  r.flower_ring_bound = rep.flower_ring_bound;
  r.within_bounds = rep.within_bounds;
  r.degenerate = rep.degenerate;
  r.unresolved = rep.unresolved;
  return d;
}

inline json to_json(const Portrait& pt, const PatternReport& rep) { return json(make_document(pt, rep)); }

/// Compact, key-sorted, shortest round-trip float text.
inline std::string dump(const json& j, int indent = -1) { return j.dump(indent); }

inline PortraitDocument parse_document(const std::string& text) { return json::parse(text).get<PortraitDocument>(); }

// ---------------------------------------------------------------------------
// SVG

struct RenderStyle {
  double window = 0.0;  // half-width; 0 takes the portrait's window
  int size = 800;       // pixels per side
  double orbit_width = 0.8;
  double separatrix_width = 1.4;
  double marker_size = 5.0;
  std::string background = "#fffdf7";
  std::string orbit_color = "#7a8ca3";
  std::string separatrix_color = "#b3261e";
  std::string saddle_color = "#1d1d1d";
  std::string center_color = "#1b6e3a";
  std::string spiral_color = "#7b3fa0";
  std::string node_color = "#c07a00";
  std::string equator_color = "#2a5db0";
};

namespace detail {

struct SvgFrame {
  double w;
  double size;
  double px(double x) const { return (x + w) / (2.0 * w) * size; }
  double py(double y) const { return (w - y) / (2.0 * w) * size; }
};

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s(buf);
  if (s == "-0.000") s = "0.000";
  return s;
}

inline void polyline(std::ostringstream& os, const SvgFrame& f, const std::vector<XY>& pts) {
  if (pts.size() < 2) return;
  os << "<polyline points=\"";
  // Far outside the window only the direction matters; clamp to keep numbers small.
  const double lim = 4.0 * f.w;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double x = std::clamp(pts[i][0], -lim, lim), y = std::clamp(pts[i][1], -lim, lim);
    if (i) os << ' ';
    os << num(f.px(x)) << ',' << num(f.py(y));
  }
  os << "\"/>\n";
}

}  // namespace detail

inline std::string to_svg(const PortraitDocument& d, const RenderStyle& style = {}) {
  const double w = style.window > 0.0 ? style.window : d.window;
  const detail::SvgFrame f{w, static_cast<double>(style.size)};
  using detail::num;
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << style.size << "\" height=\"" << style.size
     << "\" viewBox=\"0 0 " << style.size << ' ' << style.size << "\">\n";
  os << "<defs><clipPath id=\"window\"><rect x=\"0\" y=\"0\" width=\"" << style.size << "\" height=\"" << style.size
     << "\"/></clipPath></defs>\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << style.size << "\" height=\"" << style.size << "\" fill=\"" << style.background
     << "\"/>\n";

  os << "<g id=\"orbits\" clip-path=\"url(#window)\" fill=\"none\" stroke=\"" << style.orbit_color << "\" stroke-width=\""
     << num(style.orbit_width) << "\">\n";
  for (const auto& o : d.orbits) detail::polyline(os, f, o.points);
  os << "</g>\n";

  os << "<g id=\"separatrices\" clip-path=\"url(#window)\" fill=\"none\" stroke=\"" << style.separatrix_color
     << "\" stroke-width=\"" << num(style.separatrix_width) << "\">\n";
  for (const auto& s : d.separatrices)
    for (const auto& b : s.branches) detail::polyline(os, f, b.points);
  os << "</g>\n";

  // Directions of equator nodes, as ticks on the window's inscribed circle.
  os << "<g id=\"equator\" stroke=\"" << style.equator_color << "\" stroke-width=\"2\">\n";
  for (const auto& nd : d.equator.nodes) {
    const double c = std::cos(nd.phi), s = std::sin(nd.phi);
    const double r0 = 0.94 * w, r1 = w;
    os << "<line class=\"" << nd.kind << "\" x1=\"" << num(f.px(r0 * c)) << "\" y1=\"" << num(f.py(r0 * s)) << "\" x2=\""
       << num(f.px(r1 * c)) << "\" y2=\"" << num(f.py(r1 * s)) << "\""
       << (nd.kind == "unstable-node" ? " stroke-dasharray=\"3,2\"" : "") << "/>\n";
  }
  os << "</g>\n";

  os << "<g id=\"equilibria\">\n";
  const double m = style.marker_size;
  for (const auto& e : d.equilibria) {
    if (std::abs(e.x) > w || std::abs(e.y) > w) continue;
    const double x = f.px(e.x), y = f.py(e.y);
    const std::string id = "eq" + std::to_string(e.id);
    if (e.kind == "saddle") {
      os << "<path id=\"" << id << "\" class=\"saddle\" data-x=\"" << num(x) << "\" data-y=\"" << num(y) << "\" d=\"M"
         << num(x - m) << ',' << num(y - m) << " L" << num(x + m) << ',' << num(y + m) << " M" << num(x - m) << ','
         << num(y + m) << " L" << num(x + m) << ',' << num(y - m) << "\" stroke=\"" << style.saddle_color
         << "\" stroke-width=\"2\" fill=\"none\"/>\n";
    } else if (e.kind == "stable-spiral" || e.kind == "unstable-spiral") {
      os << "<path id=\"" << id << "\" class=\"" << e.kind << "\" data-x=\"" << num(x) << "\" data-y=\"" << num(y)
         << "\" d=\"M" << num(x) << ',' << num(y);
      for (int k = 1; k <= 16; ++k) {
        const double t = k * std::numbers::pi / 4.0;
        const double rr = m * k / 16.0;
        os << " L" << num(x + rr * std::cos(t)) << ',' << num(y - rr * std::sin(t));
      }
      os << "\" stroke=\"" << style.spiral_color << "\" stroke-width=\"1.5\" fill=\"none\"/>\n";
    } else if (e.kind == "stable-node" || e.kind == "unstable-node") {
      os << "<rect id=\"" << id << "\" class=\"" << e.kind << "\" data-x=\"" << num(x) << "\" data-y=\"" << num(y)
         << "\" x=\"" << num(x - 0.8 * m) << "\" y=\"" << num(y - 0.8 * m) << "\" width=\"" << num(1.6 * m)
         << "\" height=\"" << num(1.6 * m) << "\" fill=\"" << style.node_color << "\"/>\n";
    } else {
      os << "<circle id=\"" << id << "\" class=\"" << e.kind << "\" data-x=\"" << num(x) << "\" data-y=\"" << num(y)
         << "\" cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"" << num(0.8 * m) << "\" fill=\""
         << style.center_color << "\"/>\n";
    }
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

inline std::string to_svg(const Portrait& pt, const PatternReport& rep, const RenderStyle& style = {}) {
  return to_svg(make_document(pt, rep), style);
}

}  // namespace meander
