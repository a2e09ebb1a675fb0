#pragma once

#include <stdexcept>
#include <string>

#include <httplib.h>

#include "meander/analysis.hpp"
#include "meander/portrait_io.hpp"
#include "meander/presets.hpp"

namespace meander {

/// Request data that fails validation (HTTP 422).
struct ValidationError : std::invalid_argument {
  std::string field;
  ValidationError(std::string f, const std::string& what) : std::invalid_argument(what), field(std::move(f)) {}
};

/// Lenient params reader: missing scalars are 0, missing a1/a2 are zeros of
/// length s, "b" is accepted for "b1". Present lists must have length s.
inline ModelParams params_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("params", "params must be an object");
  if (!j.contains("n") || !j["n"].is_number_integer()) throw ValidationError("n", "n (integer) is required");
  const int n = j["n"].get<int>();
  if (n < 4) throw ValidationError("n", "n must be >= 4 (got " + std::to_string(n) + ")");
  if (n > 64) throw ValidationError("n", "n must be <= 64 (got " + std::to_string(n) + ")");
  ModelParams p = make_params(n);
  auto scalar = [&](const char* key, double& dst) {
    if (!j.contains(key)) return;
    if (!j[key].is_number()) throw ValidationError(key, std::string(key) + " must be a number");
    dst = j[key].get<double>();
  };
  scalar("eps1", p.eps1);
  scalar("eps2", p.eps2);
  scalar("b", p.b1);
  scalar("b1", p.b1);
  scalar("b2", p.b2);
  for (const char* key : {"a1", "a2"}) {
    if (!j.contains(key)) continue;
    const auto& v = j[key];
    if (v.is_number() && p.s() == 1) {
      (key[1] == '1' ? p.a1 : p.a2)[0] = v.get<double>();
      continue;
    }
    if (!v.is_array()) throw ValidationError(key, std::string(key) + " must be a list of numbers");
    if (static_cast<int>(v.size()) != p.s())
      throw ValidationError(key, std::string(key) + " needs exactly s=" + std::to_string(p.s()) + " entries for n=" +
                                     std::to_string(n) + " (got " + std::to_string(v.size()) + ")");
    auto& dst = key[1] == '1' ? p.a1 : p.a2;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) throw ValidationError(key, std::string(key) + " entries must be numbers");
      dst[i] = v[i].get<double>();
    }
  }
  try {
    validate(p);
  } catch (const std::invalid_argument& e) {
    throw ValidationError("params", e.what());
  }
  return p;
}

/// Params from a request body: {"preset": name} or {"params": {...}}.
inline ModelParams request_params(const json& body, double* window = nullptr) {
  if (body.contains("preset") && !body["preset"].is_null()) {
    const auto name = body["preset"].get<std::string>();
    const auto pr = find_preset(name);
    if (!pr) throw ValidationError("preset", "unknown preset '" + name + "'");
    if (window) *window = pr->window;
    if (body.contains("params")) throw ValidationError("params", "give either preset or params, not both");
    return pr->params;
  }
  if (!body.contains("params")) throw ValidationError("params", "params or preset is required");
  return params_from_json(body["params"]);
}

inline json to_json(const Analysis& a) {
  json polys = json::array();
  for (const auto& pr : a.polynomials) {
    json roots = json::array();
    for (const auto& r : pr.roots.roots) roots.push_back({{"r", r.value}, {"multiplicity", r.multiplicity}});
    polys.push_back({{"tag", std::string(to_string(pr.poly.tag))},
                     {"coeffs", pr.poly.coeffs},
                     {"roots", roots},
                     {"descartes", pr.descartes},
                     {"ill_conditioned", pr.roots.ill_conditioned}});
  }
  json per = json::array();
  for (const auto& e : a.peripheral.equilibria)
    per.push_back({{"r", e.r},
                   {"phi", wrap_angle(e.phi + a.frame.plane_angle)},
                   {"phi_normalized", e.phi},
                   {"ray", std::string(to_string(e.ray))},
                   {"kind", std::string(to_string(e.kind))},
                   {"trace", e.eig.trace},
                   {"det", e.eig.det},
                   {"root_multiplicity", e.root_multiplicity},
                   {"copies", e.multiplicity}});
  json nodes = json::array();
  for (const auto& nd : a.equator.nodes)
    nodes.push_back({{"phi", wrap_angle(nd.phi + a.frame.plane_angle)}, {"kind", std::string(to_string(nd.kind))}});
  json cycles = json::array();
  for (const auto& c : a.limit_cycles)
    cycles.push_back({{"r", c.r}, {"stability", std::string(to_string(c.stability))}, {"approximate", c.approximate}});
  json bounds = json::array();
  for (const auto& b : a.bounds) bounds.push_back({{"name", b.name}, {"value", b.value}, {"bound", b.bound}, {"ok", b.ok}});
  return {{"schema", "meander.analysis/1"},
          {"params", a.params},
          {"normalized", a.frame.params},
          {"plane_angle", a.frame.plane_angle},
          {"hamiltonian", a.hamiltonian},
          {"polynomials", polys},
          {"plus_roots", a.plus_roots},
          {"minus_roots", a.minus_roots},
          {"origin",
           {{"kind", std::string(to_string(a.origin.eq.kind))},
            {"stability", a.origin.stability},
            {"rotation", a.origin.rotation},
            {"trace", a.origin.eq.eig.trace},
            {"det", a.origin.eq.eig.det},
            {"first_lyapunov", a.origin.first_lyapunov}}},
          {"peripheral", per},
          {"signature", a.signature()},
          {"equator", {{"verdict", std::string(to_string(a.equator.verdict))}, {"margin", a.equator.margin}, {"nodes", nodes}}},
          {"quasi_radii", a.quasi_radii},
          {"limit_cycles", cycles},
          {"regime",
           {{"supported", a.regime.supported},
            {"label", a.regime.supported ? json(a.regime.label) : json(nullptr)},
            {"indicator", a.regime.indicator},
            {"detail", a.regime.detail}}},
          {"bounds", bounds},
          {"bounds_ok", a.bounds_ok()},
          {"degenerate", a.degenerate()},
          {"degeneracy", a.degeneracy}};
}

inline json to_json(const CensusResult& c, const Portrait& pt) {
  json seeds = json::array();
  for (int i = 0; i < c.count; ++i) {
    json s{{"phi", wrap_angle(2.0 * std::numbers::pi * i / c.count + pt.frame.plane_angle)}};
    if (!c.forward_verdicts.empty()) s["forward"] = c.forward_verdicts[i];
    if (!c.backward_verdicts.empty()) s["backward"] = c.backward_verdicts[i];
    seeds.push_back(s);
  }
  return {{"r0", c.r0},
          {"count", c.count},
          {"forward", c.forward},
          {"backward", c.backward},
          {"forward_destinations", c.forward_destinations},
          {"backward_destinations", c.backward_destinations},
          {"seeds", seeds}};
}

/// Portrait options from the optional "render" object of a request.
inline PortraitOptions portrait_options(const json& body, double preset_window) {
  PortraitOptions o;
  o.window = preset_window;
  if (!body.contains("render")) return o;
  const auto& r = body["render"];
  if (!r.is_object()) throw ValidationError("render", "render must be an object");
  if (r.contains("window")) o.window = r["window"].get<double>();
  if (r.contains("orbits_per_region")) o.orbits_per_region = r["orbits_per_region"].get<int>();
  if (r.contains("windings")) o.windings = r["windings"].get<int>();
  if (r.contains("sample_orbits")) o.sample_orbits = r["sample_orbits"].get<bool>();
  if (o.window < 0.0) throw ValidationError("render.window", "window must be >= 0");
  if (o.orbits_per_region < 0 || o.orbits_per_region > 50)
    throw ValidationError("render.orbits_per_region", "orbits_per_region must be in [0, 50]");
  if (o.windings < 1 || o.windings > 100) throw ValidationError("render.windings", "windings must be in [1, 100]");
  return o;
}

namespace detail {

inline void reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json; charset=utf-8");
}

template <class F>
void guarded(const httplib::Request& req, httplib::Response& res, F&& f) {
  json body;
  try {
    body = req.body.empty() ? json::object() : json::parse(req.body);
  } catch (const json::parse_error& e) {
    reply(res, 400, {{"error", std::string("malformed JSON: ") + e.what()}});
    return;
  }
  try {
    f(body);
  } catch (const ValidationError& e) {
    reply(res, 422, {{"error", e.what()}, {"field", e.field}});
  } catch (const json::exception& e) {
    reply(res, 422, {{"error", e.what()}, {"field", ""}});
  } catch (const std::invalid_argument& e) {
    reply(res, 422, {{"error", e.what()}, {"field", ""}});
  } catch (const std::exception& e) {
    reply(res, 500, {{"error", e.what()}});
  }
}

}  // namespace detail

/// Registers the JSON contract on `srv`. Handlers keep no state between requests.
inline void install_routes(httplib::Server& srv) {
  srv.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
    detail::reply(res, 200, {{"status", "ok"}, {"schema", kSchemaVersion}});
  });

  srv.Get("/presets", [](const httplib::Request&, httplib::Response& res) {
    json list = json::array();
    for (const auto& p : preset_catalog())
      list.push_back({{"name", p.name}, {"params", p.params}, {"window", p.window}, {"note", p.note}});
    detail::reply(res, 200, {{"presets", list}});
  });

  srv.Post("/analyze", [](const httplib::Request& req, httplib::Response& res) {
    detail::guarded(req, res, [&](const json& body) {
      const auto p = request_params(body);
      auto out = to_json(analyze(p));
      PortraitOptions o;
      o.sample_orbits = false;
      const auto pt = build_portrait(p, o);
      out["report"] = make_document(pt, classify_patterns(pt)).report;
      detail::reply(res, 200, out);
    });
  });

  srv.Post("/portrait", [](const httplib::Request& req, httplib::Response& res) {
    detail::guarded(req, res, [&](const json& body) {
      double window = 0.0;
      const auto p = request_params(body, &window);
      const auto o = portrait_options(body, window);
      const auto pt = build_portrait(p, o);
      const auto rep = classify_patterns(pt);
      const auto format = body.value("format", std::string("json"));
      if (format == "svg") {
        res.status = 200;
        res.set_content(to_svg(pt, rep), "image/svg+xml");
      } else if (format == "json") {
        detail::reply(res, 200, to_json(pt, rep));
      } else {
        throw ValidationError("format", "format must be json or svg");
      }
    });
  });

  srv.Post("/census", [](const httplib::Request& req, httplib::Response& res) {
    detail::guarded(req, res, [&](const json& body) {
      const auto p = request_params(body);
      if (is_hamiltonian(p, 0.0))
        throw ValidationError("params", "census needs non-Hamiltonian params (eps1 or a1 nonzero): orbits of a "
                                        "Hamiltonian field stay on level sets and have no destinations");
      PortraitOptions o;
      o.sample_orbits = false;
      o.trace_separatrices = false;
      o.census_count = body.value("count", 100);
      o.census_r0 = body.value("r0", 0.0);
      if (o.census_count < 10 * p.n)
        throw ValidationError("count", "count must be >= 10*n = " + std::to_string(10 * p.n));
      if (o.census_count > 5000) throw ValidationError("count", "count must be <= 5000");
      if (o.census_r0 < 0.0) throw ValidationError("r0", "r0 must be >= 0");
      const auto pt = build_portrait(p, o);
      detail::reply(res, 200, to_json(*pt.census, pt));
    });
  });
}

}  // namespace meander
