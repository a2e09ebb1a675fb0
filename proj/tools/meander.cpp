// meander: analyze, render and scan the n-fold symmetric resonance field.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "meander/analysis.hpp"
#include "meander/portrait_io.hpp"
#include "meander/presets.hpp"
#include "meander/scan.hpp"
#include "meander/service.hpp"

namespace fs = std::filesystem;
using namespace meander;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kDegenerate = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParamFlags {
  std::string preset;
  int n = 0;
  std::string eps1, eps2, a1, a2, b1, b2;

  void attach(CLI::App* cmd) {
    cmd->add_option("--preset", preset, "named parameter set (see `meander presets`)");
    cmd->add_option("--n", n, "symmetry order, >= 4");
    cmd->add_option("--eps1", eps1, "Re eps");
    cmd->add_option("--eps2", eps2, "Im eps");
    cmd->add_option("--a1", a1, "Re A_k, comma separated, exactly s = n/2-1 values");
    cmd->add_option("--a2", a2, "Im A_k, comma separated, exactly s = n/2-1 values");
    cmd->add_option("--b1,--b", b1, "Re B");
    cmd->add_option("--b2", b2, "Im B");
  }
};

double parse_number(const std::string& flag, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError("--" + flag + ": '" + text + "' is not a number");
  }
}

std::vector<double> parse_list(const std::string& flag, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(flag, item));
  return out;
}

ModelParams resolve_params(const ParamFlags& f, double* window = nullptr) {
  ModelParams p;
  if (!f.preset.empty()) {
    const auto pr = find_preset(f.preset);
    if (!pr) throw UsageError("unknown preset '" + f.preset + "' (see `meander presets`)");
    p = pr->params;
    if (window) *window = pr->window;
    if (f.n != 0 && f.n != p.n) throw UsageError("--n conflicts with preset '" + f.preset + "'");
  } else {
    if (f.n == 0) throw UsageError("give --preset or --n");
    if (f.n < 4) throw UsageError("--n must be >= 4 (got " + std::to_string(f.n) + ")");
    p = make_params(f.n);
  }
  if (!f.eps1.empty()) p.eps1 = parse_number("eps1", f.eps1);
  if (!f.eps2.empty()) p.eps2 = parse_number("eps2", f.eps2);
  if (!f.b1.empty()) p.b1 = parse_number("b1", f.b1);
  if (!f.b2.empty()) p.b2 = parse_number("b2", f.b2);
  for (auto [flag, text, dst] : {std::tuple{"a1", &f.a1, &p.a1}, std::tuple{"a2", &f.a2, &p.a2}}) {
    if (text->empty()) continue;
    auto v = parse_list(flag, *text);
    if (static_cast<int>(v.size()) != p.s())
      throw UsageError(std::string("--") + flag + " needs exactly s=" + std::to_string(p.s()) + " values for n=" +
                       std::to_string(p.n) + " (got " + std::to_string(v.size()) + ")");
    *dst = std::move(v);
  }
  try {
    validate(p);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return p;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string analysis_text(const Analysis& a, const PatternReport& rep) {
  std::ostringstream os;
  const auto& p = a.params;
  os << "n=" << p.n << " s=" << p.s() << " eps=(" << fmt(p.eps1) << ", " << fmt(p.eps2) << ") B=(" << fmt(p.b1) << ", "
     << fmt(p.b2) << ")";
  for (int k = 1; k <= p.s(); ++k) os << " A" << k << "=(" << fmt(p.a1[k - 1]) << ", " << fmt(p.a2[k - 1]) << ")";
  os << "\n" << (a.hamiltonian ? "Hamiltonian" : "non-Hamiltonian");
  if (a.frame.plane_angle != 0.0) os << ", phase plane rotated by " << fmt(a.frame.plane_angle) << " to make B real";
  os << "\n\npolynomials (coefficients by ascending power of r):\n";
  for (const auto& pr : a.polynomials) {
    os << "  " << to_string(pr.poly.tag) << ": [";
    for (std::size_t i = 0; i < pr.poly.coeffs.size(); ++i) os << (i ? ", " : "") << fmt(pr.poly.coeffs[i]);
    os << "]  positive roots {";
    for (std::size_t i = 0; i < pr.roots.roots.size(); ++i) {
      os << (i ? ", " : "") << fmt(pr.roots.roots[i].value);
      if (pr.roots.roots[i].multiplicity > 1) os << " (x" << pr.roots.roots[i].multiplicity << ")";
    }
    os << "}  sign changes " << pr.descartes << (pr.roots.ill_conditioned ? "  ill-conditioned" : "") << "\n";
  }
  os << "\norigin: " << to_string(a.origin.eq.kind) << " (" << a.origin.stability << ")\n";
  if (a.peripheral.equilibria.empty()) {
    os << "no peripheral equilibria\n";
  } else {
    os << "peripheral equilibria (one per ring of " << p.n << "):\n";
    for (const auto& e : a.peripheral.equilibria)
      os << "  r=" << fmt(e.r) << "  phi=" << fmt(wrap_angle(e.phi + a.frame.plane_angle)) << "  "
         << to_string(e.kind) << "  trace=" << fmt(e.eig.trace) << " det=" << fmt(e.eig.det) << "\n";
  }
  os << "equator: " << to_string(a.equator.verdict);
  if (a.equator.verdict == EquatorVerdict::Nodes)
    os << " (" << a.equator.stable_count() << " stable, " << a.equator.unstable_count() << " unstable nodes)";
  os << "\n";
  if (!a.quasi_radii.empty()) {
    os << "quasi-equilibrium circles:";
    for (double r : a.quasi_radii) os << " " << fmt(r);
    os << "\n";
  }
  for (const auto& c : a.limit_cycles)
    os << "limit cycle r=" << fmt(c.r) << " " << to_string(c.stability) << (c.approximate ? " (B=0 estimate)" : "") << "\n";
  os << "regime: " << (a.regime.supported ? a.regime.label + " (" + a.regime.detail + ")" : a.regime.detail) << "\n";
  for (const auto& b : a.bounds)
    os << "bound " << b.name << ": " << b.value << (b.name.find("parity") != std::string::npos ? " expected " : " <= ")
       << b.bound << (b.ok ? "  ok" : "  VIOLATED") << "\n";
  os << "\npatterns: centroids " << rep.centroids << ", flower rings " << rep.flower_rings << " (bound "
     << rep.flower_ring_bound << ")";
  os << ", n-cycles " << rep.n_cycles.size();
  if (!rep.n_cycles.empty()) {
    os << " [";
    for (std::size_t i = 0; i < rep.n_cycles.size(); ++i) os << (i ? ", " : "") << rep.n_cycles[i].shape;
    os << "]";
  }
  os << ", spider-net " << (rep.spider_net ? "yes" : "no") << "\n";
  for (const auto& u : rep.unresolved) os << "unresolved: " << u << "\n";
  if (a.degenerate()) {
    os << "\nDEGENERATE:";
    for (const auto& d : a.degeneracy) os << " " << d << ";";
    os << "\n";
  }
  return os.str();
}

int cmd_analyze(const ParamFlags& f, const std::string& format, const std::string& out) {
  const auto p = resolve_params(f);
  const auto a = analyze(p);
  PortraitOptions o;
  o.sample_orbits = false;
  const auto pt = build_portrait(p, o);
  const auto rep = classify_patterns(pt);
  if (format == "json") {
    auto j = to_json(a);
    j["report"] = make_document(pt, rep).report;
    write_output(out, j.dump(2) + "\n");
  } else {
    write_output(out, analysis_text(a, rep));
  }
  return a.degenerate() ? kDegenerate : kOk;
}

int cmd_portrait(const ParamFlags& f, const std::string& format, const std::string& out, double window, int windings,
                 int seed_count) {
  double preset_window = 0.0;
  const auto p = resolve_params(f, &preset_window);
  PortraitOptions o;
  o.window = window > 0.0 ? window : preset_window;
  o.windings = windings;
  o.census_count = seed_count;
  if (seed_count > 0 && seed_count < 10 * p.n)
    throw UsageError("--seed-count must be 0 or >= 10*n = " + std::to_string(10 * p.n));
  const auto pt = build_portrait(p, o);
  const auto rep = classify_patterns(pt);
  if (format == "svg") {
    RenderStyle style;
    style.window = o.window;
    write_output(out, to_svg(pt, rep, style));
  } else {
    write_output(out, to_json(pt, rep).dump() + "\n");
  }
  return kOk;
}

struct ScanFlags {
  std::string axis, axis2;
  double from = 0, to = 0, from2 = 0, to2 = 0;
  int steps = 0, steps2 = 0;
  bool no_patterns = false;
};

int cmd_scan(const ParamFlags& f, const ScanFlags& s, const std::string& out) {
  const auto base = resolve_params(f);
  std::vector<ScanAxis> axes{{s.axis, s.from, s.to, s.steps}};
  if (!s.axis2.empty()) axes.push_back({s.axis2, s.from2, s.to2, s.steps2});
  for (const auto& ax : axes)
    if (ax.count < 1) throw UsageError("empty grid on axis '" + ax.field + "' (--steps must be >= 1)");
  ScanOptions so;
  so.patterns = !s.no_patterns;
  ScanResult res;
  try {
    res = scan(base, axes, so);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  json transitions = json::array();
  for (const auto& t : res.transitions)
    transitions.push_back({{"axis", res.axes[t.axis].field},
                           {"from", t.lo},
                           {"to", t.hi},
                           {"from_cell", t.from},
                           {"to_cell", t.to},
                           {"before", t.before},
                           {"after", t.after}});
  json axes_json = json::array();
  for (const auto& ax : res.axes) axes_json.push_back({{"field", ax.field}, {"lo", ax.lo}, {"hi", ax.hi}, {"count", ax.count}});

  if (out.empty()) {
    for (const auto& t : res.transitions)
      std::cout << res.axes[t.axis].field << " in [" << fmt(t.lo) << ", " << fmt(t.hi) << "]: " << t.before << "  ->  "
                << t.after << "\n";
    if (res.transitions.empty()) std::cout << "no transitions\n";
    return kOk;
  }
  const fs::path dir(out);
  std::error_code ec;
  fs::create_directories(dir / "cells", ec);
  if (ec) throw std::runtime_error("cannot create '" + (dir / "cells").string() + "': " + ec.message());
  json cells = json::array();
  for (std::size_t i = 0; i < res.cells.size(); ++i) {
    const auto& c = res.cells[i];
    char name[32];
    std::snprintf(name, sizeof name, "cell_%05zu.json", i);
    auto j = to_json(c.analysis);
    j["coords"] = c.coords;
    j["signature"] = c.signature();
    if (c.report) {
      j["flower_rings"] = c.report->flower_rings;
      j["n_cycles"] = c.report->n_cycles.size();
      j["spider_net"] = c.report->spider_net;
    }
    write_output((dir / "cells" / name).string(), j.dump(2) + "\n");
    cells.push_back({{"file", std::string("cells/") + name}, {"coords", c.coords}, {"degenerate", c.degenerate()}});
  }
  write_output((dir / "transitions.json").string(), json{{"transitions", transitions}}.dump(2) + "\n");
  write_output((dir / "manifest.json").string(),
               json{{"base", res.base}, {"axes", axes_json}, {"cells", cells}, {"transitions", "transitions.json"}}.dump(2) +
                   "\n");
  std::cout << res.cells.size() << " cells, " << res.transitions.size() << " transitions written to " << out << "\n";
  return kOk;
}

int cmd_presets(const std::string& format) {
  if (format == "json") {
    json list = json::array();
    for (const auto& p : preset_catalog())
      list.push_back({{"name", p.name}, {"params", p.params}, {"window", p.window}, {"note", p.note}});
    std::cout << json{{"presets", list}}.dump(2) << "\n";
    return kOk;
  }
  for (const auto& p : preset_catalog()) std::printf("%-12s n=%-2d %s\n", p.name.c_str(), p.params.n, p.note.c_str());
  return kOk;
}

int cmd_serve(const std::string& host, int port) {
  httplib::Server srv;
  install_routes(srv);
  if (!srv.bind_to_port(host, port)) {
    std::cerr << "meander serve: cannot bind " << host << ":" << port << "\n";
    return kUsage;
  }
  std::cerr << "meander serve: listening on " << host << ":" << port << "\n";
  return srv.listen_after_bind() ? kOk : kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phase portraits and ornament patterns of z' = eps z + z A(|z|^2) + B conj(z)^(n-1)"};
  app.require_subcommand(1);

  ParamFlags pf;
  std::string format = "text", out;
  double window = 0.0;
  int windings = 1, seed_count = 0, port = 8080;
  std::string host = "127.0.0.1";
  ScanFlags sf;

  auto* analyze_cmd = app.add_subcommand("analyze", "roots, equilibria, equator, bounds and regime");
  pf.attach(analyze_cmd);
  analyze_cmd->add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));
  analyze_cmd->add_option("--out", out, "output file (default stdout)");

  std::string portrait_format = "svg";
  auto* portrait_cmd = app.add_subcommand("portrait", "render a portrait to SVG or JSON");
  pf.attach(portrait_cmd);
  portrait_cmd->add_option("--format", portrait_format, "svg | json")->check(CLI::IsMember({"svg", "json"}));
  portrait_cmd->add_option("--out", out, "output file (default stdout)");
  portrait_cmd->add_option("--window", window, "half-width of the square window (default: automatic)");
  portrait_cmd->add_option("--windings", windings, "windings before a sample orbit counts as closed")
      ->check(CLI::Range(1, 100));
  portrait_cmd->add_option("--seed-count", seed_count, "destination census seeds (0 = none)");

  auto* scan_cmd = app.add_subcommand("scan", "parameter sweep with transition detection");
  pf.attach(scan_cmd);
  scan_cmd->add_option("--axis", sf.axis, "eps1 | eps2 | b1 | b2 | a1_k | a2_k")->required();
  scan_cmd->add_option("--from", sf.from, "first value")->required();
  scan_cmd->add_option("--to", sf.to, "last value")->required();
  scan_cmd->add_option("--steps", sf.steps, "number of grid values")->required();
  scan_cmd->add_option("--axis2", sf.axis2, "second axis for a 2-D scan");
  scan_cmd->add_option("--from2", sf.from2, "first value on axis 2");
  scan_cmd->add_option("--to2", sf.to2, "last value on axis 2");
  scan_cmd->add_option("--steps2", sf.steps2, "number of grid values on axis 2");
  scan_cmd->add_flag("--no-patterns", sf.no_patterns, "skip separatrix tracing per cell");
  scan_cmd->add_option("--out", out, "output directory (default: print transitions)");

  std::string presets_format = "text";
  auto* presets_cmd = app.add_subcommand("presets", "list the preset catalog");
  presets_cmd->add_option("--format", presets_format, "text | json")->check(CLI::IsMember({"text", "json"}));

  auto* serve_cmd = app.add_subcommand("serve", "serve the HTTP JSON interface");
  serve_cmd->add_option("--port", port, "TCP port")->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--host", host, "bind address");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (analyze_cmd->parsed()) return cmd_analyze(pf, format, out);
    if (portrait_cmd->parsed()) return cmd_portrait(pf, portrait_format, out, window, windings, seed_count);
    if (scan_cmd->parsed()) return cmd_scan(pf, sf, out);
    if (presets_cmd->parsed()) return cmd_presets(presets_format);
    if (serve_cmd->parsed()) return cmd_serve(host, port);
  } catch (const UsageError& e) {
    std::cerr << "meander: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "meander: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
