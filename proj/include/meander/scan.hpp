#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "meander/analysis.hpp"
#include "meander/patterns.hpp"

namespace meander {

/// One scanned coefficient: "eps1", "eps2", "b1", "b2", "a1_k" or "a2_k"
/// (k = 1..s), sampled at `count` equally spaced values in [lo, hi].
struct ScanAxis {
  std::string field;
  double lo = 0.0;
  double hi = 0.0;
  int count = 0;

  double value(int i) const { return count == 1 ? lo : lo + (hi - lo) * i / (count - 1); }
};

/// Writes v into the coefficient named by `field`.
inline void set_field(ModelParams& p, const std::string& field, double v) {
  if (field == "eps1") p.eps1 = v;
  else if (field == "eps2") p.eps2 = v;
  else if (field == "b1" || field == "b") p.b1 = v;
  else if (field == "b2") p.b2 = v;
  else if ((field.rfind("a1_", 0) == 0 || field.rfind("a2_", 0) == 0) && field.size() > 3) {
    int k = 0;
    try {
      k = std::stoi(field.substr(3));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad coefficient index in axis '" + field + "'");
    }
    auto& vec = field[1] == '1' ? p.a1 : p.a2;
    if (k < 1 || k > static_cast<int>(vec.size()))
      throw std::invalid_argument("axis '" + field + "' out of range for n=" + std::to_string(p.n) + " (s=" +
                                  std::to_string(p.s()) + ")");
    vec[k - 1] = v;
  } else {
    throw std::invalid_argument("unknown scan axis '" + field + "' (use eps1, eps2, b1, b2, a1_k, a2_k)");
  }
}

struct ScanOptions {
  bool patterns = true;  // trace separatrices and classify each cell
  unsigned threads = 0;  // 0: hardware concurrency
};

struct ScanCell {
  std::vector<int> index;
  std::vector<double> coords;
  ModelParams params;
  Analysis analysis;
  std::optional<PatternReport> report;

  bool degenerate() const { return analysis.degenerate() || (report && report->degenerate); }

  /// Everything a transition is detected on.
  std::string signature() const {
    std::string s = "P+=" + std::to_string(analysis.plus_roots) + " P-=" + std::to_string(analysis.minus_roots) +
                    " eq=" + analysis.signature() + " equator=" + std::string(to_string(analysis.equator.verdict));
    if (analysis.regime.supported) s += " regime=" + analysis.regime.label;
    if (report)
      s += " rings=" + std::to_string(report->flower_rings) + " cycles=" + std::to_string(report->n_cycles.size()) +
           " spider=" + (report->spider_net ? "1" : "0");
    return s;
  }
};

struct Transition {
  int axis = 0;
  std::size_t from = 0;  // cell indices (flat), both non-degenerate
  std::size_t to = 0;
  double lo = 0.0;  // axis values bracketing the change
  double hi = 0.0;
  std::string before;
  std::string after;
};

struct ScanResult {
  ModelParams base;
  std::vector<ScanAxis> axes;
  std::vector<ScanCell> cells;  // row-major, last axis fastest
  std::vector<Transition> transitions;
};

/// 1-D or 2-D grid over coefficients. Transitions are adjacent-cell
/// differences along each axis; degenerate cells are skipped so a change
/// straddling a boundary cell is reported across it.
inline ScanResult scan(const ModelParams& base, const std::vector<ScanAxis>& axes, const ScanOptions& opts = {}) {
  validate(base);
  if (axes.empty() || axes.size() > 2) throw std::invalid_argument("scan needs one or two axes");
  std::size_t total = 1;
  for (const auto& ax : axes) {
    if (ax.count < 1) throw std::invalid_argument("empty grid on axis '" + ax.field + "'");
    if (!std::isfinite(ax.lo) || !std::isfinite(ax.hi)) throw std::invalid_argument("non-finite bounds on axis '" + ax.field + "'");
    ModelParams probe = base;
    set_field(probe, ax.field, ax.lo);
    total *= static_cast<std::size_t>(ax.count);
  }

  ScanResult out;
  out.base = base;
  out.axes = axes;
  out.cells.resize(total);
  auto run_cell = [&](std::size_t flat) {
    ScanCell& c = out.cells[flat];
    c.params = base;
    std::size_t rest = flat;
    c.index.assign(axes.size(), 0);
    c.coords.assign(axes.size(), 0.0);
    for (std::size_t a = axes.size(); a-- > 0;) {
      c.index[a] = static_cast<int>(rest % axes[a].count);
      rest /= axes[a].count;
      c.coords[a] = axes[a].value(c.index[a]);
      set_field(c.params, axes[a].field, c.coords[a]);
    }
    c.analysis = analyze(c.params);
    if (opts.patterns) {
      PortraitOptions po;
      po.sample_orbits = false;
      c.report = classify_patterns(build_portrait(c.params, po));
    }
  };

  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));
  if (threads <= 1) {
    for (std::size_t i = 0; i < total; ++i) run_cell(i);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < total; i += threads) run_cell(i);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  // Adjacent-cell diffs along each axis.
  auto flat_of = [&](const std::vector<int>& idx) {
    std::size_t f = 0;
    for (std::size_t a = 0; a < axes.size(); ++a) f = f * axes[a].count + idx[a];
    return f;
  };
  for (std::size_t a = 0; a < axes.size(); ++a) {
    for (const auto& start : out.cells) {
      if (start.index[a] != 0) continue;
      std::optional<std::size_t> prev;
      for (int i = 0; i < axes[a].count; ++i) {
        auto idx = start.index;
        idx[a] = i;
        const std::size_t f = flat_of(idx);
        if (out.cells[f].degenerate()) continue;
        if (prev) {
          const auto before = out.cells[*prev].signature();
          const auto after = out.cells[f].signature();
          if (before != after)
            out.transitions.push_back({static_cast<int>(a), *prev, f, out.cells[*prev].coords[a], out.cells[f].coords[a],
                                       before, after});
        }
        prev = f;
      }
    }
  }
  return out;
}

}  // namespace meander
