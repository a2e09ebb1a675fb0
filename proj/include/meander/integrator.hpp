#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "meander/equilibria.hpp"
#include "meander/field.hpp"
#include "meander/params.hpp"

namespace meander {

enum class Termination { Closed, Escaped, Converged, MaxTime };

constexpr std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::Closed: return "closed";
    case Termination::Escaped: return "escaped";
    case Termination::Converged: return "converged";
    case Termination::MaxTime: return "max_time";
  }
  return "?";
}

/// A point the integrator watches for arrival (an equilibrium).
struct CaptureTarget {
  int id = -1;
  CartPoint at;
  double radius = 1e-6;
  bool saddle = false;
  /// Smallest |eigenvalue| of the Hessian of H at a saddle, 0 if unknown. An
  /// orbit whose energy has drifted by dH misses the saddle by up to
  /// sqrt(2 dH / hess_min), so the capture radius grows to cover that.
  double hess_min = 0.0;
};

struct OrbitOptions {
  double max_time = 200.0;
  std::size_t max_steps = 200000;
  double escape_radius = 1e3;
  double closure_tol = 1e-6;  // relative to 1 + |start|
  int windings = 1;           // returns to the start section before "closed"
  bool detect_closure = true;
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_dt = 0.05;
  double direction = 1.0;  // -1 integrates in reversed time
  std::vector<CaptureTarget> targets;
  /// Energy drift is sampled only where r <= h_check_radius; beyond it the
  /// terms of H grow like r^n and rounding alone exceeds any fixed budget.
  double h_check_radius = std::numeric_limits<double>::infinity();
  /// A step-size collapse beyond this radius is finite-time blow-up: escaped.
  double blowup_radius = std::numeric_limits<double>::infinity();
};

struct Orbit {
  std::vector<CartPoint> samples;
  std::vector<double> times;
  Termination termination = Termination::MaxTime;
  double period = 0.0;  // first return time when closed
  int windings = 0;
  double exit_radius = 0.0;
  double exit_angle = 0.0;
  int equilibrium_id = -1;
  bool hamiltonian = false;
  double h0 = 0.0;
  double h_drift = 0.0;
  double min_return_distance = std::numeric_limits<double>::infinity();
  std::string diagnostic;
};

namespace detail {

using State = std::array<double, 2>;

struct FieldRhs {
  const ModelParams* p;
  double direction;
  void operator()(const State& x, State& dxdt, double /*t*/) const {
    const auto v = eval_complex(*p, {x[0], x[1]});
    dxdt[0] = direction * v.real();
    dxdt[1] = direction * v.imag();
  }
};

template <class Stepper, class Pred>
double bisect_dense(const Stepper& st, double t_lo, double t_hi, Pred inside) {
  // inside(t_lo) true, inside(t_hi) false.
  for (int i = 0; i < 60; ++i) {
    const double tm = 0.5 * (t_lo + t_hi);
    if (tm <= t_lo || tm >= t_hi) break;
    State x;
    st.calc_state(tm, x);
    if (inside(x))
      t_lo = tm;
    else
      t_hi = tm;
  }
  return t_hi;
}

}  // namespace detail

/// Integrates from `start` until the orbit closes, escapes, reaches one of
/// the capture targets or runs out of time.
inline Orbit integrate_orbit(const ModelParams& p, CartPoint start, const OrbitOptions& opts = {}) {
  namespace odeint = boost::numeric::odeint;
  using detail::State;
  Orbit orbit;
  orbit.samples.push_back(start);
  orbit.times.push_back(0.0);
  orbit.hamiltonian = p.is_normalized() && is_hamiltonian(p, 0.0);
  if (orbit.hamiltonian) orbit.h0 = hamiltonian(p, start);

  // Returns |H - H0| at c, recording it when c is inside the check radius.
  auto record_h = [&](const CartPoint& c) {
    if (!orbit.hamiltonian) return 0.0;
    const double d = std::abs(hamiltonian(p, c) - orbit.h0);
    if (c.radius() <= opts.h_check_radius) orbit.h_drift = std::max(orbit.h_drift, d);
    return d;
  };

  // Targets the orbit starts next to are armed only after it leaves them.
  std::vector<char> armed(opts.targets.size(), 1);
  auto dist = [](CartPoint a, CartPoint b) { return std::hypot(a.x - b.x, a.y - b.y); };
  for (std::size_t i = 0; i < opts.targets.size(); ++i)
    if (dist(start, opts.targets[i].at) < 2.0 * opts.targets[i].radius) armed[i] = 0;

  const auto v0 = eval_complex(p, start.z());
  if (v0 == std::complex<double>(0.0, 0.0)) {
    orbit.termination = Termination::Converged;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& t : opts.targets)
      if (double d = dist(start, t.at); d < best && d <= t.radius) {
        best = d;
        orbit.equilibrium_id = t.id;
      }
    return orbit;
  }
  if (start.radius() > opts.escape_radius) {
    orbit.termination = Termination::Escaped;
    orbit.exit_radius = start.radius();
    orbit.exit_angle = start.angle();
    return orbit;
  }

  // Local transversal through the start point, normal to the initial velocity.
  const double vn = std::abs(v0);
  const std::array<double, 2> normal{opts.direction * v0.real() / vn, opts.direction * v0.imag() / vn};
  auto section = [&](const State& x) { return (x[0] - start.x) * normal[0] + (x[1] - start.y) * normal[1]; };
  const double close_tol = opts.closure_tol * (1.0 + start.radius());

  detail::FieldRhs rhs{&p, opts.direction};
  auto stepper = odeint::make_dense_output(opts.abs_tol, opts.rel_tol, opts.max_dt, odeint::runge_kutta_dopri5<State>());
  State x0{start.x, start.y};
  const double dt0 = std::min(opts.max_dt, 1e-3 / std::max(1.0, vn));
  stepper.initialize(x0, 0.0, dt0);

  double prev_g = 0.0;
  bool left_section = false;
  std::size_t steps = 0;
  try {
    while (true) {
      if (stepper.current_time() >= opts.max_time) {
        orbit.termination = Termination::MaxTime;
        break;
      }
      if (steps++ >= opts.max_steps) {
        orbit.termination = Termination::MaxTime;
        orbit.diagnostic = "step budget exhausted";
        break;
      }
      const auto [t_prev, t_step] = stepper.do_step(rhs);
      if (!(stepper.current_time_step() > 1e-15 * std::max(1.0, t_step))) {
        const State xu = stepper.current_state();
        const CartPoint cu{xu[0], xu[1]};
        if (std::isfinite(cu.radius()) && cu.radius() > opts.blowup_radius) {
          orbit.samples.push_back(cu);
          orbit.times.push_back(t_step);
          orbit.termination = Termination::Escaped;
          orbit.exit_radius = cu.radius();
          orbit.exit_angle = cu.angle();
          break;
        }
        orbit.termination = Termination::MaxTime;
        orbit.diagnostic = "step size underflow at t=" + std::to_string(t_step);
        break;
      }
      // The last step ends exactly at max_time.
      const double t_now = std::min(t_step, opts.max_time);
      State x = stepper.current_state();
      if (t_step > opts.max_time) stepper.calc_state(t_now, x);
      if (!std::isfinite(x[0]) || !std::isfinite(x[1])) {
        orbit.termination = Termination::MaxTime;
        orbit.diagnostic = "non-finite state at t=" + std::to_string(t_now);
        break;
      }
      const CartPoint c{x[0], x[1]};

      if (c.radius() > opts.escape_radius) {
        const double te = detail::bisect_dense(stepper, t_prev, t_now, [&](const State& s) {
          return std::hypot(s[0], s[1]) <= opts.escape_radius;
        });
        State xe;
        stepper.calc_state(te, xe);
        // Interpolating across a blow-up can produce NaN; keep the step end then.
        const bool finite = std::isfinite(xe[0]) && std::isfinite(xe[1]);
        const CartPoint ce = finite ? CartPoint{xe[0], xe[1]} : c;
        orbit.samples.push_back(ce);
        orbit.times.push_back(finite ? te : t_now);
        record_h(ce);
        orbit.termination = Termination::Escaped;
        orbit.exit_radius = ce.radius();
        orbit.exit_angle = ce.angle();
        break;
      }

      orbit.samples.push_back(c);
      orbit.times.push_back(t_now);
      const double drift = record_h(c);

      bool captured = false;
      for (std::size_t i = 0; i < opts.targets.size(); ++i) {
        const auto& t = opts.targets[i];
        const double dx = c.x - t.at.x, dy = c.y - t.at.y;
        const double d2 = dx * dx + dy * dy;
        if (!armed[i]) {
          if (d2 > 9.0 * t.radius * t.radius) armed[i] = 1;
          continue;
        }
        if (d2 > 1e4 * t.radius * t.radius) continue;
        double radius = t.radius;
        if (t.hess_min > 0.0 && drift > 0.0)
          radius = std::min(100.0 * t.radius, std::max(t.radius, 3.0 * std::sqrt(2.0 * drift / t.hess_min)));
        if (d2 <= radius * radius) {
          orbit.termination = Termination::Converged;
          orbit.equilibrium_id = opts.targets[i].id;
          captured = true;
          break;
        }
      }
      if (captured) break;

      if (opts.detect_closure) {
        const double g = section(x);
        if (g > close_tol) left_section = true;
        if (left_section && prev_g < 0.0 && g >= 0.0) {
          const double tc = detail::bisect_dense(stepper, t_prev, t_now, [&](const State& s) { return section(s) < 0.0; });
          State xc;
          stepper.calc_state(tc, xc);
          const double d = std::hypot(xc[0] - start.x, xc[1] - start.y);
          orbit.min_return_distance = std::min(orbit.min_return_distance, d);
          if (d <= close_tol) {
            if (orbit.windings == 0) orbit.period = tc;
            ++orbit.windings;
            if (orbit.windings >= opts.windings) {
              orbit.samples.back() = {xc[0], xc[1]};
              orbit.times.back() = tc;
              orbit.termination = Termination::Closed;
              break;
            }
          }
        }
        prev_g = g;
      }
    }
  } catch (const odeint::step_adjustment_error& e) {
    const CartPoint last = orbit.samples.back();
    if (last.radius() > opts.blowup_radius) {
      orbit.termination = Termination::Escaped;
      orbit.exit_radius = last.radius();
      orbit.exit_angle = last.angle();
    } else {
      orbit.termination = Termination::MaxTime;
      orbit.diagnostic = std::string("step size underflow: ") + e.what();
    }
  }
  return orbit;
}

// ---------------------------------------------------------------------------
// Separatrices

enum class ConnectionType { LoopsToSaddle, Escapes, Converges, Undecided };

constexpr std::string_view to_string(ConnectionType c) {
  switch (c) {
    case ConnectionType::LoopsToSaddle: return "loops-to-saddle";
    case ConnectionType::Escapes: return "escapes";
    case ConnectionType::Converges: return "converges";
    case ConnectionType::Undecided: return "undecided";
  }
  return "?";
}

struct Connection {
  ConnectionType type = ConnectionType::Undecided;
  int target_id = -1;
};

struct SeparatrixBranch {
  bool unstable = true;  // unstable branches run forward, stable ones backward
  int sign = 1;          // side of the eigenvector
  CartPoint launch;
  Orbit orbit;
  Connection connection;
};

struct SeparatrixSet {
  int saddle_id = -1;
  CartPoint saddle;
  double delta = 0.0;
  std::array<SeparatrixBranch, 4> branches;  // u+, u-, s+, s-
};

struct SeparatrixOptions {
  OrbitOptions orbit;          // targets, escape radius, time limits
  double delta_scale = 1e-6;   // launch offset = delta_scale * (1 + r_saddle)
  double capture_factor = 10;  // saddle capture radius = capture_factor * delta
};

inline Connection classify_connection(const Orbit& o, const std::vector<CaptureTarget>& targets) {
  switch (o.termination) {
    case Termination::Escaped: return {ConnectionType::Escapes, -1};
    case Termination::Converged: {
      for (const auto& t : targets)
        if (t.id == o.equilibrium_id) return {t.saddle ? ConnectionType::LoopsToSaddle : ConnectionType::Converges, t.id};
      return {ConnectionType::Converges, o.equilibrium_id};
    }
    default: return {ConnectionType::Undecided, -1};
  }
}

/// Launches the four separatrix branches of a saddle at a small offset along
/// its Jacobian eigenvectors.
inline SeparatrixSet trace_separatrices(const ModelParams& p, const Equilibrium& saddle, int saddle_id,
                                        const SeparatrixOptions& sopts) {
  if (saddle.kind != Kind::Saddle) throw std::invalid_argument("trace_separatrices: equilibrium is not a saddle");
  SeparatrixSet set;
  set.saddle_id = saddle_id;
  set.saddle = saddle.position();
  set.delta = sopts.delta_scale * (1.0 + saddle.r);
  const Eigen2 e = eigen(jacobian_cartesian(p, set.saddle));
  if (!e.real) throw std::invalid_argument("trace_separatrices: saddle eigenvalues are not real");

  OrbitOptions o = sopts.orbit;
  o.detect_closure = false;
  for (auto& t : o.targets)
    if (t.saddle) t.radius = sopts.capture_factor * set.delta;

  int idx = 0;
  for (bool unstable : {true, false}) {
    const auto& v = unstable ? e.v1 : e.v2;
    for (int sign : {1, -1}) {
      SeparatrixBranch b;
      b.unstable = unstable;
      b.sign = sign;
      b.launch = {set.saddle.x + sign * set.delta * v[0], set.saddle.y + sign * set.delta * v[1]};
      OrbitOptions oo = o;
      oo.direction = unstable ? 1.0 : -1.0;
      b.orbit = integrate_orbit(p, b.launch, oo);
      // The orbit started at the saddle itself; prepend it so polylines close.
      b.orbit.samples.insert(b.orbit.samples.begin(), set.saddle);
      b.orbit.times.insert(b.orbit.times.begin(), 0.0);
      b.connection = classify_connection(b.orbit, o.targets);
      set.branches[idx++] = std::move(b);
    }
  }
  return set;
}

// ---------------------------------------------------------------------------
// Destination census

struct CensusOptions {
  OrbitOptions orbit;
  bool forward = true;
  bool backward = true;
};

struct CensusResult {
  double r0 = 0.0;
  int count = 0;
  std::map<std::string, int> forward;
  std::map<std::string, int> backward;
  std::vector<std::string> forward_verdicts;  // per seed, by angle
  std::vector<std::string> backward_verdicts;
  std::set<int> forward_destinations;  // equilibrium ids reached
  std::set<int> backward_destinations;
};

inline std::string verdict_key(const Orbit& o) {
  if (o.termination == Termination::Converged) return "converged:" + std::to_string(o.equilibrium_id);
  return std::string(to_string(o.termination));
}

/// Integrates `count` seeds equally spaced on the circle r = r0 in both time
/// directions and tallies where they end up.
inline CensusResult destination_census(const ModelParams& p, double r0, int count, const CensusOptions& copts) {
  if (count < 10 * p.n)
    throw std::invalid_argument("destination_census: need at least 10*n seeds (got " + std::to_string(count) + ")");
  if (r0 < 0.0) throw std::invalid_argument("destination_census: r0 must be >= 0");
  CensusResult out;
  out.r0 = r0;
  out.count = count;
  for (int i = 0; i < count; ++i) {
    const double phi = 2.0 * std::numbers::pi * i / count;
    const CartPoint seed = to_cartesian({r0, phi});
    for (double dir : {1.0, -1.0}) {
      if ((dir > 0 && !copts.forward) || (dir < 0 && !copts.backward)) continue;
      OrbitOptions o = copts.orbit;
      o.direction = dir;
      const Orbit orb = integrate_orbit(p, seed, o);
      const std::string key = verdict_key(orb);
      auto& hist = dir > 0 ? out.forward : out.backward;
      auto& verdicts = dir > 0 ? out.forward_verdicts : out.backward_verdicts;
      auto& dests = dir > 0 ? out.forward_destinations : out.backward_destinations;
      ++hist[key];
      verdicts.push_back(key);
      if (orb.termination == Termination::Converged && orb.equilibrium_id >= 0) dests.insert(orb.equilibrium_id);
    }
  }
  return out;
}

}  // namespace meander
