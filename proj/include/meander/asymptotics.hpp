#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string_view>
#include <vector>

#include "meander/field.hpp"
#include "meander/params.hpp"

namespace meander {

enum class NodeKind { StableNode, UnstableNode };

constexpr std::string_view to_string(NodeKind k) {
  return k == NodeKind::StableNode ? "stable-node" : "unstable-node";
}

/// Equilibrium on the circle at infinity, in the chart rho = 1/r with time
/// rescaled by rho^(n-2). A stable node attracts escaping orbits.
struct EquatorNode {
  double phi = 0.0;
  NodeKind kind = NodeKind::StableNode;
  double lambda_rho = 0.0;  // eigenvalue along rho
  double lambda_phi = 0.0;  // eigenvalue along the equator
  /// B^2 - (a1_s^2 + a2_s^2) for even n, B^2 for odd n.
  double existence_margin = 0.0;
};

enum class EquatorVerdict { Nodes, None, Degenerate };

constexpr std::string_view to_string(EquatorVerdict v) {
  switch (v) {
    case EquatorVerdict::Nodes: return "nodes";
    case EquatorVerdict::None: return "none";
    case EquatorVerdict::Degenerate: return "degenerate";
  }
  return "?";
}

struct EquatorResult {
  EquatorVerdict verdict = EquatorVerdict::None;
  std::vector<EquatorNode> nodes;  // ascending angle in [0, 2pi)
  double margin = 0.0;

  std::size_t stable_count() const {
    return static_cast<std::size_t>(
        std::count_if(nodes.begin(), nodes.end(), [](const EquatorNode& e) { return e.kind == NodeKind::StableNode; }));
  }
  std::size_t unstable_count() const { return nodes.size() - stable_count(); }
};

inline constexpr double kEquatorTol = 1e-12;

/// Equilibria on the Poincare-sphere equator.
///
/// At rho = 0 the rescaled system reads
///   rho' = -rho (a1_s [n even] + B cos(n phi)) + O(rho^2)
///   phi' = a2_s [n even] - B sin(n phi)         + O(rho)
/// so odd n always has 2n points phi = pi m / n (B > 0), and even n has 2n
/// points where sin(n phi) = a2_s / B; they are nodes when
/// B^2 > a1_s^2 + a2_s^2.
inline EquatorResult equator_equilibria(const ModelParams& p) {
  detail::require_normalized(p, "equator_equilibria");
  EquatorResult out;
  const int n = p.n;
  const double b = p.b1;
  const double pi = std::numbers::pi;
  const bool odd = n % 2 == 1;
  const double a1s = odd || p.s() == 0 ? 0.0 : p.a1[p.s() - 1];
  const double a2s = odd || p.s() == 0 ? 0.0 : p.a2[p.s() - 1];
  out.margin = b * b - (a1s * a1s + a2s * a2s);
  const double scale = std::max({1.0, b * b, a1s * a1s + a2s * a2s});
  if (b == 0.0 && (odd || a2s == 0.0)) {
    out.verdict = EquatorVerdict::Degenerate;  // the whole equator is stationary
    return out;
  }
  if (std::abs(out.margin) <= kEquatorTol * scale) {
    out.verdict = EquatorVerdict::Degenerate;
    return out;
  }
  if (out.margin < 0.0) {
    out.verdict = EquatorVerdict::None;
    return out;
  }
  out.verdict = EquatorVerdict::Nodes;
  const double base = std::asin(std::clamp(a2s / b, -1.0, 1.0));
  for (int j = 0; j < 2 * n; ++j) {
    // n*phi = base + 2 pi m (cos > 0) or pi - base + 2 pi m (cos < 0).
    const double nphi = (j % 2 == 0) ? base + pi * j : -base + pi * j;
    const double phi = wrap_angle(nphi / n);
    const double c = std::cos(nphi);
    EquatorNode node;
    node.phi = phi;
    node.lambda_rho = -(a1s + b * c);
    node.lambda_phi = -n * b * c;
    node.kind = node.lambda_phi < 0.0 ? NodeKind::StableNode : NodeKind::UnstableNode;
    node.existence_margin = out.margin;
    out.nodes.push_back(node);
  }
  std::sort(out.nodes.begin(), out.nodes.end(), [](const EquatorNode& a, const EquatorNode& b2) { return a.phi < b2.phi; });
  return out;
}

inline bool spider_net_possible(const ModelParams& p) {
  const auto np = normalize_rotation(p);
  return equator_equilibria(np.params).verdict == EquatorVerdict::Nodes;
}

}  // namespace meander
