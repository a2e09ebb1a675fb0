#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "meander/params.hpp"

namespace meander {

struct Preset {
  std::string name;
  ModelParams params;
  double window = 0.0;  // 0: automatic
  std::string note;
};

namespace detail {

inline Preset preset(std::string name, int n, double eps1, double eps2, std::vector<double> a1, std::vector<double> a2,
                     double b1, double b2, double window, std::string note) {
  ModelParams p = make_params(n);
  p.eps1 = eps1;
  p.eps2 = eps2;
  if (!a1.empty()) p.a1 = std::move(a1);
  if (!a2.empty()) p.a2 = std::move(a2);
  p.b1 = b1;
  p.b2 = b2;
  validate(p);
  return {std::move(name), std::move(p), window, std::move(note)};
}

}  // namespace detail

/// Parameter sets with known portraits. B is stored signed, as listed.
inline const std::vector<Preset>& preset_catalog() {
  using detail::preset;
  static const std::vector<Preset> catalog = {
      preset("fig1_1", 5, 0, -4, {}, {7}, 3, 0, 3.0, "centroid, 5-flower ring between two separatrix cycles, spider-nets"),
      preset("fig2_1a", 5, 0.0001, 0.1, {0}, {-0.1}, 0, 0, 0, "weakly unstable origin, quasi-equilibrium circle"),
      preset("fig2_1b", 5, 0.0001, 0.1, {0}, {-0.1}, 0.01, 0, 0, "quasi-equilibrium circle broken into peripheral equilibria"),
      preset("fig2_1c", 5, 0.0001, 0.1, {-0.01}, {-0.1}, 0.01, 0, 0, "limit cycle with peripheral equilibria"),
      preset("ex1_domain1", 5, 0, -4, {}, {7}, 3, 0, 0, "n=5 regime map, ring side of C"),
      preset("ex1_domain2", 5, 0, -4, {}, {-1}, 3, 0, 0, "n=5 regime map, no-ring side of C"),
      preset("ex2_domain1", 4, 0, 1, {}, {1}, 0.7, 0, 0, "n=4 regime map, center"),
      preset("ex2_domain2", 4, 0, 1, {}, {1}, 1.2, 0, 0, "n=4 regime map, center and spider-net"),
      preset("ex2_domain3", 4, 0, 1, {}, {-1}, 0.7, 0, 0, "n=4 regime map, flower ring"),
      preset("a2_1_no1", 4, 0, 1, {}, {1}, 0.7, 0, 0, "n=4 center"),
      preset("a2_1_no2a", 4, 0, 1, {}, {1}, 1.2, 0, 0, "n=4 center and spider-net"),
      preset("a2_1_no2b", 4, 0, 1, {}, {-1}, 1.2, 0, 0, "n=4 center and spider-net"),
      preset("a2_1_no3", 4, 0, 1, {}, {-1}, 0, 0.7, 0, "n=4 flower ring"),
      preset("a2_2_no1", 5, 0, 1, {}, {1}, 2, 0, 0, "n=5 center and spider-net"),
      preset("a2_2_no2a", 5, 0, 1, {}, {-1}, 0.3, 0, 0, "n=5 flower ring, star, spider-net"),
      preset("a2_2_no2b", 5, 0, 1, {}, {-1}, 0.2, 0, 0, "n=5 flower ring, star, spider-net"),
      preset("a2_3_no1a", 6, 0, 1, {}, {1, 0}, 0, -0.5, 0, "n=6 spider-net"),
      preset("a2_3_no1b", 6, 0, 0, {}, {1, 0}, 0.5, 0, 0, "n=6 spider-net, degenerate origin"),
      preset("a2_3_no2", 6, 0, 1, {}, {-1, 0.1}, 0.04, 0, 0, "n=6 centers and flower band"),
      preset("a2_3_no3", 6, 0, 1, {}, {-1, 0.1}, 0.06, 0, 0, "n=6 center, star, two flower rings"),
      preset("a2_4_no1", 7, 0, -0.56, {}, {3, -3.5}, -1.6, 0, 0, "n=7, B=-1.6"),
      preset("a2_4_no2", 7, 0, -0.56, {}, {3, -3.5}, -1, 0, 0, "n=7, B=-1"),
      preset("a2_5_a", 9, 0, 8, {}, {-33, 23.765, -3.5}, 0, 0, 7, "n=9, B=0 (circles of equilibria)"),
      preset("a2_5_b", 9, 0, 8, {}, {-33, 23.765, -3.5}, 0.1, 0, 7, "n=9, B=0.1"),
      preset("a2_5_c", 9, 0, 8, {}, {-33, 23.765, -3.5}, 0.45, 0, 7, "n=9, B=0.45"),
      preset("a2_6_a", 11, 0, 14.4, {}, {-55.6, 54.6, 14.4, 1}, 0.05, 0, 0, "n=11, two flower rings, B=0.05"),
      preset("a2_6_b", 11, 0, 14.4, {}, {-55.6, 54.6, 14.4, 1}, -0.01, 0, 0, "n=11, two flower rings, B=-0.01"),
      preset("a2_7_a", 5, 0.005, 1, {-0.01}, {-1}, 0.1, 0, 0, "n=5 non-Hamiltonian, ring outside the limit cycle"),
      preset("a2_7_b", 5, 0.005, -0.1, {0.045}, {1}, 1, 0, 0, "n=5 non-Hamiltonian, ring inside the limit cycle"),
      preset("a2_7_c", 5, 0.005, -0.1, {-0.045}, {1}, 1, 0, 0, "n=5 non-Hamiltonian, no limit cycle"),
      // A_2^1 is not given for these two; taken as 0.
      preset("a2_8_a", 6, -0.001, -0.1, {1.3, 0}, {0.1, -0.1}, 0.05, 0, 0, "n=6 non-Hamiltonian, ring outside the limit cycle"),
      preset("a2_8_b", 6, -0.001, 0.1, {1, 0}, {-0.1, -0.1}, 0.05, 0, 0, "n=6 non-Hamiltonian, ring inside the limit cycle"),
  };
  return catalog;
}

inline std::optional<Preset> find_preset(std::string_view name) {
  for (const auto& p : preset_catalog())
    if (p.name == name) return p;
  return std::nullopt;
}

}  // namespace meander
