#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "meander/patterns.hpp"
#include "meander/presets.hpp"
#include "support.hpp"

using namespace meander;

namespace {

constexpr double kPi = std::numbers::pi;

PortraitOptions fast() {
  PortraitOptions o;
  o.sample_orbits = false;
  return o;
}

PatternReport report(const ModelParams& p) { return classify_patterns(build_portrait(p, fast())); }

}  // namespace

TEST(Patterns, Bounds) {
  EXPECT_EQ(flower_ring_bound(4), 1);
  EXPECT_EQ(flower_ring_bound(5), 1);
  EXPECT_EQ(flower_ring_bound(9), 3);
  EXPECT_EQ(flower_ring_bound(11), 4);
  EXPECT_EQ(root_count_bound(5), 2);
  EXPECT_EQ(root_count_bound(6), 2);
  EXPECT_EQ(root_count_bound(11), 5);
}

TEST(Patterns, ThreeRootQuintic) {
  const auto pt = build_portrait(test::three_root_quintic(), fast());
  EXPECT_EQ(pt.equilibria.size(), 16u);
  EXPECT_EQ(pt.separatrices.size(), 10u);
  EXPECT_EQ(pt.equator.nodes.size(), 10u);
  const auto rep = classify_patterns(pt);
  EXPECT_EQ(rep.centroids, 6);
  EXPECT_TRUE(rep.origin_centroid);
  EXPECT_EQ(rep.flower_rings, 1);
  ASSERT_EQ(rep.rings.size(), 1u);
  EXPECT_NEAR(rep.rings[0].radius, 1.0, 1e-12);
  ASSERT_EQ(rep.n_cycles.size(), 2u);
  for (const auto& c : rep.n_cycles) EXPECT_NEAR(c.radius, 2.0 / 3.0, 1e-12);
  EXPECT_LT(rep.n_cycles[0].area, rep.n_cycles[1].area);
  EXPECT_EQ(rep.n_cycles[1].shape, "star");
  EXPECT_TRUE(rep.spider_net);
  EXPECT_EQ(rep.spider_sectors, 5);
  EXPECT_EQ(rep.regime_label, std::optional<std::string>("Domain 1"));
  EXPECT_TRUE(rep.within_bounds);
  EXPECT_FALSE(rep.degenerate);
}

TEST(Patterns, CenterOnlyHasNothingElse) {
  const auto pt = build_portrait(test::params(4, 0, 1, {}, {1}, 0.7), fast());
  EXPECT_EQ(pt.equilibria.size(), 1u);
  EXPECT_TRUE(pt.separatrices.empty());
  const auto rep = classify_patterns(pt);
  EXPECT_EQ(rep.centroids, 1);
  EXPECT_EQ(rep.flower_rings, 0);
  EXPECT_TRUE(rep.n_cycles.empty());
  EXPECT_FALSE(rep.spider_net);
}

TEST(Patterns, CenterAndSpiderNet) {
  const auto rep = report(test::params(4, 0, 1, {}, {1}, 1.2));
  EXPECT_EQ(rep.flower_rings, 0);
  EXPECT_TRUE(rep.spider_net);
  EXPECT_EQ(rep.regime_label, std::optional<std::string>("Domain 2"));
}

TEST(Patterns, TwoFlowerRings) {
  const auto rep = report(test::two_ring_n6());
  ASSERT_EQ(rep.flower_rings, 2);
  EXPECT_NEAR(rep.rings[0].radius, std::sqrt(1.25), 1e-10);
  EXPECT_NEAR(rep.rings[1].radius, std::sqrt((1 + std::sqrt(0.84)) / 0.08), 1e-10);
  EXPECT_TRUE(rep.within_bounds);
}

// The phase of B only rotates the picture.
TEST(Patterns, InvariantUnderBPhase) {
  const auto base = report(test::three_root_quintic());
  for (double beta : {0.7, 2.0, kPi, -1.3}) {
    const auto rep = report(test::params(5, 0, -4, {}, {7}, 3 * std::cos(beta), 3 * std::sin(beta)));
    EXPECT_EQ(rep.centroids, base.centroids);
    EXPECT_EQ(rep.flower_rings, base.flower_rings);
    EXPECT_EQ(rep.n_cycles.size(), base.n_cycles.size());
    EXPECT_EQ(rep.spider_net, base.spider_net);
  }
}

TEST(Patterns, PortraitFrameRotatesBack) {
  const double beta = 1.1;
  const auto pt = build_portrait(test::params(5, 0, -4, {}, {7}, 3 * std::cos(beta), 3 * std::sin(beta)), fast());
  EXPECT_NEAR(pt.frame.plane_angle, beta / 5, 1e-14);
  for (const auto& e : pt.equilibria) {
    const auto z = pt.frame.to_original(std::complex<double>(e.eq.position().x, e.eq.position().y));
    EXPECT_LT(std::abs(eval_complex(pt.params, z)), 1e-9);
  }
}

TEST(Patterns, RegimeLabels) {
  EXPECT_EQ(regime(test::params(5, 0, -4, {}, {7}, 3)).label, "Domain 1");
  EXPECT_EQ(regime(test::params(5, 0, -4, {}, {-1}, 3)).label, "Domain 2");
  EXPECT_EQ(regime(test::params(4, 0, 1, {}, {1}, 0.7)).label, "Domain 1");
  EXPECT_EQ(regime(test::params(4, 0, 1, {}, {1}, 1.2)).label, "Domain 2");
  EXPECT_EQ(regime(test::params(4, 0, 1, {}, {-1}, 0.7)).label, "Domain 3");
  EXPECT_EQ(regime(test::params(4, 0, 1, {}, {-1}, 1)).label, "boundary");
  EXPECT_FALSE(regime(test::two_ring_n6()).supported);
  EXPECT_FALSE(regime(test::params(5, 0.1, -4, {}, {7}, 3)).supported);
}

TEST(Patterns, RegimeIndicatorSign) {
  const auto r = regime(test::params(5, 0, -4, {}, {7}, 3));
  EXPECT_NEAR(r.indicator, 27 * -4 * 9 + 4 * 343, 1e-9);
}

TEST(Patterns, SpiderNetImpliesEquatorNodes) {
  for (const auto& pr : preset_catalog()) {
    const auto pt = build_portrait(pr.params, fast());
    const auto rep = classify_patterns(pt);
    if (rep.spider_net) {
      EXPECT_EQ(pt.equator.verdict, EquatorVerdict::Nodes) << pr.name;
    }
    EXPECT_LE(rep.flower_rings, rep.flower_ring_bound) << pr.name;
  }
}

TEST(Patterns, CensusReachesEverySpiral) {
  auto o = fast();
  o.trace_separatrices = false;
  o.census_count = 50;
  const auto pt = build_portrait(test::params(5, 0.005, 1, {-0.01}, {-1}, 0.1), o);
  ASSERT_TRUE(pt.census);
  int spirals = 0;
  for (const auto& e : pt.equilibria)
    if (e.family >= 0 && is_focal(e.eq.kind)) {
      ++spirals;
      EXPECT_TRUE(pt.census->forward_destinations.count(e.id)) << "id " << e.id;
    }
  EXPECT_EQ(spirals, 5);
  const auto rep = classify_patterns(pt);
  ASSERT_TRUE(rep.indeterminacy);
  EXPECT_GE(rep.indeterminacy->forward_destinations, 5);
}

TEST(Patterns, Geometry) {
  const std::vector<CartPoint> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  EXPECT_NEAR(detail::shoelace(square), 1.0, 1e-15);
  EXPECT_EQ(detail::winding_number(square, {0.5, 0.5}), 1);
  EXPECT_EQ(detail::winding_number(square, {1.5, 0.5}), 0);
  EXPECT_TRUE(detail::is_convex(detail::resample_closed(square, 64), 1.0));
  std::vector<CartPoint> star;
  for (int k = 0; k < 10; ++k) {
    const double r = k % 2 ? 0.4 : 1.0;
    star.push_back(to_cartesian({r, kPi * k / 5}));
  }
  EXPECT_FALSE(detail::is_convex(detail::resample_closed(star, 160), 1.0));
}

TEST(Patterns, SeparatrixChainClosesUnderRotation) {
  // One arc from angle 0 to 2 pi k / n on the unit circle.
  const int n = 5, k = 2;
  std::vector<CartPoint> arc;
  for (int i = 0; i <= 20; ++i) arc.push_back(to_cartesian({1.0, 2 * kPi * k / n * i / 20}));
  const auto chain = separatrix_chain(arc, k, n);
  // Five arcs, each without its closing point.
  ASSERT_EQ(chain.size(), 5u * 20u);
  const auto last = detail::rotate(chain.back(), 2 * kPi * k / n / 20);
  EXPECT_NEAR(last.x, chain.front().x, 1e-12);
  EXPECT_NEAR(last.y, chain.front().y, 1e-12);
}

TEST(Patterns, BareCopiesClassifyTheSame) {
  for (const auto& p : {test::three_root_quintic(), test::two_ring_n6()}) {
    auto o = fast();
    const auto full = build_portrait(p, o);
    o.copy_samples = false;
    const auto bare = build_portrait(p, o);
    ASSERT_EQ(full.separatrices.size(), bare.separatrices.size());
    for (std::size_t i = 0; i < bare.separatrices.size(); ++i) {
      const bool first = bare.at(bare.separatrices[i].saddle_id).copy == 0;
      for (std::size_t b = 0; b < 4; ++b) {
        const auto& fb = full.separatrices[i].branches[b];
        const auto& bb = bare.separatrices[i].branches[b];
        EXPECT_EQ(fb.connection.type, bb.connection.type);
        EXPECT_EQ(fb.connection.target_id, bb.connection.target_id);
        EXPECT_EQ(bb.orbit.samples.empty(), !first);
      }
    }
    const auto a = classify_patterns(full), b = classify_patterns(bare);
    EXPECT_EQ(a.flower_rings, b.flower_rings);
    EXPECT_EQ(a.n_cycles.size(), b.n_cycles.size());
    EXPECT_EQ(a.spider_net, b.spider_net);
  }
}

TEST(Patterns, PolylinesStayFiniteThroughBlowUp) {
  for (const auto& pr : preset_catalog()) {
    const auto pt = build_portrait(pr.params, fast());
    for (const auto& s : pt.separatrices)
      for (const auto& b : s.branches)
        for (const auto& c : b.orbit.samples) ASSERT_TRUE(std::isfinite(c.x) && std::isfinite(c.y)) << pr.name;
  }
}
