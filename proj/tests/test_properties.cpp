#include <gtest/gtest.h>

#include <random>

#include "meander/analysis.hpp"
#include "meander/patterns.hpp"
#include "support.hpp"

using namespace meander;

// Root counts never exceed the bound; for even n the parity of the total
// follows the sign of B - |a2_s|.
TEST(Properties, RootCountBoundsAndParity) {
  std::mt19937_64 rng(51);
  for (int n = 4; n <= 11; ++n) {
    int parity_checked = 0;
    for (int t = 0; t < 1000; ++t) {
      const auto a = analyze(test::random_params(rng, n, true));
      for (const auto& b : a.bounds) EXPECT_TRUE(b.ok) << b.name << " n=" << n;
      if (n % 2 == 0 && !a.degenerate()) ++parity_checked;
    }
    if (n % 2 == 0) {
      EXPECT_GT(parity_checked, 500);
    }
  }
}

TEST(Properties, FlowerRingsWithinBound) {
  std::mt19937_64 rng(52);
  PortraitOptions o;
  o.sample_orbits = false;
  for (int n = 4; n <= 9; ++n)
    for (int t = 0; t < 25; ++t) {
      const auto rep = classify_patterns(build_portrait(test::random_params(rng, n, true), o));
      EXPECT_LE(rep.flower_rings, flower_ring_bound(n));
      EXPECT_TRUE(rep.within_bounds);
    }
}

// Odd n: the outermost peripheral equilibrium is a saddle, and so is the innermost.
TEST(Properties, OddNOutermostIsSaddle) {
  std::mt19937_64 rng(53);
  for (int n = 5; n <= 11; n += 2)
    for (int t = 0; t < 300; ++t) {
      const auto a = analyze(test::random_params(rng, n, true));
      if (a.degenerate() || a.peripheral.equilibria.empty()) continue;
      EXPECT_EQ(a.peripheral.equilibria.back().kind, Kind::Saddle);
      EXPECT_EQ(a.peripheral.equilibria.front().kind, Kind::Saddle);
    }
}

// Peripheral counts are the same however B is rotated.
TEST(Properties, AnalysisInvariantUnderBPhase) {
  std::mt19937_64 rng(54);
  std::uniform_real_distribution<double> ua(-3.0, 3.0);
  for (int n = 4; n <= 9; ++n)
    for (int t = 0; t < 50; ++t) {
      auto p = test::random_params(rng, n, false);
      const auto a = analyze(p);
      const double b = p.b(), beta = ua(rng);
      p.b1 = b * std::cos(beta);
      p.b2 = b * std::sin(beta);
      const auto c = analyze(p);
      if (a.degenerate() || c.degenerate()) continue;
      EXPECT_EQ(a.signature(), c.signature());
      ASSERT_EQ(a.peripheral.equilibria.size(), c.peripheral.equilibria.size());
      for (std::size_t i = 0; i < a.peripheral.equilibria.size(); ++i)
        EXPECT_NEAR(a.peripheral.equilibria[i].r, c.peripheral.equilibria[i].r, 1e-9);
    }
}
