#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "meander/analysis.hpp"
#include "meander/equilibria.hpp"
#include "support.hpp"

using namespace meander;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(Equilibria, ThreeRootQuinticRadiiRaysAndKinds) {
  const auto res = peripheral_equilibria(test::three_root_quintic());
  ASSERT_FALSE(res.degenerate);
  ASSERT_EQ(res.equilibria.size(), 3u);
  const auto& e = res.equilibria;
  EXPECT_NEAR(e[0].r, 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(e[1].r, 1.0, 1e-12);
  EXPECT_NEAR(e[2].r, 2.0, 1e-12);
  EXPECT_EQ(e[0].ray, Ray::Minus);
  EXPECT_EQ(e[1].ray, Ray::Plus);
  EXPECT_EQ(e[2].ray, Ray::Plus);
  EXPECT_NEAR(e[0].phi, 2 * kPi - kPi / 10, 1e-14);
  EXPECT_NEAR(e[1].phi, kPi / 10, 1e-14);
  EXPECT_EQ(e[0].kind, Kind::Saddle);
  EXPECT_EQ(e[1].kind, Kind::Center);
  EXPECT_EQ(e[2].kind, Kind::Saddle);
  for (const auto& x : e) EXPECT_EQ(x.multiplicity, 5);
}

// Every reported point is a zero of the field.
TEST(Equilibria, ReportedPointsAreZeros) {
  std::mt19937_64 rng(31);
  for (int n = 4; n <= 9; ++n)
    for (int trial = 0; trial < 30; ++trial)
      for (bool ham : {true, false}) {
        const auto p = normalize_rotation(test::random_params(rng, n, ham)).params;
        for (const auto& e : peripheral_equilibria(p).equilibria) {
          if (!e.refined) continue;
          const auto v = eval_complex(p, std::polar(e.r, e.phi));
          EXPECT_LT(std::abs(v), 1e-9 * (1 + std::pow(e.r, n))) << "n=" << n << " r=" << e.r;
        }
      }
}

// P- roots r^2 = 1.25, 5; P+ roots r^2 = (1 -+ sqrt(0.84)) / 0.08.
TEST(Equilibria, TwoRingRadiiFromQuadraticFormula) {
  const auto res = peripheral_equilibria(test::two_ring_n6());
  ASSERT_EQ(res.equilibria.size(), 4u);
  const double want[] = {std::sqrt((1 - std::sqrt(0.84)) / 0.08), std::sqrt(1.25), std::sqrt(5.0),
                         std::sqrt((1 + std::sqrt(0.84)) / 0.08)};
  const Kind kinds[] = {Kind::Saddle, Kind::Center, Kind::Saddle, Kind::Center};
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(res.equilibria[i].r, want[i], 1e-10);
    EXPECT_EQ(res.equilibria[i].kind, kinds[i]);
  }
}

// Non-Hamiltonian spirals: trace = divergence = 2 eps1 + 4 a1 r^2 for n = 5.
TEST(Equilibria, SpiralTraceIsDivergence) {
  const auto p = test::params(5, 0.005, 1, {-0.01}, {-1}, 0.1);
  const auto res = peripheral_equilibria(p);
  ASSERT_FALSE(res.equilibria.empty());
  int spirals = 0;
  for (const auto& e : res.equilibria) {
    EXPECT_NEAR(e.eig.trace, 2 * p.eps1 + 4 * p.a1[0] * e.r * e.r, 1e-10);
    EXPECT_NEAR(e.eig.trace, divergence(p, e.r), 1e-10);
    if (is_focal(e.kind)) {
      ++spirals;
      EXPECT_EQ(e.kind, e.eig.trace < 0 ? Kind::StableSpiral : Kind::UnstableSpiral);
    }
  }
  EXPECT_EQ(spirals, 1);
}

TEST(Equilibria, WeakDampingSpiralIsStable) {
  const auto res = peripheral_equilibria(test::params(5, 0.005, 1, {-0.01}, {-1}, 0.1));
  ASSERT_EQ(res.equilibria.size(), 3u);
  EXPECT_EQ(res.equilibria[1].kind, Kind::StableSpiral);
  EXPECT_NEAR(res.equilibria[1].eig.trace, -0.0347, 5e-4);
}

TEST(Equilibria, StrongGrowthSpiralIsUnstable) {
  const auto res = peripheral_equilibria(test::params(5, 0.005, -0.1, {0.045}, {1}, 1));
  int unstable = 0;
  for (const auto& e : res.equilibria) unstable += e.kind == Kind::UnstableSpiral;
  EXPECT_EQ(unstable, 1);
}

TEST(Equilibria, SymmetryCopiesAreEvenlySpaced) {
  const auto rep = peripheral_equilibria(test::three_root_quintic()).equilibria[1];
  const auto copies = symmetry_copies(rep, 5);
  ASSERT_EQ(copies.size(), 5u);
  for (int j = 0; j < 5; ++j) {
    EXPECT_NEAR(copies[j].r, rep.r, 0.0);
    EXPECT_NEAR(wrap_angle(copies[j].phi - rep.phi - 2 * kPi * j / 5 + 1e-9), 1e-9, 1e-12);
    EXPECT_EQ(copies[j].kind, rep.kind);
  }
}

TEST(Equilibria, OriginStability) {
  EXPECT_EQ(origin_analysis(test::three_root_quintic()).stability, "center");
  EXPECT_EQ(origin_analysis(test::three_root_quintic()).rotation, -1);
  EXPECT_EQ(origin_analysis(test::params(5, 0.0001, 0.1, {0}, {-0.1}, 0)).stability, "weakly unstable");
  EXPECT_EQ(origin_analysis(test::params(5, -0.5, 0.1, {0}, {-0.1}, 0)).stability, "stable");
  const auto deg = origin_analysis(test::params(6, 0, 0, {}, {1, 0}, 0.5));
  EXPECT_EQ(deg.stability, "degenerate");
  EXPECT_EQ(deg.eq.kind, Kind::Weak);
}

TEST(Equilibria, QuasiEquilibriumCircle) {
  const auto r = quasi_equilibria(test::params(5, 0.0001, 0.1, {0}, {-0.1}, 0));
  ASSERT_EQ(r.size(), 1u);
  EXPECT_NEAR(r[0], 1.0, 1e-12);
}

// P1 = 1e-4 - 0.01 r^2 vanishes at r = 0.1 and decreases through it.
TEST(Equilibria, RadialLimitCycle) {
  const auto c = radial_limit_cycles(test::params(5, 0.0001, 0.1, {-0.01}, {-0.1}, 0.01));
  ASSERT_EQ(c.size(), 1u);
  EXPECT_NEAR(c[0].r, 0.1, 1e-12);
  EXPECT_EQ(c[0].stability, CycleStability::Stable);
  EXPECT_TRUE(c[0].approximate);
}

TEST(Equilibria, CircleOfEquilibriaIsDegenerate) {
  const auto res = peripheral_equilibria(test::params(4, 0, 1, {}, {-1}, 0));
  EXPECT_TRUE(res.degenerate);
  EXPECT_TRUE(res.equilibria.empty());
}

// On the tangency curve a2^3 = -27 eps2 B^2 / 4 the P+ root is double.
TEST(Equilibria, TangencyIsFlagged) {
  const double a2 = std::cbrt(27.0 * 4.0 * 9.0 / 4.0);
  const auto a = analyze(test::params(5, 0, -4, {}, {a2}, 3));
  EXPECT_TRUE(a.degenerate());
}

TEST(Equilibria, HamiltonianAlternation) {
  // Along each ray, consecutive roots alternate between saddles and centers.
  std::mt19937_64 rng(32);
  for (int n = 5; n <= 11; n += 2)
    for (int trial = 0; trial < 200; ++trial) {
      const auto p = normalize_rotation(test::random_params(rng, n, true)).params;
      if (analyze(p).degenerate()) continue;
      const auto res = peripheral_equilibria(p);
      for (Ray ray : {Ray::Plus, Ray::Minus}) {
        std::vector<Kind> k;
        for (const auto& e : res.equilibria)
          if (e.ray == ray) k.push_back(e.kind);
        for (std::size_t i = 1; i < k.size(); ++i) EXPECT_NE(k[i], k[i - 1]);
        for (auto x : k) EXPECT_TRUE(x == Kind::Saddle || x == Kind::Center);
      }
    }
}

TEST(Equilibria, KindFromJacobian) {
  EXPECT_EQ(kind_from_jacobian(eigen(Matrix2{{{1, 0}, {0, -1}}}), 1, false, 1e-8), Kind::Saddle);
  EXPECT_EQ(kind_from_jacobian(eigen(Matrix2{{{-1, 0}, {0, -2}}}), 2, false, 1e-8), Kind::StableNode);
  EXPECT_EQ(kind_from_jacobian(eigen(Matrix2{{{1, -3}, {3, 1}}}), 3, false, 1e-8), Kind::UnstableSpiral);
  EXPECT_EQ(kind_from_jacobian(eigen(Matrix2{{{0, -3}, {3, 0}}}), 3, true, 1e-8), Kind::Center);
}
