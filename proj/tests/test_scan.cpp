#include <gtest/gtest.h>

#include <cmath>

#include "meander/scan.hpp"
#include "support.hpp"

using namespace meander;

TEST(Scan, SingleTransitionAcrossBEqualsA2) {
  const auto res = scan(test::params(4, 0, 1, {}, {1}, 0), {{"b1", 0.0, 2.0, 41}});
  ASSERT_EQ(res.cells.size(), 41u);
  ASSERT_EQ(res.transitions.size(), 1u);
  EXPECT_LE(res.transitions[0].lo, 1.0);
  EXPECT_GE(res.transitions[0].hi, 1.0);
  EXPECT_NEAR(res.transitions[0].hi - res.transitions[0].lo, 0.1, 1e-12);  // across the degenerate B = 1 cell
}

TEST(Scan, RootCountDropsAcrossBEqualsMinusA2) {
  const auto res = scan(test::params(4, 0, 1, {}, {-1}, 0), {{"b1", 0.0, 2.0, 41}});
  ASSERT_FALSE(res.transitions.empty());
  bool found = false;
  for (const auto& t : res.transitions) {
    if (t.lo <= 1.0 && t.hi >= 1.0) found = true;
    EXPECT_GT(t.lo, 0.0);  // the B = 0 circle of equilibria is skipped
  }
  EXPECT_TRUE(found);
  EXPECT_TRUE(res.cells[0].degenerate());
  EXPECT_TRUE(res.cells[20].degenerate());
}

// Ring birth for n = 5, eps2 = -4, B = 3 happens where a2^3 = 243.
TEST(Scan, RingBirthAtTangency) {
  const double a_c = std::cbrt(243.0);
  const auto res = scan(test::params(5, 0, -4, {}, {0}, 3), {{"a2_1", 5.0, 8.0, 31}});
  std::vector<Transition> rings;
  for (const auto& t : res.transitions)
    if (t.before.find("rings=0") != std::string::npos && t.after.find("rings=1") != std::string::npos) rings.push_back(t);
  ASSERT_EQ(rings.size(), 1u);
  EXPECT_LE(rings[0].lo, a_c);
  EXPECT_GE(rings[0].hi, a_c);
}

TEST(Scan, TwoAxes) {
  const auto res = scan(test::params(4, 0, 1, {}, {1}, 0), {{"a2_1", -1.5, 1.5, 4}, {"b1", 0.25, 2.0, 8}});
  EXPECT_EQ(res.cells.size(), 32u);
  EXPECT_EQ(res.cells[9].index, (std::vector<int>{1, 1}));
  EXPECT_NEAR(res.cells[9].params.a2[0], -0.5, 1e-15);
  EXPECT_NEAR(res.cells[9].params.b1, 0.5, 1e-15);
  EXPECT_FALSE(res.transitions.empty());
}

TEST(Scan, ThreadCountDoesNotChangeResult) {
  const auto base = test::params(5, 0, -4, {}, {0}, 3);
  const auto a = scan(base, {{"a2_1", -2.0, 8.0, 11}}, {true, 1});
  const auto b = scan(base, {{"a2_1", -2.0, 8.0, 11}}, {true, 3});
  ASSERT_EQ(a.cells.size(), b.cells.size());
  for (std::size_t i = 0; i < a.cells.size(); ++i) EXPECT_EQ(a.cells[i].signature(), b.cells[i].signature());
  EXPECT_EQ(a.transitions.size(), b.transitions.size());
}

TEST(Scan, RejectsBadGrids) {
  const auto base = test::three_root_quintic();
  EXPECT_THROW(scan(base, {{"b1", 0, 1, 0}}), std::invalid_argument);
  EXPECT_THROW(scan(base, {}), std::invalid_argument);
  EXPECT_THROW(scan(base, {{"zeta", 0, 1, 3}}), std::invalid_argument);
  EXPECT_THROW(scan(base, {{"a2_2", 0, 1, 3}}), std::invalid_argument);
  EXPECT_THROW(scan(base, {{"b1", 0, NAN, 3}}), std::invalid_argument);
  EXPECT_THROW(scan(base, {{"b1", 0, 1, 2}, {"b2", 0, 1, 2}, {"eps1", 0, 1, 2}}), std::invalid_argument);
}

TEST(Scan, SingleCellAxis) {
  const auto res = scan(test::three_root_quintic(), {{"b1", 3.0, 5.0, 1}});
  ASSERT_EQ(res.cells.size(), 1u);
  EXPECT_EQ(res.cells[0].params.b1, 3.0);
  EXPECT_TRUE(res.transitions.empty());
}
