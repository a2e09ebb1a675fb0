#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "meander/equilibria.hpp"
#include "meander/polynomial.hpp"
#include "support.hpp"

using namespace meander;

namespace {

RadialPolynomial from_roots(const std::vector<double>& roots, double lead = 1.0) {
  RadialPolynomial q{{lead}, PolyTag::F};
  for (double r : roots) q = q * RadialPolynomial{{-r, 1.0}, PolyTag::F};
  return q;
}

std::vector<double> values(const RootSet& s) {
  std::vector<double> v;
  for (const auto& r : s.roots) v.push_back(r.value);
  return v;
}

}  // namespace

TEST(Polynomial, HornerMatchesDirectSum) {
  RadialPolynomial q{{1.0, -2.0, 0.5, 3.0}, PolyTag::P0};
  EXPECT_DOUBLE_EQ(q(2.0), 1.0 - 4.0 + 2.0 + 24.0);
  EXPECT_EQ(q.degree(), 3);
  EXPECT_EQ(q.derivative().coeffs, (std::vector<double>{-2.0, 1.0, 9.0}));
}

TEST(Polynomial, DescartesBound) {
  EXPECT_EQ(descartes_bound({{-4, 0, 7, -3}, PolyTag::Pplus}), 2);
  EXPECT_EQ(descartes_bound({{-4, 0, 7, 3}, PolyTag::Pminus}), 1);
  EXPECT_EQ(descartes_bound({{1, 0, 1}, PolyTag::P0}), 0);
  EXPECT_THROW(descartes_bound({{0, 0}, PolyTag::P0}), std::invalid_argument);
}

// -3r^3 + 7r^2 - 4 = -(r-1)(r-2)(3r+2);  3r^3 + 7r^2 - 4 = (r+1)(r+2)(3r-2).
TEST(Polynomial, FactoredCubics) {
  const auto plus = positive_roots({{-4, 0, 7, -3}, PolyTag::Pplus});
  ASSERT_EQ(plus.size(), 2u);
  EXPECT_NEAR(plus.roots[0].value, 1.0, 1e-13);
  EXPECT_NEAR(plus.roots[1].value, 2.0, 1e-13);
  const auto minus = positive_roots({{-4, 0, 7, 3}, PolyTag::Pminus});
  ASSERT_EQ(minus.size(), 1u);
  EXPECT_NEAR(minus.roots[0].value, 2.0 / 3.0, 1e-13);
  EXPECT_FALSE(plus.ill_conditioned);
}

TEST(Polynomial, DoubleRootHasMultiplicityTwo) {
  const auto s = positive_roots(from_roots({1.0, 1.0, -3.0}));
  ASSERT_EQ(s.size(), 1u);
  EXPECT_NEAR(s.roots[0].value, 1.0, 1e-7);
  EXPECT_EQ(s.roots[0].multiplicity, 2);
  EXPECT_TRUE(s.has_multiple());
}

TEST(Polynomial, ClusteredRootsAreFlagged) {
  const auto s = positive_roots(from_roots({1.0, 1.0 + 1e-12, 4.0}));
  EXPECT_TRUE(s.ill_conditioned || s.has_multiple());
}

TEST(Polynomial, RejectsNonPositiveTolerance) {
  EXPECT_THROW(positive_roots({{1, -1}, PolyTag::P0}, 0.0), std::invalid_argument);
}

TEST(Polynomial, NoRootsAtOrBelowZero) {
  EXPECT_EQ(positive_roots(from_roots({-1.0, -2.0, 0.0})).size(), 0u);
}

// Random well-separated roots are recovered.
TEST(Polynomial, RecoversKnownRoots) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.1, 5.0);
  std::uniform_int_distribution<int> cnt(1, 6);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> roots;
    const int k = cnt(rng);
    while (static_cast<int>(roots.size()) < k) {
      const double r = u(rng);
      if (std::all_of(roots.begin(), roots.end(), [&](double o) { return std::abs(o - r) > 0.05; })) roots.push_back(r);
    }
    std::vector<double> all = roots;
    all.push_back(-1.5);  // a negative root must not show up
    std::sort(roots.begin(), roots.end());
    const auto got = values(positive_roots(from_roots(all, trial % 2 ? 2.0 : -0.5)));
    ASSERT_EQ(got.size(), roots.size()) << "trial " << trial;
    for (std::size_t i = 0; i < roots.size(); ++i) EXPECT_NEAR(got[i], roots[i], 1e-9 * (1 + roots[i]));
  }
}

TEST(Polynomial, RootCountNeverExceedsDescartes) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 2000; ++trial) {
    RadialPolynomial q{{}, PolyTag::F};
    for (int i = 0; i < 8; ++i) q.coeffs.push_back(u(rng));
    int count = 0;
    for (const auto& r : positive_roots(q).roots) count += r.multiplicity;
    EXPECT_LE(count, descartes_bound(q));
    EXPECT_EQ((descartes_bound(q) - count) % 2, 0) << "trial " << trial;
  }
}

// F = P+ * P- when the field is Hamiltonian.
TEST(Polynomial, FactorsIntoPlusMinusWhenHamiltonian) {
  std::mt19937_64 rng(13);
  for (int n = 4; n <= 11; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      auto p = normalize_rotation(test::random_params(rng, n, true)).params;
      const auto h = build_radial_polynomials(p);
      const auto prod = h.plus * h.minus;
      const auto f = f_polynomial(p);
      ASSERT_GE(f.coeffs.size(), prod.coeffs.size());
      for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
        const double want = i < prod.coeffs.size() ? prod.coeffs[i] : 0.0;
        EXPECT_NEAR(f.coeffs[i], want, 1e-14);
      }
    }
  }
}

TEST(Polynomial, HamiltonianPolynomialsNeedNormalizedHamiltonianParams) {
  EXPECT_THROW(build_radial_polynomials(test::params(5, 0.1, 1, {}, {1}, 1)), std::invalid_argument);
  EXPECT_THROW(build_radial_polynomials(test::params(5, 0, 1, {}, {1}, -1)), std::invalid_argument);
}
