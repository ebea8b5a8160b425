#include <gtest/gtest.h>

#include "oracles.hpp"
#include "polymod/cone.hpp"

using namespace polymod;

namespace {

LengthVector R(const char* s) { return LengthVector::parse(s); }

// Relevant subsets of size >= 3 counted directly from the definition.
int count_relevant_big(const LengthVector& r) {
  const int n = r.size();
  const Rational L = r.perimeter();
  int count = 0;
  for (std::uint64_t b = 1; b < (1ULL << n); ++b) {
    const int k = std::popcount(b);
    if (k < 3 || k > n - 2) continue;
    Rational s = 0;
    for (int i = 0; i < n; ++i)
      if ((b >> i) & 1) s += r[i];
    if (2 * s <= L) ++count;
  }
  return count;
}

}  // namespace

TEST(Central, Examples) {
  EXPECT_TRUE(central_contains(LengthVector::equilateral(5)).contains);
  auto far = central_contains(R("1,1,1,1,3.5"));
  EXPECT_FALSE(far.contains);
  EXPECT_FALSE(far.violated.empty());
  auto ray = central_contains(LengthVector::equilateral(6));
  EXPECT_FALSE(ray.contains);
  EXPECT_EQ(ray.walls_on.size(), 10u);
  EXPECT_THROW(central_contains(LengthVector::equilateral(4)), InvalidArgument);
  EXPECT_TRUE(central_contains(default_base_point(8)).contains);
}

TEST(Central, BaseOnWallRejected) {
  EXPECT_THROW(central_contains(LengthVector::equilateral(6), LengthVector::equilateral(6)), InvalidArgument);
}

TEST(Theta, LinearOnTheChamber) {
  const auto a = R("1,1,1,1,1");
  const auto b = R("11/10,1,1,1,9/10");
  std::vector<Rational> s;
  for (int i = 0; i < 5; ++i) s.push_back(a[i] + b[i]);
  const LengthVector ab(s);
  ASSERT_TRUE(central_contains(ab).contains);
  EXPECT_EQ(theta(a) + theta(b), theta(ab));
  EXPECT_EQ(Rational(7, 3) * theta(b), theta(b.scaled(Rational(7, 3))));
  EXPECT_THROW(theta(R("1,1,1,1,3.5")), InvalidArgument);
}

TEST(Param, Dimensions) {
  EXPECT_EQ(param_dim(5), 5);
  EXPECT_EQ(param_dim(6), 16);
  EXPECT_EQ(param_dim(7), 42);
  EXPECT_EQ(count_relevant_big(LengthVector::equilateral(5)), 0);
  EXPECT_EQ(count_relevant_big(default_base_point(6)), 10);
  EXPECT_EQ(count_relevant_big(LengthVector::equilateral(7)), 35);
  EXPECT_THROW(param_dim(2), InvalidArgument);
}

TEST(Param, DimensionIdentityOnSamples) {
  for (int n = 5; n <= 9; ++n)
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      auto p = param_sample(n, seed);
      ASSERT_TRUE(param_contains(p));
      EXPECT_EQ(n + count_relevant_big(p.r), param_dim(n)) << n << " " << seed;
      EXPECT_EQ(static_cast<int>(p.eps.entries().size()), count_relevant_big(p.r));
    }
}

TEST(Param, SamplesAreReproducible) {
  auto a = param_sample(7, 3);
  auto b = param_sample(7, 3);
  EXPECT_EQ(a.r, b.r);
  EXPECT_EQ(a.eps.entries(), b.eps.entries());
}

TEST(Param, ConvexAlongMidpoints) {
  for (int n = 5; n <= 8; ++n)
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      auto p = param_sample(n, 2 * seed);
      auto q = param_sample(n, 2 * seed + 1);
      std::vector<Rational> m;
      for (int i = 0; i < n; ++i) m.push_back((p.r[i] + q.r[i]) / 2);
      ParamPoint mid{LengthVector(m), {}};
      for (auto [J, e] : p.eps.entries()) mid.eps.set(J, (e + q.eps.at(J)) / 2);
      EXPECT_TRUE(param_contains(mid)) << n << " " << seed;
    }
}

TEST(Param, MembershipBoundaries) {
  auto p = param_sample(7, 1);
  ASSERT_FALSE(p.eps.entries().empty());
  auto [J, e] = p.eps.entries().front();
  ParamPoint q = p;
  q.eps.set(J, 2 * p.r.min_over(J));
  EXPECT_FALSE(param_contains(q));
  ParamPoint missing{p.r, {}};
  EXPECT_FALSE(param_contains(missing));
  ParamPoint outside{R("1,1,1,1,1,1,5"), {}};
  EXPECT_FALSE(param_contains(outside));
}

TEST(NearestWall, MarginShrinksTowardWall) {
  // Segment from the center of the pentagon cone toward (1,1,1,1,2), which
  // sits on the walls of the triples inside {1..4}.
  const auto a = LengthVector::equilateral(5);
  const auto b = R("1,1,1,1,2");
  Rational prev = nearest_wall(a).margin;
  for (int k = 1; k <= 10; ++k) {
    const Rational t = 1 - Rational(1, 1 << k);
    std::vector<Rational> v;
    for (int i = 0; i < 5; ++i) v.push_back((1 - t) * a[i] + t * b[i]);
    const LengthVector r(v);
    const Rational m = nearest_wall(r).margin;
    EXPECT_LT(m, prev);
    prev = m;
  }
  EXPECT_LT(prev, Rational(1, 1000));
  EXPECT_EQ(nearest_wall(b).margin, 0);
}
