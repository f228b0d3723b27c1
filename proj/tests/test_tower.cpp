#include <gtest/gtest.h>

#include "hecke/checks.hpp"
#include "support.hpp"

using namespace hecke;
using hecke::test::q;

TEST(Project, Examples) {
  Padic pa(2);
  auto x = project(pa, embed_j(pa, q(3)), std::int64_t{2});
  EXPECT_EQ(x.level, 2);
  EXPECT_EQ(x.coset, q(3));
  BostConnes bc;
  auto y = project(bc, embed_j(bc, q(1, 3)), BigInt(6));
  EXPECT_EQ(y.coset, q(1, 3));
  EXPECT_EQ(project(bc, embed_j(bc, q(13, 3)), BigInt(4)).coset, q(1, 3));
}

TEST(Project, NeedsAFinerLevel) {
  BostConnes bc;
  auto x = truncated(bc, BigInt(6), q(1, 3));
  EXPECT_EQ(project(bc, x, BigInt(3)).coset, q(1, 3));
  EXPECT_THROW(project(bc, x, BigInt(4)), PrecisionError);
}

TEST(Theta, Examples) {
  BostConnes bc;
  auto x = theta_apply(bc, BigInt(2), truncated(bc, BigInt(6), q(1, 3)));
  EXPECT_EQ(x.level, 3);
  EXPECT_EQ(x.coset, q(1, 6));
  auto back = theta_inv_apply(bc, BigInt(2), x);
  EXPECT_EQ(back.level, 6);
  EXPECT_EQ(back.coset, q(1, 3));

  Padic pa(2);
  auto y = theta_apply(pa, std::int64_t{1}, truncated(pa, std::int64_t{3}, q(1)));
  EXPECT_EQ(y.level, 2);
  EXPECT_EQ(y.coset, q(1, 2));
}

TEST(Theta, ShallowInputIsAPrecisionError) {
  BostConnes bc;
  EXPECT_THROW(theta_apply(bc, BigInt(4), truncated(bc, BigInt(6), q(1))), PrecisionError);
}

TEST(InK, IntegersAreInK) {
  BostConnes bc;
  EXPECT_TRUE(in_K(bc, truncated(bc, BigInt(5), q(3))));
  EXPECT_FALSE(in_K(bc, truncated(bc, BigInt(5), q(1, 5))));
}

TEST(Add, LevelsMustAgree) {
  BostConnes bc;
  auto a = truncated(bc, BigInt(6), q(1, 2));
  EXPECT_EQ(add(bc, a, a).coset, q(1));
  EXPECT_THROW(add(bc, a, truncated(bc, BigInt(4), q(0))), DomainError);
  EXPECT_EQ(add(bc, a, negate(bc, a)).coset, q(0));
}

TEST(Project, TransitiveOnBostConnesDivisorChains) {
  // Independent oracle: reduce the rational representative modulo each level.
  BostConnes bc;
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-200, 200), den(1, 30);
  for (int i = 0; i < 200; ++i) {
    Rational r = q(num(rng), den(rng));
    const long a = r.get_num().get_si(), b = r.get_den().get_si();
    for (long s : {12L, 36L, 60L})
      for (long t = 1; t <= s; ++t) {
        if (s % t) continue;
        auto via = project(bc, truncated(bc, BigInt(s), r), BigInt(t));
        long k = a / (b * t);
        if (a % (b * t) != 0 && a < 0) --k;
        EXPECT_EQ(via.coset, q(a - k * b * t, b));
      }
  }
}

class TowerProperties : public ::testing::TestWithParam<int> {};

TEST_P(TowerProperties, Laws) {
  std::mt19937_64 rng(GetParam());
  BostConnes bc;
  EXPECT_EQ(checks::tower_laws(bc, checks::test_semis(bc, 3), rng, 40).deviation, 0);
  Padic pa(5);
  EXPECT_EQ(checks::tower_laws(pa, checks::test_semis(pa, 3), rng, 40).deviation, 0);
  auto rf = test::rotation_family();
  EXPECT_EQ(checks::tower_laws(rf, checks::test_semis(rf, 2), rng, 40).deviation, 0);
}

TEST_P(TowerProperties, JIsInjectiveForExpandingFamilies) {
  std::mt19937_64 rng(GetParam());
  BostConnes bc;
  EXPECT_EQ(checks::j_injective(bc, checks::test_semis(bc, 3), rng, 40).deviation, 0);
  auto df = test::diag_family();
  EXPECT_EQ(checks::j_injective(df, checks::test_semis(df, 3), rng, 40).deviation, 0);
}

INSTANTIATE_TEST_SUITE_P(Seeds, TowerProperties, ::testing::Values(11, 12, 13));
