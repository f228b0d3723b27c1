#include <gtest/gtest.h>

#include "hecke/checks.hpp"
#include "hecke/serialize.hpp"
#include "support.hpp"

using namespace hecke;
using hecke::test::q;

TEST(Json, Rationals) {
  EXPECT_EQ(rational_to_json(q(-3, 6)), "-1/2");
  EXPECT_EQ(rational_from_json(json("4/6")), q(2, 3));
  EXPECT_EQ(rational_from_json(json(7)), q(7));
  EXPECT_THROW(rational_from_json(json(0.5)), ConfigError);
  EXPECT_THROW(rational_from_json(json("1/x")), DomainError);
  EXPECT_THROW(bigint_from_json(json("1/2")), ConfigError);
  // Exact beyond 64 bits.
  Rational big = make_rational(pow(BigInt(10), 30) + 1, pow(BigInt(3), 40));
  EXPECT_EQ(rational_from_json(rational_to_json(big)), big);
}

TEST(Json, RoundTrips) {
  BostConnes bc;
  std::mt19937_64 rng(101);
  const std::vector<BigInt> levels{1, 2, 3, 4, 6};
  for (int i = 0; i < 20; ++i) {
    auto a = checks::random_group_algebra(bc, rng, levels, 3);
    EXPECT_EQ(group_algebra_from_json(bc, to_json(bc, a)), a);
    auto f = checks::random_locfun(bc, rng, levels, 3);
    auto f2 = locfun_from_json(bc, to_json(bc, f));
    EXPECT_EQ(f2.level(), f.level());
    EXPECT_EQ(f2.values(), f.values());
    auto g = checks::random_group_element(bc, rng, levels);
    EXPECT_EQ(group_from_json(bc, to_json(bc, g)), g);
    auto d = checks::random_crossed(bc, rng, levels);
    EXPECT_TRUE(equal(bc, crossed_from_json(bc, to_json(bc, d)), d));
    auto x = truncated(bc, checks::pick(rng, levels), random_element(bc, rng, levels));
    EXPECT_EQ(truncated_from_json(bc, to_json(bc, x)), x);
    auto v = random_sparse_vector(bc, rng, levels, 3);
    EXPECT_EQ(sparse_vector_from_json(bc, to_json(bc, v)).coeffs(), v.coeffs());
  }
  auto mf = test::diag_family();
  auto y = truncated(mf, MatrixFamily::Semi{1, 2}, test::vec(7, -3, 10));
  EXPECT_EQ(truncated_from_json(mf, to_json(mf, y)), y);
  auto adele = mu(bc, truncated(bc, BigInt(12), q(5, 6)));
  auto back = adele_from_json(to_json(adele));
  EXPECT_EQ(back.m, adele.m);
  EXPECT_EQ(back.components, adele.components);
}

TEST(Json, ElementValidation) {
  auto mf = test::diag_family();
  EXPECT_THROW(element_from_json(mf, json::array({"1"})), ConfigError);
  EXPECT_THROW(semi_from_json(mf, json::array({-1, 0})), DomainError);
}

TEST(Json, Families) {
  EXPECT_TRUE(std::holds_alternative<BostConnes>(family_from_json({{"family", "bost-connes"}})));
  auto p = family_from_json({{"family", "padic"}, {"p", 5}});
  ASSERT_TRUE(std::holds_alternative<Padic>(p));
  EXPECT_EQ(std::get<Padic>(p).prime(), 5);
  json m = {{"family", "matrix"}, {"F", {{2, 0}, {0, 3}}}, {"M", {{5, 0}, {0, 1}}}};
  auto mf = family_from_json(m);
  ASSERT_TRUE(std::holds_alternative<MatrixFamily>(mf));
  EXPECT_EQ(std::get<MatrixFamily>(mf).index({1, 1}), 30);
  EXPECT_EQ(family_from_json(family_to_json(mf)).index(), 2u);
  EXPECT_EQ(family_to_json(family_from_json(family_to_json(mf))), family_to_json(mf));

  EXPECT_THROW(family_from_json({{"family", "adelic"}}), ConfigError);
  EXPECT_THROW(family_from_json({{"family", "padic"}, {"p", 6}}), ConfigError);
  EXPECT_THROW(family_from_json({{"family", "matrix"}, {"F", {{2, 0}, {0, 3}}}}), ConfigError);
  EXPECT_THROW(family_from_json({{"family", "matrix"}, {"F", {{2, 0}}}, {"M", {{5, 0}, {0, 1}}}}), ConfigError);
  EXPECT_THROW(family_from_json({{"family", "matrix"}, {"F", {{2, 0}, {0, 2}}}, {"M", {{4, 0}, {0, 1}}}}),
               ConfigError);
}
