#include <gtest/gtest.h>

#include "hecke/checks.hpp"
#include "support.hpp"

using namespace hecke;
using hecke::test::q;

namespace {

using Fn = LocFun<BostConnes>;

// (f * g)(z) as a sum over the level-`level` cylinders w + level Z-hat with w in
// (1/12)Z, each of mass 1/level. Both inputs are evaluated pointwise by
// reduction, with no refinement or join logic. Valid when every support
// coset of f and g has denominator dividing 12.
ComplexRational naive_convolution_at(const BostConnes& bc, const Fn& f, const Fn& g, long level, const Rational& z) {
  ComplexRational total;
  for (long k = 0; k < level * 12; ++k) {
    Rational w = q(k, 12);
    auto fw = f.value_on(bc.canonical(w, f.level()));
    auto gz = g.value_on(bc.canonical(z - w, g.level()));
    total += fw * gz;
  }
  return ComplexRational(q(1, level)) * total;
}

} // namespace

TEST(LocFun, RefineChiK) {
  BostConnes bc;
  auto f = refine(bc, chi_K<ComplexRational>(bc), BigInt(2));
  EXPECT_EQ(f.level(), 2);
  EXPECT_EQ(f.values().size(), 2u);
  EXPECT_EQ(f.value_on(q(0)), ComplexRational(1));
  EXPECT_EQ(f.value_on(q(1)), ComplexRational(1));
  EXPECT_THROW(refine(bc, f, BigInt(3)), PrecisionError);
}

TEST(LocFun, ConvolutionExamples) {
  BostConnes bc;
  auto k = chi_K<ComplexRational>(bc);
  EXPECT_TRUE(equal(bc, convolve(bc, k, k), k));
  auto a = embed_i(bc, delta(bc, q(1, 3)));
  auto b = embed_i(bc, delta(bc, q(1, 2)));
  EXPECT_TRUE(equal(bc, convolve(bc, a, b), embed_i(bc, delta(bc, q(5, 6)))));
  EXPECT_TRUE(convolve(bc, a, Fn(BigInt(1))).is_zero());
}

TEST(LocFun, EmbedAndRestrict) {
  BostConnes bc;
  EXPECT_TRUE(equal(bc, embed_i(bc, unit<ComplexRational>(bc)), chi_K<ComplexRational>(bc)));
  auto f = embed_i(bc, delta(bc, q(1, 2)));
  EXPECT_EQ(f.level(), 1);
  EXPECT_EQ(f.values().size(), 1u);
  EXPECT_EQ(f.value_on(q(1, 2)), ComplexRational(1));
  auto x = delta(bc, q(2, 5), ComplexRational(q(1), q(3)));
  EXPECT_EQ(restrict_to_quotient(bc, embed_i(bc, x)), x);
  EXPECT_THROW(restrict_to_quotient(bc, refine(bc, f, BigInt(2))), PrecisionError);
}

TEST(ThetaStar, Examples) {
  BostConnes bc;
  auto f = theta_star_inv(bc, BigInt(2), embed_i(bc, delta(bc, q(0))));
  EXPECT_TRUE(equal(bc, f, indicator(bc, BigInt(2), q(0), ComplexRational(2))));
  auto g = embed_i(bc, delta(bc, q(1, 3)));
  EXPECT_TRUE(equal(bc, theta_star(bc, BigInt(1), g), g));
  EXPECT_TRUE(equal(bc, theta_star(bc, BigInt(2), f), embed_i(bc, delta(bc, q(0)))));
}

TEST(ThetaStar, PreservesIntegral) {
  BostConnes bc;
  auto g = embed_i(bc, delta(bc, q(1, 3), ComplexRational(5)));
  for (long s : {2L, 3L, 6L}) {
    EXPECT_EQ(integrate(bc, theta_star(bc, BigInt(s), g)), integrate(bc, g));
    EXPECT_EQ(integrate(bc, theta_star_inv(bc, BigInt(s), g)), integrate(bc, g));
  }
}

TEST(Convolution, AgreesWithPointwiseSum) {
  BostConnes bc;
  std::mt19937_64 rng(31);
  const std::vector<BigInt> levels{1, 2, 3, 4, 6};
  for (int trial = 0; trial < 20; ++trial) {
    auto f = checks::random_locfun(bc, rng, levels, 3);
    auto g = checks::random_locfun(bc, rng, levels, 3);
    auto h = convolve(bc, f, g);
    // Every level above divides 12, so level 12 cylinders resolve all three functions.
    for (long k = 0; k < 144; k += 5) {
      Rational z = q(k, 12);
      EXPECT_EQ(evaluate(bc, h, truncated(bc, BigInt(12), z)), naive_convolution_at(bc, f, g, 12, z)) << trial;
    }
  }
}

TEST(Involution, Examples) {
  BostConnes bc;
  auto f = indicator(bc, BigInt(3), q(1), ComplexRational(q(2), q(1)));
  auto fs = involution(bc, f);
  EXPECT_EQ(fs.value_on(q(2)), ComplexRational(q(2), q(-1)));
  EXPECT_TRUE(equal(bc, involution(bc, fs), f));
}

class AutodilProperties : public ::testing::TestWithParam<int> {};

TEST_P(AutodilProperties, ConvolutionHomomorphismAndIntertwining) {
  BostConnes bc;
  auto semis = checks::test_semis(bc, 2);
  auto gens = checks::generators_up_to(bc, semis);
  EXPECT_EQ(checks::convolution_homomorphism(bc, gens).deviation, 0);
  EXPECT_EQ(checks::intertwining(bc, semis, gens).deviation, 0);
  Padic pa(3);
  auto ps = checks::test_semis(pa, 2);
  EXPECT_EQ(checks::intertwining(pa, ps, checks::generators_up_to(pa, ps)).deviation, 0);
}

TEST_P(AutodilProperties, MinimalityAndThetaAction) {
  std::mt19937_64 rng(GetParam());
  BostConnes bc;
  auto semis = checks::test_semis(bc, 2);
  EXPECT_EQ(checks::minimality(bc, semis, rng, 10).deviation, 0);
  EXPECT_EQ(checks::theta_star_action(bc, semis, rng, 10).deviation, 0);
  auto rf = test::rotation_family();
  auto rs = checks::bounded_semis(rf, 2, 12);
  EXPECT_EQ(checks::minimality(rf, rs, rng, 6).deviation, 0);
  EXPECT_EQ(checks::theta_star_action(rf, rs, rng, 6).deviation, 0);
}

INSTANTIATE_TEST_SUITE_P(Seeds, AutodilProperties, ::testing::Values(41, 42));
