#include <gtest/gtest.h>

#include "hecke/checks.hpp"
#include "support.hpp"

using namespace hecke;
using hecke::test::q;

namespace {

using X = CrossedElement<BostConnes>;
using Vec = SparseVector<BostConnes>;

Vec xi(long num, long den = 1, Complex c = 1.0) { return Vec::basis(q(num, den), c); }

} // namespace

TEST(Crossed, IsometriesAndProjection) {
  BostConnes bc;
  auto p = projection_p(bc);
  EXPECT_TRUE(equal(bc, multiply(bc, p, p), p));
  for (long s : {2L, 3L, 6L}) {
    auto v = isom_v(bc, BigInt(s));
    EXPECT_TRUE(equal(bc, multiply(bc, involution(bc, v), v), p)) << s;
    // v_s v_s^* is a proper subprojection of p
    auto e = multiply(bc, v, involution(bc, v));
    EXPECT_TRUE(equal(bc, multiply(bc, e, e), e));
    EXPECT_FALSE(equal(bc, e, p));
  }
  EXPECT_TRUE(equal(bc, multiply(bc, isom_v(bc, BigInt(2)), isom_v(bc, BigInt(3))), isom_v(bc, BigInt(6))));
}

TEST(Crossed, CovarianceInTheCorner) {
  // v_s i(a) v_s^* = i(alpha_s(a)) v_s v_s^*
  BostConnes bc;
  auto a = delta(bc, q(1, 3));
  auto v = isom_v(bc, BigInt(2));
  auto lhs = multiply(bc, multiply(bc, v, embed_i_crossed(bc, a)), involution(bc, v));
  auto rhs = multiply(bc, embed_i_crossed(bc, alpha(bc, BigInt(2), a)), multiply(bc, v, involution(bc, v)));
  EXPECT_TRUE(equal(bc, lhs, rhs));
}

TEST(Corner, DecomposeP) {
  BostConnes bc;
  auto triples = corner_decompose(bc, projection_p(bc));
  ASSERT_EQ(triples.size(), 1u);
  EXPECT_EQ(triples[0].s, 1);
  EXPECT_EQ(triples[0].t, 1);
  EXPECT_EQ(triples[0].a, unit<ComplexRational>(bc));
}

TEST(Corner, RoundTrip) {
  BostConnes bc;
  CornerTriple<BostConnes, ComplexRational> x{BigInt(2), delta(bc, q(1, 2)), BigInt(3)};
  auto d = corner_element(bc, x);
  EXPECT_TRUE(equal(bc, corner_element(bc, corner_decompose(bc, d)), d));
}

TEST(Corner, XDecomposeOfV2) {
  // u_2 p = v_2; its triple may carry a = 1/2 (delta_0 + delta_{1/2}) at s = e.
  BostConnes bc;
  auto v = isom_v(bc, BigInt(2));
  auto triples = x_decompose(bc, v);
  ASSERT_EQ(triples.size(), 1u);
  EXPECT_EQ(triples[0].t, 2);
  X rebuilt;
  for (const auto& tr : triples) rebuilt = add(bc, rebuilt, x_element(bc, tr));
  EXPECT_TRUE(equal(bc, rebuilt, v));
  EXPECT_TRUE(equal(bc, x_element(bc, CornerTriple<BostConnes, ComplexRational>{BigInt(1), unit<ComplexRational>(bc), BigInt(2)}), v));
}

TEST(Corner, OutsideTheCornerIsRejected) {
  BostConnes bc;
  EXPECT_THROW(corner_decompose(bc, ustar_p(bc, BigInt(2))), NotInCornerError);
}

TEST(Corner, EvaluationOnTheRegularRep) {
  BostConnes bc;
  auto rep = regular_covariant(bc);
  // V_s^* Y_n V_s = Y_{s n} in the regular representation.
  std::vector<CornerTriple<BostConnes, ComplexRational>> x{{BigInt(3), delta(bc, q(1, 2)), BigInt(3)}};
  EXPECT_LE(rep.space.distance(eval_corner(rep, x, xi(0)), xi(1, 2)), 1e-12);
  x[0].s = x[0].t = BigInt(2);
  EXPECT_LE(rep.space.distance(eval_corner(rep, x, xi(1, 5)), xi(1, 5)), 1e-12);
  std::vector<CornerTriple<BostConnes, ComplexRational>> id{{BigInt(1), unit<ComplexRational>(bc), BigInt(1)}};
  EXPECT_EQ(eval_corner(rep, id, xi(1, 3)).coeffs(), xi(1, 3).coeffs());
}

TEST(Bimodule, InnerProductOfSymbols) {
  BostConnes bc;
  auto rep = regular_covariant(bc);
  using T = XTensor<BostConnes, Vec>;
  Vec h = xi(1, 3, {1.0, 1.0});
  T a{{{1.0, ustar_p(bc, BigInt(2)), h}}};
  EXPECT_NEAR(x_inner(rep, a, a).real(), 2.0, 1e-12);
  T b{{{1.0, projection_p(bc), h}}};
  // <u_2^* p (x) h, p (x) h> = <h, V_2^* h>
  auto expected = rep.space.inner(h, rep.apply_Vstar(BigInt(2), h));
  EXPECT_NEAR(std::abs(x_inner(rep, a, b) - expected), 0.0, 1e-12);
}

TEST(XInd, SymbolActions) {
  BostConnes bc;
  auto dil = dilate(regular_covariant(bc));
  auto crep = x_ind(dil);
  auto h = xi(1, 2, 2.0);
  auto v = dil.symbol(BigInt(2), h);
  EXPECT_LE(dil.distance(crep.apply_U(inverse(from_semi(bc, BigInt(3))), v), dil.apply_Ustar(BigInt(3), v)), 1e-12);
  EXPECT_LE(dil.distance(crep.apply_Wj(q(1, 3), v), dil.apply_W(q(1, 3), v)), 1e-12);
  EXPECT_LE(dil.distance(crep.act(projection_p(bc), dil.embed(h)), dil.embed(h)), 1e-12);
}

TEST(Restriction, TrivialRepresentation) {
  BostConnes bc;
  auto rep = trivial_completion_rep(bc);
  EXPECT_EQ(rep.rho(indicator(bc, BigInt(4), q(1), ComplexRational(8)), Complex(1.0)), Complex(2.0));
  auto r = restrict_completion_rep(rep);
  EXPECT_EQ(m_generation_defect(r, q(3), Complex(1.0)), 0.0);
  EXPECT_THROW(m_generation_defect(r, q(1, 2), Complex(1.0)), DomainError);
}

class CrossedProperties : public ::testing::TestWithParam<int> {};

TEST_P(CrossedProperties, AlgebraLaws) {
  std::mt19937_64 rng(GetParam());
  BostConnes bc;
  auto semis = checks::bounded_semis(bc, 3, 6);
  EXPECT_EQ(checks::appendix_projection(bc, semis).deviation, 0);
  EXPECT_EQ(checks::crossed_product_laws(bc, semis, rng, 6).deviation, 0);
  EXPECT_EQ(checks::corner_round_trip(bc, semis, rng, 6).deviation, 0);
  EXPECT_EQ(checks::corner_fullness(bc, semis, rng, 4).deviation, 0);
  Padic pa(2);
  auto ps = checks::bounded_semis(pa, 3, 8);
  EXPECT_EQ(checks::crossed_product_laws(pa, ps, rng, 4).deviation, 0);
}

TEST_P(CrossedProperties, Induction) {
  std::mt19937_64 rng(GetParam());
  BostConnes bc;
  auto dil = dilate(regular_covariant(bc));
  auto semis = checks::bounded_semis(bc, 3, 6);
  auto small = checks::small_semis(bc, 3, 4);
  EXPECT_LE(checks::corner_eval(dil.base(), semis, rng, 6).deviation, 1e-9);
  EXPECT_LE(checks::x_ind_gram(dil, small, rng, 8).deviation, 1e-9);
  EXPECT_LE(checks::x_ind_matches_dilation(dil, semis, rng, 6).deviation, 1e-9);
  EXPECT_LE(checks::rc_inverse(dil, small, rng, 4, 6).deviation, 1e-9);
  EXPECT_LE(checks::theta_naturality(bc, small, rng, 4, 1e-9).deviation, 1e-9);
  EXPECT_LE(checks::equivalence_round_trip(dil, semis, rng, 6).deviation, 1e-9);
  EXPECT_LE(checks::trivial_restriction(bc, semis, rng, 6).deviation, 1e-9);
}

INSTANTIATE_TEST_SUITE_P(Seeds, CrossedProperties, ::testing::Values(81, 82));
