#include <gtest/gtest.h>

#include "hecke/checks.hpp"
#include "support.hpp"

using namespace hecke;
using hecke::test::q;

namespace {

using Vec = SparseVector<BostConnes>;

Vec xi(long num, long den = 1, Complex c = 1.0) { return Vec::basis(q(num, den), c); }

} // namespace

TEST(Covariance, RandomSamplesAreTight) {
  BostConnes bc;
  auto rep = regular_covariant(bc);
  std::mt19937_64 rng(51);
  const std::vector<BigInt> levels{1, 2, 3, 4, 6};
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = checks::pick(rng, levels);
    auto n = random_element(bc, rng, levels);
    auto v = random_sparse_vector(bc, rng, levels, 3);
    worst = std::max(worst, verify_covariance(rep, s, n, v));
  }
  EXPECT_LE(worst, 1e-12);
}

TEST(Covariance, IdentityIsExact) {
  BostConnes bc;
  auto rep = regular_covariant(bc);
  EXPECT_EQ(verify_covariance(rep, BigInt(1), q(1, 3), xi(1, 2) + xi(2, 5, {0.5, -1.0})), 0.0);
}

TEST(Covariance, CorruptedIsometryIsDetected) {
  BostConnes bc;
  auto rep = regular_covariant(bc);
  auto good = rep.apply_V;
  rep.apply_V = [good](const BigInt& s, const Vec& v) { return s == 2 ? Complex(1.01) * good(s, v) : good(s, v); };
  EXPECT_GT(verify_covariance(rep, BigInt(2), q(1, 3), xi(0)), 1e-3);
}

TEST(Covariance, PadicDeepLevel) {
  Padic pa(2);
  auto rep = regular_covariant(pa);
  auto v = SparseVector<Padic>::basis(q(1, 4)) + SparseVector<Padic>::basis(q(3, 16), {0.0, 2.0});
  EXPECT_LE(verify_covariance(rep, std::int64_t{3}, q(5, 8), v), 1e-12);
}

TEST(RegularRep, IsometryAndAdjoint) {
  BostConnes bc;
  auto rep = regular_covariant(bc);
  Vec v = xi(1, 2, {1.0, 2.0}) + xi(1, 3, -0.5);
  Vec w = xi(1, 6) + xi(0, 1, {0.0, 1.0});
  for (long s : {2L, 3L, 6L}) {
    EXPECT_NEAR(rep.space.norm(rep.apply_V(BigInt(s), v)), rep.space.norm(v), 1e-12);
    // <V_s v, w> = <v, V_s^* w>
    auto lhs = rep.space.inner(rep.apply_V(BigInt(s), v), w);
    auto rhs = rep.space.inner(v, rep.apply_Vstar(BigInt(s), w));
    EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-12);
  }
  // V_2 xi_0 = 2^{-1/2} (xi_0 + xi_{1/2})
  auto v2 = rep.apply_V(BigInt(2), xi(0));
  EXPECT_NEAR(v2.at(q(0)).real(), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(v2.at(q(1, 2)).real(), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_EQ(v2.size(), 2u);
}

TEST(AverageProjection, Examples) {
  BostConnes bc;
  auto rep = regular_covariant(bc);
  std::function<Vec(const Vec&)> id = [](const Vec& v) { return v; };
  Vec v = xi(1, 3, {2.0, -1.0});
  EXPECT_EQ(average_projection<Vec>({id}, v).coeffs(), v.coeffs());
  std::function<Vec(const Vec&)> y0 = [&](const Vec& u) { return rep.apply_Y(q(0), u); };
  std::function<Vec(const Vec&)> yh = [&](const Vec& u) { return rep.apply_Y(q(1, 2), u); };
  auto p = average_projection<Vec>({y0, yh}, xi(0));
  EXPECT_EQ(p.size(), 2u);
  EXPECT_DOUBLE_EQ(p.at(q(0)).real(), 0.5);
  EXPECT_DOUBLE_EQ(p.at(q(1, 2)).real(), 0.5);
  EXPECT_THROW(average_projection<Vec>({}, v), DomainError);
}

TEST(Gram, OrthonormalBasisAndRankDeficiency) {
  SparseSpace<BostConnes> space;
  std::vector<Vec> basis{xi(0), xi(1, 2), xi(1, 3)};
  auto g = gram_matrix(space, basis);
  EXPECT_EQ(max_abs_difference(g, Eigen::MatrixXcd::Identity(3, 3)), 0.0);
  basis.push_back(xi(0) + xi(1, 2));
  auto h = gram_matrix(space, basis);
  EXPECT_NEAR(min_eigenvalue(h), 0.0, 1e-12);
  EXPECT_THROW(max_abs_difference(g, h), DomainError);
}

TEST(PiY, ExtendsLinearly) {
  BostConnes bc;
  auto rep = regular_covariant(bc);
  auto a = delta(bc, q(1, 2), ComplexRational(q(2))) + delta(bc, q(1, 3), ComplexRational(q(0), q(1)));
  auto out = apply_pi(rep, a, xi(1, 6));
  EXPECT_EQ(out.at(q(2, 3)), Complex(2.0));
  EXPECT_EQ(out.at(q(1, 2)), Complex(0.0, 1.0));
}

class CovarianceProperties : public ::testing::TestWithParam<int> {};

TEST_P(CovarianceProperties, EveryFamily) {
  std::mt19937_64 rng(GetParam());
  Padic pa(3);
  EXPECT_LE(checks::regular_covariance(pa, checks::test_semis(pa, 3), rng, 30, 1e-9).deviation, 1e-12);
  auto df = test::diag_family();
  EXPECT_LE(checks::regular_covariance(df, checks::bounded_semis(df, 2, 30), rng, 10, 1e-9).deviation, 1e-12);
}

INSTANTIATE_TEST_SUITE_P(Seeds, CovarianceProperties, ::testing::Values(61, 62));
