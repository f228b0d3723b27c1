#include <gtest/gtest.h>

#include "hecke/checks.hpp"
#include "support.hpp"

using namespace hecke;
using hecke::test::q;
using hecke::test::vec;

namespace {

using C64 = PadicComponent<std::int64_t>;

std::map<std::int64_t, std::pair<int, std::int64_t>> as_map(const std::vector<C64>& cs) {
  std::map<std::int64_t, std::pair<int, std::int64_t>> out;
  for (const auto& c : cs) out[c.p] = {c.l, c.r};
  return out;
}

} // namespace

TEST(Crt, Examples) {
  EXPECT_EQ(as_map(crt_forward<std::int64_t>(6, 5)),
            (std::map<std::int64_t, std::pair<int, std::int64_t>>{{2, {1, 1}}, {3, {1, 2}}}));
  EXPECT_EQ(as_map(crt_forward<std::int64_t>(12, 7)),
            (std::map<std::int64_t, std::pair<int, std::int64_t>>{{2, {2, 3}}, {3, {1, 1}}}));
  auto [n, x] = crt_inverse<std::int64_t>({C64{2, 1, 1}, C64{3, 1, 2}});
  EXPECT_EQ(n, 6);
  EXPECT_EQ(x, 5);
  EXPECT_EQ(crt_inverse<std::int64_t>({C64{3, 1, 2}, C64{2, 1, 1}}).second, 5);
}

TEST(Crt, RejectsInconsistentInput) {
  EXPECT_THROW(crt_inverse<std::int64_t>({C64{2, 1, 1}, C64{2, 2, 3}}), DomainError);
  EXPECT_THROW(factorize<std::int64_t>(0), DomainError);
  BostConnes bc;
  EXPECT_THROW(crt_forward(bc, truncated(bc, BigInt(6), q(1, 2))), DomainError);
  EXPECT_THROW(lower_precision(C64{2, 1, 1}, 2), PrecisionError);
}

TEST(Crt, InverseAgreesWithSearch) {
  // The residue is found by scanning 0..n-1 for the one matching every component.
  for (std::int64_t n = 1; n <= 360; ++n) {
    for (std::int64_t x = 0; x < n; x += 7) {
      auto comps = crt_forward<std::int64_t>(n, x);
      std::int64_t found = -1;
      for (std::int64_t y = 0; y < n && found < 0; ++y) {
        bool ok = true;
        for (const auto& c : comps) ok = ok && y % c.modulus() == c.r;
        if (ok) found = y;
      }
      ASSERT_EQ(found, x);
      EXPECT_EQ(crt_inverse(comps).second, x) << n << " " << x;
    }
  }
}

TEST(Crt, BigIntMatchesInt64) {
  for (std::int64_t n : {30, 97, 1024, 5040})
    for (std::int64_t x : {0L, 1L, 29L, 1000L}) {
      auto small = crt_forward<std::int64_t>(n, x);
      auto big = crt_forward<BigInt>(BigInt(n), BigInt(x));
      ASSERT_EQ(small.size(), big.size());
      for (std::size_t i = 0; i < small.size(); ++i) EXPECT_EQ(BigInt(small[i].r), big[i].r);
    }
}

TEST(Jp, IsReduction) {
  EXPECT_EQ(j_p(BigInt(3), 2, BigInt(-1)).r, 8);
  EXPECT_EQ(lower_precision(j_p(BigInt(2), 4, BigInt(13)), 2).r, 1);
}

TEST(Mu, Examples) {
  BostConnes bc;
  auto a = mu(bc, truncated(bc, BigInt(7), q(12)), BigInt(1));
  ASSERT_EQ(a.components.size(), 1u);
  EXPECT_EQ(a.components[0].p, 7);
  EXPECT_EQ(a.components[0].r, 5);
  auto x = truncated(bc, BigInt(12), q(5, 6));
  auto b = mu(bc, x);
  EXPECT_EQ(b.m, 6);
  EXPECT_EQ(mu_inverse(bc, b), x);
  EXPECT_TRUE(same_adele(b, mu(bc, x, BigInt(12))));
  EXPECT_FALSE(same_adele(b, mu(bc, truncated(bc, BigInt(12), q(1, 6)))));
  EXPECT_THROW(mu(bc, x, BigInt(5)), DomainError);
}

TEST(Pairing, Examples) {
  BostConnes bc;
  EXPECT_EQ(pairing(bc, truncated(bc, BigInt(6), q(2)), truncated(bc, BigInt(6), q(1, 3))), q(2, 3));
  EXPECT_EQ(pairing(bc, truncated(bc, BigInt(6), q(5)), truncated(bc, BigInt(6), q(7))), q(0));
  EXPECT_EQ(pairing(bc, truncated(bc, BigInt(12), q(1, 3)), truncated(bc, BigInt(12), q(1, 2))), q(1, 6));
  EXPECT_THROW(pairing(bc, truncated(bc, BigInt(3), q(1, 3)), truncated(bc, BigInt(6), q(1, 2))), LevelCapError);
  EXPECT_THROW(pairing_at(bc, truncated(bc, BigInt(12), q(1, 3)), truncated(bc, BigInt(12), q(1, 2)), BigInt(4)),
               DomainError);
}

TEST(Pairing, MatrixExample) {
  auto fam = test::diag_family();
  auto tr = fam.transposed();
  auto x = truncated(fam, MatrixFamily::Semi{1, 0}, vec(1, 0, 2));
  auto y = truncated(tr, MatrixFamily::Semi{1, 0}, vec(1, 0));
  EXPECT_EQ(matrix_pairing(fam, tr, x, y), q(1, 2));
  auto z = truncated(fam, MatrixFamily::Semi{1, 1}, vec(3, 4));
  EXPECT_EQ(matrix_pairing(fam, tr, z, truncated(tr, MatrixFamily::Semi{1, 1}, vec(2, 1))), q(0));
}

TEST(Pairing, MatrixThresholdNeedsBothSupports) {
  // Projecting to y's support level alone would lose x = 1/2: F = 2, M = 3 in
  // each coordinate, x = (1/2, 0), y = (1/3, 0).
  MatrixFamily fam(test::mat({{2, 0}, {0, 2}}), test::mat({{3, 0}, {0, 3}}));
  auto tr = fam.transposed();
  auto x = truncated(fam, MatrixFamily::Semi{1, 1}, vec(1, 0, 2));
  auto y = truncated(tr, MatrixFamily::Semi{1, 1}, vec(1, 0, 3));
  EXPECT_EQ(matrix_pairing_threshold(fam, tr, x, y), (MatrixFamily::Semi{1, 1}));
  EXPECT_EQ(matrix_pairing(fam, tr, x, y), q(1, 6));
  EXPECT_THROW(matrix_pairing_at(fam, tr, x, y, {0, 1}), DomainError);
}

TEST(Pairing, FinitePerfectness) {
  BostConnes bc;
  for (long n = 1; n <= 24; ++n) EXPECT_TRUE(finite_pairing_is_perfect(bc, n)) << n;
}

class AdeleProperties : public ::testing::TestWithParam<int> {};

TEST_P(AdeleProperties, Crt) {
  std::mt19937_64 rng(GetParam());
  EXPECT_EQ(checks::crt_bijection(400).deviation, 0);
  EXPECT_EQ(checks::crt_homomorphism(rng, 200, 5040).deviation, 0);
  BostConnes bc;
  EXPECT_EQ(checks::crt_j(bc, 60, 360).deviation, 0);
}

TEST_P(AdeleProperties, PairingAndMu) {
  std::mt19937_64 rng(GetParam());
  BostConnes bc;
  EXPECT_EQ(checks::pairing_level_independence(bc, rng, 100).deviation, 0);
  EXPECT_EQ(checks::mu_coherence(bc, rng, 50).deviation, 0);
  EXPECT_EQ(checks::perfect_pairing(bc, 16).deviation, 0);
  auto fam = test::diag_family();
  EXPECT_EQ(checks::matrix_pairing_stability(fam, rng, 40, {1, 1}, {2, 2}).deviation, 0);
  EXPECT_EQ(checks::padic_components(Padic(3), rng, 40).deviation, 0);
}

INSTANTIATE_TEST_SUITE_P(Seeds, AdeleProperties, ::testing::Values(91, 92));
