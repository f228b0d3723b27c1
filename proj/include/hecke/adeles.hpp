#pragma once

// Integer and finite adeles at finite precision. Z = lim Z/nZ is compared with
// prod Z_p through the Chinese remainder isomorphism, A_f = lim Q/nZ with the
// restricted product through mu, and both carry the self-duality pairing
// <x, y> = exp(2 pi i pi^n(x) pi^n(y)), kept here as the exponent in Q/Z.

#include <algorithm>
#include <cstdint>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hecke/error.hpp"
#include "hecke/number.hpp"
#include "hecke/pairs.hpp"
#include "hecke/tower.hpp"

namespace hecke {

namespace detail {

inline std::int64_t reduce_mod(std::int64_t a, std::int64_t m) {
  a %= m;
  return a < 0 ? a + m : a;
}
inline BigInt reduce_mod(const BigInt& a, const BigInt& m) { return mod(a, m); }

inline std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return reduce_mod(static_cast<std::int64_t>(static_cast<__int128>(a) * b % m), m);
}
inline BigInt mul_mod(const BigInt& a, const BigInt& b, const BigInt& m) { return mod(BigInt(a * b), m); }

inline std::int64_t inv_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r0 = m, r1 = reduce_mod(a, m), t0 = 0, t1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
    std::tie(t0, t1) = std::pair{t1, t0 - q * t1};
  }
  if (r0 != 1) throw DomainError("residue is not invertible");
  return reduce_mod(t0, m);
}
inline BigInt inv_mod(const BigInt& a, const BigInt& m) { return mod_inverse(a, m); }

inline std::string to_string(std::int64_t v) { return std::to_string(v); }
inline std::string to_string(const BigInt& v) { return v.get_str(); }

} // namespace detail

/// x_p in Z_p known modulo p^l.
template <class Int>
struct PadicComponent {
  Int p;
  int l = 0;
  Int r;

  Int modulus() const {
    Int q = 1;
    for (int i = 0; i < l; ++i) q *= p;
    return q;
  }

  friend bool operator==(const PadicComponent&, const PadicComponent&) = default;
};

/// The same component at precision l' <= l.
template <class Int>
PadicComponent<Int> lower_precision(const PadicComponent<Int>& c, int l) {
  if (l > c.l) throw PrecisionError("cannot raise p-adic precision from " + std::to_string(c.l));
  PadicComponent<Int> out{c.p, l, Int(0)};
  out.r = detail::reduce_mod(c.r, out.modulus());
  return out;
}

/// Prime-power factorisation by trial division.
template <class Int>
std::vector<std::pair<Int, int>> factorize(Int n) {
  if (n < 1) throw DomainError("can only factor positive integers, got " + detail::to_string(n));
  std::vector<std::pair<Int, int>> out;
  for (Int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

/// Z/nZ = prod Z/p^l Z with its idempotent basis precomputed.
template <class Int>
class CrtBasis {
public:
  explicit CrtBasis(Int n) : n_(n) {
    for (auto& [p, l] : factorize(n)) {
      PadicComponent<Int> c{p, l, Int(0)};
      Int q = c.modulus();
      Int cofactor = n / q;
      // e = cofactor * (cofactor^{-1} mod q): 1 mod q, 0 mod every other prime power.
      Int e = detail::mul_mod(cofactor, detail::inv_mod(detail::reduce_mod(cofactor, q), q), n);
      primes_.push_back(c);
      idempotents_.push_back(e);
    }
  }

  const Int& modulus() const { return n_; }

  std::vector<PadicComponent<Int>> forward(const Int& x) const {
    std::vector<PadicComponent<Int>> out = primes_;
    for (auto& c : out) c.r = detail::reduce_mod(x, c.modulus());
    return out;
  }

  Int inverse(const std::vector<PadicComponent<Int>>& comps) const {
    if (comps.size() != primes_.size()) throw DomainError("component list does not match the modulus");
    Int acc = 0;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      if (comps[i].p != primes_[i].p || comps[i].l != primes_[i].l)
        throw DomainError("component list does not match the modulus");
      acc = detail::reduce_mod(acc + detail::mul_mod(comps[i].r, idempotents_[i], n_), n_);
    }
    return acc;
  }

private:
  Int n_;
  std::vector<PadicComponent<Int>> primes_;
  std::vector<Int> idempotents_;
};

/// phi at level n: x mod n -> (x mod p^l) over n = prod p^l.
template <class Int>
std::vector<PadicComponent<Int>> crt_forward(const Int& n, const Int& x) {
  return CrtBasis<Int>(n).forward(x);
}

/// The unique residue mod prod p^l with the given components.
template <class Int>
std::pair<Int, Int> crt_inverse(const std::vector<PadicComponent<Int>>& comps) {
  Int n = 1;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j)
      if (comps[i].p == comps[j].p) throw DomainError("repeated prime " + detail::to_string(comps[i].p));
    n *= comps[i].modulus();
  }
  std::vector<PadicComponent<Int>> sorted = comps;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.p < b.p; });
  CrtBasis<Int> basis(n);
  std::vector<PadicComponent<Int>> expected;
  for (const auto& c : sorted)
    if (c.l > 0) expected.push_back(c);
  return {n, basis.inverse(expected)};
}

/// phi on a K-element of the bost-connes tower, i.e. an element of Z = lim Z/nZ.
inline std::vector<PadicComponent<BigInt>> crt_forward(const BostConnes& fam,
                                                       const TruncatedElement<BostConnes>& x) {
  if (!in_K(fam, x)) throw DomainError("crt_forward needs an element of the compact subgroup");
  return crt_forward<BigInt>(x.level, x.coset.get_num());
}

/// j_p(n) at precision l.
inline PadicComponent<BigInt> j_p(const BigInt& p, int l, const BigInt& n) {
  PadicComponent<BigInt> c{p, l, 0};
  c.r = mod(n, c.modulus());
  return c;
}

// ---------------------------------------------------------------------------

/// m^{-1} z for z in Z known through its p-adic components, i.e. modulo
/// precision() = prod p^l.
struct AdeleTruncation {
  BigInt m = 1;
  std::vector<PadicComponent<BigInt>> components;

  BigInt precision() const {
    BigInt q = 1;
    for (const auto& c : components) q *= c.modulus();
    return q;
  }
};

/// mu_m(x) = m^{-1} phi(m x) for x in m^{-1} K, x known at level L; m x is
/// then known modulo m L.
inline AdeleTruncation mu(const BostConnes&, const TruncatedElement<BostConnes>& x, const BigInt& m) {
  if (m < 1) throw DomainError("mu_m needs m >= 1");
  Rational scaled = x.coset * Rational(m);
  if (!is_integer(scaled))
    throw DomainError("element is not in " + m.get_str() + "^{-1} K (denominator " + x.coset.get_den().get_str() + ")");
  return {m, crt_forward<BigInt>(BigInt(x.level * m), scaled.get_num())};
}

/// mu with m the denominator d_x of pi^0(x).
inline AdeleTruncation mu(const BostConnes& fam, const TruncatedElement<BostConnes>& x) {
  return mu(fam, x, x.coset.get_den());
}

/// mu^{-1}: z / m with z mod P gives an element of Q/(P/m)Z; needs m | P.
inline TruncatedElement<BostConnes> mu_inverse(const BostConnes& fam, const AdeleTruncation& a) {
  auto [precision, z] = crt_inverse(a.components);
  if (mpz_divisible_p(precision.get_mpz_t(), a.m.get_mpz_t()) == 0)
    throw PrecisionError("denominator " + a.m.get_str() + " exceeds the known precision " + precision.get_str());
  BigInt level = precision / a.m;
  return truncated(fam, level, make_rational(z, a.m));
}

/// Whether two truncations agree as elements of A_f on their common precision.
inline bool same_adele(const AdeleTruncation& a, const AdeleTruncation& b) {
  auto [pa, za] = crt_inverse(a.components);
  auto [pb, zb] = crt_inverse(b.components);
  // z_a / m_a = z_b / m_b  iff  m_b z_a = m_a z_b, both known modulo gcd(m_b P_a, m_a P_b).
  BigInt common = gcd(BigInt(b.m * pa), BigInt(a.m * pb));
  return mod(BigInt(b.m * za), common) == mod(BigInt(a.m * zb), common);
}

// ---------------------------------------------------------------------------
// Pairings, valued in Q/Z.

/// pi^n(x) pi^n(y) mod 1 at an explicit level n, which must be divisible by
/// d_x and d_y and lie below both known levels.
inline Rational pairing_at(const BostConnes& fam, const TruncatedElement<BostConnes>& x,
                           const TruncatedElement<BostConnes>& y, const BigInt& n) {
  BigInt dx = x.coset.get_den(), dy = y.coset.get_den();
  if (mpz_divisible_p(n.get_mpz_t(), dx.get_mpz_t()) == 0 || mpz_divisible_p(n.get_mpz_t(), dy.get_mpz_t()) == 0)
    throw DomainError("pairing level " + n.get_str() + " is not divisible by both denominators");
  auto xn = project(fam, x, n);
  auto yn = project(fam, y, n);
  return mod(Rational(xn.coset * yn.coset), BigInt(1));
}

/// <x, y> at the least admissible level lcm(d_x, d_y).
inline Rational pairing(const BostConnes& fam, const TruncatedElement<BostConnes>& x,
                        const TruncatedElement<BostConnes>& y) {
  BigInt n = lcm(BigInt(x.coset.get_den()), BigInt(y.coset.get_den()));
  if (!precedes(fam, n, x.level) || !precedes(fam, n, y.level))
    throw LevelCapError("no admissible pairing level: need a multiple of " + n.get_str() + " below levels " +
                        x.level.get_str() + " and " + y.level.get_str());
  return pairing_at(fam, x, y, n);
}

inline Rational pairing(const BostConnes& fam, const AdeleTruncation& x, const AdeleTruncation& y) {
  return pairing(fam, mu_inverse(fam, x), mu_inverse(fam, y));
}

/// k -> <k, .> on Z/nZ x (1/n)Z/Z is injective.
inline bool finite_pairing_is_perfect(const BostConnes& fam, long n) {
  std::vector<std::vector<Rational>> rows;
  for (long k = 0; k < n; ++k) {
    std::vector<Rational> row;
    auto x = truncated(fam, BigInt(n), Rational(k));
    for (long r = 0; r < n; ++r) row.push_back(pairing(fam, x, truncated(fam, BigInt(n), make_rational(r, n))));
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  });
  return std::adjacent_find(rows.begin(), rows.end()) == rows.end();
}

/// The least level at which pi^{m,n}(x) pi^{m,n}(y) is well defined: the join
/// of the two support levels.
inline MatrixFamily::Semi matrix_pairing_threshold(const MatrixFamily& fam, const MatrixFamily& transposed,
                                                   const TruncatedElement<MatrixFamily>& x,
                                                   const TruncatedElement<MatrixFamily>& y) {
  return join(fam, fam.support_level(x.coset), transposed.support_level(y.coset));
}

/// <pi^{m,n}(x), pi^{m,n}(y)> = dot product mod 1, for x in the (F, M) tower
/// and y in the (F^t, M^t) tower, both projected to `level`.
inline Rational matrix_pairing_at(const MatrixFamily& fam, const MatrixFamily& transposed,
                                  const TruncatedElement<MatrixFamily>& x, const TruncatedElement<MatrixFamily>& y,
                                  const MatrixFamily::Semi& level) {
  auto threshold = matrix_pairing_threshold(fam, transposed, x, y);
  if (!precedes(fam, threshold, level))
    throw DomainError("pairing level " + fam.format_semi(level) + " is below the threshold " +
                      fam.format_semi(threshold));
  auto xl = project(fam, x, level);
  auto yl = project(transposed, y, level);
  Rational dot;
  for (std::size_t i = 0; i < xl.coset.size(); ++i) dot += xl.coset[i] * yl.coset[i];
  return mod(dot, BigInt(1));
}

inline Rational matrix_pairing(const MatrixFamily& fam, const MatrixFamily& transposed,
                               const TruncatedElement<MatrixFamily>& x, const TruncatedElement<MatrixFamily>& y) {
  auto threshold = matrix_pairing_threshold(fam, transposed, x, y);
  if (!precedes(fam, threshold, x.level) || !precedes(fam, threshold, y.level))
    throw LevelCapError("no admissible pairing level: need " + fam.format_semi(threshold) + " below both levels");
  return matrix_pairing_at(fam, transposed, x, y, threshold);
}

} // namespace hecke
