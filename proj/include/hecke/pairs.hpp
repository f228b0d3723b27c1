#pragma once

// Concrete Hecke-pair families (N, M, S, G, psi). Each family supplies exact
// arithmetic on N (an additive subgroup of Q^d), the Ore monoid S with an
// adjoined identity, the automorphisms psi_s and their inverses, and
// canonical coset representatives for every level N / psi_s^{-1}(M).

#include <algorithm>
#include <array>
#include <concepts>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hecke/error.hpp"
#include "hecke/lattice.hpp"
#include "hecke/number.hpp"

namespace hecke {

/// Default number of coset representatives a family will enumerate.
inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 21;

template <class F>
concept HeckeFamily = requires(const F& fam, const typename F::Element& x,
                               const typename F::Semi& s) {
  typename F::Element;
  typename F::Semi;
  { fam.identity() } -> std::same_as<typename F::Semi>;
  { fam.compose(s, s) } -> std::same_as<typename F::Semi>;
  { fam.cofactor(s, s) } -> std::same_as<std::optional<typename F::Semi>>;
  { fam.ore_pair(s, s) } -> std::same_as<std::pair<typename F::Semi, typename F::Semi>>;
  { fam.reduce(s, s) } -> std::same_as<std::pair<typename F::Semi, typename F::Semi>>;
  { fam.index(s) } -> std::same_as<BigInt>;
  { fam.canonical(x, s) } -> std::same_as<typename F::Element>;
  { fam.coset_reps(s) } -> std::same_as<std::vector<typename F::Element>>;
  { fam.psi(s, x) } -> std::same_as<typename F::Element>;
  { fam.psi_inv(s, x) } -> std::same_as<typename F::Element>;
  { fam.zero() } -> std::same_as<typename F::Element>;
  { fam.add(x, x) } -> std::same_as<typename F::Element>;
  { fam.negate(x) } -> std::same_as<typename F::Element>;
  { fam.in_M(x) } -> std::same_as<bool>;
  { fam.support_level(x) } -> std::same_as<typename F::Semi>;
  fam.validate(s);
  fam.validate_element(x);
  fam.check_level(s);
};

/// Key order for element maps. Natural order by default; rational vectors are
/// ordered coordinatewise by (denominator, numerator), which is total on
/// canonical fractions and skips the cross multiplication of mpq_cmp.
template <class E>
struct ElementLess {
  bool operator()(const E& a, const E& b) const { return a < b; }
};

template <>
struct ElementLess<std::vector<Rational>> {
  bool operator()(const std::vector<Rational>& a, const std::vector<Rational>& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (int c = mpz_cmp(a[i].get_den_mpz_t(), b[i].get_den_mpz_t())) return c < 0;
      if (int c = mpz_cmp(a[i].get_num_mpz_t(), b[i].get_num_mpz_t())) return c < 0;
    }
    return false;
  }
};

// ---------------------------------------------------------------------------

/// N = Q, M = Z, S = N* under multiplication, G = Q+*, psi_g(r) = r / g.
class BostConnes {
public:
  using Element = Rational;
  using Semi = BigInt;

  static constexpr const char* tag = "bost-connes";

  explicit BostConnes(BigInt level_cap = 5040, std::uint64_t enumeration_cap = kDefaultEnumerationCap)
      : level_cap_(std::move(level_cap)), enumeration_cap_(enumeration_cap) {}

  std::string name() const { return tag; }
  const BigInt& level_cap() const { return level_cap_; }
  void set_level_cap(BigInt cap) { level_cap_ = std::move(cap); }

  Semi identity() const { return 1; }
  Semi compose(const Semi& s, const Semi& t) const { return s * t; }

  std::optional<Semi> cofactor(const Semi& s, const Semi& t) const {
    if (mpz_divisible_p(t.get_mpz_t(), s.get_mpz_t()) == 0) return std::nullopt;
    return Semi(t / s);
  }

  /// Least (u, v) with u s = v t.
  std::pair<Semi, Semi> ore_pair(const Semi& s, const Semi& t) const {
    validate(s);
    validate(t);
    BigInt l = lcm(s, t);
    return {BigInt(l / s), BigInt(l / t)};
  }

  std::pair<Semi, Semi> reduce(const Semi& s, const Semi& t) const {
    BigInt g = gcd(s, t);
    return {BigInt(s / g), BigInt(t / g)};
  }

  void validate(const Semi& s) const {
    if (s <= 0) throw DomainError("bost-connes semigroup element must be a positive integer, got " + s.get_str());
  }
  void validate_element(const Element&) const {}

  void check_level(const Semi& s) const {
    if (s > level_cap_)
      throw LevelCapError("level " + s.get_str() + " exceeds cap " + level_cap_.get_str());
  }

  BigInt index(const Semi& s) const {
    validate(s);
    return s;
  }

  Element canonical(const Element& x, const Semi& level) const { return mod(x, level); }

  std::vector<Element> coset_reps(const Semi& s) const {
    validate(s);
    if (s > BigInt(static_cast<unsigned long>(enumeration_cap_)))
      throw LevelCapError("refusing to enumerate " + s.get_str() + " coset representatives");
    std::vector<Element> reps;
    const auto n = s.get_ui();
    reps.reserve(n);
    for (unsigned long k = 0; k < n; ++k) reps.emplace_back(static_cast<long>(k));
    return reps;
  }

  Element psi(const Semi& s, const Element& x) const { return x / Rational(s); }
  Element psi_inv(const Semi& s, const Element& x) const { return x * Rational(s); }

  Element zero() const { return 0; }
  Element add(const Element& a, const Element& b) const { return a + b; }
  Element negate(const Element& a) const { return -a; }
  bool in_M(const Element& x) const { return is_integer(x); }

  /// Smallest s with psi_s^{-1}(x) in M: the denominator of x.
  Semi support_level(const Element& x) const { return x.get_den(); }

  Element random_M(std::mt19937_64& rng, int bound) const {
    std::uniform_int_distribution<long> d(-bound, bound);
    return Rational(d(rng));
  }

  std::string format(const Element& x) const { return format_rational(x); }
  std::string format_semi(const Semi& s) const { return s.get_str(); }

  /// Semigroup elements 1..limit.
  std::vector<Semi> semis_up_to(long limit) const {
    std::vector<Semi> out;
    for (long k = 1; k <= limit; ++k) out.emplace_back(k);
    return out;
  }

private:
  BigInt level_cap_;
  std::uint64_t enumeration_cap_;
};

// ---------------------------------------------------------------------------

/// N = Z[1/p], M = Z, S = N under addition, G = Z, psi_n(r) = p^{-n} r.
class Padic {
public:
  using Element = Rational;
  using Semi = std::int64_t;

  static constexpr const char* tag = "padic";

  explicit Padic(long p, Semi level_cap = 24, std::uint64_t enumeration_cap = kDefaultEnumerationCap)
      : p_(p), level_cap_(level_cap), enumeration_cap_(enumeration_cap) {
    if (p < 2 || mpz_probab_prime_p(p_.get_mpz_t(), 25) == 0)
      throw DomainError("padic family needs a prime, got " + std::to_string(p));
  }

  std::string name() const { return std::string(tag) + "(" + p_.get_str() + ")"; }
  const BigInt& prime() const { return p_; }
  Semi level_cap() const { return level_cap_; }
  void set_level_cap(Semi cap) { level_cap_ = cap; }

  Semi identity() const { return 0; }
  Semi compose(const Semi& s, const Semi& t) const {
    Semi r = 0;
    if (__builtin_add_overflow(s, t, &r)) throw DomainError("padic semigroup overflow");
    return r;
  }

  std::optional<Semi> cofactor(const Semi& s, const Semi& t) const {
    if (t < s) return std::nullopt;
    return t - s;
  }

  std::pair<Semi, Semi> ore_pair(const Semi& s, const Semi& t) const {
    validate(s);
    validate(t);
    Semi m = std::max(s, t);
    return {m - s, m - t};
  }

  std::pair<Semi, Semi> reduce(const Semi& s, const Semi& t) const {
    Semi m = std::min(s, t);
    return {s - m, t - m};
  }

  void validate(const Semi& s) const {
    if (s < 0) throw DomainError("padic semigroup element must be >= 0, got " + std::to_string(s));
  }
  void validate_element(const Element& x) const {
    BigInt den = x.get_den();
    BigInt rest;
    mpz_remove(rest.get_mpz_t(), den.get_mpz_t(), p_.get_mpz_t());
    if (rest != 1) throw DomainError("element " + format(x) + " is not in Z[1/" + p_.get_str() + "]");
  }

  void check_level(const Semi& s) const {
    if (s > level_cap_)
      throw LevelCapError("level " + std::to_string(s) + " exceeds cap " + std::to_string(level_cap_));
  }

  BigInt index(const Semi& s) const {
    validate(s);
    return pow(p_, static_cast<unsigned long>(s));
  }

  Element canonical(const Element& x, const Semi& level) const { return mod(x, index(level)); }

  std::vector<Element> coset_reps(const Semi& s) const {
    BigInt n = index(s);
    if (n > BigInt(static_cast<unsigned long>(enumeration_cap_)))
      throw LevelCapError("refusing to enumerate " + n.get_str() + " coset representatives");
    std::vector<Element> reps;
    for (unsigned long k = 0; k < n.get_ui(); ++k) reps.emplace_back(static_cast<long>(k));
    return reps;
  }

  Element psi(const Semi& s, const Element& x) const { return x / Rational(index(s)); }
  Element psi_inv(const Semi& s, const Element& x) const { return x * Rational(index(s)); }

  Element zero() const { return 0; }
  Element add(const Element& a, const Element& b) const { return a + b; }
  Element negate(const Element& a) const { return -a; }
  bool in_M(const Element& x) const { return is_integer(x); }

  Semi support_level(const Element& x) const {
    validate_element(x);
    if (x.get_den() == 1) return 0;
    return static_cast<Semi>(valuation(x.get_den(), p_));
  }

  Element random_M(std::mt19937_64& rng, int bound) const {
    std::uniform_int_distribution<long> d(-bound, bound);
    return Rational(d(rng));
  }

  std::string format(const Element& x) const { return format_rational(x); }
  std::string format_semi(const Semi& s) const { return std::to_string(s); }

  std::vector<Semi> semis_up_to(long limit) const {
    std::vector<Semi> out;
    for (long k = 0; k <= limit; ++k) out.push_back(k);
    return out;
  }

private:
  BigInt p_;
  Semi level_cap_;
  std::uint64_t enumeration_cap_;
};

// ---------------------------------------------------------------------------

/// Commuting F, M in M_d(Z) with coprime determinants other than 0, +-1.
/// N = union of F^{-m} M^{-n} Z^d, M = Z^d, S = N^2, psi_{(k,l)} = F^{-k} M^{-l}.
class MatrixFamily {
public:
  using Element = lattice::QVec;
  using Semi = std::array<std::int64_t, 2>;

  static constexpr const char* tag = "matrix";

  MatrixFamily(lattice::IntMatrix f, lattice::IntMatrix m, Semi level_cap = {4, 4},
               std::uint64_t enumeration_cap = kDefaultEnumerationCap)
      : f_(std::move(f)), m_(std::move(m)), level_cap_(level_cap), enumeration_cap_(enumeration_cap),
        cache_(std::make_shared<Cache>()) {
    if (f_.rows() != f_.cols() || m_.rows() != m_.cols() || f_.rows() != m_.rows() || f_.rows() == 0)
      throw DomainError("F and M must be square matrices of the same size");
    det_f_ = lattice::determinant(f_);
    det_m_ = lattice::determinant(m_);
    auto unit_or_zero = [](const BigInt& d) { return d == 0 || d == 1 || d == -1; };
    if (unit_or_zero(det_f_)) throw DomainError("det F must not be 0 or +-1, got " + det_f_.get_str());
    if (unit_or_zero(det_m_)) throw DomainError("det M must not be 0 or +-1, got " + det_m_.get_str());
    if (gcd(det_f_, det_m_) != 1)
      throw DomainError("det F and det M must be coprime, got " + det_f_.get_str() + ", " + det_m_.get_str());
    if (!(f_ * m_ == m_ * f_)) throw DomainError("F and M must commute");
    f_inv_ = lattice::inverse(lattice::to_rational(f_));
    m_inv_ = lattice::inverse(lattice::to_rational(m_));
  }

  std::size_t dim() const { return f_.rows(); }
  const lattice::IntMatrix& F() const { return f_; }
  const lattice::IntMatrix& M() const { return m_; }
  Semi level_cap() const { return level_cap_; }
  void set_level_cap(Semi cap) { level_cap_ = cap; }

  MatrixFamily transposed() const {
    return MatrixFamily(f_.transpose(), m_.transpose(), level_cap_, enumeration_cap_);
  }

  std::string name() const {
    std::ostringstream os;
    os << tag << "(F=" << format_matrix(f_) << ",M=" << format_matrix(m_) << ")";
    return os.str();
  }

  Semi identity() const { return {0, 0}; }
  Semi compose(const Semi& s, const Semi& t) const {
    Semi r{};
    for (int i = 0; i < 2; ++i)
      if (__builtin_add_overflow(s[i], t[i], &r[i])) throw DomainError("matrix semigroup overflow");
    return r;
  }

  std::optional<Semi> cofactor(const Semi& s, const Semi& t) const {
    if (t[0] < s[0] || t[1] < s[1]) return std::nullopt;
    return Semi{t[0] - s[0], t[1] - s[1]};
  }

  std::pair<Semi, Semi> ore_pair(const Semi& s, const Semi& t) const {
    validate(s);
    validate(t);
    Semi j{std::max(s[0], t[0]), std::max(s[1], t[1])};
    return {Semi{j[0] - s[0], j[1] - s[1]}, Semi{j[0] - t[0], j[1] - t[1]}};
  }

  std::pair<Semi, Semi> reduce(const Semi& s, const Semi& t) const {
    Semi m{std::min(s[0], t[0]), std::min(s[1], t[1])};
    return {Semi{s[0] - m[0], s[1] - m[1]}, Semi{t[0] - m[0], t[1] - m[1]}};
  }

  void validate(const Semi& s) const {
    if (s[0] < 0 || s[1] < 0)
      throw DomainError("matrix semigroup element must be in N^2, got " + format_semi(s));
  }
  void validate_element(const Element& x) const {
    if (x.size() != dim()) throw DomainError("element has wrong dimension");
    (void)support_level(x);
  }

  void check_level(const Semi& s) const {
    if (s[0] > level_cap_[0] || s[1] > level_cap_[1])
      throw LevelCapError("level " + format_semi(s) + " exceeds cap " + format_semi(level_cap_));
  }

  /// |Z^d : F^m M^n Z^d| = |det F|^m |det M|^n.
  BigInt index(const Semi& s) const {
    validate(s);
    return pow(abs_det_f(), static_cast<unsigned long>(s[0])) *
           pow(abs_det_m(), static_cast<unsigned long>(s[1]));
  }

  /// Integer basis F^m M^n of psi_s^{-1}(Z^d).
  lattice::IntMatrix lattice_basis(const Semi& s) const {
    validate(s);
    return lattice::power(f_, static_cast<std::size_t>(s[0])) *
           lattice::power(m_, static_cast<std::size_t>(s[1]));
  }

  /// Hermite normal form of the level-s lattice; memoised. Map nodes never move,
  /// so the reference outlives the lock.
  const lattice::IntMatrix& hnf(const Semi& s) const {
    {
      std::lock_guard lock(cache_->mutex);
      auto it = cache_->hnf.find(s);
      if (it != cache_->hnf.end()) return it->second;
    }
    lattice::IntMatrix h = lattice::hermite_normal_form(lattice_basis(s));
    std::lock_guard lock(cache_->mutex);
    return cache_->hnf.emplace(s, std::move(h)).first->second;
  }

  Element canonical(const Element& x, const Semi& level) const {
    return lattice::reduce_mod_hnf(hnf(level), x);
  }

  std::vector<Element> coset_reps(const Semi& s) const {
    BigInt n = index(s);
    if (n > BigInt(static_cast<unsigned long>(enumeration_cap_)))
      throw LevelCapError("refusing to enumerate " + n.get_str() + " coset representatives");
    std::vector<Element> reps;
    reps.reserve(n.get_ui());
    lattice::for_each_box_point(hnf(s), [&](const Element& v) { reps.push_back(v); });
    return reps;
  }

  Element psi(const Semi& s, const Element& x) const {
    return s == identity() ? x : lattice::apply(inverse_power(s), x);
  }
  Element psi_inv(const Semi& s, const Element& x) const {
    return s == identity() ? x : lattice::apply(forward_power(s), x);
  }

  Element zero() const { return Element(dim()); }
  Element add(const Element& a, const Element& b) const {
    Element r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
  }
  Element negate(const Element& a) const {
    Element r(a);
    for (auto& v : r) v = -v;
    return r;
  }
  bool in_M(const Element& x) const {
    return std::all_of(x.begin(), x.end(), [](const Rational& v) { return is_integer(v); });
  }

  /// Least (m, n), ordered by m + n then m, with F^m M^n x in Z^d.
  Semi support_level(const Element& x) const {
    if (x.size() != dim()) throw DomainError("element has wrong dimension");
    const std::int64_t bound = 4 * (level_cap_[0] + level_cap_[1] + 4);
    for (std::int64_t total = 0; total <= bound; ++total)
      for (std::int64_t m = 0; m <= total; ++m) {
        Semi s{m, total - m};
        if (in_M(psi_inv(s, x))) return s;
      }
    throw LevelCapError("element is not in N within the search bound (or not in N at all)");
  }

  Element random_M(std::mt19937_64& rng, int bound) const {
    std::uniform_int_distribution<long> d(-bound, bound);
    Element v(dim());
    for (auto& c : v) c = Rational(d(rng));
    return v;
  }

  std::string format(const Element& x) const {
    std::string out = "(";
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (i) out += ",";
      out += format_rational(x[i]);
    }
    return out + ")";
  }
  std::string format_semi(const Semi& s) const {
    return "(" + std::to_string(s[0]) + "," + std::to_string(s[1]) + ")";
  }

  /// (m, n) with 0 <= m, n <= limit.
  std::vector<Semi> semis_up_to(long limit) const {
    std::vector<Semi> out;
    for (long m = 0; m <= limit; ++m)
      for (long n = 0; n <= limit; ++n) out.push_back({m, n});
    return out;
  }

  BigInt abs_det_f() const { return det_f_ < 0 ? BigInt(-det_f_) : det_f_; }
  BigInt abs_det_m() const { return det_m_ < 0 ? BigInt(-det_m_) : det_m_; }

private:
  struct Cache {
    std::mutex mutex;
    std::map<Semi, lattice::IntMatrix> hnf;
    std::map<Semi, lattice::IntMatrix> forward;
    std::map<Semi, lattice::RatMatrix> inverse;
  };

  static std::string format_matrix(const lattice::IntMatrix& a) {
    std::string out = "[";
    for (std::size_t i = 0; i < a.rows(); ++i) {
      out += i ? ",[" : "[";
      for (std::size_t j = 0; j < a.cols(); ++j) out += (j ? "," : "") + a(i, j).get_str();
      out += "]";
    }
    return out + "]";
  }

  const lattice::IntMatrix& forward_power(const Semi& s) const {
    {
      std::lock_guard lock(cache_->mutex);
      auto it = cache_->forward.find(s);
      if (it != cache_->forward.end()) return it->second;
    }
    lattice::IntMatrix p = lattice_basis(s);
    std::lock_guard lock(cache_->mutex);
    return cache_->forward.emplace(s, std::move(p)).first->second;
  }

  const lattice::RatMatrix& inverse_power(const Semi& s) const {
    {
      std::lock_guard lock(cache_->mutex);
      auto it = cache_->inverse.find(s);
      if (it != cache_->inverse.end()) return it->second;
    }
    validate(s);
    lattice::RatMatrix p = lattice::power(f_inv_, static_cast<std::size_t>(s[0])) *
                           lattice::power(m_inv_, static_cast<std::size_t>(s[1]));
    std::lock_guard lock(cache_->mutex);
    return cache_->inverse.emplace(s, std::move(p)).first->second;
  }

  lattice::IntMatrix f_;
  lattice::IntMatrix m_;
  Semi level_cap_;
  std::uint64_t enumeration_cap_;
  BigInt det_f_;
  BigInt det_m_;
  lattice::RatMatrix f_inv_;
  lattice::RatMatrix m_inv_;
  std::shared_ptr<Cache> cache_;
};

static_assert(HeckeFamily<BostConnes>);
static_assert(HeckeFamily<Padic>);
static_assert(HeckeFamily<MatrixFamily>);

// ---------------------------------------------------------------------------
// Operations shared by every family.

/// s <=_r t, i.e. t in S s.
template <HeckeFamily F>
bool precedes(const F& fam, const typename F::Semi& s, const typename F::Semi& t) {
  return fam.cofactor(s, t).has_value();
}

/// Least common upper bound of s and t under <=_r.
template <HeckeFamily F>
typename F::Semi join(const F& fam, const typename F::Semi& s, const typename F::Semi& t) {
  auto [u, v] = fam.ore_pair(s, t);
  return fam.compose(u, s);
}

/// Index as a 64-bit value; reports overflow instead of wrapping.
template <HeckeFamily F>
std::uint64_t index_u64(const F& fam, const typename F::Semi& s) {
  BigInt n = fam.index(s);
  if (mpz_fits_ulong_p(n.get_mpz_t()) == 0) throw DomainError("index overflows 64 bits: " + n.get_str());
  return n.get_ui();
}

/// { mM : psi_s^{-1}(m) M = nM } = { psi_s(n + k) M : k in coset_reps(s) },
/// as canonical N/M representatives.
template <HeckeFamily F>
std::vector<typename F::Element> solve_coset(const F& fam, const typename F::Semi& s,
                                             const typename F::Element& n) {
  std::vector<typename F::Element> out;
  const auto e = fam.identity();
  for (const auto& k : fam.coset_reps(s)) out.push_back(fam.canonical(fam.psi(s, fam.add(n, k)), e));
  std::sort(out.begin(), out.end(), ElementLess<typename F::Element>{});
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// An element g = den^{-1} num of the enveloping group G = S^{-1} S.
template <HeckeFamily F>
struct GroupElement {
  typename F::Semi den;
  typename F::Semi num;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement& a, const GroupElement& b) {
    if (a.den != b.den) return a.den < b.den ? std::weak_ordering::less : std::weak_ordering::greater;
    if (a.num != b.num) return a.num < b.num ? std::weak_ordering::less : std::weak_ordering::greater;
    return std::weak_ordering::equivalent;
  }
};

template <HeckeFamily F>
GroupElement<F> group_element(const F& fam, const typename F::Semi& den, const typename F::Semi& num) {
  fam.validate(den);
  fam.validate(num);
  auto [d, n] = fam.reduce(den, num);
  return {d, n};
}

template <HeckeFamily F>
GroupElement<F> from_semi(const F& fam, const typename F::Semi& s) {
  return group_element(fam, fam.identity(), s);
}

template <HeckeFamily F>
GroupElement<F> multiply(const F& fam, const GroupElement<F>& g, const GroupElement<F>& h) {
  // S is abelian for every shipped family, so s^{-1}t u^{-1}v = (su)^{-1}(tv).
  return group_element(fam, fam.compose(g.den, h.den), fam.compose(g.num, h.num));
}

template <HeckeFamily F>
GroupElement<F> inverse(const GroupElement<F>& g) {
  return {g.num, g.den};
}

template <HeckeFamily F>
bool is_identity(const F& fam, const GroupElement<F>& g) {
  return g.den == fam.identity() && g.num == fam.identity();
}

/// psi_g = psi_den^{-1} o psi_num.
template <HeckeFamily F>
typename F::Element psi_g(const F& fam, const GroupElement<F>& g, const typename F::Element& x) {
  return fam.psi_inv(g.den, fam.psi(g.num, x));
}

/// (n, g) in N x_psi G with (m,g)(n,h) = (m psi_g(n), gh).
template <HeckeFamily F>
struct SemidirectElement {
  typename F::Element n;
  GroupElement<F> g;
  friend bool operator==(const SemidirectElement&, const SemidirectElement&) = default;
};

template <HeckeFamily F>
SemidirectElement<F> multiply(const F& fam, const SemidirectElement<F>& a, const SemidirectElement<F>& b) {
  return {fam.add(a.n, psi_g(fam, a.g, b.n)), multiply(fam, a.g, b.g)};
}

template <HeckeFamily F>
SemidirectElement<F> inverse(const F& fam, const SemidirectElement<F>& a) {
  GroupElement<F> gi = inverse(a.g);
  return {psi_g(fam, gi, fam.negate(a.n)), gi};
}

/// A random element psi_s(k) + m of N with s drawn from `levels`.
template <HeckeFamily F>
typename F::Element random_element(const F& fam, std::mt19937_64& rng,
                                   const std::vector<typename F::Semi>& levels, int integer_bound = 3) {
  std::uniform_int_distribution<std::size_t> pick(0, levels.size() - 1);
  const auto& s = levels[pick(rng)];
  auto k = fam.canonical(fam.random_M(rng, 1 << 20), s);
  return fam.add(fam.psi(s, k), fam.random_M(rng, integer_bound));
}

} // namespace hecke
