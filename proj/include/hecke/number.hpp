#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "hecke/error.hpp"

namespace hecke {

using BigInt = mpz_class;
using Rational = mpq_class;
using Complex = std::complex<double>;

inline Rational make_rational(const BigInt& num, const BigInt& den = 1) {
  if (den == 0) throw DomainError("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Largest integer <= r.
inline BigInt floor(const Rational& r) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

/// Representative of r + mZ in [0, m), m > 0.
inline Rational mod(const Rational& r, const BigInt& m) {
  Rational q = r / Rational(m);
  return r - Rational(m) * Rational(floor(q));
}

inline BigInt mod(const BigInt& a, const BigInt& m) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

inline BigInt pow(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline bool fits_int64(const BigInt& v) {
  return mpz_fits_slong_p(v.get_mpz_t()) != 0;
}

inline std::int64_t to_int64(const BigInt& v) {
  if (!fits_int64(v)) throw DomainError("integer does not fit in 64 bits: " + v.get_str());
  return v.get_si();
}

/// Inverse of a modulo m; throws when gcd(a, m) != 1.
inline BigInt mod_inverse(const BigInt& a, const BigInt& m) {
  BigInt r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw DomainError("no inverse of " + a.get_str() + " mod " + m.get_str());
  return r;
}

/// Exponent of the prime p in n (n != 0).
inline unsigned long valuation(const BigInt& n, const BigInt& p) {
  if (n == 0) throw DomainError("valuation of zero");
  BigInt q;
  return mpz_remove(q.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
}

/// "p/q" or "p"; whitespace is not accepted.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s, 10));
    BigInt num(s.substr(0, slash), 10);
    BigInt den(s.substr(slash + 1), 10);
    return make_rational(num, den);
  } catch (const std::invalid_argument&) {
    throw DomainError("not a rational: '" + s + "'");
  }
}

inline std::string format_rational(const Rational& r) {
  if (is_integer(r)) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline double to_double(const Rational& r) { return r.get_d(); }

/// Exact complex number with rational parts.
struct ComplexRational {
  Rational re;
  Rational im;

  ComplexRational() = default;
  ComplexRational(Rational r) : re(std::move(r)) {} // NOLINT(google-explicit-constructor)
  ComplexRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  ComplexRational(long v) : re(v) {} // NOLINT(google-explicit-constructor)

  ComplexRational& operator+=(const ComplexRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  ComplexRational& operator-=(const ComplexRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  ComplexRational& operator*=(const ComplexRational& o) {
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  friend ComplexRational operator+(ComplexRational a, const ComplexRational& b) { return a += b; }
  friend ComplexRational operator-(ComplexRational a, const ComplexRational& b) { return a -= b; }
  friend ComplexRational operator*(ComplexRational a, const ComplexRational& b) { return a *= b; }
  friend ComplexRational operator-(const ComplexRational& a) { return {-a.re, -a.im}; }
  friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

/// Uniform access to the two coefficient backends: exact rational pairs and
/// double-precision complex numbers.
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<ComplexRational> {
  static constexpr bool exact = true;
  static bool is_zero(const ComplexRational& v) { return v.re == 0 && v.im == 0; }
  static ComplexRational conj(const ComplexRational& v) { return {v.re, -v.im}; }
  static ComplexRational from_rational(const Rational& r) { return {r}; }
  static Complex to_complex(const ComplexRational& v) { return {v.re.get_d(), v.im.get_d()}; }
  static double abs(const ComplexRational& v) { return std::abs(to_complex(v)); }
};

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static bool is_zero(const Complex& v) { return v == Complex{}; }
  static Complex conj(const Complex& v) { return std::conj(v); }
  static Complex from_rational(const Rational& r) { return {r.get_d(), 0.0}; }
  static Complex to_complex(const Complex& v) { return v; }
  static double abs(const Complex& v) { return std::abs(v); }
};

template <class T>
concept Scalar = requires { ScalarTraits<T>::exact; };

} // namespace hecke
