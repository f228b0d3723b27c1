#pragma once

// The inverse system N / psi_s^{-1}(M) over (S, <=_r) and finite-precision
// elements of its limit N_inf. A truncated element stores one coset at its
// deepest known level; every shallower coset is determined by projection.

#include <string>

#include "hecke/error.hpp"
#include "hecke/pairs.hpp"

namespace hecke {

template <HeckeFamily F>
struct TruncatedElement {
  typename F::Semi level;
  typename F::Element coset; // canonical representative modulo psi_level^{-1}(M)

  friend bool operator==(const TruncatedElement&, const TruncatedElement&) = default;
};

/// j(n): the image of n in N_inf, evaluable at every level.
template <HeckeFamily F>
struct ExactElement {
  typename F::Element value;
};

template <HeckeFamily F>
TruncatedElement<F> truncated(const F& fam, const typename F::Semi& level, const typename F::Element& x) {
  fam.validate(level);
  return {level, fam.canonical(x, level)};
}

template <HeckeFamily F>
ExactElement<F> embed_j(const F&, const typename F::Element& n) {
  return {n};
}

/// pi^s; s must lie below the stored level.
template <HeckeFamily F>
TruncatedElement<F> project(const F& fam, const TruncatedElement<F>& x, const typename F::Semi& s) {
  if (!precedes(fam, s, x.level))
    throw PrecisionError("element known at level " + fam.format_semi(x.level) +
                         " cannot be projected to level " + fam.format_semi(s));
  return {s, fam.canonical(x.coset, s)};
}

template <HeckeFamily F>
TruncatedElement<F> project(const F& fam, const ExactElement<F>& x, const typename F::Semi& s) {
  return truncated(fam, s, x.value);
}

/// Membership in (the truncation of) K: the coset has a representative in M.
template <HeckeFamily F>
bool in_K(const F& fam, const TruncatedElement<F>& x) {
  return fam.in_M(x.coset);
}

/// Group law at a fixed level.
template <HeckeFamily F>
TruncatedElement<F> add(const F& fam, const TruncatedElement<F>& a, const TruncatedElement<F>& b) {
  if (a.level != b.level) throw DomainError("adding truncated elements at different levels");
  return {a.level, fam.canonical(fam.add(a.coset, b.coset), a.level)};
}

template <HeckeFamily F>
TruncatedElement<F> negate(const F& fam, const TruncatedElement<F>& a) {
  return {a.level, fam.canonical(fam.negate(a.coset), a.level)};
}

/// theta_t on an element known at level s t, giving its level-s coset:
/// pi^s o theta_t = psi_t o pi^{st}.
template <HeckeFamily F>
TruncatedElement<F> theta_apply(const F& fam, const typename F::Semi& t, const TruncatedElement<F>& x) {
  auto s = fam.cofactor(t, x.level);
  if (!s)
    throw PrecisionError("theta_" + fam.format_semi(t) + " needs an element known at a level above " +
                         fam.format_semi(t) + ", got level " + fam.format_semi(x.level));
  return {*s, fam.canonical(fam.psi(t, x.coset), *s)};
}

/// theta_t^{-1}: level s goes to level s t, psi_t^{-1} o pi^s = pi^{st} o theta_t^{-1}.
template <HeckeFamily F>
TruncatedElement<F> theta_inv_apply(const F& fam, const typename F::Semi& t, const TruncatedElement<F>& x) {
  auto level = fam.compose(x.level, t);
  return {level, fam.canonical(fam.psi_inv(t, x.coset), level)};
}

/// theta_g for g = den^{-1} num.
template <HeckeFamily F>
TruncatedElement<F> theta_g(const F& fam, const GroupElement<F>& g, const TruncatedElement<F>& x) {
  return theta_inv_apply(fam, g.den, theta_apply(fam, g.num, x));
}

template <HeckeFamily F>
ExactElement<F> theta_apply(const F& fam, const typename F::Semi& t, const ExactElement<F>& x) {
  return {fam.psi(t, x.value)};
}

template <HeckeFamily F>
ExactElement<F> theta_inv_apply(const F& fam, const typename F::Semi& t, const ExactElement<F>& x) {
  return {fam.psi_inv(t, x.value)};
}

} // namespace hecke
