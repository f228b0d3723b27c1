#pragma once

// Locally constant, compactly supported functions on N_inf, as a finite-level
// model of the dilated system (C*(N_inf), G, theta_*). A level-s function is
// constant on the cylinders (pi^s)^{-1}(c); Haar measure is normalised by
// mu(K) = 1, so each level-s cylinder has mass index(s)^{-1}.

#include <map>
#include <utility>

#include "hecke/error.hpp"
#include "hecke/grpalg.hpp"
#include "hecke/pairs.hpp"
#include "hecke/tower.hpp"

namespace hecke {

template <HeckeFamily F, Scalar T = ComplexRational>
class LocFun {
public:
  using Element = typename F::Element;
  using Semi = typename F::Semi;
  using Values = std::map<Element, T, ElementLess<Element>>;

  LocFun() = default;
  explicit LocFun(Semi level) : level_(std::move(level)) {}

  const Semi& level() const { return level_; }
  const Values& values() const { return values_; }
  bool is_zero() const { return values_.empty(); }

  /// Adds c on the cylinder over `coset`, which must be canonical at level().
  void accumulate(const Element& coset, const T& c) { add_at(coset, c); }
  void accumulate(Element&& coset, const T& c) { add_at(std::move(coset), c); }

  T value_on(const Element& coset) const {
    auto it = values_.find(coset);
    return it == values_.end() ? T{} : it->second;
  }

private:
  template <class K>
  void add_at(K&& coset, const T& c) {
    if (ScalarTraits<T>::is_zero(c)) return;
    auto [it, inserted] = values_.try_emplace(std::forward<K>(coset), c);
    if (!inserted) {
      it->second += c;
      if (ScalarTraits<T>::is_zero(it->second)) values_.erase(it);
    }
  }

  Semi level_{};
  Values values_;
};

template <Scalar T = ComplexRational, HeckeFamily F>
LocFun<F, T> indicator(const F& fam, const typename F::Semi& level, const typename F::Element& x,
                       const T& value = T(1)) {
  LocFun<F, T> f(level);
  f.accumulate(fam.canonical(x, level), value);
  return f;
}

/// chi_K, the indicator of the compact open subgroup K.
template <Scalar T = ComplexRational, HeckeFamily F>
LocFun<F, T> chi_K(const F& fam) {
  return indicator<T>(fam, fam.identity(), fam.zero());
}

/// The same function at a deeper level t = r * level: each cylinder splits
/// along psi_level^{-1}(coset_reps(r)).
template <HeckeFamily F, Scalar T>
LocFun<F, T> refine(const F& fam, const LocFun<F, T>& f, const typename F::Semi& t) {
  auto r = fam.cofactor(f.level(), t);
  if (!r)
    throw PrecisionError("cannot refine a level-" + fam.format_semi(f.level()) + " function to level " +
                         fam.format_semi(t));
  if (*r == fam.identity()) return f;
  fam.check_level(t);
  std::vector<typename F::Element> shifts;
  for (const auto& m : fam.coset_reps(*r)) shifts.push_back(fam.psi_inv(f.level(), m));
  LocFun<F, T> out(t);
  for (const auto& [c, v] : f.values())
    for (const auto& y : shifts) out.accumulate(fam.canonical(fam.add(c, y), t), v);
  return out;
}

template <HeckeFamily F, Scalar T>
typename F::Semi common_level(const F& fam, const LocFun<F, T>& f, const LocFun<F, T>& g) {
  return join(fam, f.level(), g.level());
}

/// Equality as functions: compared after refinement to the join level.
template <HeckeFamily F, Scalar T>
bool equal(const F& fam, const LocFun<F, T>& f, const LocFun<F, T>& g) {
  auto t = common_level(fam, f, g);
  return refine(fam, f, t).values() == refine(fam, g, t).values();
}

template <HeckeFamily F, Scalar T>
LocFun<F, T> add(const F& fam, const LocFun<F, T>& f, const LocFun<F, T>& g) {
  auto t = common_level(fam, f, g);
  LocFun<F, T> out = refine(fam, f, t);
  const auto gr = refine(fam, g, t);
  for (const auto& [c, v] : gr.values()) out.accumulate(c, v);
  return out;
}

template <HeckeFamily F, Scalar T>
LocFun<F, T> scale(const T& c, const LocFun<F, T>& f) {
  LocFun<F, T> out(f.level());
  for (const auto& [k, v] : f.values()) out.accumulate(k, c * v);
  return out;
}

template <HeckeFamily F, Scalar T>
LocFun<F, T> subtract(const F& fam, const LocFun<F, T>& f, const LocFun<F, T>& g) {
  return add(fam, f, scale(T(-1), g));
}

/// (f * g)(z) = integral f(w) g(w^{-1} z) dmu(w).
template <HeckeFamily F, Scalar T>
LocFun<F, T> convolve(const F& fam, const LocFun<F, T>& f, const LocFun<F, T>& g) {
  auto t = common_level(fam, f, g);
  auto fr = refine(fam, f, t);
  auto gr = refine(fam, g, t);
  const T mass = ScalarTraits<T>::from_rational(Rational(1) / Rational(fam.index(t)));
  LocFun<F, T> out(t);
  for (const auto& [a, fa] : fr.values()) {
    const T weighted = mass * fa;
    for (const auto& [b, gb] : gr.values()) out.accumulate(fam.canonical(fam.add(a, b), t), weighted * gb);
  }
  return out;
}

/// f^*(x) = conj f(x^{-1}); N_inf is unimodular so no modular factor enters.
template <HeckeFamily F, Scalar T>
LocFun<F, T> involution(const F& fam, const LocFun<F, T>& f) {
  LocFun<F, T> out(f.level());
  for (const auto& [c, v] : f.values())
    out.accumulate(fam.canonical(fam.negate(c), f.level()), ScalarTraits<T>::conj(v));
  return out;
}

/// i(delta_{nM}) = chi_{j(n)K}.
template <HeckeFamily F, Scalar T>
LocFun<F, T> embed_i(const F& fam, const GroupAlgebraElement<F, T>& a) {
  LocFun<F, T> out(fam.identity());
  for (const auto& [k, c] : a.terms()) out.accumulate(k, c);
  return out;
}

/// Inverse of embed_i on level-e functions.
template <HeckeFamily F, Scalar T>
GroupAlgebraElement<F, T> restrict_to_quotient(const F& fam, const LocFun<F, T>& f) {
  if (f.level() != fam.identity())
    throw PrecisionError("function at level " + fam.format_semi(f.level()) + " is not in the image of i");
  GroupAlgebraElement<F, T> a;
  for (const auto& [k, c] : f.values()) a.accumulate(k, c);
  return a;
}

/// (theta_*)_s f = index(s)^{-1} f o theta_s^{-1}. The input is refined to
/// T = u*level = v*s (ore_pair) and lands at level v.
template <HeckeFamily F, Scalar T>
LocFun<F, T> theta_star(const F& fam, const typename F::Semi& s, const LocFun<F, T>& f) {
  auto [u, v] = fam.ore_pair(f.level(), s);
  auto fr = refine(fam, f, fam.compose(u, f.level()));
  const T weight = ScalarTraits<T>::from_rational(Rational(1) / Rational(fam.index(s)));
  LocFun<F, T> out(v);
  for (const auto& [y, val] : fr.values()) out.accumulate(fam.canonical(fam.psi(s, y), v), weight * val);
  return out;
}

/// (theta_*)_s^{-1} f = index(s) f o theta_s, raising the level by s.
template <HeckeFamily F, Scalar T>
LocFun<F, T> theta_star_inv(const F& fam, const typename F::Semi& s, const LocFun<F, T>& f) {
  auto level = fam.compose(f.level(), s);
  fam.check_level(level);
  const T weight = ScalarTraits<T>::from_rational(Rational(fam.index(s)));
  LocFun<F, T> out(level);
  for (const auto& [y, val] : f.values()) out.accumulate(fam.canonical(fam.psi_inv(s, y), level), weight * val);
  return out;
}

template <HeckeFamily F, Scalar T>
LocFun<F, T> theta_star_g(const F& fam, const GroupElement<F>& g, const LocFun<F, T>& f) {
  return theta_star_inv(fam, g.den, theta_star(fam, g.num, f));
}

/// delta_x * f: f translated by x in N_inf; x must be known at level(f) or deeper.
template <HeckeFamily F, Scalar T>
LocFun<F, T> translate(const F& fam, const TruncatedElement<F>& x, const LocFun<F, T>& f) {
  auto xs = project(fam, x, f.level());
  LocFun<F, T> out(f.level());
  for (const auto& [c, v] : f.values()) out.accumulate(fam.canonical(fam.add(c, xs.coset), f.level()), v);
  return out;
}

template <HeckeFamily F, Scalar T>
LocFun<F, T> translate(const F& fam, const ExactElement<F>& x, const LocFun<F, T>& f) {
  return translate(fam, project(fam, x, f.level()), f);
}

/// f(x) for a point known at level(f) or deeper.
template <HeckeFamily F, Scalar T>
T evaluate(const F& fam, const LocFun<F, T>& f, const TruncatedElement<F>& x) {
  return f.value_on(project(fam, x, f.level()).coset);
}

/// Haar integral with mu(K) = 1.
template <HeckeFamily F, Scalar T>
T integrate(const F& fam, const LocFun<F, T>& f) {
  T total{};
  for (const auto& [c, v] : f.values()) total += v;
  return ScalarTraits<T>::from_rational(Rational(1) / Rational(fam.index(f.level()))) * total;
}

} // namespace hecke
