#pragma once

// The *-algebra C[N/M] spanned by the unitaries delta_{nM}, and the
// injective endomorphisms
//   alpha_s(delta_{nM}) = |M : psi_s^{-1}(M)|^{-1} sum_{psi_s^{-1}(m)M = nM} delta_{mM}.

#include <map>
#include <utility>

#include "hecke/number.hpp"
#include "hecke/pairs.hpp"

namespace hecke {

template <HeckeFamily F, Scalar T = ComplexRational>
class GroupAlgebraElement {
public:
  using Element = typename F::Element;
  using Terms = std::map<Element, T, ElementLess<Element>>;

  GroupAlgebraElement() = default;

  /// Adds c delta_{key}; key must already be a canonical N/M representative.
  void accumulate(const Element& key, const T& c) { add_at(key, c); }
  void accumulate(Element&& key, const T& c) { add_at(std::move(key), c); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  T coefficient(const Element& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? T{} : it->second;
  }

  GroupAlgebraElement& operator+=(const GroupAlgebraElement& o) {
    for (const auto& [k, c] : o.terms_) accumulate(k, c);
    return *this;
  }
  friend GroupAlgebraElement operator+(GroupAlgebraElement a, const GroupAlgebraElement& b) { return a += b; }
  friend GroupAlgebraElement operator-(GroupAlgebraElement a, const GroupAlgebraElement& b) {
    for (const auto& [k, c] : b.terms_) a.accumulate(k, -c);
    return a;
  }
  friend GroupAlgebraElement operator*(const T& c, const GroupAlgebraElement& a) {
    GroupAlgebraElement r;
    for (const auto& [k, v] : a.terms_) r.accumulate(k, c * v);
    return r;
  }
  friend bool operator==(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
    return a.terms_ == b.terms_;
  }

private:
  template <class K>
  void add_at(K&& key, const T& c) {
    if (ScalarTraits<T>::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(std::forward<K>(key), c);
    if (!inserted) {
      it->second += c;
      if (ScalarTraits<T>::is_zero(it->second)) terms_.erase(it);
    }
  }

  Terms terms_;
};

template <Scalar T = ComplexRational, HeckeFamily F>
GroupAlgebraElement<F, T> delta(const F& fam, const typename F::Element& n, const T& c = T(1)) {
  GroupAlgebraElement<F, T> a;
  a.accumulate(fam.canonical(n, fam.identity()), c);
  return a;
}

template <Scalar T = ComplexRational, HeckeFamily F>
GroupAlgebraElement<F, T> unit(const F& fam) {
  return delta<T>(fam, fam.zero());
}

/// Convolution: delta_a delta_b = delta_{ab}.
template <HeckeFamily F, Scalar T>
GroupAlgebraElement<F, T> multiply(const F& fam, const GroupAlgebraElement<F, T>& a,
                                   const GroupAlgebraElement<F, T>& b) {
  GroupAlgebraElement<F, T> r;
  const auto e = fam.identity();
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) r.accumulate(fam.canonical(fam.add(ka, kb), e), ca * cb);
  return r;
}

/// delta_a^* = delta_{a^{-1}}, coefficients conjugated.
template <HeckeFamily F, Scalar T>
GroupAlgebraElement<F, T> involution(const F& fam, const GroupAlgebraElement<F, T>& a) {
  GroupAlgebraElement<F, T> r;
  const auto e = fam.identity();
  for (const auto& [k, c] : a.terms()) r.accumulate(fam.canonical(fam.negate(k), e), ScalarTraits<T>::conj(c));
  return r;
}

template <HeckeFamily F, Scalar T>
GroupAlgebraElement<F, T> alpha(const F& fam, const typename F::Semi& s, const GroupAlgebraElement<F, T>& a) {
  const T weight = ScalarTraits<T>::from_rational(Rational(1, 1) / Rational(fam.index(s)));
  GroupAlgebraElement<F, T> r;
  for (const auto& [k, c] : a.terms()) {
    const T wc = weight * c;
    for (const auto& m : solve_coset(fam, s, k)) r.accumulate(m, wc);
  }
  return r;
}

} // namespace hecke
