#pragma once

// The minimal unitary dilation of an isometric representation V of S, built
// symbolically. A vector is a finite combination of symbols (s, h) standing
// for U_s^* h with h in H. Two facts drive every computation:
//   <U_s^* h, U_t^* k> = <V_u h, V_v k>  whenever u s = v t,
//   U_{us}^* V_u h = U_s^* h,
// so any finite vector can be pushed to a single symbol (T, h_T) at the join
// level T and compared there, in H, without cancellation.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hecke/error.hpp"
#include "hecke/pairs.hpp"
#include "hecke/repspace.hpp"

namespace hecke {

template <HeckeFamily F, class HVector>
struct DilationTerm {
  Complex coeff;
  typename F::Semi s;
  HVector h;
};

template <HeckeFamily F, class HVector>
class DilationVector {
public:
  using Term = DilationTerm<F, HVector>;

  DilationVector() = default;
  explicit DilationVector(std::vector<Term> terms) : terms_(std::move(terms)) {}

  static DilationVector symbol(const typename F::Semi& s, HVector h, Complex c = 1.0) {
    return DilationVector({Term{c, s, std::move(h)}});
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  DilationVector& operator+=(const DilationVector& o) {
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    return *this;
  }
  friend DilationVector operator+(DilationVector a, const DilationVector& b) { return a += b; }
  friend DilationVector operator-(DilationVector a, const DilationVector& b) {
    for (const auto& t : b.terms_) a.terms_.push_back(Term{-t.coeff, t.s, t.h});
    return a;
  }
  friend DilationVector operator*(const Complex& c, DilationVector a) {
    for (auto& t : a.terms_) t.coeff *= c;
    return a;
  }

private:
  std::vector<Term> terms_;
};

/// The dilation space of a covariant representation (pi_Y, V) on H, together
/// with the unitary representation U of G and the representation W of N.
template <HeckeFamily F, class HSpace>
class DilationSpace {
public:
  using Rep = CovariantRep<F, HSpace>;
  using HVector = typename HSpace::Vector;
  using Vector = DilationVector<F, HVector>;
  using Semi = typename F::Semi;
  using Element = typename F::Element;

  explicit DilationSpace(Rep rep) : rep_(std::make_shared<const Rep>(std::move(rep))) {}

  const Rep& base() const { return *rep_; }
  const F& family() const { return rep_->family; }
  const HSpace& base_space() const { return rep_->space; }

  /// h in H as the symbol (e, h).
  Vector embed(const HVector& h) const { return Vector::symbol(family().identity(), h); }

  Vector symbol(const Semi& s, const HVector& h) const {
    family().validate(s);
    return Vector::symbol(s, h);
  }

  /// Sums the terms that share a level: sum_i c_i (s, h_i) = (s, sum_i c_i h_i).
  Vector collect(const Vector& v) const {
    std::map<Semi, HVector> by_level;
    for (const auto& t : v.terms()) {
      auto [it, inserted] = by_level.try_emplace(t.s, t.coeff * t.h);
      if (!inserted) it->second = it->second + t.coeff * t.h;
    }
    std::vector<typename Vector::Term> out;
    out.reserve(by_level.size());
    for (auto& [s, h] : by_level) out.push_back({Complex(1.0), s, std::move(h)});
    return Vector(std::move(out));
  }

  /// The least level at which every term of v can be written.
  Semi join_level(const Vector& v) const {
    Semi t = family().identity();
    for (const auto& term : v.terms()) t = join(family(), t, term.s);
    return t;
  }

  /// h_T with v = U_T^* h_T, for a level T above every term.
  HVector flatten_at(const Vector& v, const Semi& level) const {
    HVector out{};
    for (const auto& term : v.terms()) {
      auto u = family().cofactor(term.s, level);
      if (!u)
        throw PrecisionError("term at level " + family().format_semi(term.s) + " does not lie below " +
                             family().format_semi(level));
      out = out + term.coeff * rep_->apply_V(*u, term.h);
    }
    return out;
  }

  std::pair<Semi, HVector> flatten(const Vector& v) const {
    Semi t = join_level(v);
    return {t, flatten_at(v, t)};
  }

  /// Sesquilinear extension of <(s,h),(t,k)> = <V_u h, V_v k>, (u,v) = ore_pair(s,t).
  Complex inner(const Vector& a, const Vector& b) const {
    Complex acc{};
    for (const auto& x : a.terms())
      for (const auto& y : b.terms()) {
        auto [u, v] = family().ore_pair(x.s, y.s);
        acc += std::conj(x.coeff) * y.coeff *
               rep_->space.inner(rep_->apply_V(u, x.h), rep_->apply_V(v, y.h));
      }
    return acc;
  }

  double norm(const Vector& v) const {
    auto [t, h] = flatten(v);
    return base_space().norm(h);
  }

  double distance(const Vector& a, const Vector& b) const { return norm(a - b); }

  /// U_r^* (s, h) = (s r, h).
  Vector apply_Ustar(const Semi& r, const Vector& v) const {
    std::vector<typename Vector::Term> out;
    out.reserve(v.terms().size());
    for (const auto& t : v.terms()) out.push_back({t.coeff, family().compose(t.s, r), t.h});
    return Vector(std::move(out));
  }

  /// U_r (s, h) = (a, V_b h) with a r = b s.
  Vector apply_U(const Semi& r, const Vector& v) const {
    std::vector<typename Vector::Term> out;
    out.reserve(v.terms().size());
    for (const auto& t : v.terms()) {
      auto [a, b] = family().ore_pair(r, t.s);
      out.push_back({t.coeff, a, rep_->apply_V(b, t.h)});
    }
    return Vector(std::move(out));
  }

  /// U_g = U_den^* U_num.
  Vector apply_U(const GroupElement<F>& g, const Vector& v) const {
    return apply_Ustar(g.den, apply_U(g.num, v));
  }

  /// W_n U_s^* h = U_s^* Y_{psi_s(n)M} h.
  Vector apply_W(const Element& n, const Vector& v) const {
    std::vector<typename Vector::Term> out;
    out.reserve(v.terms().size());
    for (const auto& t : v.terms()) out.push_back({t.coeff, t.s, rep_->apply_Y(family().psi(t.s, n), t.h)});
    return Vector(std::move(out));
  }

  /// P_s on the block U_s^* H, by averaging W over M / psi_s^{-1}(M):
  ///   P_s (s, h) = index(s)^{-1} sum_{m in coset_reps(s)} W_m (s, h).
  Vector average_block(const Semi& s, const HVector& h) const {
    std::vector<std::function<Vector(const Vector&)>> group;
    for (const auto& m : family().coset_reps(s))
      group.emplace_back([this, m](const Vector& x) { return apply_W(m, x); });
    return average_projection(group, Vector::symbol(s, h));
  }

  /// Orthogonal projection onto H^M, term by term: (s, h) -> (e, V_s^* h).
  Vector project_fixed(const Vector& v) const {
    std::vector<typename Vector::Term> out;
    out.reserve(v.terms().size());
    for (const auto& t : v.terms()) out.push_back({t.coeff, family().identity(), rep_->apply_Vstar(t.s, t.h)});
    return Vector(std::move(out));
  }

private:
  std::shared_ptr<const Rep> rep_;
};

template <HeckeFamily F, class HSpace>
DilationSpace<F, HSpace> dilate(CovariantRep<F, HSpace> rep) {
  return DilationSpace<F, HSpace>(std::move(rep));
}

/// Result of restricting U and compressing W to the M-fixed vectors.
template <HeckeFamily F, class HSpace>
struct CompressedRep {
  using Space = DilationSpace<F, HSpace>;
  CovariantRep<F, Space> rep;
  std::vector<typename F::Semi> truncation;
  /// Largest distance, over the blocks visited so far, between an averaged
  /// block vector and the embedded copy of H. Nonzero means the truncated
  /// fixed space is strictly larger than H.
  std::shared_ptr<double> excess;
};

/// Restriction-compression of a dilation back to a covariant representation on
/// H^M (realised inside the dilation space). Every block level that V'^*
/// visits must belong to `truncation`.
template <HeckeFamily F, class HSpace>
CompressedRep<F, HSpace> restrict_compress(const DilationSpace<F, HSpace>& dil,
                                           std::vector<typename F::Semi> truncation) {
  using Space = DilationSpace<F, HSpace>;
  using Vector = typename Space::Vector;
  using Semi = typename F::Semi;
  auto excess = std::make_shared<double>(0.0);
  std::sort(truncation.begin(), truncation.end());

  auto compress = [dil, truncation, excess](const Vector& v) {
    Vector out;
    const auto& fam = dil.family();
    for (const auto& t : v.terms()) {
      if (!std::binary_search(truncation.begin(), truncation.end(), t.s))
        throw PrecisionError("block level " + fam.format_semi(t.s) + " is outside the truncation");
      auto averaged = dil.average_block(t.s, t.h);
      // averaged = (s, k); it lies in H exactly when k is in the range of V_s.
      auto k = dil.flatten_at(averaged, t.s);
      const auto& base = dil.base();
      auto k_fixed = base.apply_Vstar(t.s, k);
      double gap = base.space.distance(k, base.apply_V(t.s, k_fixed));
      *excess = std::max(*excess, gap);
      out += Vector::symbol(fam.identity(), k_fixed, t.coeff);
    }
    return out;
  };

  CovariantRep<F, Space> rep{dil.family(), dil, {}, {}, {}};
  rep.apply_Y = [dil](const typename F::Element& n, const Vector& v) { return dil.apply_W(n, v); };
  rep.apply_V = [dil](const Semi& s, const Vector& v) { return dil.apply_U(s, v); };
  rep.apply_Vstar = [dil, compress](const Semi& s, const Vector& v) { return compress(dil.apply_Ustar(s, v)); };
  return {std::move(rep), std::move(truncation), std::move(excess)};
}

/// The identification of the dilation of a compressed representation with the
/// original dilation space: (s, h') -> U_s^* h'.
template <HeckeFamily F, class HSpace>
typename DilationSpace<F, HSpace>::Vector identify_redilation(
    const DilationSpace<F, HSpace>& original,
    const typename DilationSpace<F, DilationSpace<F, HSpace>>::Vector& v) {
  typename DilationSpace<F, HSpace>::Vector out;
  for (const auto& t : v.terms()) out += t.coeff * original.apply_Ustar(t.s, t.h);
  return out;
}

} // namespace hecke
