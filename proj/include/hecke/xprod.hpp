#pragma once

// A finite-level model of the crossed product C_c(N_inf) x_theta G: finite sums
// of f u_g with f locally constant. The corner p (B x G) p with p = chi_K is
// identified with C[N/M] x_alpha S through v_s = u_s p, and X = (B x G) p is
// the bimodule that induces covariant representations up to the dilation.

#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "hecke/autodil.hpp"
#include "hecke/dilate.hpp"
#include "hecke/error.hpp"
#include "hecke/grpalg.hpp"
#include "hecke/pairs.hpp"
#include "hecke/repspace.hpp"

namespace hecke {

template <HeckeFamily F, Scalar T = ComplexRational>
class CrossedElement {
public:
  using Group = GroupElement<F>;
  using Fun = LocFun<F, T>;
  using Terms = std::map<Group, Fun>;

  CrossedElement() = default;

  static CrossedElement term(const Group& g, Fun f) {
    CrossedElement d;
    d.terms_.emplace(g, std::move(f));
    return d;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void accumulate(const F& fam, const Group& g, const Fun& f) {
    if (f.is_zero()) return;
    auto it = terms_.find(g);
    if (it == terms_.end()) {
      terms_.emplace(g, f);
      return;
    }
    it->second = hecke::add(fam, it->second, f);
    if (it->second.is_zero()) terms_.erase(it);
  }

private:
  Terms terms_;
};

template <HeckeFamily F, Scalar T>
CrossedElement<F, T> add(const F& fam, CrossedElement<F, T> a, const CrossedElement<F, T>& b) {
  for (const auto& [g, f] : b.terms()) a.accumulate(fam, g, f);
  return a;
}

template <HeckeFamily F, Scalar T>
CrossedElement<F, T> scale(const F& fam, const T& c, const CrossedElement<F, T>& a) {
  CrossedElement<F, T> out;
  for (const auto& [g, f] : a.terms()) out.accumulate(fam, g, scale(c, f));
  return out;
}

/// Equality as elements of the crossed product: every u_g coefficient agrees
/// as a function.
template <HeckeFamily F, Scalar T>
bool equal(const F& fam, const CrossedElement<F, T>& a, const CrossedElement<F, T>& b) {
  auto coefficient = [&](const CrossedElement<F, T>& d, const GroupElement<F>& g) {
    auto it = d.terms().find(g);
    return it == d.terms().end() ? LocFun<F, T>(fam.identity()) : it->second;
  };
  for (const auto& [g, f] : a.terms())
    if (!equal(fam, f, coefficient(b, g))) return false;
  for (const auto& [g, f] : b.terms())
    if (!equal(fam, coefficient(a, g), f)) return false;
  return true;
}

/// (f u_g)(f' u_h) = (f * theta_{*g}(f')) u_{gh}.
template <HeckeFamily F, Scalar T>
CrossedElement<F, T> multiply(const F& fam, const CrossedElement<F, T>& a, const CrossedElement<F, T>& b) {
  CrossedElement<F, T> out;
  for (const auto& [g, f] : a.terms())
    for (const auto& [h, fb] : b.terms())
      out.accumulate(fam, multiply(fam, g, h), convolve(fam, f, theta_star_g(fam, g, fb)));
  return out;
}

/// (f u_g)^* = theta_{*g^{-1}}(f^*) u_{g^{-1}}.
template <HeckeFamily F, Scalar T>
CrossedElement<F, T> involution(const F& fam, const CrossedElement<F, T>& a) {
  CrossedElement<F, T> out;
  for (const auto& [g, f] : a.terms()) {
    auto gi = inverse(g);
    out.accumulate(fam, gi, theta_star_g(fam, gi, involution(fam, f)));
  }
  return out;
}

/// u_g d for the multiplier u_g.
template <HeckeFamily F, Scalar T>
CrossedElement<F, T> left_u(const F& fam, const GroupElement<F>& g, const CrossedElement<F, T>& d) {
  CrossedElement<F, T> out;
  for (const auto& [h, f] : d.terms()) out.accumulate(fam, multiply(fam, g, h), theta_star_g(fam, g, f));
  return out;
}

/// delta_{j(n)} d for the multiplier delta_{j(n)}.
template <HeckeFamily F, Scalar T>
CrossedElement<F, T> left_translate(const F& fam, const typename F::Element& n, const CrossedElement<F, T>& d) {
  CrossedElement<F, T> out;
  for (const auto& [g, f] : d.terms()) out.accumulate(fam, g, translate(fam, embed_j(fam, n), f));
  return out;
}

template <Scalar T = ComplexRational, HeckeFamily F>
CrossedElement<F, T> from_function(const F& fam, const LocFun<F, T>& f) {
  CrossedElement<F, T> out;
  out.accumulate(fam, from_semi(fam, fam.identity()), f);
  return out;
}

/// i(a) as an element of B x G.
template <HeckeFamily F, Scalar T>
CrossedElement<F, T> embed_i_crossed(const F& fam, const GroupAlgebraElement<F, T>& a) {
  return from_function(fam, embed_i(fam, a));
}

/// p = i(1) = chi_K.
template <Scalar T = ComplexRational, HeckeFamily F>
CrossedElement<F, T> projection_p(const F& fam) {
  return from_function(fam, chi_K<T>(fam));
}

/// v_s = u_s p = theta_{*s}(chi_K) u_s.
template <Scalar T = ComplexRational, HeckeFamily F>
CrossedElement<F, T> isom_v(const F& fam, const typename F::Semi& s) {
  return left_u(fam, from_semi(fam, s), projection_p<T>(fam));
}

/// u_s^* p, the symbol (s, .) of the bimodule X.
template <Scalar T = ComplexRational, HeckeFamily F>
CrossedElement<F, T> ustar_p(const F& fam, const typename F::Semi& s) {
  return left_u(fam, inverse(from_semi(fam, s)), projection_p<T>(fam));
}

/// v_s^* i(a) v_t, or u_s^* i(a) u_t p when used as an element of X.
template <HeckeFamily F, Scalar T>
struct CornerTriple {
  typename F::Semi s;
  GroupAlgebraElement<F, T> a;
  typename F::Semi t;
};

template <HeckeFamily F, Scalar T>
CrossedElement<F, T> corner_element(const F& fam, const CornerTriple<F, T>& x) {
  auto left = involution(fam, isom_v<T>(fam, x.s));
  return multiply(fam, multiply(fam, left, embed_i_crossed(fam, x.a)), isom_v<T>(fam, x.t));
}

template <HeckeFamily F, Scalar T>
CrossedElement<F, T> corner_element(const F& fam, const std::vector<CornerTriple<F, T>>& xs) {
  CrossedElement<F, T> out;
  for (const auto& x : xs) out = add(fam, out, corner_element(fam, x));
  return out;
}

/// u_s^* i(a) u_t p as an element of X.
template <HeckeFamily F, Scalar T>
CrossedElement<F, T> x_element(const F& fam, const CornerTriple<F, T>& x) {
  auto right = left_u(fam, from_semi(fam, x.t), projection_p<T>(fam));
  return left_u(fam, inverse(from_semi(fam, x.s)), multiply(fam, embed_i_crossed(fam, x.a), right));
}

/// Writes d = d p in X as a sum of u_T^* i(a) u_t p. For the component f u_g
/// with g = den^{-1} num and f at level L: T = join(L, den) = w den, the
/// refined f equals theta_{*T}^{-1}(i(a)) for a level-e function i(a), and
/// t = w num.
template <HeckeFamily F, Scalar T>
std::vector<CornerTriple<F, T>> x_decompose(const F& fam, const CrossedElement<F, T>& d) {
  std::vector<CornerTriple<F, T>> out;
  for (const auto& [g, f] : d.terms()) {
    auto level = join(fam, f.level(), g.den);
    auto w = fam.cofactor(g.den, level);
    auto a = restrict_to_quotient(fam, theta_star(fam, level, refine(fam, f, level)));
    out.push_back({level, std::move(a), fam.compose(*w, g.num)});
  }
  return out;
}

/// Decomposition of an element of the corner p (B x G) p into v_s^* i(a) v_t.
template <HeckeFamily F, Scalar T>
std::vector<CornerTriple<F, T>> corner_decompose(const F& fam, const CrossedElement<F, T>& d) {
  const auto p = projection_p<T>(fam);
  if (!equal(fam, multiply(fam, multiply(fam, p, d), p), d)) throw NotInCornerError("element is not in the corner p(BxG)p");
  return x_decompose(fam, d);
}

/// sum V_s^* pi_Y(a) V_t v.
template <HeckeFamily F, class Space, Scalar T>
typename Space::Vector eval_corner(const CovariantRep<F, Space>& rep, const std::vector<CornerTriple<F, T>>& triples,
                                   const typename Space::Vector& v) {
  typename Space::Vector out{};
  for (const auto& x : triples) out = out + rep.apply_Vstar(x.s, apply_pi(rep, x.a, rep.apply_V(x.t, v)));
  return out;
}

// ---------------------------------------------------------------------------
// Representations of B x G.

/// A representation of B x G realised as evaluable actions, together with the
/// unitaries U_g and the translations by j(N) it integrates.
template <HeckeFamily F, class Space>
struct CrossedRep {
  using Vector = typename Space::Vector;
  F family;
  Space space;
  std::function<Vector(const CrossedElement<F>&, const Vector&)> act;
  std::function<Vector(const GroupElement<F>&, const Vector&)> apply_U;
  std::function<Vector(const typename F::Element&, const Vector&)> apply_Wj;
};

namespace detail {

/// x (x) h in X (x) H, sent to the symbol form of the dilation space.
template <HeckeFamily F, class HSpace>
typename DilationSpace<F, HSpace>::Vector induce_term(const DilationSpace<F, HSpace>& dil, const CrossedElement<F>& x,
                                                      const typename HSpace::Vector& h, Complex c) {
  using Vector = typename DilationSpace<F, HSpace>::Vector;
  Vector out;
  const auto& base = dil.base();
  for (const auto& tr : x_decompose(dil.family(), x))
    out += Vector::symbol(tr.s, apply_pi(base, tr.a, base.apply_V(tr.t, h)), c);
  return out;
}

template <HeckeFamily F, class HSpace>
typename DilationSpace<F, HSpace>::Vector act_on_symbols(
    const DilationSpace<F, HSpace>& dil, const typename DilationSpace<F, HSpace>::Vector& v,
    const std::function<CrossedElement<F>(const CrossedElement<F>&)>& left) {
  typename DilationSpace<F, HSpace>::Vector out;
  const auto collected = dil.collect(v);
  for (const auto& term : collected.terms())
    out += induce_term(dil, left(ustar_p(dil.family(), term.s)), term.h, term.coeff);
  return dil.collect(out);
}

} // namespace detail

/// X-Ind: the representation of B x G on X (x)_{A x S} H, with
/// (u_s^* i(a) u_t p) (x) h identified with the dilation symbol (s, pi_Y(a) V_t h).
/// The symbol (s, h) is u_s^* p (x) h, and phi(h) = p (x) h is (e, h).
template <HeckeFamily F, class HSpace>
CrossedRep<F, DilationSpace<F, HSpace>> x_ind(const DilationSpace<F, HSpace>& dil) {
  using Space = DilationSpace<F, HSpace>;
  using Vector = typename Space::Vector;
  CrossedRep<F, Space> rep{dil.family(), dil, {}, {}, {}};
  rep.act = [dil](const CrossedElement<F>& d, const Vector& v) {
    const auto& fam = dil.family();
    return detail::act_on_symbols<F, HSpace>(dil, v, [&](const CrossedElement<F>& x) { return multiply(fam, d, x); });
  };
  rep.apply_U = [dil](const GroupElement<F>& g, const Vector& v) {
    const auto& fam = dil.family();
    return detail::act_on_symbols<F, HSpace>(dil, v, [&](const CrossedElement<F>& x) { return left_u(fam, g, x); });
  };
  rep.apply_Wj = [dil](const typename F::Element& n, const Vector& v) {
    const auto& fam = dil.family();
    return detail::act_on_symbols<F, HSpace>(dil, v,
                                             [&](const CrossedElement<F>& x) { return left_translate(fam, n, x); });
  };
  return rep;
}

/// A finite sum of elementary tensors x (x) h in X (x)_{A x S} H.
template <HeckeFamily F, class HVector>
struct XTensor {
  struct Term {
    Complex coeff;
    CrossedElement<F> x;
    HVector h;
  };
  std::vector<Term> terms;
};

/// <x (x) h, y (x) k> = <h, pi(<x, y>) k> with <x, y> = x^* y in the corner.
template <HeckeFamily F, class HSpace>
Complex x_inner(const CovariantRep<F, HSpace>& rep, const XTensor<F, typename HSpace::Vector>& a,
                const XTensor<F, typename HSpace::Vector>& b) {
  const auto& fam = rep.family;
  Complex acc{};
  for (const auto& x : a.terms)
    for (const auto& y : b.terms) {
      auto corner = multiply(fam, involution(fam, x.x), y.x);
      acc += std::conj(x.coeff) * y.coeff * rep.space.inner(x.h, eval_corner(rep, corner_decompose(fam, corner), y.h));
    }
  return acc;
}

/// Restriction-compression: U restricted to rho(p) H_U and rho o i compressed.
template <HeckeFamily F, class Space>
CovariantRep<F, Space> rc(const CrossedRep<F, Space>& crep) {
  using Vector = typename Space::Vector;
  const auto& fam = crep.family;
  const auto p = projection_p(fam);
  CovariantRep<F, Space> out{fam, crep.space, {}, {}, {}};
  out.apply_Y = [crep, fam](const typename F::Element& n, const Vector& v) {
    return crep.act(embed_i_crossed(fam, delta(fam, n)), v);
  };
  out.apply_V = [crep, fam](const typename F::Semi& s, const Vector& v) { return crep.apply_U(from_semi(fam, s), v); };
  out.apply_Vstar = [crep, fam, p](const typename F::Semi& s, const Vector& v) {
    return crep.act(p, crep.apply_U(inverse(from_semi(fam, s)), v));
  };
  return out;
}

/// Theta_{rho,U}: (d p) (x) h' -> rho(d p) h'.
template <HeckeFamily F, class Space>
typename Space::Vector theta_map(const CrossedRep<F, Space>& crep, const CrossedElement<F>& dp,
                                 const typename Space::Vector& h) {
  return crep.act(dp, h);
}

/// Multiplication by e^{2 pi i <c, k>} on l^2(N/M), c integral. Conjugating
/// the regular representation by it gives a second, unitarily equivalent
/// covariant representation, with this map as the intertwiner.
template <HeckeFamily F>
std::function<SparseVector<F>(const SparseVector<F>&)> character_phase(const F& fam, const typename F::Element& c) {
  return [fam, c](const SparseVector<F>& v) {
    SparseVector<F> out;
    for (const auto& [k, coeff] : v.coeffs()) {
      Rational phase;
      if constexpr (std::is_same_v<typename F::Element, Rational>) {
        phase = c * k;
      } else {
        for (std::size_t i = 0; i < k.size(); ++i) phase += c[i] * k[i];
      }
      const double angle = 2.0 * std::numbers::pi * mod(phase, BigInt(1)).get_d();
      out.accumulate(k, std::polar(1.0, angle) * coeff);
    }
    return out;
  };
}

/// The representation Q (pi_Y, V) Q^* for a unitary Q with inverse Qinv.
template <HeckeFamily F, class Space>
CovariantRep<F, Space> conjugate_rep(const CovariantRep<F, Space>& rep,
                                     std::function<typename Space::Vector(const typename Space::Vector&)> q,
                                     std::function<typename Space::Vector(const typename Space::Vector&)> q_inv) {
  using Vector = typename Space::Vector;
  CovariantRep<F, Space> out{rep.family, rep.space, {}, {}, {}};
  out.apply_Y = [rep, q, q_inv](const typename F::Element& n, const Vector& v) { return q(rep.apply_Y(n, q_inv(v))); };
  out.apply_V = [rep, q, q_inv](const typename F::Semi& s, const Vector& v) { return q(rep.apply_V(s, q_inv(v))); };
  out.apply_Vstar = [rep, q, q_inv](const typename F::Semi& s, const Vector& v) {
    return q(rep.apply_Vstar(s, q_inv(v)));
  };
  return out;
}

/// X-Ind(T) = 1 (x) T on symbols: (s, h) -> (s, T h).
template <HeckeFamily F, class HVector>
DilationVector<F, HVector> induce_intertwiner(const std::function<HVector(const HVector&)>& t,
                                              const DilationVector<F, HVector>& v) {
  std::vector<typename DilationVector<F, HVector>::Term> out;
  for (const auto& term : v.terms()) out.push_back({term.coeff, term.s, t(term.h)});
  return DilationVector<F, HVector>(std::move(out));
}

// ---------------------------------------------------------------------------
// Representations of N_inf x G and their restriction to N x G.

/// A representation of C_c(N_inf) x G realised at finite level: rho on locally
/// constant functions, U on G, and for each vector a level at which it is
/// fixed by the translations in theta_level^{-1}(K).
template <HeckeFamily F, class Space>
struct CompletionRep {
  using Vector = typename Space::Vector;
  F family;
  Space space;
  std::function<Vector(const LocFun<F>&, const Vector&)> rho;
  std::function<Vector(const GroupElement<F>&, const Vector&)> apply_U;
  std::function<typename F::Semi(const Vector&)> level_of;
};

/// Extension of the dilated pair (W, U) to N_inf:
///   rho(chi over the level-a cylinder of y) = index(a)^{-1} U_a^* W_{psi_a(y)} P U_a,
/// with P the projection onto H^M.
template <HeckeFamily F, class HSpace>
CompletionRep<F, DilationSpace<F, HSpace>> extend_rep(const DilationSpace<F, HSpace>& dil) {
  using Space = DilationSpace<F, HSpace>;
  using Vector = typename Space::Vector;
  CompletionRep<F, Space> rep{dil.family(), dil, {}, {}, {}};
  rep.rho = [dil](const LocFun<F>& f, const Vector& v) {
    const auto& fam = dil.family();
    const auto& a = f.level();
    auto projected = dil.project_fixed(dil.apply_U(a, v));
    const double mass = 1.0 / fam.index(a).get_d();
    Vector out;
    for (const auto& [y, c] : f.values()) {
      auto w = dil.apply_Ustar(a, dil.apply_W(fam.psi(a, y), projected));
      out += (mass * ScalarTraits<ComplexRational>::to_complex(c)) * w;
    }
    return out;
  };
  rep.apply_U = [dil](const GroupElement<F>& g, const Vector& v) { return dil.apply_U(g, v); };
  rep.level_of = [dil](const Vector& v) { return dil.join_level(v); };
  return rep;
}

/// The restriction of a completion representation to N x G: W_n acts on a
/// vector fixed at level a as rho(index(a) chi over the level-a cylinder of n).
template <HeckeFamily F, class Space>
struct RestrictedRep {
  using Vector = typename Space::Vector;
  F family;
  Space space;
  std::function<Vector(const typename F::Element&, const Vector&)> apply_W;
  std::function<Vector(const GroupElement<F>&, const Vector&)> apply_U;
  /// pi_W(i(1)) = rho(chi_K).
  std::function<Vector(const Vector&)> fixed_projection;
};

template <HeckeFamily F, class Space>
RestrictedRep<F, Space> restrict_completion_rep(const CompletionRep<F, Space>& rep) {
  using Vector = typename Space::Vector;
  RestrictedRep<F, Space> out{rep.family, rep.space, {}, rep.apply_U, {}};
  out.apply_W = [rep](const typename F::Element& n, const Vector& v) {
    const auto& fam = rep.family;
    auto level = rep.level_of(v);
    fam.check_level(level);
    auto f = indicator(fam, level, n, ComplexRational(Rational(fam.index(level))));
    return rep.rho(f, v);
  };
  out.fixed_projection = [rep](const Vector& v) { return rep.rho(chi_K(rep.family), v); };
  return out;
}

/// || W_{j(m)} pi_W(i(1)) v - pi_W(i(1)) v || for m in M.
template <HeckeFamily F, class Space>
double m_generation_defect(const RestrictedRep<F, Space>& rep, const typename F::Element& m,
                           const typename Space::Vector& v) {
  if (!rep.family.in_M(m)) throw DomainError("m must lie in M");
  auto fixed = rep.fixed_projection(v);
  return rep.space.distance(rep.apply_W(m, fixed), fixed);
}

/// The one-dimensional representation on C in which N_inf and G act
/// trivially: rho(f) = integral of f.
struct ScalarSpace {
  using Vector = Complex;
  Complex inner(const Complex& a, const Complex& b) const { return std::conj(a) * b; }
  double norm(const Complex& v) const { return std::abs(v); }
  double distance(const Complex& a, const Complex& b) const { return std::abs(a - b); }
};

template <HeckeFamily F>
CompletionRep<F, ScalarSpace> trivial_completion_rep(const F& fam) {
  CompletionRep<F, ScalarSpace> rep{fam, ScalarSpace{}, {}, {}, {}};
  rep.rho = [fam](const LocFun<F>& f, const Complex& v) {
    return ScalarTraits<ComplexRational>::to_complex(integrate(fam, f)) * v;
  };
  rep.apply_U = [](const GroupElement<F>&, const Complex& v) { return v; };
  rep.level_of = [fam](const Complex&) { return fam.identity(); };
  return rep;
}

} // namespace hecke
