#pragma once

// Individual identity checks. Each returns an Outcome: exact checks count
// mismatches (zero means the identity holds on the nose), float checks report
// the largest deviation seen. The CLI suites and the acceptance binary call
// these with their own parameters.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hecke/adeles.hpp"
#include "hecke/autodil.hpp"
#include "hecke/dilate.hpp"
#include "hecke/error.hpp"
#include "hecke/grpalg.hpp"
#include "hecke/pairs.hpp"
#include "hecke/repspace.hpp"
#include "hecke/tower.hpp"
#include "hecke/xprod.hpp"

namespace hecke::checks {

struct Outcome {
  double deviation = 0.0;
  bool exact = true;
  std::string note;
};

/// Accumulates exact mismatches and float deviations within one check.
class Tally {
public:
  void expect(bool ok) { mismatches_ += ok ? 0 : 1; }
  void deviation(double d) {
    has_float_ = true;
    if (std::isnan(d)) d = std::numeric_limits<double>::infinity();
    max_ = std::max(max_, d);
  }
  void note(std::string n) { note_ = std::move(n); }

  Outcome outcome() const {
    if (!has_float_) return {static_cast<double>(mismatches_), true, note_};
    return {mismatches_ ? std::numeric_limits<double>::infinity() : max_, false, note_};
  }

private:
  std::size_t mismatches_ = 0;
  double max_ = 0.0;
  bool has_float_ = false;
  std::string note_;
};

inline bool passes(const Outcome& o, double tolerance) {
  return o.exact ? o.deviation == 0.0 : o.deviation <= tolerance;
}

// ---------------------------------------------------------------------------
// Parameter helpers and seeded generators.

/// The semigroup elements a suite at the given depth ranges over: 1..4*depth
/// for bost-connes, every (m, n) or n up to depth otherwise. Levels above the
/// family cap are dropped.
template <HeckeFamily F>
std::vector<typename F::Semi> test_semis(const F& fam, int depth) {
  std::vector<typename F::Semi> raw;
  if constexpr (std::is_same_v<F, BostConnes>)
    raw = fam.semis_up_to(4L * depth);
  else
    raw = fam.semis_up_to(depth);
  std::vector<typename F::Semi> out;
  for (const auto& s : raw) {
    try {
      fam.check_level(s);
      out.push_back(s);
    } catch (const LevelCapError&) {
    }
  }
  return out;
}

/// test_semis restricted to index at most max_index.
template <HeckeFamily F>
std::vector<typename F::Semi> bounded_semis(const F& fam, int depth, long max_index) {
  std::vector<typename F::Semi> out;
  for (const auto& s : test_semis(fam, depth))
    if (fam.index(s) <= max_index) out.push_back(s);
  return out;
}

/// bounded_semis, with the bound raised if needed so that at least one
/// non-identity element survives.
template <HeckeFamily F>
std::vector<typename F::Semi> small_semis(const F& fam, int depth, long max_index) {
  BigInt least = 0;
  for (const auto& s : test_semis(fam, depth))
    if (s != fam.identity() && (least == 0 || fam.index(s) < least)) least = fam.index(s);
  if (least > max_index) max_index = least.get_si();
  return bounded_semis(fam, depth, max_index);
}

/// Runs `trial` until `trials` of them complete. A trial whose random levels
/// cross the family cap is redrawn; the check is skipped only when no trial
/// fits under the cap.
template <class Body>
void capped_trials(Tally& t, int trials, Body&& trial) {
  int done = 0, redrawn = 0;
  while (done < trials) {
    try {
      trial();
      ++done;
    } catch (const LevelCapError&) {
      if (++redrawn > 20 * trials) {
        if (done == 0) throw;
        break;
      }
    }
  }
  if (redrawn > 0) t.note(std::to_string(redrawn) + " draws above the level cap redrawn, " + std::to_string(done) +
                          " trials run");
}

/// Non-identity elements of a semigroup list.
template <HeckeFamily F>
std::vector<typename F::Semi> proper(const F& fam, std::vector<typename F::Semi> semis) {
  std::erase(semis, fam.identity());
  return semis;
}

/// Every sampling list is cut down by the family level cap, so an empty one
/// means the cap leaves nothing to test.
template <class T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& xs) {
  if (xs.empty()) throw LevelCapError("no level below the cap to sample from");
  std::uniform_int_distribution<std::size_t> d(0, xs.size() - 1);
  return xs[d(rng)];
}

/// A small nonzero Gaussian rational.
inline ComplexRational random_coefficient(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-4, 4), den(1, 3);
  for (;;) {
    ComplexRational c{Rational(num(rng), den(rng)), Rational(num(rng), den(rng))};
    c.re.canonicalize();
    c.im.canonicalize();
    if (!ScalarTraits<ComplexRational>::is_zero(c)) return c;
  }
}

inline Complex random_complex(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  return {d(rng), d(rng)};
}

template <HeckeFamily F>
GroupAlgebraElement<F> random_group_algebra(const F& fam, std::mt19937_64& rng,
                                            const std::vector<typename F::Semi>& levels, int terms = 2) {
  GroupAlgebraElement<F> a;
  for (int i = 0; i < terms; ++i)
    a.accumulate(fam.canonical(random_element(fam, rng, levels), fam.identity()), random_coefficient(rng));
  return a;
}

template <HeckeFamily F>
LocFun<F> random_locfun(const F& fam, std::mt19937_64& rng, const std::vector<typename F::Semi>& levels,
                        int terms = 2) {
  LocFun<F> f(pick(rng, levels));
  for (int i = 0; i < terms; ++i)
    f.accumulate(fam.canonical(random_element(fam, rng, levels), f.level()), random_coefficient(rng));
  return f;
}

template <HeckeFamily F>
GroupElement<F> random_group_element(const F& fam, std::mt19937_64& rng, const std::vector<typename F::Semi>& semis) {
  return group_element(fam, pick(rng, semis), pick(rng, semis));
}

template <HeckeFamily F, class HSpace>
typename DilationSpace<F, HSpace>::Vector random_dilation_vector(const DilationSpace<F, HSpace>& dil,
                                                                 std::mt19937_64& rng,
                                                                 const std::vector<typename F::Semi>& semis,
                                                                 int terms = 2) {
  typename DilationSpace<F, HSpace>::Vector v;
  for (int i = 0; i < terms; ++i)
    v += random_complex(rng) *
         dil.symbol(pick(rng, semis), random_sparse_vector(dil.family(), rng, semis, 2));
  return v;
}

/// f u_g with f a one-cylinder function.
template <HeckeFamily F>
CrossedElement<F> random_crossed(const F& fam, std::mt19937_64& rng, const std::vector<typename F::Semi>& semis) {
  return CrossedElement<F>::term(random_group_element(fam, rng, semis), random_locfun(fam, rng, semis, 1));
}

template <HeckeFamily F>
CornerTriple<F, ComplexRational> random_triple(const F& fam, std::mt19937_64& rng,
                                               const std::vector<typename F::Semi>& semis) {
  return {pick(rng, semis), random_group_algebra(fam, rng, semis, 1), pick(rng, semis)};
}

/// Every element psi_s(k) with k a level-s coset representative, for s in
/// `semis`: the generators delta_{nM} whose denominators lie below those levels.
template <HeckeFamily F>
std::vector<typename F::Element> generators_up_to(const F& fam, const std::vector<typename F::Semi>& semis) {
  std::set<typename F::Element, ElementLess<typename F::Element>> out;
  for (const auto& s : semis)
    for (const auto& k : fam.coset_reps(s)) out.insert(fam.canonical(fam.psi(s, k), fam.identity()));
  return {out.begin(), out.end()};
}

// ---------------------------------------------------------------------------
// pairs / grpalg

/// |coset_reps(s)| = index(s), the representatives are distinct modulo
/// psi_s^{-1}(M) and lie in M; for the matrix family also
/// index(m, n) = |det F|^m |det M|^n.
template <HeckeFamily F>
Outcome index_formula(const F& fam, const std::vector<typename F::Semi>& semis) {
  Tally t;
  for (const auto& s : semis) {
    auto reps = fam.coset_reps(s);
    t.expect(BigInt(static_cast<unsigned long>(reps.size())) == fam.index(s));
    std::set<typename F::Element, ElementLess<typename F::Element>> canon;
    for (const auto& r : reps) {
      t.expect(fam.in_M(r));
      canon.insert(fam.canonical(r, s));
    }
    t.expect(canon.size() == reps.size());
    if constexpr (std::is_same_v<F, MatrixFamily>)
      t.expect(fam.index(s) == pow(fam.abs_det_f(), static_cast<unsigned long>(s[0])) *
                                   pow(fam.abs_det_m(), static_cast<unsigned long>(s[1])));
  }
  return t.outcome();
}

/// Ore pairs: u s = v t, the pair is least (cofactors of the join) and the
/// group law on G = S^{-1}S is a group law.
template <HeckeFamily F>
Outcome ore_and_group(const F& fam, const std::vector<typename F::Semi>& semis, std::mt19937_64& rng, int trials) {
  Tally t;
  for (const auto& s : semis)
    for (const auto& r : semis) {
      auto [u, v] = fam.ore_pair(s, r);
      t.expect(fam.compose(u, s) == fam.compose(v, r));
      auto j = join(fam, s, r);
      t.expect(precedes(fam, s, j) && precedes(fam, r, j));
      // Any common upper bound lies above the join.
      auto ub = fam.compose(s, r);
      t.expect(precedes(fam, j, ub));
    }
  for (int i = 0; i < trials; ++i) {
    auto a = random_group_element(fam, rng, semis), b = random_group_element(fam, rng, semis),
         c = random_group_element(fam, rng, semis);
    t.expect(multiply(fam, multiply(fam, a, b), c) == multiply(fam, a, multiply(fam, b, c)));
    t.expect(is_identity(fam, multiply(fam, a, inverse(a))));
    auto n = random_element(fam, rng, semis);
    t.expect(psi_g(fam, multiply(fam, a, b), n) == psi_g(fam, a, psi_g(fam, b, n)));
    SemidirectElement<F> x{random_element(fam, rng, semis), a}, y{random_element(fam, rng, semis), b},
        z{random_element(fam, rng, semis), c};
    t.expect(multiply(fam, multiply(fam, x, y), z) == multiply(fam, x, multiply(fam, y, z)));
    auto e = multiply(fam, x, inverse(fam, x));
    t.expect(e.n == fam.zero() && is_identity(fam, e.g));
  }
  return t.outcome();
}

/// psi_s^{-1}(M) is a subgroup of M of index index(s), so M is contained in psi_s(M).
template <HeckeFamily F>
Outcome hecke_inclusion(const F& fam, const std::vector<typename F::Semi>& semis, std::mt19937_64& rng, int trials) {
  Tally t;
  for (int i = 0; i < trials; ++i) {
    const auto& s = pick(rng, semis);
    auto m = fam.random_M(rng, 50);
    t.expect(fam.in_M(fam.psi_inv(s, m)));
    t.expect(fam.psi(s, fam.psi_inv(s, m)) == m);
  }
  return t.outcome();
}

/// alpha_s is a *-endomorphism, alpha_s(1) is a projection, alpha_s alpha_t =
/// alpha_{st} = alpha_t alpha_s.
template <HeckeFamily F>
Outcome alpha_endomorphism(const F& fam, const std::vector<typename F::Semi>& semis, std::mt19937_64& rng,
                           int trials) {
  Tally t;
  for (int i = 0; i < trials; ++i) {
    const auto& s = pick(rng, semis);
    const auto& r = pick(rng, semis);
    auto a = random_group_algebra(fam, rng, semis), b = random_group_algebra(fam, rng, semis);
    t.expect(alpha(fam, s, multiply(fam, a, b)) == multiply(fam, alpha(fam, s, a), alpha(fam, s, b)));
    t.expect(alpha(fam, s, involution(fam, a)) == involution(fam, alpha(fam, s, a)));
    auto one = alpha(fam, s, unit(fam));
    t.expect(multiply(fam, one, one) == one);
    auto st = alpha(fam, fam.compose(s, r), a);
    t.expect(alpha(fam, s, alpha(fam, r, a)) == st);
    t.expect(alpha(fam, r, alpha(fam, s, a)) == st);
    t.expect(!alpha(fam, s, a).is_zero());
  }
  return t.outcome();
}

/// V_s Y_n V_s^* = pi_Y(alpha_s(delta_n)) for the regular representation.
template <HeckeFamily F>
Outcome regular_covariance(const F& fam, const std::vector<typename F::Semi>& semis, std::mt19937_64& rng,
                           int trials, double tolerance) {
  Tally t;
  auto rep = regular_covariant(fam, tolerance);
  for (int i = 0; i < trials; ++i) {
    const auto& s = pick(rng, semis);
    auto n = random_element(fam, rng, semis);
    auto v = random_sparse_vector(fam, rng, semis, 3);
    t.deviation(verify_covariance(rep, s, n, v));
    auto vn = rep.space.norm(v);
    t.deviation(std::abs(rep.space.norm(rep.apply_V(s, v)) - vn));
    t.deviation(rep.space.distance(rep.apply_Vstar(s, rep.apply_V(s, v)), v));
  }
  return t.outcome();
}

// ---------------------------------------------------------------------------
// tower

/// Projections compose, theta_t commutes with projection, theta_t^{-1}
/// inverts it, theta_t is additive and K is a subgroup with K n j(N) = j(M).
template <HeckeFamily F>
Outcome tower_laws(const F& fam, const std::vector<typename F::Semi>& semis, std::mt19937_64& rng, int trials) {
  Tally t;
  for (int i = 0; i < trials; ++i) {
    const auto& s = pick(rng, semis);
    const auto& r = pick(rng, semis);
    auto st = fam.compose(s, r);
    auto n = random_element(fam, rng, semis);
    auto m = random_element(fam, rng, semis);
    auto x = project(fam, embed_j(fam, n), st);
    auto y = project(fam, embed_j(fam, m), st);
    t.expect(project(fam, project(fam, x, r), fam.identity()) == project(fam, x, fam.identity()));
    t.expect(project(fam, x, s) == project(fam, embed_j(fam, n), s));
    // pi^s o theta_r = psi_r o pi^{sr}
    auto th = theta_apply(fam, r, x);
    t.expect(th == project(fam, theta_apply(fam, r, embed_j(fam, n)), s));
    t.expect(theta_inv_apply(fam, r, th) == x);
    t.expect(theta_apply(fam, r, add(fam, x, y)) == add(fam, theta_apply(fam, r, x), theta_apply(fam, r, y)));
    auto g = random_group_element(fam, rng, semis);
    auto h = random_group_element(fam, rng, semis);
    t.expect(psi_g(fam, g, psi_g(fam, h, n)) == psi_g(fam, multiply(fam, g, h), n));
    // K is a subgroup and meets j(N) in j(M).
    auto k1 = project(fam, embed_j(fam, fam.random_M(rng, 9)), st);
    auto k2 = project(fam, embed_j(fam, fam.random_M(rng, 9)), st);
    t.expect(in_K(fam, k1) && in_K(fam, add(fam, k1, k2)) && in_K(fam, negate(fam, k1)));
    t.expect(in_K(fam, project(fam, embed_j(fam, n), fam.identity())) == fam.in_M(n));
  }
  return t.outcome();
}

/// j is injective: every nonzero m in M is detected at some level.
template <HeckeFamily F>
Outcome j_injective(const F& fam, const std::vector<typename F::Semi>& semis, std::mt19937_64& rng, int trials) {
  Tally t;
  for (int i = 0; i < trials; ++i) {
    auto m = fam.random_M(rng, 2);
    if (m == fam.zero()) continue;
    bool seen = false;
    for (const auto& s : semis)
      if (project(fam, embed_j(fam, m), s).coset != fam.zero()) seen = true;
    t.expect(seen);
  }
  return t.outcome();
}

// ---------------------------------------------------------------------------
// autodil

/// i(delta_a) * i(delta_b) = i(delta_{a+b}) for every pair from `gens`, and
/// chi_K * chi_K = chi_K.
template <HeckeFamily F>
Outcome convolution_homomorphism(const F& fam, const std::vector<typename F::Element>& gens) {
  Tally t;
  auto k = chi_K(fam);
  t.expect(equal(fam, convolve(fam, k, k), k));
  std::vector<LocFun<F>> images;
  images.reserve(gens.size());
  for (const auto& a : gens) images.push_back(embed_i(fam, delta(fam, a)));
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = 0; j < gens.size(); ++j)
      t.expect(equal(fam, convolve(fam, images[i], images[j]), embed_i(fam, delta(fam, fam.add(gens[i], gens[j])))));
  return t.outcome();
}

/// i o alpha_s = theta_{*s} o i on the generators.
template <HeckeFamily F>
Outcome intertwining(const F& fam, const std::vector<typename F::Semi>& semis,
                     const std::vector<typename F::Element>& gens) {
  Tally t;
  for (const auto& s : semis)
    for (const auto& n : gens) {
      auto d = delta(fam, n);
      t.expect(equal(fam, embed_i(fam, alpha(fam, s, d)), theta_star(fam, s, embed_i(fam, d))));
    }
  return t.outcome();
}

/// theta_{*s}^{-1}(i(delta_n)) = index(s) chi_{(pi^s)^{-1}(psi_s^{-1}(n))}, and
/// conversely every level-s cylinder indicator is index(s)^{-1}
/// theta_{*s}^{-1}(i(delta_{psi_s(c)})).
template <HeckeFamily F>
Outcome minimality(const F& fam, const std::vector<typename F::Semi>& semis, std::mt19937_64& rng, int trials) {
  Tally t;
  for (const auto& s : semis) {
    const Rational idx(fam.index(s));
    for (int i = 0; i < trials; ++i) {
      auto n = random_element(fam, rng, semis);
      auto lhs = theta_star_inv(fam, s, embed_i(fam, delta(fam, n)));
      auto rhs = indicator(fam, s, fam.psi_inv(s, n), ComplexRational(idx));
      t.expect(lhs.level() == s && equal(fam, lhs, rhs));
      auto c = random_element(fam, rng, semis);
      auto cyl = indicator(fam, s, c);
      auto rebuilt = scale(ComplexRational(Rational(1) / idx),
                           theta_star_inv(fam, s, embed_i(fam, delta(fam, fam.psi(s, c)))));
      t.expect(equal(fam, cyl, rebuilt));
    }
    // The level-s cylinders over the level-s cosets of K are all reached.
    for (const auto& k : fam.coset_reps(s)) {
      auto f = scale(ComplexRational(Rational(1) / idx),
                     theta_star_inv(fam, s, embed_i(fam, delta(fam, fam.psi(s, k)))));
      t.expect(f.values().size() == 1 && f.values().begin()->first == fam.canonical(k, s));
    }
  }
  return t.outcome();
}

/// theta_* is an action of G by *-automorphisms of the convolution algebra,
/// and the convolution algebra laws hold.
template <HeckeFamily F>
Outcome theta_star_action(const F& fam, const std::vector<typename F::Semi>& semis, std::mt19937_64& rng,
                          int trials) {
  Tally t;
  capped_trials(t, trials, [&] {
    const auto s = pick(rng, semis);
    const auto r = pick(rng, semis);
    auto f = random_locfun(fam, rng, semis), g = random_locfun(fam, rng, semis), h = random_locfun(fam, rng, semis);
    t.expect(equal(fam, theta_star(fam, s, theta_star(fam, r, f)), theta_star(fam, fam.compose(s, r), f)));
    t.expect(equal(fam, theta_star_inv(fam, s, theta_star(fam, s, f)), f));
    t.expect(equal(fam, theta_star(fam, s, theta_star_inv(fam, s, f)), f));
    t.expect(equal(fam, theta_star(fam, s, convolve(fam, f, g)),
                   convolve(fam, theta_star(fam, s, f), theta_star(fam, s, g))));
    t.expect(equal(fam, theta_star(fam, s, involution(fam, f)), involution(fam, theta_star(fam, s, f))));
    auto gr = random_group_element(fam, rng, semis), hr = random_group_element(fam, rng, semis);
    t.expect(equal(fam, theta_star_g(fam, gr, theta_star_g(fam, hr, f)), theta_star_g(fam, multiply(fam, gr, hr), f)));
    t.expect(equal(fam, convolve(fam, convolve(fam, f, g), h), convolve(fam, f, convolve(fam, g, h))));
    t.expect(equal(fam, convolve(fam, f, g), convolve(fam, g, f)));
    t.expect(equal(fam, involution(fam, convolve(fam, f, g)), convolve(fam, involution(fam, g), involution(fam, f))));
    auto a = random_group_algebra(fam, rng, semis);
    t.expect(equal(fam, embed_i(fam, involution(fam, a)), involution(fam, embed_i(fam, a))));
    t.expect(restrict_to_quotient(fam, embed_i(fam, a)) == a);
    auto x = embed_j(fam, random_element(fam, rng, semis));
    t.expect(equal(fam, translate(fam, x, convolve(fam, f, g)), convolve(fam, translate(fam, x, f), g)));
    auto fine = fam.compose(f.level(), r);
    t.expect(equal(fam, refine(fam, f, fine), f) && integrate(fam, refine(fam, f, fine)) == integrate(fam, f));
  });
  t.expect(integrate(fam, chi_K(fam)) == ComplexRational(1));
  return t.outcome();
}

// ---------------------------------------------------------------------------
// dilate

template <HeckeFamily F>
using RegularDilation = DilationSpace<F, SparseSpace<F>>;

/// || U_g W_n U_g^* v - W_{psi_g(n)} v || on random (g, n, v).
template <HeckeFamily F>
Outcome dilation_covariance(const RegularDilation<F>& dil, const std::vector<typename F::Semi>& semis,
                            std::mt19937_64& rng, int trials) {
  Tally t;
  const auto& fam = dil.family();
  for (int i = 0; i < trials; ++i) {
    auto g = random_group_element(fam, rng, semis);
    auto n = random_element(fam, rng, semis);
    auto v = random_dilation_vector(dil, rng, semis);
    auto lhs = dil.apply_U(g, dil.apply_W(n, dil.apply_U(inverse(g), v)));
    t.deviation(dil.distance(lhs, dil.apply_W(psi_g(fam, g, n), v)));
  }
  return t.outcome();
}

/// max(0, -lambda_min) over Gram matrices of random symbol sets.
template <HeckeFamily F>
Outcome gram_psd(const RegularDilation<F>& dil, const std::vector<typename F::Semi>& semis, std::mt19937_64& rng,
                 int sets, int size) {
  Tally t;
  const auto& fam = dil.family();
  for (int i = 0; i < sets; ++i) {
    std::vector<typename RegularDilation<F>::Vector> vs;
    for (int j = 0; j < size; ++j) {
      auto h = random_sparse_vector(fam, rng, semis, 2);
      // Include collision pairs so that the Gram matrix is genuinely singular.
      if (j % 3 == 2) {
        const auto& s = pick(rng, semis);
        vs.push_back(dil.symbol(fam.compose(s, s), dil.base().apply_V(s, h)));
      } else {
        vs.push_back(dil.symbol(pick(rng, semis), h));
      }
    }
    auto gram = gram_matrix(dil, vs);
    t.deviation(std::max(0.0, -min_eigenvalue(gram)));
  }
  return t.outcome();
}

/// Collision pairs (s, h) and (t s, V_t h): distance zero, and W_n agrees on them.
template <HeckeFamily F>
Outcome well_defined(const RegularDilation<F>& dil, const std::vector<typename F::Semi>& semis, std::mt19937_64& rng,
                     int pairs) {
  Tally t;
  const auto& fam = dil.family();
  for (int i = 0; i < pairs; ++i) {
    const auto& s = pick(rng, semis);
    const auto& r = pick(rng, semis);
    auto h = random_sparse_vector(fam, rng, semis, 2);
    auto a = dil.symbol(s, h);
    auto b = dil.symbol(fam.compose(r, s), dil.base().apply_V(r, h));
    t.deviation(dil.distance(a, b));
    auto n = random_element(fam, rng, semis);
    t.deviation(dil.distance(dil.apply_W(n, a), dil.apply_W(n, b)));
  }
  return t.outcome();
}

/// Inner products do not depend on the Ore pair: (u, v) and (w u, w v) agree.
/// Unitarity of U_g and the identities U_r U_r^* = 1, U_g U_{g^{-1}} = 1.
template <HeckeFamily F>
Outcome dilation_unitary(const RegularDilation<F>& dil, const std::vector<typename F::Semi>& semis,
                         std::mt19937_64& rng, int trials) {
  Tally t;
  const auto& fam = dil.family();
  const auto& base = dil.base();
  for (int i = 0; i < trials; ++i) {
    const auto& s = pick(rng, semis);
    const auto& r = pick(rng, semis);
    const auto& w = pick(rng, semis);
    auto h = random_sparse_vector(fam, rng, semis, 2), k = random_sparse_vector(fam, rng, semis, 2);
    auto [u, v] = fam.ore_pair(s, r);
    auto least = base.space.inner(base.apply_V(u, h), base.apply_V(v, k));
    auto other = base.space.inner(base.apply_V(fam.compose(w, u), h), base.apply_V(fam.compose(w, v), k));
    t.deviation(std::abs(least - other));
    t.deviation(std::abs(dil.inner(dil.symbol(s, h), dil.symbol(r, k)) - least));

    auto x = random_dilation_vector(dil, rng, semis), y = random_dilation_vector(dil, rng, semis);
    auto g = random_group_element(fam, rng, semis);
    t.deviation(std::abs(dil.inner(dil.apply_U(g, x), dil.apply_U(g, y)) - dil.inner(x, y)));
    t.deviation(std::abs(dil.norm(dil.apply_U(g, x)) - dil.norm(x)));
    t.deviation(dil.distance(dil.apply_U(g, dil.apply_U(inverse(g), x)), x));
    t.deviation(dil.distance(dil.apply_U(r, dil.apply_Ustar(r, x)), x));
    t.deviation(std::abs(dil.inner(x, y) - std::conj(dil.inner(y, x))));
  }
  return t.outcome();
}

/// H sits inside H^M, Y = W on H, V = U on H, and W is a homomorphism.
template <HeckeFamily F>
Outcome dilation_recovery(const RegularDilation<F>& dil, const std::vector<typename F::Semi>& semis,
                          std::mt19937_64& rng, int trials) {
  Tally t;
  const auto& fam = dil.family();
  const auto& base = dil.base();
  for (int i = 0; i < trials; ++i) {
    auto h = random_sparse_vector(fam, rng, semis, 2);
    auto e = dil.embed(h);
    auto m = fam.random_M(rng, 9);
    t.deviation(dil.distance(dil.apply_W(m, e), e));
    auto n = random_element(fam, rng, semis), n2 = random_element(fam, rng, semis);
    t.deviation(dil.distance(dil.apply_W(n, e), dil.embed(base.apply_Y(n, h))));
    const auto& s = pick(rng, semis);
    t.deviation(dil.distance(dil.apply_U(s, e), dil.embed(base.apply_V(s, h))));
    auto v = random_dilation_vector(dil, rng, semis);
    t.deviation(dil.distance(dil.apply_W(n, dil.apply_W(n2, v)), dil.apply_W(fam.add(n, n2), v)));
  }
  return t.outcome();
}

/// The averaging projection P_s on the block U_s^* H: idempotent, self-adjoint,
/// and the identity on the embedded copy of H.
template <HeckeFamily F>
Outcome averaging_projection(const RegularDilation<F>& dil, const std::vector<typename F::Semi>& blocks,
                             const std::vector<typename F::Semi>& semis, std::mt19937_64& rng, int trials) {
  Tally t;
  const auto& fam = dil.family();
  for (const auto& s : blocks)
    for (int i = 0; i < trials; ++i) {
      auto h = random_sparse_vector(fam, rng, semis, 2), k = random_sparse_vector(fam, rng, semis, 2);
      auto ph = dil.average_block(s, h);
      auto pk = dil.average_block(s, k);
      auto pph = dil.average_block(s, dil.flatten_at(ph, s));
      t.deviation(dil.distance(pph, ph));
      t.deviation(std::abs(dil.inner(ph, dil.symbol(s, k)) - dil.inner(dil.symbol(s, h), pk)));
      // (s, V_s h) is the embedded vector (e, h).
      auto embedded = dil.symbol(s, dil.base().apply_V(s, h));
      t.deviation(dil.distance(dil.average_block(s, dil.base().apply_V(s, h)), embedded));
      t.deviation(dil.distance(ph, dil.project_fixed(dil.symbol(s, h))));
    }
  return t.outcome();
}

/// restrict_compress recovers (pi_Y, V) on H, and dilating the compressed
/// representation again gives back W under (s, h') -> U_s^* h'.
template <HeckeFamily F>
Outcome dilation_round_trip(const RegularDilation<F>& dil, const std::vector<typename F::Semi>& truncation,
                            const std::vector<typename F::Semi>& semis, std::mt19937_64& rng, int trials) {
  Tally t;
  const auto& fam = dil.family();
  const auto& base = dil.base();
  auto compressed = restrict_compress(dil, truncation);
  const auto& rep = compressed.rep;
  auto redilated = dilate(rep);
  for (int i = 0; i < trials; ++i) {
    auto h = random_sparse_vector(fam, rng, semis, 2);
    auto e = dil.embed(h);
    auto n = random_element(fam, rng, semis);
    const auto& s = pick(rng, truncation);
    t.deviation(dil.distance(rep.apply_Y(n, e), dil.embed(base.apply_Y(n, h))));
    t.deviation(dil.distance(rep.apply_V(s, e), dil.embed(base.apply_V(s, h))));
    t.deviation(dil.distance(rep.apply_Vstar(s, e), dil.embed(base.apply_Vstar(s, h))));
    t.deviation(std::abs(dil.norm(rep.apply_V(s, e)) - dil.norm(e)));

    // A vector of the redilation: sum of symbols (r, h') with h' in H^M.
    typename DilationSpace<F, RegularDilation<F>>::Vector w;
    for (int j = 0; j < 2; ++j)
      w += random_complex(rng) *
           redilated.symbol(pick(rng, truncation), dil.embed(random_sparse_vector(fam, rng, semis, 2)));
    auto lhs = identify_redilation(dil, redilated.apply_W(n, w));
    auto rhs = dil.apply_W(n, identify_redilation(dil, w));
    t.deviation(dil.distance(lhs, rhs));
    t.deviation(std::abs(redilated.norm(w) - dil.norm(identify_redilation(dil, w))));
  }
  t.note("fixed-space excess " + std::to_string(*compressed.excess));
  return t.outcome();
}

// ---------------------------------------------------------------------------
// xprod

/// p^2 = p = p^*, v_s^* v_s = p, p u_s p = u_s p, v_s v_t = v_{st}.
template <HeckeFamily F>
Outcome appendix_projection(const F& fam, const std::vector<typename F::Semi>& semis) {
  Tally t;
  auto p = projection_p(fam);
  t.expect(equal(fam, multiply(fam, p, p), p));
  t.expect(equal(fam, involution(fam, p), p));
  for (const auto& s : semis) {
    auto v = isom_v(fam, s);
    t.expect(equal(fam, multiply(fam, involution(fam, v), v), p));
    t.expect(equal(fam, multiply(fam, p, v), v));
    for (const auto& r : semis)
      t.expect(equal(fam, multiply(fam, v, isom_v(fam, r)), isom_v(fam, fam.compose(s, r))));
  }
  return t.outcome();
}

/// Associativity and involution laws of the crossed product.
template <HeckeFamily F>
Outcome crossed_product_laws(const F& fam, const std::vector<typename F::Semi>& semis, std::mt19937_64& rng,
                             int trials) {
  Tally t;
  for (int i = 0; i < trials; ++i) {
    auto a = random_crossed(fam, rng, semis), b = random_crossed(fam, rng, semis), c = random_crossed(fam, rng, semis);
    t.expect(equal(fam, multiply(fam, multiply(fam, a, b), c), multiply(fam, a, multiply(fam, b, c))));
    t.expect(equal(fam, involution(fam, involution(fam, a)), a));
    t.expect(equal(fam, involution(fam, multiply(fam, a, b)), multiply(fam, involution(fam, b), involution(fam, a))));
  }
  return t.outcome();
}

/// corner_decompose reconstructs corner elements, p decomposes as (e, 1, e),
/// and an element outside the corner is rejected.
template <HeckeFamily F>
Outcome corner_round_trip(const F& fam, const std::vector<typename F::Semi>& semis, std::mt19937_64& rng,
                          int trials) {
  Tally t;
  auto p = projection_p(fam);
  auto tp = corner_decompose(fam, p);
  t.expect(tp.size() == 1 && tp[0].s == fam.identity() && tp[0].t == fam.identity() && tp[0].a == unit(fam));
  for (int i = 0; i < trials; ++i) {
    std::vector<CornerTriple<F, ComplexRational>> xs{random_triple(fam, rng, semis), random_triple(fam, rng, semis)};
    auto d = corner_element(fam, xs);
    t.expect(equal(fam, corner_element(fam, corner_decompose(fam, d)), d));
    const auto s = pick(rng, proper(fam, semis));
    auto u = left_u(fam, from_semi(fam, s), p);
    t.expect(equal(fam, corner_element(fam, corner_decompose(fam, u)), u));
    bool rejected = false;
    try {
      corner_decompose(fam, ustar_p(fam, s));
    } catch (const NotInCornerError&) {
      rejected = true;
    }
    t.expect(rejected);
  }
  return t.outcome();
}

/// eval_corner is multiplicative on corner products and sends v_s to V_s, p to 1.
template <HeckeFamily F>
Outcome corner_eval(const CovariantRep<F, SparseSpace<F>>& rep, const std::vector<typename F::Semi>& semis,
                    std::mt19937_64& rng, int trials) {
  Tally t;
  const auto& fam = rep.family;
  for (int i = 0; i < trials; ++i) {
    auto d1 = corner_element(fam, random_triple(fam, rng, semis));
    auto d2 = corner_element(fam, random_triple(fam, rng, semis));
    auto v = random_sparse_vector(fam, rng, semis, 2);
    auto lhs = eval_corner(rep, corner_decompose(fam, multiply(fam, d1, d2)), v);
    auto rhs = eval_corner(rep, corner_decompose(fam, d1), eval_corner(rep, corner_decompose(fam, d2), v));
    t.deviation(rep.space.distance(lhs, rhs));
    const auto& s = pick(rng, semis);
    t.deviation(rep.space.distance(eval_corner(rep, corner_decompose(fam, isom_v(fam, s)), v), rep.apply_V(s, v)));
    t.deviation(rep.space.distance(eval_corner(rep, corner_decompose(fam, projection_p(fam)), v), v));
  }
  return t.outcome();
}

/// Gram matrices of {(u_s^* i(a) u_t p) (x) h} computed through <h, pi(x^* y) k>
/// and of the symbols (s, pi_Y(a) V_t h) computed in the dilation agree.
template <HeckeFamily F>
Outcome x_ind_gram(const RegularDilation<F>& dil, const std::vector<typename F::Semi>& semis, std::mt19937_64& rng,
                   int size) {
  Tally t;
  const auto& fam = dil.family();
  const auto& base = dil.base();
  std::vector<XTensor<F, SparseVector<F>>> tensors;
  std::vector<typename RegularDilation<F>::Vector> symbols;
  for (int i = 0; i < size; ++i) {
    auto tr = random_triple(fam, rng, semis);
    auto h = random_sparse_vector(fam, rng, semis, 2);
    tensors.push_back({{{Complex(1.0), x_element(fam, tr), h}}});
    symbols.push_back(dil.symbol(tr.s, apply_pi(base, tr.a, base.apply_V(tr.t, h))));
  }
  Eigen::MatrixXcd gx(size, size);
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) gx(i, j) = x_inner(base, tensors[i], tensors[j]);
  t.deviation(max_abs_difference(gx, gram_matrix(dil, symbols)));
  return t.outcome();
}

/// X-Ind agrees with the dilation: its U and W are the dilation's, phi is
/// isometric and p acts as the identity on phi(H).
template <HeckeFamily F>
Outcome x_ind_matches_dilation(const RegularDilation<F>& dil, const std::vector<typename F::Semi>& semis,
                               std::mt19937_64& rng, int trials) {
  Tally t;
  const auto& fam = dil.family();
  auto xi = x_ind(dil);
  auto p = projection_p(fam);
  for (int i = 0; i < trials; ++i) {
    auto v = random_dilation_vector(dil, rng, semis);
    auto g = random_group_element(fam, rng, semis);
    auto n = random_element(fam, rng, semis);
    t.deviation(dil.distance(xi.apply_U(g, v), dil.apply_U(g, v)));
    t.deviation(dil.distance(xi.apply_Wj(n, v), dil.apply_W(n, v)));
    auto h = random_sparse_vector(fam, rng, semis, 2);
    auto phi = dil.embed(h);
    t.deviation(std::abs(dil.norm(phi) - dil.base().space.norm(h)));
    t.deviation(dil.distance(xi.act(p, phi), phi));
    // rho(p) on a block is the averaging projection.
    const auto& s = pick(rng, semis);
    t.deviation(dil.distance(xi.act(p, dil.symbol(s, h)), dil.average_block(s, h)));
  }
  return t.outcome();
}

/// rc(X-Ind(rep)) is rep again under phi, and Theta preserves Gram matrices.
template <HeckeFamily F>
Outcome rc_inverse(const RegularDilation<F>& dil, const std::vector<typename F::Semi>& semis, std::mt19937_64& rng,
                   int trials, int gram_size) {
  Tally t;
  const auto& fam = dil.family();
  const auto& base = dil.base();
  auto xi = x_ind(dil);
  auto back = rc(xi);
  for (int i = 0; i < trials; ++i) {
    auto h = random_sparse_vector(fam, rng, semis, 2);
    auto phi = dil.embed(h);
    auto n = random_element(fam, rng, semis);
    const auto& s = pick(rng, semis);
    t.deviation(dil.distance(back.apply_Y(n, phi), dil.embed(base.apply_Y(n, h))));
    t.deviation(dil.distance(back.apply_V(s, phi), dil.embed(base.apply_V(s, h))));
    t.deviation(dil.distance(back.apply_Vstar(s, phi), dil.embed(base.apply_Vstar(s, h))));
    // rho(p) maps into phi(H): its image is fixed by the block projection.
    auto w = xi.act(projection_p(fam), random_dilation_vector(dil, rng, semis));
    t.deviation(dil.distance(dil.project_fixed(w), w));
  }
  // Theta: (d p) (x) h' -> rho(d p) h' with h' in rho(p) H_U.
  std::vector<CrossedElement<F>> ds;
  std::vector<typename RegularDilation<F>::Vector> hs;
  for (int i = 0; i < gram_size; ++i) {
    ds.push_back(x_element(fam, random_triple(fam, rng, semis)));
    hs.push_back(dil.embed(random_sparse_vector(fam, rng, semis, 2)));
  }
  Eigen::MatrixXcd tensor_side(gram_size, gram_size);
  std::vector<typename RegularDilation<F>::Vector> images;
  for (int i = 0; i < gram_size; ++i) images.push_back(theta_map(xi, ds[i], hs[i]));
  for (int i = 0; i < gram_size; ++i)
    for (int j = 0; j < gram_size; ++j) {
      auto corner = multiply(fam, involution(fam, ds[i]), ds[j]);
      tensor_side(i, j) = dil.inner(hs[i], eval_corner(back, corner_decompose(fam, corner), hs[j]));
    }
  t.deviation(max_abs_difference(tensor_side, gram_matrix(dil, images)));
  return t.outcome();
}

/// Naturality of Theta for the intertwiner Q = multiplication by a character:
/// Theta_2 o (1 (x) Q) = Ind(Q) o Theta_1 on spanning vectors.
template <HeckeFamily F>
Outcome theta_naturality(const F& fam, const std::vector<typename F::Semi>& semis, std::mt19937_64& rng, int trials,
                         double tolerance) {
  Tally t;
  auto rep = regular_covariant(fam, tolerance);
  typename F::Element c = fam.random_M(rng, 3);
  while (c == fam.zero()) c = fam.random_M(rng, 3);
  auto q = character_phase(fam, c);
  auto q_inv = character_phase(fam, fam.negate(c));
  auto rep2 = conjugate_rep(rep, q, q_inv);
  auto dil1 = dilate(rep);
  auto dil2 = dilate(rep2);
  auto x1 = x_ind(dil1);
  auto x2 = x_ind(dil2);
  std::function<SparseVector<F>(const SparseVector<F>&)> qf = q;
  for (int i = 0; i < trials; ++i) {
    auto d = x_element(fam, random_triple(fam, rng, semis));
    auto h = random_sparse_vector(fam, rng, semis, 2);
    auto lhs = theta_map(x2, d, dil2.embed(q(h)));
    auto rhs = induce_intertwiner(qf, theta_map(x1, d, dil1.embed(h)));
    t.deviation(dil2.distance(lhs, rhs));
    // Q intertwines the covariant representations themselves.
    auto n = random_element(fam, rng, semis);
    const auto& s = pick(rng, semis);
    t.deviation(rep.space.distance(q(rep.apply_Y(n, h)), rep2.apply_Y(n, q(h))));
    t.deviation(rep.space.distance(q(rep.apply_V(s, h)), rep2.apply_V(s, q(h))));
  }
  return t.outcome();
}

/// chi over a level-s cylinder is a product d1 p d2 of elements of B x G.
template <HeckeFamily F>
Outcome corner_fullness(const F& fam, const std::vector<typename F::Semi>& semis, std::mt19937_64& rng, int trials) {
  Tally t;
  auto p = projection_p(fam);
  for (int i = 0; i < trials; ++i) {
    const auto& s = pick(rng, semis);
    auto y = random_element(fam, rng, semis);
    auto target = from_function(fam, indicator(fam, s, y));
    auto d1 = scale(fam, ComplexRational(Rational(1) / Rational(fam.index(s))),
                    left_u(fam, inverse(from_semi(fam, s)), embed_i_crossed(fam, delta(fam, fam.psi(s, y)))));
    auto d2 = involution(fam, ustar_p(fam, s));
    t.expect(equal(fam, multiply(fam, multiply(fam, d1, p), d2), target));
  }
  return t.outcome();
}

/// extend_rep then restriction gives back W o j = X, the extension is
/// covariant and multiplicative, and the restricted representation is
/// generated by its M-fixed vectors.
template <HeckeFamily F>
Outcome equivalence_round_trip(const RegularDilation<F>& dil, const std::vector<typename F::Semi>& semis,
                               std::mt19937_64& rng, int trials) {
  Tally t;
  const auto& fam = dil.family();
  auto ext = extend_rep(dil);
  auto res = restrict_completion_rep(ext);
  for (int i = 0; i < trials; ++i) {
    auto v = random_dilation_vector(dil, rng, semis);
    auto n = random_element(fam, rng, semis);
    t.deviation(dil.distance(res.apply_W(n, v), dil.apply_W(n, v)));
    auto m = fam.random_M(rng, 9);
    t.deviation(m_generation_defect(res, m, v));
    auto h = random_sparse_vector(fam, rng, semis, 2);
    t.deviation(dil.distance(ext.rho(chi_K(fam), dil.embed(h)), dil.embed(h)));
    auto f = random_locfun(fam, rng, semis, 1), g = random_locfun(fam, rng, semis, 1);
    auto gr = random_group_element(fam, rng, semis);
    auto lhs = ext.rho(theta_star_g(fam, gr, f), v);
    auto rhs = ext.apply_U(gr, ext.rho(f, ext.apply_U(inverse(gr), v)));
    t.deviation(dil.distance(lhs, rhs));
    t.deviation(dil.distance(ext.rho(convolve(fam, f, g), v), ext.rho(f, ext.rho(g, v))));
  }
  return t.outcome();
}

/// The restriction of the trivial representation: M acts trivially and every
/// vector is M-fixed.
template <HeckeFamily F>
Outcome trivial_restriction(const F& fam, const std::vector<typename F::Semi>& semis, std::mt19937_64& rng,
                            int trials) {
  Tally t;
  auto res = restrict_completion_rep(trivial_completion_rep(fam));
  for (int i = 0; i < trials; ++i) {
    Complex v = random_complex(rng);
    t.deviation(std::abs(res.apply_W(fam.random_M(rng, 9), v) - v));
    t.deviation(std::abs(res.fixed_projection(v) - v));
    t.deviation(m_generation_defect(res, fam.random_M(rng, 9), v));
    (void)semis;
  }
  return t.outcome();
}

// ---------------------------------------------------------------------------
// adeles

/// phi: Z/nZ -> prod Z/p^l Z is a bijection for every n <= max_n.
inline Outcome crt_bijection(std::int64_t max_n) {
  Tally t;
  for (std::int64_t n = 1; n <= max_n; ++n) {
    CrtBasis<std::int64_t> basis(n);
    std::int64_t product = 1;
    for (const auto& c : basis.forward(0)) product *= c.modulus();
    t.expect(product == n);
    for (std::int64_t x = 0; x < n; ++x) t.expect(basis.inverse(basis.forward(x)) == x);
  }
  return t.outcome();
}

/// phi respects addition and multiplication of residues.
inline Outcome crt_homomorphism(std::mt19937_64& rng, int trials, std::int64_t max_n) {
  Tally t;
  std::uniform_int_distribution<std::int64_t> level(2, max_n);
  for (int i = 0; i < trials; ++i) {
    std::int64_t n = level(rng);
    std::uniform_int_distribution<std::int64_t> res(0, n - 1);
    std::int64_t x = res(rng), y = res(rng);
    CrtBasis<std::int64_t> basis(n);
    auto fx = basis.forward(x), fy = basis.forward(y);
    auto sum = basis.forward((x + y) % n), prod = basis.forward(x * y % n);
    for (std::size_t k = 0; k < fx.size(); ++k) {
      auto q = fx[k].modulus();
      t.expect(sum[k].r == (fx[k].r + fy[k].r) % q);
      t.expect(prod[k].r == fx[k].r * fy[k].r % q);
    }
  }
  return t.outcome();
}

/// phi(j(n)) = (j_p(n))_p at level `level`, and crt_inverse undoes it.
inline Outcome crt_j(const BostConnes& fam, long max_n, long level) {
  Tally t;
  for (long n = 0; n <= max_n; ++n) {
    auto x = project(fam, embed_j(fam, Rational(n)), BigInt(level));
    auto comps = crt_forward(fam, x);
    for (const auto& c : comps) t.expect(c == j_p(c.p, c.l, BigInt(n)));
    auto [mod_n, r] = crt_inverse(comps);
    t.expect(mod_n == level && r == BigInt(n % level));
  }
  return t.outcome();
}

/// Random element of Q/LZ at level L whose denominator divides `den`.
inline TruncatedElement<BostConnes> random_adele(const BostConnes& fam, std::mt19937_64& rng, long den, long level) {
  std::uniform_int_distribution<long> d(1, den);
  std::uniform_int_distribution<long> num(-10 * level, 10 * level);
  long dd = d(rng);
  while (level % dd != 0 || den % dd != 0) dd = d(rng);
  return truncated(fam, BigInt(level), make_rational(num(rng), dd));
}

/// The pairing is independent of the admissible level, bi-additive, and
/// vanishes against 0.
inline Outcome pairing_level_independence(const BostConnes& fam, std::mt19937_64& rng, int trials) {
  Tally t;
  const long level = 720;
  for (int i = 0; i < trials; ++i) {
    auto x = random_adele(fam, rng, 12, level), y = random_adele(fam, rng, 12, level), z = random_adele(fam, rng, 12, level);
    BigInt n = lcm(BigInt(x.coset.get_den()), BigInt(y.coset.get_den()));
    auto base = pairing_at(fam, x, y, n);
    t.expect(base == pairing_at(fam, x, y, BigInt(2 * n)));
    t.expect(base == pairing(fam, x, y));
    t.expect(base == pairing(fam, y, x));
    auto xz = add(fam, x, z);
    t.expect(pairing(fam, xz, y) == mod(Rational(pairing(fam, x, y) + pairing(fam, z, y)), BigInt(1)));
    t.expect(pairing(fam, x, truncated(fam, BigInt(level), Rational(0))) == 0);
    t.expect(pairing(fam, mu(fam, x), mu(fam, y)) == base);
  }
  return t.outcome();
}

inline Outcome perfect_pairing(const BostConnes& fam, long max_n) {
  Tally t;
  for (long n = 1; n <= max_n; ++n) t.expect(finite_pairing_is_perfect(fam, n));
  return t.outcome();
}

/// mu_{kn}(x) = mu_n(x) for x in n^{-1} K.
inline Outcome mu_coherence(const BostConnes& fam, std::mt19937_64& rng, int trials) {
  Tally t;
  std::uniform_int_distribution<long> small(1, 12);
  for (int i = 0; i < trials; ++i) {
    long n = small(rng), k = small(rng);
    auto x = random_adele(fam, rng, n, 12 * n);
    // x has denominator dividing n, so it lies in n^{-1} K.
    auto a = mu(fam, x, BigInt(n)), b = mu(fam, x, BigInt(k * n));
    t.expect(same_adele(a, b));
    t.expect(mu_inverse(fam, a) == x);
    t.expect(project(fam, mu_inverse(fam, b), x.level) == x);
  }
  return t.outcome();
}

/// The matrix pairing is constant above the threshold, vanishes on lattice
/// points against integral vectors, and is symmetric under swapping the
/// towers when F and M are symmetric.
inline Outcome matrix_pairing_stability(const MatrixFamily& fam, std::mt19937_64& rng, int trials,
                                        const MatrixFamily::Semi& low, const MatrixFamily::Semi& high) {
  Tally t;
  auto tr = fam.transposed();
  std::vector<MatrixFamily::Semi> levels{fam.identity(), low};
  for (int i = 0; i < trials; ++i) {
    auto x = truncated(fam, high, random_element(fam, rng, levels));
    auto y = truncated(tr, high, random_element(tr, rng, levels));
    t.expect(matrix_pairing_at(fam, tr, x, y, low) == matrix_pairing_at(fam, tr, x, y, high));
    auto v = fam.random_M(rng, 9);
    auto w = tr.random_M(rng, 9);
    t.expect(matrix_pairing(fam, tr, truncated(fam, high, v), truncated(tr, high, w)) == 0);
  }
  // With F and M symmetric the transposed tower is the same tower and the
  // pairing is a symmetric form on it.
  const bool symmetric = fam.F() == fam.F().transpose() && fam.M() == fam.M().transpose();
  if (symmetric)
    for (int i = 0; i < trials; ++i) {
      auto x = truncated(fam, high, random_element(fam, rng, levels));
      auto y = truncated(fam, high, random_element(fam, rng, levels));
      t.expect(matrix_pairing(fam, tr, x, y) == matrix_pairing(fam, tr, y, x));
    }
  return t.outcome();
}

/// The padic tower at level l is Z/p^l Z on K, coherent under lowering precision.
inline Outcome padic_components(const Padic& fam, std::mt19937_64& rng, int trials) {
  Tally t;
  std::uniform_int_distribution<long> res(0, 1L << 30);
  std::uniform_int_distribution<int> lev(0, 8);
  for (int i = 0; i < trials; ++i) {
    int l = lev(rng), l2 = lev(rng);
    if (l2 > l) std::swap(l, l2);
    BigInt n = res(rng);
    auto x = project(fam, embed_j(fam, Rational(n)), l);
    auto c = j_p(fam.prime(), l, n);
    t.expect(Rational(c.r) == x.coset);
    t.expect(Rational(lower_precision(c, l2).r) == project(fam, x, l2).coset);
  }
  return t.outcome();
}

} // namespace hecke::checks
