#pragma once

// Covariant representations (pi_Y, V) of (C[N/M], S, alpha) on inner-product
// spaces. The carrier of the regular representation is l^2(N/M), held as
// finitely supported vectors over the infinite basis {xi_{nM}}.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hecke/error.hpp"
#include "hecke/grpalg.hpp"
#include "hecke/pairs.hpp"

namespace hecke {

inline constexpr double kDefaultTolerance = 1e-9;

template <HeckeFamily F>
class SparseVector {
public:
  using Element = typename F::Element;
  using Coeffs = std::map<Element, Complex, ElementLess<Element>>;

  SparseVector() = default;

  static SparseVector basis(const Element& canonical_key, Complex c = 1.0) {
    SparseVector v;
    v.accumulate(canonical_key, c);
    return v;
  }

  void accumulate(const Element& key, const Complex& c) { add_at(key, c); }
  void accumulate(Element&& key, const Complex& c) { add_at(std::move(key), c); }

  const Coeffs& coeffs() const { return coeffs_; }
  std::size_t size() const { return coeffs_.size(); }

  Complex at(const Element& key) const {
    auto it = coeffs_.find(key);
    return it == coeffs_.end() ? Complex{} : it->second;
  }

  SparseVector& operator+=(const SparseVector& o) {
    for (const auto& [k, c] : o.coeffs_) accumulate(k, c);
    return *this;
  }
  friend SparseVector operator+(SparseVector a, const SparseVector& b) { return a += b; }
  friend SparseVector operator-(SparseVector a, const SparseVector& b) {
    for (const auto& [k, c] : b.coeffs_) a.accumulate(k, -c);
    return a;
  }
  friend SparseVector operator*(const Complex& c, const SparseVector& a) {
    SparseVector r;
    if (c == Complex{}) return r;
    for (const auto& [k, v] : a.coeffs_) r.accumulate(k, c * v);
    return r;
  }

private:
  template <class K>
  void add_at(K&& key, const Complex& c) {
    if (c == Complex{}) return;
    auto [it, inserted] = coeffs_.try_emplace(std::forward<K>(key), c);
    if (!inserted) {
      it->second += c;
      if (it->second == Complex{}) coeffs_.erase(it);
    }
  }

  Coeffs coeffs_;
};

/// l^2(N/M) with <a, b> = sum conj(a_k) b_k.
template <HeckeFamily F>
struct SparseSpace {
  using Vector = SparseVector<F>;

  Complex inner(const Vector& a, const Vector& b) const {
    Complex acc{};
    const auto& small = a.size() <= b.size() ? a.coeffs() : b.coeffs();
    const auto& large = a.size() <= b.size() ? b.coeffs() : a.coeffs();
    const bool a_small = a.size() <= b.size();
    for (const auto& [k, c] : small) {
      auto it = large.find(k);
      if (it == large.end()) continue;
      acc += a_small ? std::conj(c) * it->second : std::conj(it->second) * c;
    }
    return acc;
  }

  double norm(const Vector& v) const {
    double acc = 0.0;
    for (const auto& [k, c] : v.coeffs()) acc += std::norm(c);
    return std::sqrt(acc);
  }

  double distance(const Vector& a, const Vector& b) const { return norm(a - b); }
};

/// (pi_Y, V) on a space: Y_{nM}, V_s and V_s^* as evaluable maps.
template <HeckeFamily F, class Space>
struct CovariantRep {
  using Family = F;
  using Vector = typename Space::Vector;
  using Element = typename F::Element;
  using Semi = typename F::Semi;

  F family;
  Space space;
  std::function<Vector(const Element&, const Vector&)> apply_Y;
  std::function<Vector(const Semi&, const Vector&)> apply_V;
  std::function<Vector(const Semi&, const Vector&)> apply_Vstar;
};

/// pi_Y(a) v.
template <HeckeFamily F, class Space, Scalar T>
typename Space::Vector apply_pi(const CovariantRep<F, Space>& rep, const GroupAlgebraElement<F, T>& a,
                                const typename Space::Vector& v) {
  typename Space::Vector out{};
  for (const auto& [k, c] : a.terms()) out = out + ScalarTraits<T>::to_complex(c) * rep.apply_Y(k, v);
  return out;
}

/// || V_s Y_{nM} V_s^* v - index(s)^{-1} sum_{m in solve_coset(s, n)} Y_{mM} v ||.
template <HeckeFamily F, class Space>
double verify_covariance(const CovariantRep<F, Space>& rep, const typename F::Semi& s,
                         const typename F::Element& n, const typename Space::Vector& v) {
  const auto& fam = rep.family;
  auto lhs = rep.apply_V(s, rep.apply_Y(n, rep.apply_Vstar(s, v)));
  typename Space::Vector rhs{};
  for (const auto& m : solve_coset(fam, s, n)) rhs = rhs + rep.apply_Y(m, v);
  const double w = 1.0 / fam.index(s).get_d();
  return rep.space.distance(lhs, Complex(w) * rhs);
}

template <HeckeFamily F>
SparseVector<F> random_sparse_vector(const F& fam, std::mt19937_64& rng,
                                     const std::vector<typename F::Semi>& levels, int terms = 3) {
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  SparseVector<F> v;
  const auto e = fam.identity();
  for (int i = 0; i < terms; ++i)
    v.accumulate(fam.canonical(random_element(fam, rng, levels), e), Complex(coeff(rng), coeff(rng)));
  return v;
}

namespace detail {

template <HeckeFamily F>
CovariantRep<F, SparseSpace<F>> regular_maps(const F& fam) {
  CovariantRep<F, SparseSpace<F>> rep{fam, SparseSpace<F>{}, {}, {}, {}};
  rep.apply_Y = [fam](const typename F::Element& n, const SparseVector<F>& v) {
    SparseVector<F> out;
    const auto e = fam.identity();
    for (const auto& [k, c] : v.coeffs()) out.accumulate(fam.canonical(fam.add(n, k), e), c);
    return out;
  };
  rep.apply_V = [fam](const typename F::Semi& s, const SparseVector<F>& v) {
    SparseVector<F> out;
    const double w = 1.0 / std::sqrt(fam.index(s).get_d());
    for (const auto& [k, c] : v.coeffs())
      for (const auto& m : solve_coset(fam, s, k)) out.accumulate(m, w * c);
    return out;
  };
  rep.apply_Vstar = [fam](const typename F::Semi& s, const SparseVector<F>& v) {
    SparseVector<F> out;
    const double w = 1.0 / std::sqrt(fam.index(s).get_d());
    const auto e = fam.identity();
    for (const auto& [k, c] : v.coeffs()) out.accumulate(fam.canonical(fam.psi_inv(s, k), e), w * c);
    return out;
  };
  return rep;
}

} // namespace detail

/// The regular covariant representation on l^2(N/M):
///   Y_{nM} xi_k = xi_{nk},
///   V_s xi_n = index(s)^{-1/2} sum_{m in solve_coset(s, n)} xi_m,
///   V_s^* xi_k = index(s)^{-1/2} xi_{psi_s^{-1}(k)}.
/// The covariance relation is checked on a seeded sample before returning.
template <HeckeFamily F>
CovariantRep<F, SparseSpace<F>> regular_covariant(const F& fam, double tolerance = kDefaultTolerance,
                                                  int self_check_trials = 24) {
  auto rep = detail::regular_maps(fam);
  std::mt19937_64 rng(0x5eed);
  auto levels = fam.semis_up_to(2);
  std::uniform_int_distribution<std::size_t> pick(0, levels.size() - 1);
  for (int trial = 0; trial < self_check_trials; ++trial) {
    const auto& s = levels[pick(rng)];
    auto n = random_element(fam, rng, levels);
    auto v = random_sparse_vector(fam, rng, levels, 2);
    double dev = verify_covariance(rep, s, n, v);
    if (!(dev <= tolerance))
      throw CovarianceError("regular representation of " + fam.name() + " violates covariance at s=" +
                            fam.format_semi(s) + " by " + std::to_string(dev));
  }
  return rep;
}

/// |list|^{-1} sum R_g v for the unitaries R_g of a finite group.
template <class Vector>
Vector average_projection(const std::vector<std::function<Vector(const Vector&)>>& unitaries, const Vector& v) {
  if (unitaries.empty()) throw DomainError("averaging over an empty group");
  Vector acc{};
  for (const auto& r : unitaries) acc = acc + r(v);
  return Complex(1.0 / static_cast<double>(unitaries.size())) * acc;
}

/// Gram matrix G(i, j) = <v_i, v_j>.
template <class Space>
Eigen::MatrixXcd gram_matrix(const Space& space, const std::vector<typename Space::Vector>& vectors) {
  const auto n = static_cast<Eigen::Index>(vectors.size());
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) {
      g(i, j) = space.inner(vectors[static_cast<std::size_t>(i)], vectors[static_cast<std::size_t>(j)]);
      g(j, i) = std::conj(g(i, j));
    }
  return g;
}

inline double min_eigenvalue(const Eigen::MatrixXcd& hermitian) {
  if (hermitian.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

inline double max_abs_difference(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DomainError("Gram matrices differ in shape");
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

} // namespace hecke
