#pragma once

#include <random>
#include <set>
#include <vector>

#include "hecke/pairs.hpp"

namespace hecke::test {

inline Rational q(long num, long den = 1) { return make_rational(num, den); }

inline lattice::IntMatrix mat(std::vector<std::vector<BigInt>> rows) { return lattice::IntMatrix::from_rows(rows); }

inline MatrixFamily diag_family() { return MatrixFamily(mat({{2, 0}, {0, 3}}), mat({{5, 0}, {0, 1}})); }

/// F = [[1,1],[-1,1]] (det 2) and M = 3I: non-diagonal, both expanding.
inline MatrixFamily rotation_family() { return MatrixFamily(mat({{1, 1}, {-1, 1}}), mat({{3, 0}, {0, 3}})); }

inline lattice::QVec vec(long a, long b, long den = 1) { return {q(a, den), q(b, den)}; }

/// Integer points of the box [0, bound)^2 that are distinct modulo the lattice
/// A Z^2, decided by whether A^{-1}(x - y) is integral. Independent of the
/// Hermite normal form code.
inline std::size_t brute_force_quotient_size(const lattice::IntMatrix& a, long bound) {
  auto inv = lattice::inverse(lattice::to_rational(a));
  std::vector<lattice::QVec> reps;
  for (long x = 0; x < bound; ++x)
    for (long y = 0; y < bound; ++y) {
      lattice::QVec p{q(x), q(y)};
      bool seen = false;
      for (const auto& r : reps) {
        auto d = lattice::apply(inv, lattice::QVec{p[0] - r[0], p[1] - r[1]});
        if (is_integer(d[0]) && is_integer(d[1])) {
          seen = true;
          break;
        }
      }
      if (!seen) reps.push_back(p);
    }
  return reps.size();
}

} // namespace hecke::test
