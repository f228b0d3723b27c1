#pragma once

// JSON encodings. Rationals are strings "p/q" so that exact values survive a
// round trip; float amplitudes are plain numbers.

#include "json.hpp"

#include <string>
#include <type_traits>
#include <variant>

#include "hecke/adeles.hpp"
#include "hecke/autodil.hpp"
#include "hecke/error.hpp"
#include "hecke/grpalg.hpp"
#include "hecke/pairs.hpp"
#include "hecke/repspace.hpp"
#include "hecke/tower.hpp"
#include "hecke/xprod.hpp"

namespace hecke {

using json = nlohmann::json;

inline json rational_to_json(const Rational& r) { return format_rational(r); }

inline Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(BigInt(static_cast<long>(j.get<std::int64_t>())));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw ConfigError("expected a rational as \"p/q\" or an integer, got " + j.dump());
}

inline BigInt bigint_from_json(const json& j) {
  Rational r = rational_from_json(j);
  if (!is_integer(r)) throw ConfigError("expected an integer, got " + j.dump());
  return r.get_num();
}

inline json complex_rational_to_json(const ComplexRational& c) {
  return {{"re", rational_to_json(c.re)}, {"im", rational_to_json(c.im)}};
}

inline ComplexRational complex_rational_from_json(const json& j) {
  return ComplexRational{rational_from_json(j.at("re")), rational_from_json(j.at("im"))};
}

// --- elements of N and S ------------------------------------------------------

template <HeckeFamily F>
json element_to_json(const F&, const typename F::Element& x) {
  if constexpr (std::is_same_v<typename F::Element, Rational>) {
    return rational_to_json(x);
  } else {
    json out = json::array();
    for (const auto& c : x) out.push_back(rational_to_json(c));
    return out;
  }
}

template <HeckeFamily F>
typename F::Element element_from_json(const F& fam, const json& j) {
  if constexpr (std::is_same_v<typename F::Element, Rational>) {
    return rational_from_json(j);
  } else {
    if (!j.is_array() || j.size() != fam.dim()) throw ConfigError("expected a vector of length " + std::to_string(fam.dim()));
    typename F::Element out;
    for (const auto& c : j) out.push_back(rational_from_json(c));
    return out;
  }
}

template <HeckeFamily F>
json semi_to_json(const F&, const typename F::Semi& s) {
  if constexpr (std::is_same_v<typename F::Semi, BigInt>) {
    return s.get_str();
  } else if constexpr (std::is_integral_v<typename F::Semi>) {
    return s;
  } else {
    return json::array({s[0], s[1]});
  }
}

template <HeckeFamily F>
typename F::Semi semi_from_json(const F& fam, const json& j) {
  typename F::Semi s;
  if constexpr (std::is_same_v<typename F::Semi, BigInt>) {
    s = bigint_from_json(j);
  } else if constexpr (std::is_integral_v<typename F::Semi>) {
    s = j.get<typename F::Semi>();
  } else {
    if (!j.is_array() || j.size() != 2) throw ConfigError("expected a pair [m, n], got " + j.dump());
    s = {j[0].get<std::int64_t>(), j[1].get<std::int64_t>()};
  }
  fam.validate(s);
  return s;
}

// --- composite values ---------------------------------------------------------

template <HeckeFamily F>
json to_json(const F& fam, const TruncatedElement<F>& x) {
  return {{"level", semi_to_json(fam, x.level)}, {"coset", element_to_json(fam, x.coset)}};
}

template <HeckeFamily F>
TruncatedElement<F> truncated_from_json(const F& fam, const json& j) {
  return truncated(fam, semi_from_json(fam, j.at("level")), element_from_json(fam, j.at("coset")));
}

template <HeckeFamily F>
json to_json(const F& fam, const GroupElement<F>& g) {
  return {{"den", semi_to_json(fam, g.den)}, {"num", semi_to_json(fam, g.num)}};
}

template <HeckeFamily F>
GroupElement<F> group_from_json(const F& fam, const json& j) {
  return group_element(fam, semi_from_json(fam, j.at("den")), semi_from_json(fam, j.at("num")));
}

template <HeckeFamily F>
json to_json(const F& fam, const GroupAlgebraElement<F, ComplexRational>& a) {
  json out = json::array();
  for (const auto& [k, c] : a.terms()) out.push_back({{"n", element_to_json(fam, k)}, {"c", complex_rational_to_json(c)}});
  return out;
}

template <HeckeFamily F>
GroupAlgebraElement<F, ComplexRational> group_algebra_from_json(const F& fam, const json& j) {
  GroupAlgebraElement<F, ComplexRational> a;
  for (const auto& t : j)
    a.accumulate(fam.canonical(element_from_json(fam, t.at("n")), fam.identity()), complex_rational_from_json(t.at("c")));
  return a;
}

template <HeckeFamily F>
json to_json(const F& fam, const LocFun<F, ComplexRational>& f) {
  json values = json::array();
  for (const auto& [k, c] : f.values())
    values.push_back({{"coset", element_to_json(fam, k)}, {"c", complex_rational_to_json(c)}});
  return {{"level", semi_to_json(fam, f.level())}, {"values", values}};
}

template <HeckeFamily F>
LocFun<F, ComplexRational> locfun_from_json(const F& fam, const json& j) {
  LocFun<F, ComplexRational> f(semi_from_json(fam, j.at("level")));
  for (const auto& t : j.at("values"))
    f.accumulate(fam.canonical(element_from_json(fam, t.at("coset")), f.level()), complex_rational_from_json(t.at("c")));
  return f;
}

template <HeckeFamily F>
json to_json(const F& fam, const SparseVector<F>& v) {
  json out = json::array();
  for (const auto& [k, c] : v.coeffs()) out.push_back({{"k", element_to_json(fam, k)}, {"re", c.real()}, {"im", c.imag()}});
  return out;
}

template <HeckeFamily F>
SparseVector<F> sparse_vector_from_json(const F& fam, const json& j) {
  SparseVector<F> v;
  for (const auto& t : j)
    v.accumulate(fam.canonical(element_from_json(fam, t.at("k")), fam.identity()),
                 Complex(t.at("re").get<double>(), t.at("im").get<double>()));
  return v;
}

/// An array of {f, g} records, one per u_g.
template <HeckeFamily F>
json to_json(const F& fam, const CrossedElement<F, ComplexRational>& d) {
  json out = json::array();
  for (const auto& [g, f] : d.terms()) out.push_back({{"f", to_json(fam, f)}, {"g", to_json(fam, g)}});
  return out;
}

template <HeckeFamily F>
CrossedElement<F, ComplexRational> crossed_from_json(const F& fam, const json& j) {
  CrossedElement<F, ComplexRational> d;
  for (const auto& t : j) d.accumulate(fam, group_from_json(fam, t.at("g")), locfun_from_json(fam, t.at("f")));
  return d;
}

inline json to_json(const AdeleTruncation& a) {
  json comps = json::array();
  for (const auto& c : a.components) comps.push_back({{"p", c.p.get_str()}, {"l", c.l}, {"r", c.r.get_str()}});
  return {{"m", a.m.get_str()}, {"components", comps}};
}

inline AdeleTruncation adele_from_json(const json& j) {
  AdeleTruncation a;
  a.m = bigint_from_json(j.at("m"));
  for (const auto& c : j.at("components"))
    a.components.push_back({bigint_from_json(c.at("p")), c.at("l").get<int>(), bigint_from_json(c.at("r"))});
  return a;
}

// --- family descriptors -------------------------------------------------------

using AnyFamily = std::variant<BostConnes, Padic, MatrixFamily>;

inline lattice::IntMatrix int_matrix_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw ConfigError(std::string(what) + " must be a nonempty array of rows");
  std::vector<std::vector<BigInt>> rows;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != j.size()) throw ConfigError(std::string(what) + " must be square");
    std::vector<BigInt> r;
    for (const auto& v : row) r.push_back(bigint_from_json(v));
    rows.push_back(std::move(r));
  }
  return lattice::IntMatrix::from_rows(rows);
}

/// {"family": "bost-connes"}, {"family": "padic", "p": 3} or
/// {"family": "matrix", "F": [[...]], "M": [[...]]}.
inline AnyFamily family_from_json(const json& j) {
  const auto tag = j.at("family").get<std::string>();
  try {
    if (tag == BostConnes::tag) return BostConnes{};
    if (tag == Padic::tag) return Padic(j.value("p", 2L));
    if (tag == MatrixFamily::tag) {
      if (!j.contains("F") || !j.contains("M")) throw ConfigError("matrix family needs F and M");
      return MatrixFamily(int_matrix_from_json(j.at("F"), "F"), int_matrix_from_json(j.at("M"), "M"));
    }
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  throw ConfigError("unknown family '" + tag + "'");
}

inline json family_to_json(const AnyFamily& fam) {
  return std::visit(
      [](const auto& f) -> json {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, BostConnes>) {
          return {{"family", BostConnes::tag}};
        } else if constexpr (std::is_same_v<T, Padic>) {
          return {{"family", Padic::tag}, {"p", f.prime().get_si()}};
        } else {
          auto rows = [](const lattice::IntMatrix& a) {
            json out = json::array();
            for (const auto& row : a.to_rows()) {
              json r = json::array();
              for (const auto& v : row) r.push_back(v.get_str());
              out.push_back(r);
            }
            return out;
          };
          return {{"family", MatrixFamily::tag}, {"F", rows(f.F())}, {"M", rows(f.M())}};
        }
      },
      fam);
}

} // namespace hecke
