#pragma once

// Named verification suites over a family, and their JSON-lines report.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "hecke/checks.hpp"
#include "hecke/serialize.hpp"

namespace hecke {

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"algebra", "tower", "autodil", "dilation", "appendix", "adeles"};
  return names;
}

struct RunConfig {
  json family = {{"family", "bost-connes"}};
  /// Comma-separated suite names, "all", or empty for none.
  std::string suite = "all";
  int depth = 3;
  /// Overrides the family level cap when positive.
  long max_level = 0;
  int trials = 24;
  std::uint64_t seed = 1;
  double tolerance = 1e-9;
  std::string report_path;
};

enum class Status { Pass, Fail, Skipped };

inline const char* status_name(Status s) {
  switch (s) {
  case Status::Pass: return "pass";
  case Status::Fail: return "fail";
  case Status::Skipped: return "skipped";
  }
  return "?";
}

struct CheckReport {
  std::string id;
  std::string anchor;
  Status status = Status::Pass;
  double deviation = 0.0;
  bool exact = true;
  double runtime_ms = 0.0;
  std::string note;
};

/// Throws ConfigError on invalid settings.
inline void validate(const RunConfig& cfg) {
  if (cfg.depth < 1) throw ConfigError("depth must be positive");
  if (cfg.max_level < 0) throw ConfigError("max-level must be positive");
  if (cfg.trials < 1) throw ConfigError("trials must be positive");
  if (!(cfg.tolerance > 0.0 && cfg.tolerance <= 1e-3)) throw ConfigError("tolerance must lie in (0, 1e-3]");
}

inline std::set<std::string> parse_suites(const std::string& selector) {
  std::set<std::string> out;
  std::stringstream in(selector);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty() || item == "none") continue;
    if (item == "all") {
      out.insert(suite_names().begin(), suite_names().end());
      continue;
    }
    if (std::find(suite_names().begin(), suite_names().end(), item) == suite_names().end())
      throw ConfigError("unknown suite '" + item + "'");
    out.insert(item);
  }
  return out;
}

/// Applies a positive level cap to a family.
inline void apply_level_cap(AnyFamily& fam, long cap) {
  if (cap <= 0) return;
  std::visit(
      [cap](auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, BostConnes>)
          f.set_level_cap(BigInt(cap));
        else if constexpr (std::is_same_v<T, Padic>)
          f.set_level_cap(cap);
        else
          f.set_level_cap({cap, cap});
      },
      fam);
}

namespace detail {

struct CheckSpec {
  std::string suite;
  std::string id;
  std::string anchor;
  std::function<checks::Outcome(std::mt19937_64&)> body;
};

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

template <HeckeFamily F>
void add_family_checks(std::vector<CheckSpec>& out, const F& fam, const RunConfig& cfg) {
  using namespace checks;
  const int depth = cfg.depth;
  const int trials = cfg.trials;
  const double tol = cfg.tolerance;
  auto semis = test_semis(fam, depth);
  auto small = bounded_semis(fam, depth, 12);
  auto tiny = bounded_semis(fam, depth, 6);
  auto add = [&](const char* suite, const char* id, const char* anchor, auto body) {
    out.push_back({suite, std::string(suite) + "." + id, anchor, body});
  };

  add("algebra", "index", "index of psi_s^{-1}(M) in M",
      [fam, semis](std::mt19937_64&) { return index_formula(fam, semis); });
  add("algebra", "ore_and_group", "Ore condition and the group S^{-1}S",
      [fam, small, trials](std::mt19937_64& rng) { return ore_and_group(fam, small, rng, trials); });
  add("algebra", "hecke_inclusion", "M contained in psi_s(M)",
      [fam, semis, trials](std::mt19937_64& rng) { return hecke_inclusion(fam, semis, rng, trials); });
  add("algebra", "alpha_endomorphism", "alpha_s injective *-endomorphisms, alpha_s alpha_t = alpha_st",
      [fam, tiny, trials](std::mt19937_64& rng) { return alpha_endomorphism(fam, tiny, rng, trials); });
  add("algebra", "regular_covariance", "covariance of the regular representation",
      [fam, small, trials, tol](std::mt19937_64& rng) { return regular_covariance(fam, small, rng, trials, tol); });

  add("tower", "laws", "inverse system, theta_t and the compact subgroup K",
      [fam, tiny, trials](std::mt19937_64& rng) { return tower_laws(fam, tiny, rng, trials); });
  add("tower", "j_injective", "j: N -> N_inf is injective",
      [fam, semis, trials](std::mt19937_64& rng) { return j_injective(fam, semis, rng, trials); });

  add("autodil", "convolution_homomorphism", "i(delta_a) * i(delta_b) = i(delta_{a+b}), chi_K * chi_K = chi_K",
      [fam, small](std::mt19937_64&) {
        auto gens = generators_up_to(fam, small);
        return convolution_homomorphism(fam, gens);
      });
  add("autodil", "intertwining", "i o alpha_s = theta_*s o i",
      [fam, small](std::mt19937_64&) { return intertwining(fam, small, generators_up_to(fam, small)); });
  add("autodil", "minimality", "theta_*s^{-1}(i(delta_n)) is an index-scaled cylinder; cylinders are reached",
      [fam, small, trials](std::mt19937_64& rng) { return minimality(fam, small, rng, trials); });
  add("autodil", "theta_star_action", "theta_* is an action by *-automorphisms of C(N_inf)",
      [fam, tiny, trials](std::mt19937_64& rng) { return theta_star_action(fam, tiny, rng, trials); });

  // The dilation and appendix checks work in H = l^2(N/M) with the regular
  // representation; block sizes grow with the index, so keep it modest.
  auto dil_semis = bounded_semis(fam, depth, 12);
  auto blocks = proper(fam, bounded_semis(fam, depth, 6));
  add("dilation", "covariance", "U_g W_n U_g^* = W_{psi_g(n)}",
      [fam, dil_semis, trials, tol](std::mt19937_64& rng) {
        return dilation_covariance(dilate(regular_covariant(fam, tol)), dil_semis, rng, trials);
      });
  add("dilation", "gram_psd", "positivity of the dilation inner product",
      [fam, dil_semis, trials, tol](std::mt19937_64& rng) {
        return gram_psd(dilate(regular_covariant(fam, tol)), dil_semis, rng, std::max(1, trials / 8), 12);
      });
  add("dilation", "well_defined", "U_{ts}^* V_t h = U_s^* h",
      [fam, dil_semis, trials, tol](std::mt19937_64& rng) {
        return well_defined(dilate(regular_covariant(fam, tol)), dil_semis, rng, trials);
      });
  add("dilation", "unitarity", "U is unitary and independent of the Ore pair",
      [fam, dil_semis, trials, tol](std::mt19937_64& rng) {
        return dilation_unitary(dilate(regular_covariant(fam, tol)), dil_semis, rng, trials);
      });
  add("dilation", "recovery", "W o j restricts to pi_Y and U to V on H",
      [fam, dil_semis, trials, tol](std::mt19937_64& rng) {
        return dilation_recovery(dilate(regular_covariant(fam, tol)), dil_semis, rng, trials);
      });
  add("dilation", "averaging_projection", "P_s is the projection onto the M-fixed block vectors",
      [fam, blocks, dil_semis, trials, tol](std::mt19937_64& rng) {
        return averaging_projection(dilate(regular_covariant(fam, tol)), blocks, dil_semis, rng,
                                    std::max(1, trials / 4));
      });
  add("dilation", "round_trip", "restriction-compression inverts dilation",
      [fam, blocks, dil_semis, trials, tol](std::mt19937_64& rng) {
        auto truncation = bounded_semis(fam, 2, 12);
        return dilation_round_trip(dilate(regular_covariant(fam, tol)), truncation, truncation, rng, trials);
      });

  auto ap = bounded_semis(fam, depth, 6);
  // Gram checks through rc evaluate corner products, whose cost grows with
  // the square of the index; they use the smallest levels only.
  auto gram_semis = small_semis(fam, depth, 4);
  add("appendix", "projection", "p = p^2 = p^*, v_s^* v_s = p, v_s v_t = v_st",
      [fam, ap](std::mt19937_64&) { return appendix_projection(fam, ap); });
  add("appendix", "crossed_product_laws", "associativity and involution in C(N_inf) x G",
      [fam, ap, trials](std::mt19937_64& rng) { return crossed_product_laws(fam, ap, rng, trials); });
  add("appendix", "corner", "corner p(B x G)p spanned by v_s^* i(a) v_t",
      [fam, ap, trials](std::mt19937_64& rng) { return corner_round_trip(fam, ap, rng, trials); });
  add("appendix", "corner_eval", "compression of the corner is a representation",
      [fam, ap, trials, tol](std::mt19937_64& rng) {
        return corner_eval(regular_covariant(fam, tol), ap, rng, trials);
      });
  add("appendix", "x_ind_gram", "X-Ind inner product matches the dilation",
      [fam, gram_semis, tol](std::mt19937_64& rng) {
        return x_ind_gram(dilate(regular_covariant(fam, tol)), gram_semis, rng, 24);
      });
  add("appendix", "x_ind_dilation", "X-Ind agrees with the minimal dilation",
      [fam, ap, trials, tol](std::mt19937_64& rng) {
        return x_ind_matches_dilation(dilate(regular_covariant(fam, tol)), ap, rng, trials);
      });
  add("appendix", "rc_inverse", "restriction-compression of X-Ind is the identity",
      [fam, gram_semis, trials, tol](std::mt19937_64& rng) {
        return rc_inverse(dilate(regular_covariant(fam, tol)), gram_semis, rng, trials, 12);
      });
  add("appendix", "naturality", "Theta is natural in the representation",
      [fam, ap, trials, tol](std::mt19937_64& rng) { return theta_naturality(fam, ap, rng, trials, tol); });
  add("appendix", "fullness", "p is a full projection",
      [fam, ap, trials](std::mt19937_64& rng) { return corner_fullness(fam, ap, rng, trials); });
  add("appendix", "equivalence", "extension to C(N_inf) x G and restriction are inverse",
      [fam, ap, trials, tol](std::mt19937_64& rng) {
        return equivalence_round_trip(dilate(regular_covariant(fam, tol)), ap, rng, trials);
      });
  add("appendix", "trivial", "the trivial representation is M-generated",
      [fam, ap, trials](std::mt19937_64& rng) { return trivial_restriction(fam, ap, rng, trials); });

  if constexpr (std::is_same_v<F, BostConnes>) {
    const long crt_max = std::min<long>(5040, 420L * depth);
    add("adeles", "crt_bijection", "Z/nZ = prod_p Z/p^l Z",
        [crt_max](std::mt19937_64&) { return crt_bijection(crt_max); });
    add("adeles", "crt_homomorphism", "the CRT map is a ring isomorphism",
        [crt_max, trials](std::mt19937_64& rng) { return crt_homomorphism(rng, 10 * trials, crt_max); });
    add("adeles", "crt_j", "phi(j(n)) = (j_p(n))_p",
        [fam](std::mt19937_64&) { return crt_j(fam, 100, 360); });
    add("adeles", "pairing", "pairing on Q/Z x A_f independent of level",
        [fam, trials](std::mt19937_64& rng) { return pairing_level_independence(fam, rng, trials); });
    add("adeles", "perfect_pairing", "Z/nZ -> ((1/n)Z/Z)^ injective",
        [fam](std::mt19937_64&) { return perfect_pairing(fam, 64); });
    add("adeles", "mu_coherence", "mu_{kn} = mu_n on n^{-1}K",
        [fam, trials](std::mt19937_64& rng) { return mu_coherence(fam, rng, trials); });
  } else if constexpr (std::is_same_v<F, MatrixFamily>) {
    add("adeles", "matrix_pairing", "pairing of the F, M tower with its transpose",
        [fam, trials](std::mt19937_64& rng) {
          return matrix_pairing_stability(fam, rng, trials, {1, 1}, {2, 2});
        });
  } else {
    add("adeles", "padic_components", "Z_p truncations are Z/p^l Z",
        [fam, trials](std::mt19937_64& rng) { return padic_components(fam, rng, trials); });
  }
}

inline CheckReport execute(const CheckSpec& spec, std::uint64_t seed, double tolerance) {
  CheckReport r{spec.id, spec.anchor, Status::Pass, 0.0, true, 0.0, {}};
  std::mt19937_64 rng(seed ^ fnv1a(spec.id));
  auto start = std::chrono::steady_clock::now();
  try {
    auto o = spec.body(rng);
    r.deviation = o.deviation;
    r.exact = o.exact;
    r.note = o.note;
    r.status = checks::passes(o, tolerance) ? Status::Pass : Status::Fail;
  } catch (const LevelCapError& e) {
    r.status = Status::Skipped;
    r.note = std::string("level cap: ") + e.what();
  } catch (const PrecisionError& e) {
    r.status = Status::Skipped;
    r.note = std::string("precision: ") + e.what();
  } catch (const std::exception& e) {
    r.status = Status::Fail;
    r.note = e.what();
  }
  r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

} // namespace detail

inline AnyFamily configured_family(const RunConfig& cfg) {
  auto fam = family_from_json(cfg.family);
  apply_level_cap(fam, cfg.max_level);
  return fam;
}

/// Runs the selected suites; reports are sorted by id.
inline std::vector<CheckReport> run(const RunConfig& cfg) {
  validate(cfg);
  auto suites = parse_suites(cfg.suite);
  if (suites.empty()) return {};
  auto fam = configured_family(cfg);
  std::vector<detail::CheckSpec> specs;
  std::visit([&](const auto& f) { detail::add_family_checks(specs, f, cfg); }, fam);
  std::vector<CheckReport> out;
  for (const auto& spec : specs)
    if (suites.count(spec.suite)) out.push_back(detail::execute(spec, cfg.seed, cfg.tolerance));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return out;
}

inline bool any_failed(const std::vector<CheckReport>& reports) {
  return std::any_of(reports.begin(), reports.end(), [](const auto& r) { return r.status == Status::Fail; });
}

inline json to_json(const CheckReport& r) {
  json j{{"id", r.id}, {"anchor", r.anchor}, {"status", status_name(r.status)}, {"exact", r.exact}};
  if (r.status == Status::Skipped) {
    j["deviation"] = nullptr;
  } else if (r.exact) {
    // Exact checks report the number of mismatches.
    j["deviation"] = static_cast<std::int64_t>(r.deviation);
  } else if (std::isfinite(r.deviation)) {
    j["deviation"] = r.deviation;
  } else {
    j["deviation"] = "inf";
  }
  j["runtime_ms"] = std::round(r.runtime_ms * 1000.0) / 1000.0;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

/// One JSON record per line, then a summary record. Empty input writes nothing.
inline void write_report(std::ostream& os, const RunConfig& cfg, const std::vector<CheckReport>& reports) {
  if (reports.empty()) return;
  std::size_t pass = 0, fail = 0, skipped = 0, exact_zero = 0;
  for (const auto& r : reports) {
    os << to_json(r).dump() << '\n';
    switch (r.status) {
    case Status::Pass: ++pass; break;
    case Status::Fail: ++fail; break;
    case Status::Skipped: ++skipped; break;
    }
    if (r.status == Status::Pass && r.exact) ++exact_zero;
  }
  json summary{{"total", reports.size()},
               {"pass", pass},
               {"fail", fail},
               {"skipped", skipped},
               {"exact_zero", exact_zero},
               {"float_within_tolerance", pass - exact_zero},
               {"family", family_to_json(configured_family(cfg))},
               {"suite", cfg.suite},
               {"depth", cfg.depth},
               {"seed", cfg.seed},
               {"tolerance", cfg.tolerance}};
  os << json{{"summary", summary}}.dump() << '\n';
}

} // namespace hecke
