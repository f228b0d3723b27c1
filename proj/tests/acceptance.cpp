// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "hecke/checks.hpp"

using namespace hecke;

namespace {

constexpr double kTol = 1e-9;

lattice::IntMatrix mat(std::vector<std::vector<BigInt>> rows) { return lattice::IntMatrix::from_rows(rows); }

MatrixFamily diag_family() { return MatrixFamily(mat({{2, 0}, {0, 3}}), mat({{5, 0}, {0, 1}})); }

/// Sub-results of one criterion. Exact parts must be zero mismatches; float
/// parts must lie within the criterion tolerance.
class Verdict {
public:
  void add(const std::string& what, const checks::Outcome& o, double tolerance = kTol) {
    bool ok = checks::passes(o, tolerance);
    ok_ = ok_ && ok;
    if (!ok || !o.note.empty()) {
      detail_ += " [" + what + (ok ? "" : " FAILED") + ": " + (o.exact ? "mismatches " : "deviation ") +
                 std::to_string(o.deviation) + (o.note.empty() ? "" : ", " + o.note) + "]";
    }
    if (!o.exact) worst_ = std::max(worst_, o.deviation);
  }
  void require(const std::string& what, bool ok) {
    ok_ = ok_ && ok;
    if (!ok) detail_ += " [" + what + " FAILED]";
  }

  bool ok() const { return ok_; }
  double worst() const { return worst_; }
  const std::string& detail() const { return detail_; }

private:
  bool ok_ = true;
  double worst_ = 0.0;
  std::string detail_;
};

struct Criterion {
  int id;
  std::string name;
  double time_limit_s; // 0 when the criterion states none
  std::function<void(Verdict&)> body;
};

std::vector<BigInt> bc_range(long lo, long hi) {
  std::vector<BigInt> out;
  for (long s = lo; s <= hi; ++s) out.emplace_back(s);
  return out;
}

std::vector<Criterion> criteria() {
  std::vector<Criterion> out;

  out.push_back({1, "convolution homomorphism, bost-connes, denominators <= 24", 5.0, [](Verdict& v) {
                   BostConnes bc;
                   auto gens = checks::generators_up_to(bc, bc_range(1, 24));
                   v.add("i(delta_a) * i(delta_b)", checks::convolution_homomorphism(bc, gens));
                   v.require("generator count", gens.size() > 100);
                 }});

  out.push_back({2, "intertwining i o alpha_s = theta_*s o i", 10.0, [](Verdict& v) {
                   BostConnes bc;
                   auto bc_gens = checks::generators_up_to(bc, bc_range(1, 12));
                   v.add("bost-connes s <= 12", checks::intertwining(bc, bc_range(1, 12), bc_gens));

                   Padic pa(3);
                   std::vector<std::int64_t> ls{0, 1, 2, 3};
                   // Denominators <= 12 in Z[1/3] are 1, 3, 9.
                   auto pa_gens = checks::generators_up_to(pa, std::vector<std::int64_t>{0, 1, 2});
                   v.add("padic(3) p^l <= 27", checks::intertwining(pa, ls, pa_gens));

                   auto mf = diag_family();
                   auto ms = mf.semis_up_to(3);
                   // Generators psi_s(k) whose level has index <= 12.
                   auto m_gens = checks::generators_up_to(mf, checks::bounded_semis(mf, 3, 12));
                   v.add("matrix (m,n) <= (3,3)", checks::intertwining(mf, ms, m_gens));
                 }});

  out.push_back({3, "minimality formula and span of level-s cylinders", 0.0, [](Verdict& v) {
                   BostConnes bc;
                   std::mt19937_64 rng(3);
                   std::vector<BigInt> semis{2, 3, 4, 6, 12};
                   v.add("theta_*s^{-1}(i(delta_n)) and cylinders", checks::minimality(bc, semis, rng, 24));
                 }});

  out.push_back({4, "dilation covariance, Gram PSD, well-definedness", 30.0, [](Verdict& v) {
                   BostConnes bc;
                   std::mt19937_64 rng(4);
                   auto dil = dilate(regular_covariant(bc));
                   auto semis = checks::bounded_semis(bc, 3, 12);
                   v.add("covariance, 100 trials", checks::dilation_covariance(dil, semis, rng, 100));
                   v.add("Gram min eigenvalue", checks::gram_psd(dil, semis, rng, 4, 24));
                   v.add("collision pairs, 50", checks::well_defined(dil, semis, rng, 50));
                   v.add("U unitary", checks::dilation_unitary(dil, semis, rng, 20));

                   Padic pa(2);
                   auto pdil = dilate(regular_covariant(pa));
                   auto ps = checks::bounded_semis(pa, 3, 8);
                   v.add("padic covariance", checks::dilation_covariance(pdil, ps, rng, 100));
                   v.add("padic Gram", checks::gram_psd(pdil, ps, rng, 4, 24));
                   v.add("padic collisions", checks::well_defined(pdil, ps, rng, 50));
                 }});

  out.push_back({5, "restrict-compress after dilation recovers (pi_Y, V) and W", 0.0, [](Verdict& v) {
                   BostConnes bc;
                   std::mt19937_64 rng(5);
                   auto dil = dilate(regular_covariant(bc));
                   auto truncation = checks::bounded_semis(bc, 3, 12);
                   auto semis = checks::bounded_semis(bc, 3, 6);
                   v.add("round trip, 100 vectors", checks::dilation_round_trip(dil, truncation, semis, rng, 100));
                   v.add("H inside H^M", checks::dilation_recovery(dil, semis, rng, 100));
                 }});

  out.push_back({6, "averaging projection P_s, s in {2,3,4,6}", 0.0, [](Verdict& v) {
                   BostConnes bc;
                   std::mt19937_64 rng(6);
                   auto dil = dilate(regular_covariant(bc));
                   std::vector<BigInt> blocks{2, 3, 4, 6};
                   v.add("idempotent, self-adjoint, fixes H",
                         checks::averaging_projection(dil, blocks, checks::bounded_semis(bc, 3, 6), rng, 12));
                 }});

  out.push_back({7, "appendix: corner isometries, Theta Gram, X-Ind, rc o X-Ind", 0.0, [](Verdict& v) {
                   BostConnes bc;
                   std::mt19937_64 rng(7);
                   auto semis = checks::bounded_semis(bc, 3, 6);
                   v.add("v_s^* v_s = p, p^2 = p", checks::appendix_projection(bc, semis));
                   auto dil = dilate(regular_covariant(bc));
                   auto small = checks::small_semis(bc, 3, 4);
                   v.add("X-Ind Gram, 50 tensors", checks::x_ind_gram(dil, small, rng, 50));
                   v.add("X-Ind matches dilate", checks::x_ind_matches_dilation(dil, semis, rng, 24));
                   v.add("rc o X-Ind and Theta Gram on 50", checks::rc_inverse(dil, small, rng, 24, 50));
                   v.add("corner evaluation", checks::corner_eval(dil.base(), semis, rng, 12));
                   v.add("Theta naturality", checks::theta_naturality(bc, small, rng, 12, kTol));
                 }});

  out.push_back({8, "extension then restriction gives W o j = X; M-generated", 0.0, [](Verdict& v) {
                   BostConnes bc;
                   std::mt19937_64 rng(8);
                   auto dil = dilate(regular_covariant(bc));
                   auto semis = checks::bounded_semis(bc, 3, 6);
                   v.add("W o j = X on 100 vectors", checks::equivalence_round_trip(dil, semis, rng, 100));
                   v.add("trivial representation", checks::trivial_restriction(bc, semis, rng, 20));
                 }});

  out.push_back({9, "CRT bijection n <= 5040, homomorphism, j_p", 10.0, [](Verdict& v) {
                   BostConnes bc;
                   std::mt19937_64 rng(9);
                   v.add("bijective for n <= 5040", checks::crt_bijection(5040));
                   v.add("homomorphism, 1000 pairs", checks::crt_homomorphism(rng, 1000, 5040));
                   v.add("phi(j(n)) = (j_p(n)), n <= 100", checks::crt_j(bc, 100, 5040));
                 }});

  out.push_back({10, "duality pairing, perfectness, mu coherence, matrix stability", 0.0, [](Verdict& v) {
                   BostConnes bc;
                   std::mt19937_64 rng(10);
                   v.add("level independence, 500 pairs", checks::pairing_level_independence(bc, rng, 500));
                   v.add("perfect for n <= 64", checks::perfect_pairing(bc, 64));
                   v.add("mu coherence, 200 triples", checks::mu_coherence(bc, rng, 200));
                   v.add("matrix stability (1,1) vs (2,2)",
                         checks::matrix_pairing_stability(diag_family(), rng, 200, {1, 1}, {2, 2}));
                 }});

  out.push_back({11, "matrix lattice quotient counts, m,n <= 4", 0.0, [](Verdict& v) {
                   auto mf = diag_family();
                   v.add("diag(2,3), diag(5,1)", checks::index_formula(mf, mf.semis_up_to(4)));
                   MatrixFamily rot(mat({{1, 1}, {-1, 1}}), mat({{3, 0}, {0, 3}}));
                   v.add("[[1,1],[-1,1]], 3I", checks::index_formula(rot, rot.semis_up_to(4)));
                 }});

  return out;
}

} // namespace

int main() {
  int failed = 0;
  for (const auto& c : criteria()) {
    Verdict v;
    auto start = std::chrono::steady_clock::now();
    try {
      c.body(v);
    } catch (const std::exception& e) {
      v.require(std::string("exception: ") + e.what(), false);
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0 && secs >= c.time_limit_s)
      v.require("runtime " + std::to_string(secs) + " s over the " + std::to_string(c.time_limit_s) + " s limit", false);
    failed += v.ok() ? 0 : 1;
    std::printf("criterion %d: %s  %s  (worst float deviation %.3g, %.2f s)%s\n", c.id, v.ok() ? "PASS" : "FAIL",
                c.name.c_str(), v.worst(), secs, v.detail().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of 11 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
