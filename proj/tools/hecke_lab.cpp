#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "hecke/verify.hpp"

namespace {

using namespace hecke;

void print_families() {
  std::cout << "bost-connes  N = Q, M = Z, S = N^x, psi_s(x) = x/s; default level cap 5040\n"
               "padic        N = Z[1/p], M = Z, S = N, psi_l(x) = x/p^l; --p <prime>, default cap 24\n"
               "matrix       N = union F^-m M^-n Z^d, M = Z^d, S = N^2; --F, --M as JSON integer matrices,\n"
               "             commuting, determinants coprime and not 0 or +-1; default cap (4,4)\n";
}

void demo() {
  BostConnes bc;
  std::cout << "bost-connes\n";
  std::cout << "  coset reps of psi_6^{-1}(Z) in Z:";
  for (const auto& r : bc.coset_reps(6)) std::cout << ' ' << bc.format(r);
  std::cout << "\n  alpha_2(delta_{1/3}) =";
  auto image = alpha(bc, BigInt(2), delta(bc, make_rational(1, 3)));
  for (const auto& [k, c] : image.terms())
    std::cout << ' ' << format_rational(c.re) << " delta_" << bc.format(k);
  auto f = theta_star_inv(bc, BigInt(3), embed_i(bc, delta(bc, make_rational(1, 2))));
  std::cout << "\n  theta_*3^{-1}(i(delta_1/2)) = " << to_json(bc, f).dump() << '\n';

  auto x = truncated(bc, BigInt(7), make_rational(12, 1));
  std::cout << "  CRT of 12 mod 7: " << to_json(mu(bc, x, BigInt(1))).dump() << '\n';
  auto a = truncated(bc, BigInt(12), make_rational(1, 3));
  auto b = truncated(bc, BigInt(12), make_rational(1, 2));
  std::cout << "  <1/3, 1/2> at level 6 = " << format_rational(pairing(bc, a, b)) << '\n';

  auto p = projection_p(bc);
  auto corner = multiply(bc, involution(bc, isom_v(bc, BigInt(2))), isom_v(bc, BigInt(2)));
  std::cout << "  v_2^* v_2 = p: " << (equal(bc, corner, p) ? "yes" : "no") << '\n';

  auto dil = dilate(regular_covariant(bc));
  auto h = SparseVector<BostConnes>::basis(Rational(0));
  auto v = dil.symbol(BigInt(2), h) - dil.symbol(BigInt(4), dil.base().apply_V(BigInt(2), h));
  std::cout << "  || U_2^* xi_0 - U_4^* V_2 xi_0 || = " << dil.norm(v) << '\n';

  MatrixFamily mf(lattice::IntMatrix::from_rows({{2, 0}, {0, 3}}), lattice::IntMatrix::from_rows({{5, 0}, {0, 1}}));
  std::cout << "matrix F=diag(2,3), M=diag(5,1)\n";
  std::cout << "  index(1,1) = " << mf.index({1, 1}).get_str() << '\n';
}

int verify(const RunConfig& cfg) {
  auto reports = run(cfg);
  if (cfg.report_path.empty()) {
    write_report(std::cout, cfg, reports);
  } else {
    std::ofstream out(cfg.report_path);
    if (!out) throw ConfigError("cannot open report file " + cfg.report_path);
    write_report(out, cfg, reports);
  }
  std::size_t failed = 0, skipped = 0;
  for (const auto& r : reports) {
    failed += r.status == Status::Fail;
    skipped += r.status == Status::Skipped;
  }
  std::cerr << reports.size() << " checks, " << failed << " failed, " << skipped << " skipped\n";
  return any_failed(reports) ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"hecke-lab: exact and numerical checks for Hecke pairs from semigroup crossed products"};
  app.require_subcommand(1);

  app.add_subcommand("families", "list the available families")->callback(print_families);
  app.add_subcommand("demo", "print a few worked values")->callback(demo);

  RunConfig cfg;
  std::string family = "bost-connes", f_json, m_json;
  long prime = 2;
  auto* v = app.add_subcommand("verify", "run verification suites and write a JSON-lines report");
  v->add_option("--family", family, "bost-connes | padic | matrix")->capture_default_str();
  v->add_option("--p", prime, "prime for the padic family")->capture_default_str();
  v->add_option("--F", f_json, "matrix F as JSON, e.g. [[2,0],[0,3]]");
  v->add_option("--M", m_json, "matrix M as JSON");
  v->add_option("--suite", cfg.suite, "algebra,tower,autodil,dilation,appendix,adeles | all | none")
      ->capture_default_str();
  v->add_option("--depth", cfg.depth, "semigroup depth")->capture_default_str();
  v->add_option("--max-level", cfg.max_level, "level cap override");
  v->add_option("--trials", cfg.trials, "random trials per check")->capture_default_str();
  v->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  v->add_option("--tolerance", cfg.tolerance, "float tolerance")->capture_default_str();
  v->add_option("--report", cfg.report_path, "report path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const hecke::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  if (!v->parsed()) return 0;

  try {
    cfg.family = {{"family", family}};
    if (family == "padic") cfg.family["p"] = prime;
    if (!f_json.empty()) cfg.family["F"] = json::parse(f_json);
    if (!m_json.empty()) cfg.family["M"] = json::parse(m_json);
    if (cfg.max_level == 0) {
      if (const char* env = std::getenv("HECKE_LAB_LEVEL_CAP")) {
        try {
          cfg.max_level = std::stol(env);
        } catch (const std::exception&) {
          throw ConfigError(std::string("HECKE_LAB_LEVEL_CAP is not an integer: ") + env);
        }
        if (cfg.max_level <= 0) throw ConfigError("HECKE_LAB_LEVEL_CAP must be positive");
      }
    }
    return verify(cfg);
  } catch (const json::parse_error& e) {
    std::cerr << "error: bad matrix JSON: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
