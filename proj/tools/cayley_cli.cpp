#include "cayley/cayley.hpp"
#include "cayley/suite.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

using namespace cayley;

namespace {

constexpr int kExitHolds = 0;
constexpr int kExitFails = 1;
constexpr int kExitUsage = 2;

// Matrix file format: {"rows": r, "cols": c, "entries": [["p/q", ...], ...]}
std::optional<RMatrix<Rational>> load_matrix_file(const std::string& path, std::string& err) {
  std::ifstream in(path);
  if (!in) {
    err = "cannot open matrix file: " + path;
    return std::nullopt;
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    err = "malformed matrix file " + path + ": " + e.what();
    return std::nullopt;
  }
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries") ||
      !j["rows"].is_number_unsigned() || !j["cols"].is_number_unsigned() ||
      !j["entries"].is_array()) {
    err = "malformed matrix file " + path + ": need rows, cols, entries";
    return std::nullopt;
  }
  unsigned rows = j["rows"].get<unsigned>(), cols = j["cols"].get<unsigned>();
  if (j["entries"].size() != rows) {
    err = "malformed matrix file " + path + ": wrong number of rows";
    return std::nullopt;
  }
  RMatrix<Rational> M(rows, cols, Rational(0));
  for (unsigned i = 0; i < rows; ++i) {
    const auto& row = j["entries"][i];
    if (!row.is_array() || row.size() != cols) {
      err = "malformed matrix file " + path + ": wrong row length";
      return std::nullopt;
    }
    for (unsigned c = 0; c < cols; ++c) {
      if (!row[c].is_string()) {
        err = "malformed matrix file " + path + ": entries must be \"p/q\" strings";
        return std::nullopt;
      }
      auto v = rat_parse(row[c].get<std::string>());
      if (!v) {
        err = "malformed matrix file " + path + ": bad rational \"" +
              row[c].get<std::string>() + "\"";
        return std::nullopt;
      }
      M.at(i, c) = *v;
    }
  }
  return M;
}

unsigned env_threads(unsigned fallback) {
  if (const char* s = std::getenv("CAYLEY_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
  }
  return fallback;
}

void print_report(const VerificationReport& rep, const std::string& format) {
  if (format == "json") {
    std::cout << report_json(rep) << "\n";
    return;
  }
  std::cout << (rep.vacuous ? "VACUOUS" : (rep.holds ? "HOLDS" : "FAILS")) << "  "
            << rep.kase.key() << "\n";
  std::cout << "  expected_b: " << rep.expected_b.str() << "\n";
  std::cout << "  computed_b: " << (rep.computed_b ? rep.computed_b->str() : "(none)") << "\n";
  std::cout << "  lhs: " << rep.lhs_text << "\n";
  std::cout << "  rhs: " << rep.rhs_text << "\n";
  std::cout << "  elapsed: " << rep.elapsed_ms << " ms\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verifier for Cayley-type Bernstein-Sato identities"};
  app.require_subcommand(1);

  // ---- verify ----
  auto* verify = app.add_subcommand("verify", "verify one identity instance");
  std::string family_str, format = "table";
  unsigned vn = 0, vm = 0, vl = 0, vroot = 0;
  std::vector<unsigned> dims, minor_i, minor_j;
  std::vector<std::string> alpha_strs;
  std::vector<int> betas;
  std::vector<std::string> matrix_files;
  std::uint64_t vseed = 0;
  verify->add_option("--family", family_str, "identity family")->required();
  verify->add_option("--n", vn, "matrix size n (columns for rectangular families)");
  verify->add_option("--m", vm, "row count m (pfaffian families: matrix size 2m)");
  verify->add_option("--l", vl, "number of matrices (rect_multi)");
  verify->add_option("--dims", dims, "rect_multi dimensions n1,n2,...")->delimiter(',');
  verify->add_option("--minor-i", minor_i, "minor row set I")->delimiter(',');
  verify->add_option("--minor-j", minor_j, "minor column set J")->delimiter(',');
  verify->add_option("--alpha", alpha_strs, "diag_param alpha values")->delimiter(',');
  verify->add_option("--beta", betas, "diag family beta values (0/1)")->delimiter(',');
  verify->add_option("--root", vroot, "root vertex for tree families");
  verify->add_option("--matrix-file", matrix_files,
                     "matrix file(s); first is A, second is B (product/border)");
  verify->add_option("--seed", vseed, "seed for generated parameter matrices");
  verify->add_option("--format", format, "output format: table or json")
      ->check(CLI::IsMember({"table", "json"}));

  // ---- suite ----
  auto* suite = app.add_subcommand("suite", "run the full desk-scale suite");
  std::string sformat = "table";
  unsigned sthreads = 1, spairs = 5;
  std::uint64_t sseed = 0;
  std::optional<unsigned> smax;
  std::vector<std::string> sfamilies;
  bool no_lemmas = false, no_paths = false, lemmas_only = false, full_minors_only = false;
  suite->add_option("--format", sformat, "output format: table or json")
      ->check(CLI::IsMember({"table", "json"}));
  suite->add_option("--threads", sthreads, "worker threads (CAYLEY_THREADS overrides)");
  suite->add_option("--seed", sseed, "seed for random parameter matrices");
  suite->add_option("--pairs", spairs, "random (A,B) pairs per product/border size");
  suite->add_option("--max-size", smax, "clamp every family cap to this size");
  suite->add_option("--family", sfamilies, "restrict to these families (repeatable)");
  suite->add_flag("--no-lemmas", no_lemmas, "skip the lemma checks");
  suite->add_flag("--no-paths", no_paths, "skip the Grassmann proof-path checks");
  suite->add_flag("--lemmas-only", lemmas_only, "run only the supporting-lemma checks");
  suite->add_flag("--full-minors-only", full_minors_only,
                  "verify only the full minor of each size");

  // ---- bfunction ----
  auto* bf = app.add_subcommand("bfunction", "print the b(s) of a family");
  std::string bfamily;
  unsigned bn = 0, bm = 0;
  std::vector<unsigned> bdims;
  bf->add_option("--family", bfamily, "identity family")->required();
  bf->add_option("--n", bn, "matrix size n");
  bf->add_option("--m", bm, "row count m");
  bf->add_option("--dims", bdims, "rect_multi dimensions")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (verify->parsed()) {
      auto fam = family_from_string(family_str);
      if (!fam) {
        std::cerr << "unknown family: " << family_str << "\n";
        return kExitUsage;
      }
      IdentityCase c;
      c.family = *fam;
      c.n = vn;
      c.m = vm;
      c.ns = dims;
      if (vl > 0 && dims.size() != vl) {
        std::cerr << "--l disagrees with --dims\n";
        return kExitUsage;
      }
      c.I = IndexSet(minor_i.begin(), minor_i.end());
      c.J = IndexSet(minor_j.begin(), minor_j.end());
      if ((c.family == Family::antisym_pf || c.family == Family::antisym_det ||
           c.family == Family::rect_antisym) &&
          c.J.empty())
        c.J = c.I;
      if (c.I.empty() && c.J.empty()) {
        // default to the full minor
        unsigned full = 0;
        switch (c.family) {
          case Family::ordinary:
          case Family::symmetric:
          case Family::diag_param:
          case Family::diag_param_sym: full = c.n; break;
          case Family::antisym_pf:
          case Family::antisym_det:
          case Family::rect_antisym: full = 2 * c.m; break;
          case Family::rect_two_matrix:
          case Family::rect_sym:
          case Family::product_param: full = c.m; break;
          case Family::rect_multi: full = c.ns.empty() ? 0 : c.ns[0]; break;
          default: full = 0; break;
        }
        for (unsigned v = 1; v <= full; ++v) {
          c.I.push_back(v);
          c.J.push_back(v);
        }
      }
      c.i0 = vroot;
      for (const std::string& a : alpha_strs) {
        auto v = rat_parse(a);
        if (!v) {
          std::cerr << "bad rational alpha: " << a << "\n";
          return kExitUsage;
        }
        c.alphas.push_back(*v);
      }
      c.betas = betas;
      if (c.family == Family::diag_param && c.alphas.empty())
        c.alphas.assign(c.n, Rational(1, 2));
      if ((c.family == Family::diag_param || c.family == Family::diag_param_sym) &&
          c.betas.empty())
        c.betas.assign(c.n, 0);
      if (c.family == Family::product_param || c.family == Family::border_param) {
        std::string err;
        if (!matrix_files.empty()) {
          if (matrix_files.size() != 2) {
            std::cerr << "need two --matrix-file options (A then B)\n";
            return kExitUsage;
          }
          auto A = load_matrix_file(matrix_files[0], err);
          if (!A) {
            std::cerr << err << "\n";
            return kExitUsage;
          }
          auto B = load_matrix_file(matrix_files[1], err);
          if (!B) {
            std::cerr << err << "\n";
            return kExitUsage;
          }
          c.A = *A;
          c.B = *B;
        } else {
          c.seed = vseed;
          Rng rng(c.seed);
          if (c.family == Family::product_param) {
            c.A = random_rational_matrix(c.n, c.m, rng);
            c.B = random_rational_matrix(c.n, c.m, rng);
          } else {
            c.A = random_rational_matrix(c.n - c.m, c.n, rng);
            c.B = random_rational_matrix(c.n - c.m, c.n, rng);
          }
        }
      }
      if (auto err = validate_case(c)) {
        std::cerr << "invalid case: " << *err << "\n";
        return kExitUsage;
      }
      VerificationReport rep = verify_identity(c);
      print_report(rep, format);
      return rep.holds || rep.vacuous ? kExitHolds : kExitFails;
    }

    if (suite->parsed()) {
      SuiteConfig cfg;
      cfg.seed = sseed;
      cfg.pairs = spairs;
      cfg.threads = env_threads(sthreads);
      cfg.max_size = smax;
      cfg.run_lemmas = !no_lemmas;
      cfg.run_paths = !no_paths;
      cfg.all_minors = !full_minors_only;
      if (lemmas_only) {
        cfg.run_identities = false;
        cfg.run_paths = false;
        cfg.run_lemmas = true;
      }
      for (const std::string& f : sfamilies) {
        auto fam = family_from_string(f);
        if (!fam) {
          std::cerr << "unknown family: " << f << "\n";
          return kExitUsage;
        }
        cfg.families.push_back(*fam);
      }
      if (auto err = cfg.validate()) {
        std::cerr << *err << "\n";
        return kExitUsage;
      }
      SuiteSummary s = run_suite(cfg);
      if (sformat == "json") {
        std::cout << summary_json(s, cfg) << "\n";
      } else {
        for (const CheckResult& r : s.results) std::cout << report_table_row(r) << "\n";
        std::cout << "passed " << s.passed << ", failed " << s.failed << ", vacuous "
                  << s.vacuous << "\n";
      }
      return s.failed == 0 ? kExitHolds : kExitFails;
    }

    if (bf->parsed()) {
      auto fam = family_from_string(bfamily);
      if (!fam) {
        std::cerr << "unknown family: " << bfamily << "\n";
        return kExitUsage;
      }
      IdentityCase c;
      c.family = *fam;
      c.n = bn;
      c.m = bm;
      c.ns = bdims;
      switch (c.family) {
        case Family::ordinary:
        case Family::symmetric:
        case Family::diag_param:
        case Family::diag_param_sym:
        case Family::laplacian_row:
        case Family::laplacian_sym:
        case Family::tree_row:
        case Family::tree_sym:
          if (c.n < 1) {
            std::cerr << "need --n >= 1\n";
            return kExitUsage;
          }
          break;
        case Family::antisym_pf:
        case Family::antisym_det:
          if (c.m < 1) {
            std::cerr << "need --m >= 1\n";
            return kExitUsage;
          }
          break;
        case Family::rect_two_matrix:
        case Family::rect_sym:
        case Family::rect_antisym:
        case Family::product_param:
        case Family::border_param:
          if (c.m < 1 || c.n < c.m) {
            std::cerr << "need 1 <= --m <= --n\n";
            return kExitUsage;
          }
          break;
        case Family::rect_multi:
          if (c.ns.empty()) {
            std::cerr << "need --dims\n";
            return kExitUsage;
          }
          break;
      }
      std::cout << expected_bfunction_factored(c) << "\n";
      std::cout << expected_bfunction(c).str() << "\n";
      return kExitHolds;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
