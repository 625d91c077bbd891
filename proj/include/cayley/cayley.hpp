#pragma once

#include "cayley/grassmann.hpp"
#include "cayley/matrixfun.hpp"
#include "cayley/poly.hpp"
#include "cayley/powers.hpp"
#include "cayley/weyl.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cayley {

enum class Family {
  ordinary,
  symmetric,
  antisym_pf,
  antisym_det,
  rect_two_matrix,
  rect_sym,
  rect_antisym,
  rect_multi,
  diag_param,
  diag_param_sym,
  laplacian_row,
  laplacian_sym,
  tree_row,
  tree_sym,
  product_param,
  border_param,
};

const char* family_name(Family f);
std::optional<Family> family_from_string(const std::string& s);

struct IdentityCase {
  Family family = Family::ordinary;
  unsigned n = 0;                // square size / rectangular column count
  unsigned m = 0;                // rectangular row count (2m for pfaffian rect)
  std::vector<unsigned> ns;      // rect_multi dimensions n_1..n_l
  IndexSet I, J;                 // 1-based minors; pfaffian families use I = J
  std::vector<Rational> alphas;  // diag_param
  std::vector<int> betas;        // diag families, entries in {0,1}
  RMatrix<Rational> A, B;        // product_param / border_param parameters
  unsigned i0 = 0;               // root for tree families
  std::uint64_t seed = 0;        // recorded when A,B were drawn

  std::string key() const;  // deterministic id used for report merging
};

struct VerificationReport {
  IdentityCase kase;
  bool holds = false;
  bool vacuous = false;
  Poly expected_b;
  std::optional<Poly> computed_b;
  std::string lhs_text, rhs_text;
  std::int64_t elapsed_ms = 0;
};

// Checks that the case is well-formed (dims, minors, params); returns an
// error message for CLI reporting when it is not.
std::optional<std::string> validate_case(const IdentityCase& c);

VerificationReport verify_identity(const IdentityCase& c);

// The b(s) stated by the identity for minor size k (k = full size when the
// case carries no minor).  For product/border the constant det factor is
// folded in exactly when the minor is full.
Poly expected_bfunction(const IdentityCase& c);

// Product form of expected_bfunction, e.g. "s(s+1/2)".
std::string expected_bfunction_factored(const IdentityCase& c);

// Fermionic-representation route at concrete integer s0 >= 1, compared with
// the symbolic Weyl route specialized at s0.  Supported families: ordinary,
// symmetric, antisym_pf, product_param, border_param.
bool grassmann_path_check(const IdentityCase& c, unsigned s0);

// Supporting-lemma checks.
enum class Lemma {
  cycle_genfn,
  matching_cycle_sum,
  lemma_elem,
  intscalar,
  gvform,
  hessenberg,
  hessenberg_expand,
  solvingmulti,
  bmatrix_sum,
  binom_parallel,
  chu_vandermonde,
  binom_triple,
  sub_lemma_pbABp,
  sub_lemma_pbCJCp,
};

const char* lemma_name(Lemma l);

struct LemmaParams {
  unsigned k = 0, l = 0, n = 0, m = 0, p = 0;
  IndexSet I, J;
  std::vector<unsigned> ms;  // solvingmulti exponents m_alpha
  std::uint64_t seed = 0;    // for randomized instances
};

bool lemma_check(Lemma which, const LemmaParams& p);

// Deterministic splitmix64-based generator for rational test data.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next();
  // numerator in [-9,9] \ {0}, denominator in [1,9]
  Rational small_rational();
  int small_int(int lo, int hi);
};

RMatrix<Rational> random_rational_matrix(unsigned rows, unsigned cols, Rng& rng);

// Generic variable matrices used by the identities.
RMatrix<Poly> var_matrix(unsigned rows, unsigned cols);        // x[i][j]
RMatrix<Poly> var_matrix_y(unsigned rows, unsigned cols);      // y[i][j]
RMatrix<Poly> var_matrix_sym(unsigned n);                      // x[(i<=j)]
RMatrix<Poly> var_matrix_antisym(unsigned n);                  // x[(i<j)], antisym
RMatrix<Poly> var_matrix_multi(unsigned alpha, unsigned rows, unsigned cols);
RMatrix<Poly> laplacian_row_matrix(unsigned n, bool with_t);   // T + X^row-Lap
RMatrix<Poly> laplacian_sym_matrix(unsigned n, bool with_t);
RMatrix<Poly> to_poly(const RMatrix<Rational>& A);

}  // namespace cayley
