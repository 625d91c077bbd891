#pragma once

#include "cayley/matrixfun.hpp"
#include "cayley/poly.hpp"
#include "cayley/powers.hpp"

#include <string>
#include <vector>

namespace cayley {

// Normal-ordered differential operator: sum of coeff(x,s,params) * d^alpha,
// with all multiplications standing left of all differentiations.
class WeylOp {
 public:
  using Term = std::pair<Monomial, Poly>;  // (derivative monomial, coefficient)

  WeylOp() = default;

  static WeylOp zero() { return WeylOp(); }
  static WeylOp identity() { return from_coeff(Poly::one()); }
  static WeylOp from_coeff(Poly p);
  static WeylOp d(VarId v);
  static WeylOp term(Poly coeff, Monomial dpart);

  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }
  bool constant_coefficients() const;

  WeylOp operator+(const WeylOp& o) const;
  WeylOp operator-(const WeylOp& o) const;
  // Composition (this after o), renormal-ordered with the Leibniz rule.
  WeylOp operator*(const WeylOp& o) const;
  WeylOp scale(const Rational& c) const;
  WeylOp commutator(const WeylOp& o) const { return *this * o - o * *this; }

  Poly apply(const Poly& target) const;
  PowerElement apply(const PowerElement& target) const;

  friend bool operator==(const WeylOp& a, const WeylOp& b) { return a.terms_ == b.terms_; }

  std::string str() const;

  static WeylOp from_terms(std::vector<Term> ts);

 private:
  std::vector<Term> terms_;  // sorted by dpart, no zero coefficients
};

struct OpMatrix {
  unsigned rows = 0, cols = 0;
  std::vector<WeylOp> entries;

  OpMatrix() = default;
  OpMatrix(unsigned r, unsigned c) : rows(r), cols(c), entries(std::size_t{r} * c) {}

  WeylOp& at(unsigned i, unsigned j) { return entries[std::size_t{i} * cols + j]; }
  const WeylOp& at(unsigned i, unsigned j) const { return entries[std::size_t{i} * cols + j]; }
  OpMatrix submatrix(const IndexSet& I, const IndexSet& J) const;
  bool constant_coefficients() const;
};

// The operator-matrix families of the identity statements.
enum class OpFamily {
  Ordinary,       // d/dx_ij
  Symmetric,      // (1/2)(1+delta_ij) d/dx_(ij)
  Antisymmetric,  // +-d/dx_(ij), zero diagonal
  RectTwo,        // dX dY^T, m x m
  RectSym,        // d d^T, m x m
  RectAntisym,    // d J d^T, 2m x 2m
  RectMulti,      // d^(1) ... d^(l), n1 x n1
  RowLaplacian,   // off-diagonal d/dx_ij, zero diagonal
  RowLaplacianU,  // U + row-Laplacian
  SymLaplacian,
  SymLaplacianU,
  DiagParam,     // D_{alpha,beta,s}
  DiagParamSym,  // D^sym_{beta,s}
  ProductB,      // dB (n x m constants B on the right)
  BorderB,       // d-hat (B rows appended)
};

struct OpBuildParams {
  unsigned n = 0, m = 0;
  std::vector<unsigned> ns;       // RectMulti dimensions n_1..n_l
  std::vector<Rational> alphas;   // DiagParam
  std::vector<int> betas;         // DiagParam / DiagParamSym, entries in {0,1}
  RMatrix<Rational> B;            // ProductB (n x m) / BorderB ((n-m) x n)
};

OpMatrix build_op_matrix(OpFamily family, const OpBuildParams& p);

// Variable identity of entry (i,j) of the alpha-th matrix in the
// multi-matrix family (1-based alpha).
VarId rect_multi_var(unsigned alpha, unsigned i, unsigned j);

// Checks that every entry commutes with all entries not in its own row/column.
bool op_matrix_commutation_ok(const OpMatrix& M);

// det(M) applied to target: sum over permutations with the rightmost factor
// (bottom row) acting first; evaluated by Laplace expansion with memoization.
// Intermediate states are true sub-determinant applications, which keeps
// every canonical numerator small.
PowerElement opdet_apply(const OpMatrix& M, const PowerElement& target);
Poly opdet_apply(const OpMatrix& M, const Poly& target);
// Matching-sum pfaffian of an antisymmetric operator matrix applied to target.
PowerElement oppf_apply(const OpMatrix& M, const PowerElement& target);

// det(M) expanded into a single operator (entries composed rightmost-first).
WeylOp opdet_expand(const OpMatrix& M);
WeylOp oppf_expand(const OpMatrix& M);

}  // namespace cayley
