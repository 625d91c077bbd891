#pragma once

#include "cayley/poly.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace cayley {

// Sorted 1-based index subset of [n].
using IndexSet = std::vector<unsigned>;

IndexSet complement(const IndexSet& I, unsigned n);
bool valid_index_set(const IndexSet& I, unsigned n);
// eps(I) = (-1)^{|I|(|I|-1)/2} (-1)^{sum I}
Rational eps_sign(const IndexSet& I);
// eps(I,J) = eps(I) eps(J); for |I| = |J| this is (-1)^{sum I + sum J}
Rational eps_sign(const IndexSet& I, const IndexSet& J);

// Dense row-major matrix over a commutative ring element type.
template <typename R>
class RMatrix {
 public:
  RMatrix() : rows_(0), cols_(0) {}
  RMatrix(unsigned rows, unsigned cols, R fill)
      : rows_(rows), cols_(cols), e_(static_cast<std::size_t>(rows) * cols, fill) {}

  unsigned rows() const { return rows_; }
  unsigned cols() const { return cols_; }
  R& at(unsigned i, unsigned j) { return e_[static_cast<std::size_t>(i) * cols_ + j]; }
  const R& at(unsigned i, unsigned j) const {
    return e_[static_cast<std::size_t>(i) * cols_ + j];
  }

  RMatrix submatrix(const IndexSet& I, const IndexSet& J) const {
    RMatrix s;
    s.rows_ = static_cast<unsigned>(I.size());
    s.cols_ = static_cast<unsigned>(J.size());
    s.e_.reserve(I.size() * J.size());
    for (unsigned i : I)
      for (unsigned j : J) s.e_.push_back(at(i - 1, j - 1));
    return s;
  }

  RMatrix transpose() const {
    RMatrix t;
    t.rows_ = cols_;
    t.cols_ = rows_;
    t.e_.resize(e_.size(), e_.empty() ? R() : e_[0]);
    for (unsigned i = 0; i < rows_; ++i)
      for (unsigned j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  RMatrix mul(const RMatrix& o, const R& zero) const {
    if (cols_ != o.rows_) throw std::invalid_argument("RMatrix::mul: shape mismatch");
    RMatrix r(rows_, o.cols_, zero);
    for (unsigned i = 0; i < rows_; ++i)
      for (unsigned k = 0; k < cols_; ++k)
        for (unsigned j = 0; j < o.cols_; ++j) r.at(i, j) = r.at(i, j) + at(i, k) * o.at(k, j);
    return r;
  }

 private:
  unsigned rows_, cols_;
  std::vector<R> e_;
};

// Determinant by dynamic programming over column subsets, O(2^n n) ring ops.
template <typename R>
R det(const RMatrix<R>& A, const R& zero, const R& one) {
  if (A.rows() != A.cols()) throw std::invalid_argument("det: matrix not square");
  unsigned n = A.rows();
  if (n == 0) return one;
  std::vector<R> cur(1u << n, zero), next;
  cur[0] = one;
  for (unsigned r = 0; r < n; ++r) {
    next.assign(1u << n, zero);
    for (std::uint32_t S = 0; S < (1u << n); ++S) {
      if (__builtin_popcount(S) != static_cast<int>(r)) continue;
      if (cur[S] == zero) continue;
      int pos = 0;
      for (unsigned j = 0; j < n; ++j) {
        if (S & (1u << j)) continue;
        R term = cur[S] * A.at(r, j);
        if (pos % 2 == 1) term = zero - term;
        next[S | (1u << j)] = next[S | (1u << j)] + term;
        ++pos;
      }
    }
    cur.swap(next);
  }
  // Sign bookkeeping: choosing column j as the (pos+1)-th unused column at row r
  // contributes the parity of unused columns skipped, which telescopes to sgn.
  return cur[(1u << n) - 1];
}

template <typename R>
R per(const RMatrix<R>& A, const R& zero, const R& one) {
  if (A.rows() != A.cols()) throw std::invalid_argument("per: matrix not square");
  unsigned n = A.rows();
  if (n == 0) return one;
  std::vector<R> cur(1u << n, zero), next;
  cur[0] = one;
  for (unsigned r = 0; r < n; ++r) {
    next.assign(1u << n, zero);
    for (std::uint32_t S = 0; S < (1u << n); ++S) {
      if (__builtin_popcount(S) != static_cast<int>(r)) continue;
      if (cur[S] == zero) continue;
      for (unsigned j = 0; j < n; ++j) {
        if (S & (1u << j)) continue;
        next[S | (1u << j)] = next[S | (1u << j)] + cur[S] * A.at(r, j);
      }
    }
    cur.swap(next);
  }
  return cur[(1u << n) - 1];
}

// Structural antisymmetry: a_ij = -a_ji and zero diagonal.
template <typename R>
bool is_antisymmetric(const RMatrix<R>& A, const R& zero) {
  if (A.rows() != A.cols()) return false;
  for (unsigned i = 0; i < A.rows(); ++i) {
    if (!(A.at(i, i) == zero)) return false;
    for (unsigned j = i + 1; j < A.cols(); ++j)
      if (!(A.at(i, j) == zero - A.at(j, i))) return false;
  }
  return true;
}

template <typename R>
bool is_symmetric(const RMatrix<R>& A) {
  if (A.rows() != A.cols()) return false;
  for (unsigned i = 0; i < A.rows(); ++i)
    for (unsigned j = i + 1; j < A.cols(); ++j)
      if (!(A.at(i, j) == A.at(j, i))) return false;
  return true;
}

namespace detail {

// First-index expansion over the surviving index mask.  The recursion realizes
// the reference matching {(1,2),(3,4),...}: pf of the 2x2 block on {i,j} is +a_ij.
template <typename R>
R pf_mask(const RMatrix<R>& A, std::uint32_t mask, const R& zero, const R& one,
          std::vector<R>& memo, std::vector<char>& seen) {
  if (mask == 0) return one;
  if (seen[mask]) return memo[mask];
  unsigned i = __builtin_ctz(mask);
  std::uint32_t rest = mask & ~(1u << i);
  R acc = zero;
  int pos = 0;  // parity of elements of `rest` skipped before j
  for (unsigned j = i + 1; j < A.rows(); ++j) {
    if (!(rest & (1u << j))) continue;
    R term = A.at(i, j) * pf_mask(A, rest & ~(1u << j), zero, one, memo, seen);
    if (pos % 2 == 1) term = zero - term;
    acc = acc + term;
    ++pos;
  }
  seen[mask] = 1;
  memo[mask] = acc;
  return acc;
}

template <typename R>
R hf_mask(const RMatrix<R>& A, std::uint32_t mask, const R& zero, const R& one,
          std::vector<R>& memo, std::vector<char>& seen) {
  if (mask == 0) return one;
  if (seen[mask]) return memo[mask];
  unsigned i = __builtin_ctz(mask);
  std::uint32_t rest = mask & ~(1u << i);
  R acc = zero;
  for (unsigned j = i + 1; j < A.rows(); ++j) {
    if (!(rest & (1u << j))) continue;
    acc = acc + A.at(i, j) * hf_mask(A, rest & ~(1u << j), zero, one, memo, seen);
  }
  seen[mask] = 1;
  memo[mask] = acc;
  return acc;
}

}  // namespace detail

template <typename R>
R pf(const RMatrix<R>& A, const R& zero, const R& one) {
  if (A.rows() != A.cols() || A.rows() % 2 != 0)
    throw std::invalid_argument("pf: matrix must be square of even dimension");
  if (!is_antisymmetric(A, zero)) throw std::invalid_argument("pf: matrix not antisymmetric");
  unsigned n = A.rows();
  if (n == 0) return one;
  std::vector<R> memo(1u << n, zero);
  std::vector<char> seen(1u << n, 0);
  return detail::pf_mask(A, (1u << n) - 1, zero, one, memo, seen);
}

// Hafnian; diagonal entries are ignored.
template <typename R>
R hf(const RMatrix<R>& A, const R& zero, const R& one) {
  if (A.rows() != A.cols() || A.rows() % 2 != 0)
    throw std::invalid_argument("hf: matrix must be square of even dimension");
  if (!is_symmetric(A)) throw std::invalid_argument("hf: matrix not symmetric");
  unsigned n = A.rows();
  if (n == 0) return one;
  std::vector<R> memo(1u << n, zero);
  std::vector<char> seen(1u << n, 0);
  return detail::hf_mask(A, (1u << n) - 1, zero, one, memo, seen);
}

// Rational / Poly conveniences.
inline Rational det(const RMatrix<Rational>& A) { return det(A, Rational(0), Rational(1)); }
inline Poly det(const RMatrix<Poly>& A) { return det(A, Poly::zero(), Poly::one()); }
inline Rational per(const RMatrix<Rational>& A) { return per(A, Rational(0), Rational(1)); }
inline Poly per(const RMatrix<Poly>& A) { return per(A, Poly::zero(), Poly::one()); }
inline Rational pf(const RMatrix<Rational>& A) { return pf(A, Rational(0), Rational(1)); }
inline Poly pf(const RMatrix<Poly>& A) { return pf(A, Poly::zero(), Poly::one()); }
inline Rational hf(const RMatrix<Rational>& A) { return hf(A, Rational(0), Rational(1)); }
inline Poly hf(const RMatrix<Poly>& A) { return hf(A, Poly::zero(), Poly::one()); }

// Adjugate over a commutative ring: adj(A)_ij = (-1)^{i+j} det(A_{j^c i^c}).
template <typename R>
RMatrix<R> adjugate(const RMatrix<R>& A, const R& zero, const R& one) {
  if (A.rows() != A.cols()) throw std::invalid_argument("adjugate: matrix not square");
  unsigned n = A.rows();
  RMatrix<R> adj(n, n, zero);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) {
      IndexSet Ic = complement({j + 1}, n), Jc = complement({i + 1}, n);
      R minor = det(A.submatrix(Ic, Jc), zero, one);
      adj.at(i, j) = ((i + j) % 2 == 0) ? minor : zero - minor;
    }
  return adj;
}

// Standard 2m x 2m symplectic form, pf(J) = +1.
RMatrix<Rational> symplectic_J(unsigned two_m);
RMatrix<Poly> symplectic_J_poly(unsigned two_m);
// m x n pseudo-identity (1 on the main diagonal).
RMatrix<Rational> pseudo_identity(unsigned m, unsigned n);
RMatrix<Poly> identity_poly(unsigned n);

struct MinorAndSigns {
  Rational eps_I;
  Rational eps_IJ;
};

// Returns (A_IJ, eps(I), eps(I,J)); indices are 1-based and validated.
template <typename R>
std::pair<RMatrix<R>, MinorAndSigns> minor_and_signs(const RMatrix<R>& A, const IndexSet& I,
                                                     const IndexSet& J) {
  if (!valid_index_set(I, A.rows()) || !valid_index_set(J, A.cols()))
    throw std::invalid_argument("minor_and_signs: index set out of range");
  return {A.submatrix(I, J), MinorAndSigns{eps_sign(I), eps_sign(I, J)}};
}

}  // namespace cayley
