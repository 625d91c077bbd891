#include "cayley/cayley.hpp"
#include "cayley/matrixfun.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace cayley;

namespace {

// Brute-force oracles straight from the signed/unsigned permutation and
// matching sums; independent of the subset-DP implementations under test.
Poly det_oracle(const RMatrix<Poly>& A) {
  unsigned n = A.rows();
  std::vector<unsigned> p(n);
  std::iota(p.begin(), p.end(), 0u);
  Poly acc;
  do {
    Poly term = Poly::one();
    for (unsigned i = 0; i < n; ++i) term = term * A.at(i, p[i]);
    unsigned inv = 0;
    for (unsigned a = 0; a < n; ++a)
      for (unsigned b = a + 1; b < n; ++b)
        if (p[a] > p[b]) ++inv;
    acc += (inv % 2 == 0) ? term : -term;
  } while (std::next_permutation(p.begin(), p.end()));
  return acc;
}

Poly per_oracle(const RMatrix<Poly>& A) {
  unsigned n = A.rows();
  std::vector<unsigned> p(n);
  std::iota(p.begin(), p.end(), 0u);
  Poly acc;
  do {
    Poly term = Poly::one();
    for (unsigned i = 0; i < n; ++i) term = term * A.at(i, p[i]);
    acc += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return acc;
}

RMatrix<Poly> generic(unsigned n, char name = 'a') {
  RMatrix<Poly> A(n, n, Poly::zero());
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) A.at(i, j) = Poly::var(VarId::param(name, i + 1, j + 1));
  return A;
}

RMatrix<Poly> generic_rect(unsigned m, unsigned n, char name) {
  RMatrix<Poly> A(m, n, Poly::zero());
  for (unsigned i = 0; i < m; ++i)
    for (unsigned j = 0; j < n; ++j) A.at(i, j) = Poly::var(VarId::param(name, i + 1, j + 1));
  return A;
}

RMatrix<Poly> generic_antisym(unsigned n, char name = 'a') {
  RMatrix<Poly> A(n, n, Poly::zero());
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = i + 1; j < n; ++j) {
      A.at(i, j) = Poly::var(VarId::param(name, i + 1, j + 1));
      A.at(j, i) = -A.at(i, j);
    }
  return A;
}

RMatrix<Poly> generic_sym(unsigned n, char name = 'a') {
  RMatrix<Poly> A(n, n, Poly::zero());
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = i; j < n; ++j) {
      A.at(i, j) = Poly::var(VarId::param(name, i + 1, j + 1));
      A.at(j, i) = A.at(i, j);
    }
  return A;
}

void all_subsets_of_size(unsigned n, unsigned k,
                         const std::function<void(const IndexSet&)>& f) {
  IndexSet cur;
  std::function<void(unsigned)> rec = [&](unsigned from) {
    if (cur.size() == k) {
      f(cur);
      return;
    }
    for (unsigned v = from; v <= n; ++v) {
      cur.push_back(v);
      rec(v + 1);
      cur.pop_back();
    }
  };
  rec(1);
}

}  // namespace

TEST_CASE("determinant examples and oracle") {
  CHECK(det(generic(2)) == Poly::var(VarId::param('a', 1, 1)) * Poly::var(VarId::param('a', 2, 2)) -
                               Poly::var(VarId::param('a', 1, 2)) * Poly::var(VarId::param('a', 2, 1)));
  CHECK(det(identity_poly(4)) == Poly::one());
  // det(Ihat_23 Ihat_23^T) = 1
  RMatrix<Poly> Ihat = to_poly(pseudo_identity(2, 3));
  CHECK(det(Ihat.mul(Ihat.transpose(), Poly::zero())) == Poly::one());
  for (unsigned n = 1; n <= 4; ++n) CHECK(det(generic(n)) == det_oracle(generic(n)));
  CHECK_THROWS_AS((void)det(generic_rect(2, 3, 'a')), std::invalid_argument);
}

TEST_CASE("permanent examples and oracle") {
  CHECK(per(generic(2)) == Poly::var(VarId::param('a', 1, 1)) * Poly::var(VarId::param('a', 2, 2)) +
                               Poly::var(VarId::param('a', 1, 2)) * Poly::var(VarId::param('a', 2, 1)));
  CHECK(per(identity_poly(2)) == Poly::one());
  RMatrix<Poly> ones(3, 3, Poly::one());
  CHECK(per(ones) == Poly::constant(6));
  for (unsigned n = 1; n <= 4; ++n) CHECK(per(generic(n)) == per_oracle(generic(n)));
}

TEST_CASE("pfaffian examples") {
  RMatrix<Poly> A2 = generic_antisym(2);
  CHECK(pf(A2) == Poly::var(VarId::param('a', 1, 2)));
  RMatrix<Poly> A4 = generic_antisym(4);
  auto a = [](unsigned i, unsigned j) { return Poly::var(VarId::param('a', i, j)); };
  CHECK(pf(A4) == a(1, 2) * a(3, 4) - a(1, 3) * a(2, 4) + a(1, 4) * a(2, 3));
  for (unsigned m = 1; m <= 3; ++m) CHECK(pf(symplectic_J_poly(2 * m)) == Poly::one());
  CHECK_THROWS_AS((void)pf(generic_antisym(3)), std::invalid_argument);
  CHECK_THROWS_AS((void)pf(generic(2)), std::invalid_argument);
}

TEST_CASE("hafnian examples") {
  RMatrix<Poly> S2 = generic_sym(2);
  CHECK(hf(S2) == Poly::var(VarId::param('a', 1, 2)));
  auto a = [](unsigned i, unsigned j) { return Poly::var(VarId::param('a', i, j)); };
  RMatrix<Poly> S4 = generic_sym(4);
  CHECK(hf(S4) == a(1, 2) * a(3, 4) + a(1, 3) * a(2, 4) + a(1, 4) * a(2, 3));
  RMatrix<Poly> ones(4, 4, Poly::one());
  CHECK(hf(ones) == Poly::constant(3));
  CHECK_THROWS_AS((void)hf(generic_sym(3)), std::invalid_argument);
}

TEST_CASE("minor signs") {
  CHECK(eps_sign({1}, {2}) == Rational(-1));
  CHECK(eps_sign({1, 2}) == Rational(1));  // (-1)^1 * (-1)^3
  RMatrix<Poly> A = generic(3);
  auto [sub, signs] = minor_and_signs(A, IndexSet{1, 3}, IndexSet{2, 3});
  CHECK(sub.rows() == 2);
  CHECK(sub.at(0, 0) == A.at(0, 1));
  CHECK(signs.eps_IJ == Rational(-1));  // (-1)^{(1+3)+(2+3)}
  CHECK_THROWS_AS((void)minor_and_signs(A, IndexSet{4}, IndexSet{1}), std::invalid_argument);
}

TEST_CASE("pf squared equals det") {
  for (unsigned m = 1; 2 * m <= 6; ++m) {
    RMatrix<Poly> A = generic_antisym(2 * m);
    CHECK(pf(A) * pf(A) == det(A));
  }
}

TEST_CASE("pf(XAX^T) = det(X) pf(A)") {
  for (unsigned m = 1; 2 * m <= 4; ++m) {
    RMatrix<Poly> A = generic_antisym(2 * m, 'a');
    RMatrix<Poly> X = generic(2 * m, 'x');
    RMatrix<Poly> XAXt = X.mul(A, Poly::zero()).mul(X.transpose(), Poly::zero());
    CHECK(pf(XAXt) == det(X) * pf(A));
  }
}

TEST_CASE("minor summation formula for pfaffians") {
  // pf(XAX^T) = sum_{|I|=2l} det(X_{*I}) pf(A_{II}) for 2l x 2m X
  for (unsigned l = 1; 2 * l <= 4; ++l)
    for (unsigned m = l; 2 * m <= 6; ++m) {
      RMatrix<Poly> X = generic_rect(2 * l, 2 * m, 'x');
      RMatrix<Poly> A = generic_antisym(2 * m, 'a');
      RMatrix<Poly> XAXt = X.mul(A, Poly::zero()).mul(X.transpose(), Poly::zero());
      Poly rhs;
      IndexSet rows(2 * l);
      std::iota(rows.begin(), rows.end(), 1u);
      all_subsets_of_size(2 * m, 2 * l, [&](const IndexSet& I) {
        rhs += det(X.submatrix(rows, I)) * pf(A.submatrix(I, I));
      });
      CHECK(pf(XAXt) == rhs);
    }
}

TEST_CASE("Cauchy-Binet") {
  for (unsigned m = 1; m <= 3; ++m)
    for (unsigned n = m; n <= 5; ++n) {
      RMatrix<Poly> A = generic_rect(m, n, 'a');
      RMatrix<Poly> B = generic_rect(n, m, 'b');
      Poly rhs;
      IndexSet rows(m);
      std::iota(rows.begin(), rows.end(), 1u);
      IndexSet cols(m);
      std::iota(cols.begin(), cols.end(), 1u);
      all_subsets_of_size(n, m, [&](const IndexSet& I) {
        rhs += det(A.submatrix(rows, I)) * det(B.submatrix(I, cols));
      });
      CHECK(det(A.mul(B, Poly::zero())) == rhs);
    }
}

TEST_CASE("Jacobi identity for determinant minors, cross-multiplied") {
  // det((adj A)^T_{IJ}) = (det A)^{k-1} eps(I,J) det(A_{IcJc}); adj = det * inv
  for (unsigned n = 2; n <= 4; ++n) {
    RMatrix<Poly> A = generic(n);
    Poly dA = det(A);
    RMatrix<Poly> adjT = adjugate(A, Poly::zero(), Poly::one()).transpose();
    for (unsigned k = 1; k <= n; ++k) {
      all_subsets_of_size(n, k, [&](const IndexSet& I) {
        all_subsets_of_size(n, k, [&](const IndexSet& J) {
          Poly lhs = det(adjT.submatrix(I, J));
          Poly rhs = dA.pow(k - 1) * eps_sign(I, J) *
                     det(A.submatrix(complement(I, n), complement(J, n)));
          CHECK(lhs == rhs);
        });
      });
    }
  }
}

TEST_CASE("Jacobi identity for pfaffian minors, cross-multiplied") {
  // pf((adj' A)_{II}) where adj' = pf(A) * A^{-T}: use A^{-T} = adj(A)^T/det,
  // det = pf^2, so pf((A^{-T})_{II}) * pf(A)^{2k-1} = eps(I) pf(A_{IcIc}) becomes
  // pf((adj(A)^T)_{II}) = pf(A)^{2k-1} eps(I) pf(A_{IcIc}) for |I| = 2k.
  for (unsigned m = 2; 2 * m <= 6; ++m) {
    RMatrix<Poly> A = generic_antisym(2 * m);
    Poly pfA = pf(A);
    RMatrix<Poly> adjT = adjugate(A, Poly::zero(), Poly::one()).transpose();
    for (unsigned k = 1; k <= m; ++k) {
      all_subsets_of_size(2 * m, 2 * k, [&](const IndexSet& I) {
        Poly lhs = pf(adjT.submatrix(I, I));
        Poly rhs = pfA.pow(2 * k - 1) * eps_sign(I) *
                   pf(A.submatrix(complement(I, 2 * m), complement(I, 2 * m)));
        CHECK(lhs == rhs);
      });
    }
  }
}

TEST_CASE("multi-row Laplace expansion") {
  for (unsigned n = 2; n <= 5; ++n) {
    RMatrix<Poly> A = generic(n);
    Poly dA = det(A);
    for (unsigned k = 1; k <= std::min(n, 3u); ++k) {
      all_subsets_of_size(n, k, [&](const IndexSet& I) {
        Poly acc;
        all_subsets_of_size(n, k, [&](const IndexSet& J) {
          acc += eps_sign(I, J) * det(A.submatrix(I, J)) *
                 det(A.submatrix(complement(I, n), complement(J, n)));
        });
        CHECK(acc == dA);
      });
    }
  }
}

TEST_CASE("Schur complement, cross-multiplied") {
  // det(M) det(A)^{n-1} = det(A_adj-weighted Schur complement), blocks <= 2x2
  for (unsigned m = 1; m <= 2; ++m)
    for (unsigned n = 1; n <= 2; ++n) {
      RMatrix<Poly> A = generic(m, 'a'), B = generic_rect(m, n, 'b'),
                    C = generic_rect(n, m, 'c'), D = generic(n, 'd');
      RMatrix<Poly> M(m + n, m + n, Poly::zero());
      for (unsigned i = 0; i < m + n; ++i)
        for (unsigned j = 0; j < m + n; ++j)
          M.at(i, j) = (i < m) ? (j < m ? A.at(i, j) : B.at(i, j - m))
                               : (j < m ? C.at(i - m, j) : D.at(i - m, j - m));
      // D - C A^{-1} B scaled by det A: S = det(A) D - C adj(A) B
      RMatrix<Poly> adjA = adjugate(A, Poly::zero(), Poly::one());
      RMatrix<Poly> CadjB = C.mul(adjA, Poly::zero()).mul(B, Poly::zero());
      Poly dA = det(A);
      RMatrix<Poly> S(n, n, Poly::zero());
      for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) S.at(i, j) = dA * D.at(i, j) - CadjB.at(i, j);
      // det(M) = det(A) det(D - C A^{-1} B)  <=>  det(M) det(A)^{n-1} = det(S)
      CHECK(det(M) * dA.pow(n - 1) == det(S));
    }
}

TEST_CASE("pfaffian of a partitioned matrix, cross-multiplied") {
  // pf M = pf A pf(D + B^T A^{-1} B), 2x2 blocks: A^{-1} = adj(A)/det(A),
  // det(A) = pf(A)^2; S = pf(A)^2 D + B^T adj(A) B gives
  // pf(M) pf(A)^{2n-1} = pf(S) for 2n x 2n D.
  unsigned m = 1, n = 1;
  RMatrix<Poly> A = generic_antisym(2 * m, 'a');
  RMatrix<Poly> D = generic_antisym(2 * n, 'd');
  RMatrix<Poly> B = generic_rect(2 * m, 2 * n, 'b');
  RMatrix<Poly> M(2 * m + 2 * n, 2 * m + 2 * n, Poly::zero());
  for (unsigned i = 0; i < 2 * m; ++i)
    for (unsigned j = 0; j < 2 * m; ++j) M.at(i, j) = A.at(i, j);
  for (unsigned i = 0; i < 2 * m; ++i)
    for (unsigned j = 0; j < 2 * n; ++j) {
      M.at(i, 2 * m + j) = B.at(i, j);
      M.at(2 * m + j, i) = -B.at(i, j);
    }
  for (unsigned i = 0; i < 2 * n; ++i)
    for (unsigned j = 0; j < 2 * n; ++j) M.at(2 * m + i, 2 * m + j) = D.at(i, j);
  Poly pfA = pf(A);
  RMatrix<Poly> adjA = adjugate(A, Poly::zero(), Poly::one());
  RMatrix<Poly> BtadjB = B.transpose().mul(adjA, Poly::zero()).mul(B, Poly::zero());
  RMatrix<Poly> S(2 * n, 2 * n, Poly::zero());
  for (unsigned i = 0; i < 2 * n; ++i)
    for (unsigned j = 0; j < 2 * n; ++j)
      S.at(i, j) = pfA * pfA * D.at(i, j) + BtadjB.at(i, j);
  CHECK(pf(M) * pfA.pow(2 * n - 1) == pf(S));
}

TEST_CASE("matrix determinant lemma, cross-multiplied") {
  // det(A + U W V^T) det(W)^... with W = I_n: det(A + U V^T) det(A)^{n-1}
  //   = det(det(A) I_n + V^T adj(A) U)  for m x n U,V.
  for (unsigned m = 1; m <= 3; ++m)
    for (unsigned n = 1; n <= 2; ++n) {
      RMatrix<Poly> A = generic(m, 'a');
      RMatrix<Poly> U = generic_rect(m, n, 'u');
      RMatrix<Poly> V = generic_rect(m, n, 'v');
      RMatrix<Poly> ApUVt = A;
      RMatrix<Poly> UVt = U.mul(V.transpose(), Poly::zero());
      for (unsigned i = 0; i < m; ++i)
        for (unsigned j = 0; j < m; ++j) ApUVt.at(i, j) = A.at(i, j) + UVt.at(i, j);
      Poly dA = det(A);
      RMatrix<Poly> core = V.transpose().mul(adjugate(A, Poly::zero(), Poly::one()), Poly::zero())
                               .mul(U, Poly::zero());
      for (unsigned i = 0; i < n; ++i) core.at(i, i) += dA;
      CHECK(det(ApUVt) * dA.pow(n - 1) == det(core));
    }
}

TEST_CASE("multi-block determinant lemma") {
  // det M_l(U_1..U_l) = det(U_1 ... U_l), sizes n_alpha <= 2, l <= 3
  for (unsigned l = 2; l <= 3; ++l) {
    std::vector<unsigned> ns = {2, 1, 2};
    ns.resize(l);
    std::vector<RMatrix<Poly>> U;
    unsigned total = 0;
    for (unsigned a = 0; a < l; ++a) {
      unsigned rows = ns[a], cols = ns[(a + 1) % l];
      U.push_back(generic_rect(rows, cols, static_cast<char>('a' + a)));
      total += rows;
    }
    RMatrix<Poly> M(total, total, Poly::zero());
    std::vector<unsigned> off(l + 1, 0);
    for (unsigned a = 0; a < l; ++a) off[a + 1] = off[a] + ns[a];
    for (unsigned a = 1; a < l; ++a)
      for (unsigned i = 0; i < ns[a]; ++i) M.at(off[a] + i, off[a] + i) = Poly::one();
    for (unsigned a = 0; a + 1 < l; ++a)
      for (unsigned i = 0; i < ns[a]; ++i)
        for (unsigned j = 0; j < ns[a + 1]; ++j) M.at(off[a] + i, off[a + 1] + j) = -U[a].at(i, j);
    for (unsigned i = 0; i < ns[l - 1]; ++i)
      for (unsigned j = 0; j < ns[0]; ++j) M.at(off[l - 1] + i, j) = U[l - 1].at(i, j);
    RMatrix<Poly> prod = U[0];
    for (unsigned a = 1; a < l; ++a) prod = prod.mul(U[a], Poly::zero());
    CHECK(det(M) == det(prod));
  }
}
