#include "cayley/matrixfun.hpp"

#include <algorithm>

namespace cayley {

bool valid_index_set(const IndexSet& I, unsigned n) {
  for (std::size_t k = 0; k < I.size(); ++k) {
    if (I[k] < 1 || I[k] > n) return false;
    if (k > 0 && I[k] <= I[k - 1]) return false;
  }
  return true;
}

IndexSet complement(const IndexSet& I, unsigned n) {
  IndexSet c;
  c.reserve(n - I.size());
  std::size_t p = 0;
  for (unsigned v = 1; v <= n; ++v) {
    if (p < I.size() && I[p] == v) {
      ++p;
    } else {
      c.push_back(v);
    }
  }
  return c;
}

Rational eps_sign(const IndexSet& I) {
  std::uint64_t k = I.size();
  std::uint64_t sum = 0;
  for (unsigned v : I) sum += v;
  std::uint64_t par = k * (k - (k ? 1 : 0)) / 2 + sum;
  return (par % 2 == 0) ? Rational(1) : Rational(-1);
}

Rational eps_sign(const IndexSet& I, const IndexSet& J) { return eps_sign(I) * eps_sign(J); }

RMatrix<Rational> symplectic_J(unsigned two_m) {
  RMatrix<Rational> J(two_m, two_m, Rational(0));
  for (unsigned p = 0; 2 * p + 1 < two_m; ++p) {
    J.at(2 * p, 2 * p + 1) = 1;
    J.at(2 * p + 1, 2 * p) = -1;
  }
  return J;
}

RMatrix<Poly> symplectic_J_poly(unsigned two_m) {
  RMatrix<Poly> J(two_m, two_m, Poly::zero());
  for (unsigned p = 0; 2 * p + 1 < two_m; ++p) {
    J.at(2 * p, 2 * p + 1) = Poly::one();
    J.at(2 * p + 1, 2 * p) = Poly::constant(-1);
  }
  return J;
}

RMatrix<Rational> pseudo_identity(unsigned m, unsigned n) {
  RMatrix<Rational> I(m, n, Rational(0));
  for (unsigned i = 0; i < std::min(m, n); ++i) I.at(i, i) = 1;
  return I;
}

RMatrix<Poly> identity_poly(unsigned n) {
  RMatrix<Poly> I(n, n, Poly::zero());
  for (unsigned i = 0; i < n; ++i) I.at(i, i) = Poly::one();
  return I;
}

}  // namespace cayley
