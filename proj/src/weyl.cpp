#include "cayley/weyl.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace cayley {

namespace {

// x-variable of the symmetric families: x_(ij) with i <= j.
VarId xsym(unsigned i, unsigned j) { return VarId::x(std::min(i, j), std::max(i, j)); }

Poly half() { return Poly::constant(Rational(1, 2)); }

}  // namespace

WeylOp WeylOp::from_coeff(Poly p) {
  WeylOp op;
  if (!p.is_zero()) op.terms_.emplace_back(Monomial::one(), std::move(p));
  return op;
}

WeylOp WeylOp::d(VarId v) {
  WeylOp op;
  op.terms_.emplace_back(Monomial::var(v), Poly::one());
  return op;
}

WeylOp WeylOp::term(Poly coeff, Monomial dpart) {
  WeylOp op;
  if (!coeff.is_zero()) op.terms_.emplace_back(std::move(dpart), std::move(coeff));
  return op;
}

WeylOp WeylOp::from_terms(std::vector<Term> ts) {
  std::sort(ts.begin(), ts.end(),
            [](const Term& a, const Term& b) { return grevlex_less(b.first, a.first); });
  WeylOp op;
  for (auto& t : ts) {
    if (!op.terms_.empty() && op.terms_.back().first == t.first) {
      op.terms_.back().second += t.second;
      if (op.terms_.back().second.is_zero()) op.terms_.pop_back();
    } else if (!t.second.is_zero()) {
      op.terms_.push_back(std::move(t));
    }
  }
  return op;
}

bool WeylOp::constant_coefficients() const {
  for (const auto& [d, c] : terms_)
    if (!c.is_constant()) return false;
  return true;
}

WeylOp WeylOp::operator+(const WeylOp& o) const {
  std::vector<Term> ts = terms_;
  ts.insert(ts.end(), o.terms_.begin(), o.terms_.end());
  return from_terms(std::move(ts));
}

WeylOp WeylOp::operator-(const WeylOp& o) const { return *this + o.scale(Rational(-1)); }

WeylOp WeylOp::scale(const Rational& c) const {
  if (c == 0) return WeylOp();
  WeylOp op = *this;
  for (auto& [d, p] : op.terms_) p = p.scale(c);
  return op;
}

WeylOp WeylOp::operator*(const WeylOp& o) const {
  // (p d^a)(q d^b) = p * sum_{g <= a} binom(a,g) (d^g q) d^{a-g+b}
  std::vector<Term> out;
  for (const auto& [da, pa] : terms_) {
    for (const auto& [db, pb] : o.terms_) {
      // Enumerate sub-multi-indices g of da.
      std::vector<std::pair<VarId, std::uint32_t>> avars(da.entries().begin(),
                                                         da.entries().end());
      std::function<void(std::size_t, Monomial, Monomial, Rational, Poly)> rec =
          [&](std::size_t idx, Monomial g, Monomial a_minus_g, Rational binom, Poly dq) {
            if (dq.is_zero()) return;
            if (idx == avars.size()) {
              out.emplace_back(a_minus_g.mul(db), pa * dq.scale(binom));
              return;
            }
            auto [v, e] = avars[idx];
            Poly cur = dq;
            Rational c = binom;
            for (std::uint32_t k = 0; k <= e; ++k) {
              Monomial g2 = g.mul(Monomial::var(v, k));
              Monomial r2 = a_minus_g.mul(Monomial::var(v, e - k));
              rec(idx + 1, g2, r2, c, cur);
              if (k == e) break;
              cur = cur.diff(v);
              c = c * Rational(e - k) / Rational(k + 1);
            }
          };
      rec(0, Monomial::one(), Monomial::one(), Rational(1), pb);
    }
  }
  return from_terms(std::move(out));
}

Poly WeylOp::apply(const Poly& target) const {
  Poly acc;
  for (const auto& [d, c] : terms_) {
    Poly cur = target;
    for (const auto& [v, e] : d.entries())
      for (std::uint32_t k = 0; k < e && !cur.is_zero(); ++k) cur = cur.diff(v);
    acc += c * cur;
  }
  return acc;
}

PowerElement WeylOp::apply(const PowerElement& target) const {
  PowerElement acc(Poly::zero(), target.base_ptr(), 0);
  for (const auto& [d, c] : terms_) {
    PowerElement cur = target;
    for (const auto& [v, e] : d.entries())
      for (std::uint32_t k = 0; k < e; ++k) cur = cur.diff(v);
    acc = acc + cur.mul_poly(c);
  }
  return acc;
}

std::string WeylOp::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [d, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << '(' << c.str() << ')';
    if (!d.is_one()) os << "*D{" << d.str() << '}';
  }
  return os.str();
}

OpMatrix OpMatrix::submatrix(const IndexSet& I, const IndexSet& J) const {
  OpMatrix s(static_cast<unsigned>(I.size()), static_cast<unsigned>(J.size()));
  for (unsigned a = 0; a < I.size(); ++a)
    for (unsigned b = 0; b < J.size(); ++b) s.at(a, b) = at(I[a] - 1, J[b] - 1);
  return s;
}

bool OpMatrix::constant_coefficients() const {
  for (const auto& e : entries)
    if (!e.constant_coefficients()) return false;
  return true;
}

namespace {

OpMatrix op_ordinary(unsigned n) {
  OpMatrix M(n, n);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) M.at(i, j) = WeylOp::d(VarId::x(i + 1, j + 1));
  return M;
}

OpMatrix op_symmetric(unsigned n) {
  OpMatrix M(n, n);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) {
      WeylOp d = WeylOp::d(xsym(i + 1, j + 1));
      M.at(i, j) = (i == j) ? d : d.scale(Rational(1, 2));
    }
  return M;
}

OpMatrix op_antisymmetric(unsigned two_m) {
  OpMatrix M(two_m, two_m);
  for (unsigned i = 0; i < two_m; ++i)
    for (unsigned j = 0; j < two_m; ++j) {
      if (i == j) continue;
      if (i < j)
        M.at(i, j) = WeylOp::d(VarId::x(i + 1, j + 1));
      else
        M.at(i, j) = WeylOp::d(VarId::x(j + 1, i + 1)).scale(Rational(-1));
    }
  return M;
}

OpMatrix op_rect_two(unsigned m, unsigned n) {
  OpMatrix M(m, m);
  for (unsigned i = 0; i < m; ++i)
    for (unsigned j = 0; j < m; ++j) {
      std::vector<WeylOp::Term> ts;
      for (unsigned k = 1; k <= n; ++k)
        ts.emplace_back(Monomial::var(VarId::x(i + 1, k)).mul(Monomial::var(VarId::y(j + 1, k))),
                        Poly::one());
      M.at(i, j) = WeylOp::from_terms(std::move(ts));
    }
  return M;
}

OpMatrix op_rect_sym(unsigned m, unsigned n) {
  OpMatrix M(m, m);
  for (unsigned i = 0; i < m; ++i)
    for (unsigned j = 0; j < m; ++j) {
      std::vector<WeylOp::Term> ts;
      for (unsigned k = 1; k <= n; ++k)
        ts.emplace_back(Monomial::var(VarId::x(i + 1, k)).mul(Monomial::var(VarId::x(j + 1, k))),
                        Poly::one());
      M.at(i, j) = WeylOp::from_terms(std::move(ts));
    }
  return M;
}

OpMatrix op_rect_antisym(unsigned two_m, unsigned two_n) {
  OpMatrix M(two_m, two_m);
  for (unsigned i = 0; i < two_m; ++i)
    for (unsigned j = 0; j < two_m; ++j) {
      std::vector<WeylOp::Term> ts;
      for (unsigned p = 0; 2 * p < two_n; ++p) {
        unsigned a = 2 * p + 1, b = 2 * p + 2;  // J couples columns (a,b)
        ts.emplace_back(Monomial::var(VarId::x(i + 1, a)).mul(Monomial::var(VarId::x(j + 1, b))),
                        Poly::one());
        ts.emplace_back(Monomial::var(VarId::x(i + 1, b)).mul(Monomial::var(VarId::x(j + 1, a))),
                        Poly::constant(-1));
      }
      M.at(i, j) = WeylOp::from_terms(std::move(ts));
    }
  return M;
}

OpMatrix op_rect_multi(const std::vector<unsigned>& ns) {
  unsigned l = static_cast<unsigned>(ns.size());
  unsigned n1 = ns.at(0);
  OpMatrix M(n1, n1);
  for (unsigned i = 0; i < n1; ++i)
    for (unsigned j = 0; j < n1; ++j) {
      // sum over intermediate indices k_1..k_{l-1}, k_pos in 1..n_{pos+1}
      std::vector<WeylOp::Term> ts;
      std::vector<unsigned> k(l + 1);
      k[0] = i + 1;
      k[l] = j + 1;
      std::function<void(unsigned)> rec = [&](unsigned pos) {
        if (pos == l) {
          Monomial prod = Monomial::one();
          for (unsigned a = 1; a <= l; ++a)
            prod = prod.mul(Monomial::var(rect_multi_var(a, k[a - 1], k[a])));
          ts.emplace_back(std::move(prod), Poly::one());
          return;
        }
        for (unsigned v = 1; v <= ns[pos]; ++v) {
          k[pos] = v;
          rec(pos + 1);
        }
      };
      rec(1);
      M.at(i, j) = WeylOp::from_terms(std::move(ts));
    }
  return M;
}

OpMatrix op_row_laplacian(unsigned n, bool with_U) {
  OpMatrix M(n, n);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) {
      WeylOp e = (i == j) ? WeylOp::zero() : WeylOp::d(VarId::x(i + 1, j + 1));
      if (with_U) e = e + WeylOp::identity();
      M.at(i, j) = e;
    }
  return M;
}

OpMatrix op_sym_laplacian(unsigned n, bool with_U) {
  OpMatrix M(n, n);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) {
      WeylOp e = (i == j) ? WeylOp::zero() : WeylOp::d(xsym(i + 1, j + 1));
      if (with_U) e = e + WeylOp::identity();
      M.at(i, j) = e;
    }
  return M;
}

Poly diag_power(unsigned i, int beta) {
  // x_ii^beta with beta in {0,1}
  return beta == 0 ? Poly::one() : Poly::var(VarId::x(i, i));
}

OpMatrix op_diag_param(unsigned n, const std::vector<Rational>& alphas,
                       const std::vector<int>& betas) {
  if (alphas.size() != n || betas.size() != n)
    throw std::invalid_argument("diag_param: need n alphas and n betas");
  for (int b : betas)
    if (b != 0 && b != 1) throw std::invalid_argument("diag_param: beta entries must be 0 or 1");
  OpMatrix M(n, n);
  for (unsigned i = 1; i <= n; ++i)
    for (unsigned j = 1; j <= n; ++j) {
      if (i == j) {
        std::vector<WeylOp::Term> ts;
        ts.emplace_back(Monomial::one(), poly_s());
        for (unsigned k = 1; k <= n; ++k) {
          if (k == i) continue;
          ts.emplace_back(Monomial::var(VarId::x(i, k)),
                          Poly::var(VarId::x(i, k)).scale(-alphas[i - 1]));
          ts.emplace_back(Monomial::var(VarId::x(k, i)),
                          Poly::var(VarId::x(k, i)).scale(-(Rational(1) - alphas[i - 1])));
        }
        M.at(i - 1, j - 1) = WeylOp::from_terms(std::move(ts));
      } else {
        Poly coeff = diag_power(i, betas[i - 1]) * diag_power(j, 1 - betas[j - 1]);
        M.at(i - 1, j - 1) = WeylOp::term(coeff, Monomial::var(VarId::x(i, j)));
      }
    }
  return M;
}

OpMatrix op_diag_param_sym(unsigned n, const std::vector<int>& betas) {
  if (betas.size() != n) throw std::invalid_argument("diag_param_sym: need n betas");
  for (int b : betas)
    if (b != 0 && b != 1)
      throw std::invalid_argument("diag_param_sym: beta entries must be 0 or 1");
  OpMatrix M(n, n);
  for (unsigned i = 1; i <= n; ++i)
    for (unsigned j = 1; j <= n; ++j) {
      if (i == j) {
        std::vector<WeylOp::Term> ts;
        ts.emplace_back(Monomial::one(), poly_s());
        for (unsigned k = 1; k <= n; ++k) {
          if (k == i) continue;
          VarId v = xsym(i, k);
          ts.emplace_back(Monomial::var(v), Poly::var(v).scale(Rational(-1, 2)));
        }
        M.at(i - 1, j - 1) = WeylOp::from_terms(std::move(ts));
      } else {
        Poly coeff =
            half() * diag_power(i, betas[i - 1]) * diag_power(j, 1 - betas[j - 1]);
        M.at(i - 1, j - 1) = WeylOp::term(coeff, Monomial::var(xsym(i, j)));
      }
    }
  return M;
}

OpMatrix op_product(unsigned m, unsigned n, const RMatrix<Rational>& B) {
  if (B.rows() != n || B.cols() != m) throw std::invalid_argument("product: B must be n x m");
  OpMatrix M(m, m);
  for (unsigned i = 0; i < m; ++i)
    for (unsigned j = 0; j < m; ++j) {
      std::vector<WeylOp::Term> ts;
      for (unsigned k = 0; k < n; ++k)
        ts.emplace_back(Monomial::var(VarId::x(i + 1, k + 1)), Poly::constant(B.at(k, j)));
      M.at(i, j) = WeylOp::from_terms(std::move(ts));
    }
  return M;
}

OpMatrix op_border(unsigned m, unsigned n, const RMatrix<Rational>& B) {
  if (B.rows() != n - m || B.cols() != n)
    throw std::invalid_argument("border: B must be (n-m) x n");
  OpMatrix M(n, n);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j)
      M.at(i, j) = (i < m) ? WeylOp::d(VarId::x(i + 1, j + 1))
                           : WeylOp::from_coeff(Poly::constant(B.at(i - m, j)));
  return M;
}

}  // namespace

VarId rect_multi_var(unsigned alpha, unsigned i, unsigned j) {
  // x for the first matrix, y for the second, named letters after that.
  if (alpha == 1) return VarId::x(i, j);
  if (alpha == 2) return VarId::y(i, j);
  return VarId::param(static_cast<char>('z' + alpha - 3), i, j);
}

OpMatrix build_op_matrix(OpFamily family, const OpBuildParams& p) {
  switch (family) {
    case OpFamily::Ordinary: return op_ordinary(p.n);
    case OpFamily::Symmetric: return op_symmetric(p.n);
    case OpFamily::Antisymmetric: return op_antisymmetric(p.n);
    case OpFamily::RectTwo: return op_rect_two(p.m, p.n);
    case OpFamily::RectSym: return op_rect_sym(p.m, p.n);
    case OpFamily::RectAntisym: return op_rect_antisym(p.m, p.n);
    case OpFamily::RectMulti: return op_rect_multi(p.ns);
    case OpFamily::RowLaplacian: return op_row_laplacian(p.n, false);
    case OpFamily::RowLaplacianU: return op_row_laplacian(p.n, true);
    case OpFamily::SymLaplacian: return op_sym_laplacian(p.n, false);
    case OpFamily::SymLaplacianU: return op_sym_laplacian(p.n, true);
    case OpFamily::DiagParam: return op_diag_param(p.n, p.alphas, p.betas);
    case OpFamily::DiagParamSym: return op_diag_param_sym(p.n, p.betas);
    case OpFamily::ProductB: return op_product(p.m, p.n, p.B);
    case OpFamily::BorderB: return op_border(p.m, p.n, p.B);
  }
  throw std::logic_error("build_op_matrix: unknown family");
}

bool op_matrix_commutation_ok(const OpMatrix& M) {
  if (M.constant_coefficients()) return true;
  for (unsigned i = 0; i < M.rows; ++i)
    for (unsigned j = 0; j < M.cols; ++j)
      for (unsigned k = 0; k < M.rows; ++k)
        for (unsigned l = 0; l < M.cols; ++l) {
          if (i == k || j == l) continue;
          if (!M.at(i, j).commutator(M.at(k, l)).is_zero()) return false;
        }
  return true;
}

namespace {

template <typename T, typename ApplyEntry, typename Add>
T det_apply_generic(const OpMatrix& M, const T& target, ApplyEntry apply_entry, Add add,
                    const T& zero) {
  if (M.rows != M.cols) throw std::invalid_argument("opdet: matrix not square");
  unsigned n = M.rows;
  if (n == 0) return target;
  std::map<std::uint32_t, T> memo;
  // rec(S) = det of rows (n-|S|)..(n-1) on columns S, bottom row acting first.
  std::function<const T&(std::uint32_t)> rec = [&](std::uint32_t S) -> const T& {
    auto it = memo.find(S);
    if (it != memo.end()) return it->second;
    unsigned r = n - static_cast<unsigned>(__builtin_popcount(S));
    T acc = zero;
    int pos = 0;
    for (unsigned j = 0; j < n; ++j) {
      if (!(S & (1u << j))) continue;
      const T& sub = rec(S & ~(1u << j));
      T term = apply_entry(M.at(r, j), sub);
      acc = add(std::move(acc), std::move(term), pos % 2 == 0);
      ++pos;
    }
    return memo.emplace(S, std::move(acc)).first->second;
  };
  memo.emplace(0, target);
  return rec((n >= 32 ? 0xffffffffu : (1u << n) - 1));
}

}  // namespace

PowerElement opdet_apply(const OpMatrix& M, const PowerElement& target) {
  if (!M.constant_coefficients() && !op_matrix_commutation_ok(M))
    throw std::invalid_argument("opdet_apply: entries must commute off their row/column");
  PowerElement zero(Poly::zero(), target.base_ptr(), 0);
  return det_apply_generic<PowerElement>(
      M, target, [](const WeylOp& e, const PowerElement& t) { return e.apply(t); },
      [](PowerElement acc, PowerElement term, bool plus) {
        return plus ? acc + term : acc - term;
      },
      zero);
}

Poly opdet_apply(const OpMatrix& M, const Poly& target) {
  return det_apply_generic<Poly>(
      M, target, [](const WeylOp& e, const Poly& t) { return e.apply(t); },
      [](Poly acc, Poly term, bool plus) { return plus ? acc + term : acc - term; },
      Poly::zero());
}

WeylOp opdet_expand(const OpMatrix& M) {
  return det_apply_generic<WeylOp>(
      M, WeylOp::identity(), [](const WeylOp& e, const WeylOp& t) { return e * t; },
      [](WeylOp acc, WeylOp term, bool plus) { return plus ? acc + term : acc - term; },
      WeylOp::zero());
}

namespace {

template <typename T, typename ApplyEntry, typename Add>
T pf_apply_generic(const OpMatrix& M, const T& target, ApplyEntry apply_entry, Add add,
                   const T& zero) {
  if (M.rows != M.cols || M.rows % 2 != 0)
    throw std::invalid_argument("oppf: matrix must be square of even dimension");
  unsigned n = M.rows;
  if (n == 0) return target;
  std::map<std::uint32_t, T> memo;
  std::function<const T&(std::uint32_t)> rec = [&](std::uint32_t S) -> const T& {
    auto it = memo.find(S);
    if (it != memo.end()) return it->second;
    unsigned i = __builtin_ctz(S);
    std::uint32_t rest = S & ~(1u << i);
    T acc = zero;
    int pos = 0;
    for (unsigned j = i + 1; j < n; ++j) {
      if (!(rest & (1u << j))) continue;
      const T& sub = rec(rest & ~(1u << j));
      T term = apply_entry(M.at(i, j), sub);
      acc = add(std::move(acc), std::move(term), pos % 2 == 0);
      ++pos;
    }
    return memo.emplace(S, std::move(acc)).first->second;
  };
  memo.emplace(0, target);
  return rec((1u << n) - 1);
}

}  // namespace

PowerElement oppf_apply(const OpMatrix& M, const PowerElement& target) {
  if (!M.constant_coefficients())
    throw std::invalid_argument("oppf_apply: entries must have constant coefficients");
  PowerElement zero(Poly::zero(), target.base_ptr(), 0);
  return pf_apply_generic<PowerElement>(
      M, target, [](const WeylOp& e, const PowerElement& t) { return e.apply(t); },
      [](PowerElement acc, PowerElement term, bool plus) {
        return plus ? acc + term : acc - term;
      },
      zero);
}

WeylOp oppf_expand(const OpMatrix& M) {
  return pf_apply_generic<WeylOp>(
      M, WeylOp::identity(), [](const WeylOp& e, const WeylOp& t) { return e * t; },
      [](WeylOp acc, WeylOp term, bool plus) { return plus ? acc + term : acc - term; },
      WeylOp::zero());
}

}  // namespace cayley
