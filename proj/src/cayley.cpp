#include "cayley/cayley.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace cayley {

namespace {

VarId xsym(unsigned i, unsigned j) { return VarId::x(std::min(i, j), std::max(i, j)); }

// prod_j (base + shifts_j)
Poly shifted_product(const Poly& base, const std::vector<Rational>& shifts) {
  Poly acc = Poly::one();
  for (const Rational& c : shifts) acc = acc * (base + Poly::constant(c));
  return acc;
}

std::string factored_product(const std::string& base, const std::vector<Rational>& shifts) {
  if (shifts.empty()) return "1";
  std::ostringstream os;
  for (const Rational& c : shifts) {
    if (c == 0) {
      os << base;
    } else if (c < 0) {
      os << '(' << base << '-' << rat_str(-c) << ')';
    } else {
      os << '(' << base << '+' << rat_str(c) << ')';
    }
  }
  return os.str();
}

std::vector<Rational> range_shifts(unsigned count, Rational start, Rational step) {
  std::vector<Rational> v;
  for (unsigned j = 0; j < count; ++j) v.push_back(start + step * Rational(j));
  return v;
}

}  // namespace

const char* family_name(Family f) {
  switch (f) {
    case Family::ordinary: return "ordinary";
    case Family::symmetric: return "symmetric";
    case Family::antisym_pf: return "antisym_pf";
    case Family::antisym_det: return "antisym_det";
    case Family::rect_two_matrix: return "rect_two_matrix";
    case Family::rect_sym: return "rect_sym";
    case Family::rect_antisym: return "rect_antisym";
    case Family::rect_multi: return "rect_multi";
    case Family::diag_param: return "diag_param";
    case Family::diag_param_sym: return "diag_param_sym";
    case Family::laplacian_row: return "laplacian_row";
    case Family::laplacian_sym: return "laplacian_sym";
    case Family::tree_row: return "tree_row";
    case Family::tree_sym: return "tree_sym";
    case Family::product_param: return "product_param";
    case Family::border_param: return "border_param";
  }
  return "?";
}

std::optional<Family> family_from_string(const std::string& raw) {
  std::string s = raw;
  std::replace(s.begin(), s.end(), '-', '_');
  static const std::pair<const char*, Family> table[] = {
      {"ordinary", Family::ordinary},
      {"symmetric", Family::symmetric},
      {"antisym_pf", Family::antisym_pf},
      {"antisym_det", Family::antisym_det},
      {"rect_two_matrix", Family::rect_two_matrix},
      {"rect_two", Family::rect_two_matrix},
      {"rect_sym", Family::rect_sym},
      {"rect_antisym", Family::rect_antisym},
      {"rect_multi", Family::rect_multi},
      {"diag_param", Family::diag_param},
      {"diag", Family::diag_param},
      {"diag_param_sym", Family::diag_param_sym},
      {"diag_sym", Family::diag_param_sym},
      {"laplacian_row", Family::laplacian_row},
      {"laplacian_sym", Family::laplacian_sym},
      {"tree_row", Family::tree_row},
      {"tree_sym", Family::tree_sym},
      {"product_param", Family::product_param},
      {"product", Family::product_param},
      {"border_param", Family::border_param},
      {"border", Family::border_param},
  };
  for (const auto& [name, fam] : table)
    if (s == name) return fam;
  return std::nullopt;
}

std::uint64_t Rng::next() {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

int Rng::small_int(int lo, int hi) {
  return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
}

Rational Rng::small_rational() {
  int num = small_int(1, 9);
  if (next() & 1) num = -num;
  int den = small_int(1, 9);
  return make_rational(num, den);
}

RMatrix<Rational> random_rational_matrix(unsigned rows, unsigned cols, Rng& rng) {
  RMatrix<Rational> A(rows, cols, Rational(0));
  for (unsigned i = 0; i < rows; ++i)
    for (unsigned j = 0; j < cols; ++j) A.at(i, j) = rng.small_rational();
  return A;
}

RMatrix<Poly> var_matrix(unsigned rows, unsigned cols) {
  RMatrix<Poly> X(rows, cols, Poly::zero());
  for (unsigned i = 0; i < rows; ++i)
    for (unsigned j = 0; j < cols; ++j) X.at(i, j) = Poly::var(VarId::x(i + 1, j + 1));
  return X;
}

RMatrix<Poly> var_matrix_y(unsigned rows, unsigned cols) {
  RMatrix<Poly> X(rows, cols, Poly::zero());
  for (unsigned i = 0; i < rows; ++i)
    for (unsigned j = 0; j < cols; ++j) X.at(i, j) = Poly::var(VarId::y(i + 1, j + 1));
  return X;
}

RMatrix<Poly> var_matrix_multi(unsigned alpha, unsigned rows, unsigned cols) {
  RMatrix<Poly> X(rows, cols, Poly::zero());
  for (unsigned i = 0; i < rows; ++i)
    for (unsigned j = 0; j < cols; ++j)
      X.at(i, j) = Poly::var(rect_multi_var(alpha, i + 1, j + 1));
  return X;
}

RMatrix<Poly> var_matrix_sym(unsigned n) {
  RMatrix<Poly> X(n, n, Poly::zero());
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) X.at(i, j) = Poly::var(xsym(i + 1, j + 1));
  return X;
}

RMatrix<Poly> var_matrix_antisym(unsigned n) {
  RMatrix<Poly> X(n, n, Poly::zero());
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) {
      if (i == j) continue;
      Poly v = Poly::var(VarId::x(std::min(i, j) + 1, std::max(i, j) + 1));
      X.at(i, j) = (i < j) ? v : -v;
    }
  return X;
}

RMatrix<Poly> laplacian_row_matrix(unsigned n, bool with_t) {
  RMatrix<Poly> X(n, n, Poly::zero());
  for (unsigned i = 1; i <= n; ++i) {
    Poly diag = with_t ? Poly::var(VarId::t(i)) : Poly::zero();
    for (unsigned j = 1; j <= n; ++j) {
      if (i == j) continue;
      X.at(i - 1, j - 1) = Poly::var(VarId::x(i, j));
      diag -= Poly::var(VarId::x(i, j));
    }
    X.at(i - 1, i - 1) = diag;
  }
  return X;
}

RMatrix<Poly> laplacian_sym_matrix(unsigned n, bool with_t) {
  RMatrix<Poly> X(n, n, Poly::zero());
  for (unsigned i = 1; i <= n; ++i) {
    Poly diag = with_t ? Poly::var(VarId::t(i)) : Poly::zero();
    for (unsigned j = 1; j <= n; ++j) {
      if (i == j) continue;
      X.at(i - 1, j - 1) = Poly::var(xsym(i, j));
      diag -= Poly::var(xsym(i, j));
    }
    X.at(i - 1, i - 1) = diag;
  }
  return X;
}

RMatrix<Poly> to_poly(const RMatrix<Rational>& A) {
  RMatrix<Poly> P(A.rows(), A.cols(), Poly::zero());
  for (unsigned i = 0; i < A.rows(); ++i)
    for (unsigned j = 0; j < A.cols(); ++j) P.at(i, j) = Poly::constant(A.at(i, j));
  return P;
}

std::string IdentityCase::key() const {
  std::ostringstream os;
  os << family_name(family);
  if (!ns.empty()) {
    os << "/ns=";
    for (std::size_t i = 0; i < ns.size(); ++i) os << (i ? "," : "") << ns[i];
  } else {
    if (m > 0) os << "/m=" << m;
    if (n > 0) os << "/n=" << n;
  }
  auto put_set = [&os](const char* tag, const IndexSet& S) {
    os << '/' << tag << '=';
    for (std::size_t i = 0; i < S.size(); ++i) os << (i ? "," : "") << S[i];
    if (S.empty()) os << "-";
  };
  switch (family) {
    case Family::antisym_pf:
    case Family::antisym_det:
    case Family::rect_antisym: put_set("I", I); break;
    case Family::laplacian_row:
    case Family::laplacian_sym:
    case Family::border_param: break;
    case Family::tree_row:
    case Family::tree_sym: os << "/root=" << i0; break;
    default:
      put_set("I", I);
      put_set("J", J);
  }
  if (!alphas.empty()) {
    os << "/alpha=";
    for (std::size_t i = 0; i < alphas.size(); ++i) os << (i ? "," : "") << rat_str(alphas[i]);
  }
  if (!betas.empty()) {
    os << "/beta=";
    for (std::size_t i = 0; i < betas.size(); ++i) os << (i ? "," : "") << betas[i];
  }
  if (family == Family::product_param || family == Family::border_param)
    os << "/seed=" << seed;
  return os.str();
}

std::optional<std::string> validate_case(const IdentityCase& c) {
  auto need_minors = [&](unsigned bound) -> std::optional<std::string> {
    if (!valid_index_set(c.I, bound) || !valid_index_set(c.J, bound))
      return "minor index sets must be strictly increasing subsets of the valid range";
    if (c.I.size() != c.J.size()) return "minor index sets must have equal size";
    return std::nullopt;
  };
  auto need_principal = [&](unsigned bound) -> std::optional<std::string> {
    if (!valid_index_set(c.I, bound))
      return "minor index set must be a strictly increasing subset of the valid range";
    if (c.I.size() % 2 != 0) return "pfaffian families need even-size principal minors";
    return std::nullopt;
  };
  switch (c.family) {
    case Family::ordinary:
    case Family::symmetric:
      if (c.n < 1) return "n must be >= 1";
      return need_minors(c.n);
    case Family::antisym_pf:
    case Family::antisym_det:
      if (c.m < 1) return "m must be >= 1 (matrix size 2m)";
      return need_principal(2 * c.m);
    case Family::rect_two_matrix:
    case Family::rect_sym:
      if (c.m < 1 || c.n < 1) return "m and n must be >= 1";
      return need_minors(c.m);
    case Family::rect_antisym:
      if (c.m < 1 || c.n < 1) return "m and n must be >= 1 (sizes 2m x 2n)";
      return need_principal(2 * c.m);
    case Family::rect_multi:
      if (c.ns.empty()) return "rect_multi needs dimensions n_1..n_l";
      for (unsigned v : c.ns)
        if (v < 1) return "all n_alpha must be >= 1";
      return need_minors(c.ns[0]);
    case Family::diag_param:
      if (c.n < 1) return "n must be >= 1";
      if (c.alphas.size() != c.n) return "need n alpha parameters";
      if (c.betas.size() != c.n) return "need n beta parameters";
      for (int b : c.betas)
        if (b != 0 && b != 1) return "beta entries must lie in {0,1}";
      return need_minors(c.n);
    case Family::diag_param_sym:
      if (c.n < 1) return "n must be >= 1";
      if (c.betas.size() != c.n) return "need n beta parameters";
      for (int b : c.betas)
        if (b != 0 && b != 1) return "beta entries must lie in {0,1}";
      return need_minors(c.n);
    case Family::laplacian_row:
    case Family::laplacian_sym:
      if (c.n < 1) return "n must be >= 1";
      return std::nullopt;
    case Family::tree_row:
    case Family::tree_sym:
      if (c.n < 2) return "tree families need n >= 2";
      if (c.i0 < 1 || c.i0 > c.n) return "root i0 must lie in [n]";
      return std::nullopt;
    case Family::product_param:
      if (c.m < 1 || c.n < 1) return "m and n must be >= 1";
      if (c.m > c.n) return "product family needs m <= n";
      if (c.A.rows() != c.n || c.A.cols() != c.m) return "A must be n x m";
      if (c.B.rows() != c.n || c.B.cols() != c.m) return "B must be n x m";
      return need_minors(c.m);
    case Family::border_param:
      if (c.m < 1 || c.n < 1) return "m and n must be >= 1";
      if (c.m > c.n) return "border family needs m <= n";
      if (c.A.rows() != c.n - c.m || c.A.cols() != c.n) return "A must be (n-m) x n";
      if (c.B.rows() != c.n - c.m || c.B.cols() != c.n) return "B must be (n-m) x n";
      return std::nullopt;
  }
  return "unknown family";
}

namespace {

struct CasePieces {
  std::shared_ptr<const Poly> P;
  OpMatrix op;  // operator matrix with the minor already taken
  // The Laplacian operator det(U+d) - det(d) expands by multilinearity in the
  // rows to sum_{i,j} (-1)^{i+j} det(d_{i^c j^c}) (two all-ones rows cancel).
  bool laplacian_minor_sum = false;
  // Multi-matrix dets factor through Cauchy-Binet over the commutative
  // subring of constant-coefficient operators; each factor then collapses.
  std::vector<unsigned> multi_ns;
  IndexSet multi_I, multi_J;
  bool use_pf = false;
  Poly cofactor = Poly::one();  // everything on the RHS except b(s)
  Poly bpoly = Poly::one();
  bool product_alt_ok = true;  // alternate minor expression for product family
};

void subsets_of_size(unsigned n, unsigned k, const std::function<void(const IndexSet&)>& f) {
  IndexSet cur;
  std::function<void(unsigned)> rec = [&](unsigned from) {
    if (cur.size() == k) {
      f(cur);
      return;
    }
    for (unsigned v = from; v + (k - cur.size()) <= n + 1; ++v) {
      cur.push_back(v);
      rec(v + 1);
      cur.pop_back();
    }
  };
  rec(1);
}

// Single-derivative matrix of the alpha-th factor in the multi-matrix family.
OpMatrix multi_factor_matrix(unsigned alpha, unsigned rows, unsigned cols) {
  OpMatrix M(rows, cols);
  for (unsigned i = 0; i < rows; ++i)
    for (unsigned j = 0; j < cols; ++j)
      M.at(i, j) = WeylOp::d(rect_multi_var(alpha, i + 1, j + 1));
  return M;
}

PowerElement apply_multi_cb(const std::vector<unsigned>& ns, const IndexSet& I,
                            const IndexSet& J, const PowerElement& target) {
  unsigned l = static_cast<unsigned>(ns.size());
  unsigned k = static_cast<unsigned>(I.size());
  PowerElement acc(Poly::zero(), target.base_ptr(), 0);
  // column sets K_1 subset [n_2], ..., K_{l-1} subset [n_l], |K| = k;
  // rightmost factor acts first.
  std::vector<IndexSet> K(l + 1);
  K[0] = I;
  K[l] = J;
  std::function<void(unsigned)> rec = [&](unsigned pos) {
    if (pos == l) {
      PowerElement cur = target;
      for (unsigned a = l; a >= 1; --a) {
        OpMatrix F = multi_factor_matrix(a, a == 1 ? ns[0] : ns[a - 1],
                                         a == l ? ns[0] : ns[a]);
        cur = opdet_apply(F.submatrix(K[a - 1], K[a]), cur);
        if (cur.is_zero()) break;
      }
      acc = acc + cur;
      return;
    }
    subsets_of_size(ns[pos], k, [&](const IndexSet& S) {
      K[pos] = S;
      rec(pos + 1);
    });
  };
  rec(1);
  return acc;
}

PowerElement apply_lhs(const CasePieces& pc, const PowerElement& target) {
  if (pc.laplacian_minor_sum) {
    unsigned n = pc.op.rows;
    PowerElement acc(Poly::zero(), target.base_ptr(), 0);
    for (unsigned i = 1; i <= n; ++i)
      for (unsigned j = 1; j <= n; ++j) {
        PowerElement piece =
            opdet_apply(pc.op.submatrix(complement({i}, n), complement({j}, n)), target);
        acc = ((i + j) % 2 == 0) ? acc + piece : acc - piece;
      }
    return acc;
  }
  if (!pc.multi_ns.empty())
    return apply_multi_cb(pc.multi_ns, pc.multi_I, pc.multi_J, target);
  return pc.use_pf ? oppf_apply(pc.op, target) : opdet_apply(pc.op, target);
}

unsigned minor_size(const IdentityCase& c) {
  switch (c.family) {
    case Family::ordinary:
    case Family::symmetric:
    case Family::rect_two_matrix:
    case Family::rect_sym:
    case Family::rect_multi:
    case Family::diag_param:
    case Family::diag_param_sym:
    case Family::product_param: return static_cast<unsigned>(c.I.size());
    case Family::antisym_pf:
    case Family::antisym_det:
    case Family::rect_antisym: return static_cast<unsigned>(c.I.size()) / 2;
    case Family::laplacian_row:
    case Family::laplacian_sym:
    case Family::tree_row:
    case Family::tree_sym: return c.n;
    case Family::border_param: return c.m;
  }
  return 0;
}

Poly diag_monomials(const IdentityCase& c) {
  Poly f = Poly::one();
  for (unsigned i : c.I)
    if (c.betas[i - 1] == 1) f = f * Poly::var(VarId::x(i, i));
  for (unsigned j : c.J)
    if (c.betas[j - 1] == 0) f = f * Poly::var(VarId::x(j, j));
  return f;
}

// M of the product-family minor identity: rows outside I are rows of X,
// row i_h is the j_h-th column of B transposed.
RMatrix<Poly> product_M(const IdentityCase& c) {
  RMatrix<Poly> M(c.m, c.n, Poly::zero());
  std::vector<int> row_of(c.m + 1, -1);
  for (std::size_t h = 0; h < c.I.size(); ++h) row_of[c.I[h]] = static_cast<int>(h);
  for (unsigned a = 1; a <= c.m; ++a)
    for (unsigned b = 1; b <= c.n; ++b)
      M.at(a - 1, b - 1) = (row_of[a] < 0)
                               ? Poly::var(VarId::x(a, b))
                               : Poly::constant(c.B.at(b - 1, c.J[row_of[a]] - 1));
  return M;
}

CasePieces build_pieces(const IdentityCase& c) {
  CasePieces pc;
  unsigned k = minor_size(c);
  OpBuildParams bp;
  switch (c.family) {
    case Family::ordinary: {
      RMatrix<Poly> X = var_matrix(c.n, c.n);
      pc.P = std::make_shared<Poly>(det(X));
      bp.n = c.n;
      pc.op = build_op_matrix(OpFamily::Ordinary, bp).submatrix(c.I, c.J);
      pc.cofactor = eps_sign(c.I, c.J) * det(X.submatrix(complement(c.I, c.n), complement(c.J, c.n)));
      pc.bpoly = shifted_product(poly_s(), range_shifts(k, 0, 1));
      break;
    }
    case Family::symmetric: {
      RMatrix<Poly> X = var_matrix_sym(c.n);
      pc.P = std::make_shared<Poly>(det(X));
      bp.n = c.n;
      pc.op = build_op_matrix(OpFamily::Symmetric, bp).submatrix(c.I, c.J);
      pc.cofactor = eps_sign(c.I, c.J) * det(X.submatrix(complement(c.I, c.n), complement(c.J, c.n)));
      pc.bpoly = shifted_product(poly_s(), range_shifts(k, 0, Rational(1, 2)));
      break;
    }
    case Family::antisym_pf: {
      RMatrix<Poly> X = var_matrix_antisym(2 * c.m);
      pc.P = std::make_shared<Poly>(pf(X));
      bp.n = 2 * c.m;
      pc.op = build_op_matrix(OpFamily::Antisymmetric, bp).submatrix(c.I, c.I);
      pc.use_pf = true;
      IndexSet Ic = complement(c.I, 2 * c.m);
      pc.cofactor = eps_sign(c.I) * pf(X.submatrix(Ic, Ic));
      pc.bpoly = shifted_product(poly_s(), range_shifts(k, 0, 2));
      break;
    }
    case Family::antisym_det: {
      RMatrix<Poly> X = var_matrix_antisym(2 * c.m);
      pc.P = std::make_shared<Poly>(det(X));
      bp.n = 2 * c.m;
      pc.op = build_op_matrix(OpFamily::Antisymmetric, bp).submatrix(c.I, c.I);
      IndexSet Ic = complement(c.I, 2 * c.m);
      pc.cofactor = det(X.submatrix(Ic, Ic));
      pc.bpoly = shifted_product(Poly::constant(2) * poly_s(),
                                 range_shifts(2 * k, -1, 1));
      break;
    }
    case Family::rect_two_matrix: {
      RMatrix<Poly> X = var_matrix(c.m, c.n);
      RMatrix<Poly> Y = var_matrix_y(c.m, c.n);
      RMatrix<Poly> XYt = X.mul(Y.transpose(), Poly::zero());
      pc.P = std::make_shared<Poly>(det(XYt));
      bp.m = c.m;
      bp.n = c.n;
      pc.op = build_op_matrix(OpFamily::RectTwo, bp).submatrix(c.I, c.J);
      pc.cofactor =
          eps_sign(c.I, c.J) * det(XYt.submatrix(complement(c.I, c.m), complement(c.J, c.m)));
      std::vector<Rational> shifts;
      for (unsigned j = 0; j < k; ++j) {
        shifts.push_back(Rational(j));
        shifts.push_back(Rational(static_cast<long>(c.n) - c.m + j));
      }
      pc.bpoly = shifted_product(poly_s(), shifts);
      break;
    }
    case Family::rect_sym: {
      RMatrix<Poly> X = var_matrix(c.m, c.n);
      RMatrix<Poly> XXt = X.mul(X.transpose(), Poly::zero());
      pc.P = std::make_shared<Poly>(det(XXt));
      bp.m = c.m;
      bp.n = c.n;
      pc.op = build_op_matrix(OpFamily::RectSym, bp).submatrix(c.I, c.J);
      pc.cofactor =
          eps_sign(c.I, c.J) * det(XXt.submatrix(complement(c.I, c.m), complement(c.J, c.m)));
      std::vector<Rational> shifts;
      for (unsigned j = 0; j < k; ++j) {
        shifts.push_back(Rational(j));
        shifts.push_back(Rational(static_cast<long>(c.n) - c.m - 1 + j));
      }
      pc.bpoly = shifted_product(Poly::constant(2) * poly_s(), shifts);
      break;
    }
    case Family::rect_antisym: {
      RMatrix<Poly> X = var_matrix(2 * c.m, 2 * c.n);
      RMatrix<Poly> XJXt =
          X.mul(symplectic_J_poly(2 * c.n), Poly::zero()).mul(X.transpose(), Poly::zero());
      pc.P = std::make_shared<Poly>(pf(XJXt));
      bp.m = 2 * c.m;
      bp.n = 2 * c.n;
      pc.op = build_op_matrix(OpFamily::RectAntisym, bp).submatrix(c.I, c.I);
      pc.use_pf = true;
      IndexSet Ic = complement(c.I, 2 * c.m);
      pc.cofactor = eps_sign(c.I) * pf(XJXt.submatrix(Ic, Ic));
      std::vector<Rational> shifts;
      for (unsigned j = 0; j < k; ++j) {
        shifts.push_back(Rational(2 * j));
        shifts.push_back(Rational(2 * static_cast<long>(c.n) - 2 * c.m + 1 + 2 * j));
      }
      pc.bpoly = shifted_product(poly_s(), shifts);
      break;
    }
    case Family::rect_multi: {
      unsigned l = static_cast<unsigned>(c.ns.size());
      unsigned n1 = c.ns[0];
      RMatrix<Poly> prod = var_matrix_multi(1, n1, l > 1 ? c.ns[1] : n1);
      for (unsigned a = 2; a <= l; ++a) {
        unsigned cols = (a < l) ? c.ns[a] : n1;
        prod = prod.mul(var_matrix_multi(a, c.ns[a - 1], cols), Poly::zero());
      }
      pc.P = std::make_shared<Poly>(det(prod));
      pc.multi_ns = c.ns;
      pc.multi_I = c.I;
      pc.multi_J = c.J;
      pc.cofactor =
          eps_sign(c.I, c.J) * det(prod.submatrix(complement(c.I, n1), complement(c.J, n1)));
      std::vector<Rational> shifts;
      for (unsigned a = 0; a < l; ++a)
        for (unsigned j = 0; j < k; ++j)
          shifts.push_back(Rational(static_cast<long>(c.ns[a]) - static_cast<long>(n1) + j));
      pc.bpoly = shifted_product(poly_s(), shifts);
      break;
    }
    case Family::diag_param: {
      RMatrix<Poly> X = var_matrix(c.n, c.n);
      pc.P = std::make_shared<Poly>(det(X));
      bp.n = c.n;
      bp.alphas = c.alphas;
      bp.betas = c.betas;
      pc.op = build_op_matrix(OpFamily::DiagParam, bp).submatrix(c.I, c.J);
      pc.cofactor = eps_sign(c.I, c.J) * diag_monomials(c) *
                    det(X.submatrix(complement(c.I, c.n), complement(c.J, c.n)));
      pc.bpoly = shifted_product(poly_s(), range_shifts(k, 0, 1));
      break;
    }
    case Family::diag_param_sym: {
      RMatrix<Poly> X = var_matrix_sym(c.n);
      pc.P = std::make_shared<Poly>(det(X));
      bp.n = c.n;
      bp.betas = c.betas;
      pc.op = build_op_matrix(OpFamily::DiagParamSym, bp).submatrix(c.I, c.J);
      pc.cofactor = eps_sign(c.I, c.J) * diag_monomials(c) *
                    det(X.submatrix(complement(c.I, c.n), complement(c.J, c.n)));
      pc.bpoly = shifted_product(poly_s(), range_shifts(k, 0, Rational(1, 2)));
      break;
    }
    case Family::laplacian_row:
    case Family::laplacian_sym: {
      bool row = c.family == Family::laplacian_row;
      pc.P = std::make_shared<Poly>(
          det(row ? laplacian_row_matrix(c.n, true) : laplacian_sym_matrix(c.n, true)));
      bp.n = c.n;
      pc.op = build_op_matrix(row ? OpFamily::RowLaplacian : OpFamily::SymLaplacian, bp);
      pc.laplacian_minor_sum = true;
      Poly tsum;
      for (unsigned i = 1; i <= c.n; ++i) tsum += Poly::var(VarId::t(i));
      pc.cofactor = tsum;
      pc.bpoly = row ? shifted_product(poly_s(), range_shifts(c.n - 1, 0, 1))
                     : shifted_product(Poly::constant(2) * poly_s(),
                                       range_shifts(c.n - 1, 0, 1));
      break;
    }
    case Family::tree_row:
    case Family::tree_sym: {
      bool row = c.family == Family::tree_row;
      RMatrix<Poly> L = row ? laplacian_row_matrix(c.n, false) : laplacian_sym_matrix(c.n, false);
      IndexSet keep = complement({c.i0}, c.n);
      pc.P = std::make_shared<Poly>(det(L.submatrix(keep, keep)));
      bp.n = c.n;
      pc.op = build_op_matrix(row ? OpFamily::RowLaplacian : OpFamily::SymLaplacian, bp);
      pc.laplacian_minor_sum = true;
      pc.bpoly = row ? shifted_product(poly_s(), range_shifts(c.n - 1, 0, 1))
                     : shifted_product(Poly::constant(2) * poly_s(),
                                       range_shifts(c.n - 1, 0, 1));
      break;
    }
    case Family::product_param: {
      RMatrix<Poly> X = var_matrix(c.m, c.n);
      RMatrix<Poly> XA = X.mul(to_poly(c.A), Poly::zero());
      pc.P = std::make_shared<Poly>(det(XA));
      bp.m = c.m;
      bp.n = c.n;
      bp.B = c.B;
      pc.op = build_op_matrix(OpFamily::ProductB, bp).submatrix(c.I, c.J);
      pc.bpoly = shifted_product(poly_s(), range_shifts(k, 0, 1));
      RMatrix<Poly> MA = product_M(c).mul(to_poly(c.A), Poly::zero());
      Poly detMA = det(MA);
      if (k == c.m) {
        // det(MA) = det(B^T A) is a constant; fold it into b(s).
        pc.bpoly = pc.bpoly * detMA;
        pc.cofactor = Poly::one();
      } else {
        pc.cofactor = detMA;
      }
      // Alternate expression for det(MA) via multi-row Laplace expansion.
      {
        RMatrix<Rational> BtA_r(c.m, c.m, Rational(0));
        for (unsigned a = 0; a < c.m; ++a)
          for (unsigned b = 0; b < c.m; ++b) {
            Rational acc = 0;
            for (unsigned t = 0; t < c.n; ++t) acc += c.B.at(t, a) * c.A.at(t, b);
            BtA_r.at(a, b) = acc;
          }
        RMatrix<Poly> BtA = to_poly(BtA_r);
        Poly alt;
        IndexSet Ic = complement(c.I, c.m);
        std::vector<unsigned> sel(k);
        std::function<void(unsigned, unsigned)> choose = [&](unsigned pos, unsigned from) {
          if (pos == k) {
            IndexSet L(sel.begin(), sel.end());
            alt += eps_sign(c.I, L) * det(BtA.submatrix(c.J, L)) *
                   det(XA.submatrix(Ic, complement(L, c.m)));
            return;
          }
          for (unsigned v = from; v <= c.m; ++v) {
            sel[pos] = v;
            choose(pos + 1, v + 1);
          }
        };
        choose(0, 1);
        pc.product_alt_ok = (alt == detMA);
      }
      break;
    }
    case Family::border_param: {
      RMatrix<Poly> Xhat(c.n, c.n, Poly::zero());
      for (unsigned i = 0; i < c.n; ++i)
        for (unsigned j = 0; j < c.n; ++j)
          Xhat.at(i, j) = (i < c.m) ? Poly::var(VarId::x(i + 1, j + 1))
                                    : Poly::constant(c.A.at(i - c.m, j));
      pc.P = std::make_shared<Poly>(det(Xhat));
      bp.m = c.m;
      bp.n = c.n;
      bp.B = c.B;
      pc.op = build_op_matrix(OpFamily::BorderB, bp);
      // det(A B^T) is constant; it belongs with b(s) like the product family.
      RMatrix<Poly> ABt = to_poly(c.A).mul(to_poly(c.B).transpose(), Poly::zero());
      pc.bpoly = shifted_product(poly_s(), range_shifts(c.m, 0, 1)) * det(ABt);
      pc.cofactor = Poly::one();
      break;
    }
  }
  return pc;
}

}  // namespace

Poly expected_bfunction(const IdentityCase& c) {
  IdentityCase full = c;
  auto all = [](unsigned n) {
    IndexSet s(n);
    for (unsigned i = 0; i < n; ++i) s[i] = i + 1;
    return s;
  };
  // Default to the full minor when none is given.
  switch (c.family) {
    case Family::ordinary:
    case Family::symmetric:
    case Family::diag_param:
    case Family::diag_param_sym:
      if (full.I.empty() && full.J.empty()) full.I = full.J = all(c.n);
      break;
    case Family::antisym_pf:
    case Family::antisym_det:
      if (full.I.empty()) full.I = all(2 * c.m);
      break;
    case Family::rect_two_matrix:
    case Family::rect_sym:
    case Family::product_param:
      if (full.I.empty() && full.J.empty()) full.I = full.J = all(c.m);
      break;
    case Family::rect_antisym:
      if (full.I.empty()) full.I = all(2 * c.m);
      break;
    case Family::rect_multi:
      if (full.I.empty() && full.J.empty()) full.I = full.J = all(c.ns.at(0));
      break;
    default: break;
  }
  unsigned k = minor_size(full);
  switch (full.family) {
    case Family::ordinary:
    case Family::diag_param: return shifted_product(poly_s(), range_shifts(k, 0, 1));
    case Family::symmetric:
    case Family::diag_param_sym:
      return shifted_product(poly_s(), range_shifts(k, 0, Rational(1, 2)));
    case Family::antisym_pf: return shifted_product(poly_s(), range_shifts(k, 0, 2));
    case Family::antisym_det:
      return shifted_product(Poly::constant(2) * poly_s(), range_shifts(2 * k, -1, 1));
    case Family::rect_two_matrix: {
      std::vector<Rational> sh;
      for (unsigned j = 0; j < k; ++j) {
        sh.push_back(Rational(j));
        sh.push_back(Rational(static_cast<long>(full.n) - full.m + j));
      }
      return shifted_product(poly_s(), sh);
    }
    case Family::rect_sym: {
      std::vector<Rational> sh;
      for (unsigned j = 0; j < k; ++j) {
        sh.push_back(Rational(j));
        sh.push_back(Rational(static_cast<long>(full.n) - full.m - 1 + j));
      }
      return shifted_product(Poly::constant(2) * poly_s(), sh);
    }
    case Family::rect_antisym: {
      std::vector<Rational> sh;
      for (unsigned j = 0; j < k; ++j) {
        sh.push_back(Rational(2 * j));
        sh.push_back(Rational(2 * (static_cast<long>(full.n) - full.m) + 1 + 2 * j));
      }
      return shifted_product(poly_s(), sh);
    }
    case Family::rect_multi: {
      std::vector<Rational> sh;
      for (unsigned a = 0; a < full.ns.size(); ++a)
        for (unsigned j = 0; j < k; ++j)
          sh.push_back(Rational(static_cast<long>(full.ns[a]) - static_cast<long>(full.ns[0]) + j));
      return shifted_product(poly_s(), sh);
    }
    case Family::laplacian_row:
    case Family::tree_row: return shifted_product(poly_s(), range_shifts(full.n - 1, 0, 1));
    case Family::laplacian_sym:
    case Family::tree_sym:
      return shifted_product(Poly::constant(2) * poly_s(), range_shifts(full.n - 1, 0, 1));
    case Family::product_param: {
      Poly b = shifted_product(poly_s(), range_shifts(k, 0, 1));
      if (k == full.m && full.A.rows() == full.n) {
        RMatrix<Rational> AtB(full.m, full.m, Rational(0));
        for (unsigned a = 0; a < full.m; ++a)
          for (unsigned bcol = 0; bcol < full.m; ++bcol) {
            Rational acc = 0;
            for (unsigned t = 0; t < full.n; ++t) acc += full.A.at(t, a) * full.B.at(t, bcol);
            AtB.at(a, bcol) = acc;
          }
        b = b * Poly::constant(det(AtB));
      }
      return b;
    }
    case Family::border_param: {
      Poly b = shifted_product(poly_s(), range_shifts(full.m, 0, 1));
      if (full.A.rows() == full.n - full.m) {
        RMatrix<Rational> ABt(full.n - full.m, full.n - full.m, Rational(0));
        for (unsigned a = 0; a + full.m < full.n; ++a)
          for (unsigned bcol = 0; bcol + full.m < full.n; ++bcol) {
            Rational acc = 0;
            for (unsigned t = 0; t < full.n; ++t) acc += full.A.at(a, t) * full.B.at(bcol, t);
            ABt.at(a, bcol) = acc;
          }
        b = b * Poly::constant(det(ABt));
      }
      return b;
    }
  }
  return Poly::one();
}

std::string expected_bfunction_factored(const IdentityCase& c) {
  unsigned k = minor_size(c);
  auto kk = [&](unsigned full) { return c.I.empty() && c.J.empty() ? full : k; };
  switch (c.family) {
    case Family::ordinary:
    case Family::diag_param: {
      unsigned q = kk(c.n);
      return factored_product("s", range_shifts(q, 0, 1));
    }
    case Family::symmetric:
    case Family::diag_param_sym:
      return factored_product("s", range_shifts(kk(c.n), 0, Rational(1, 2)));
    case Family::antisym_pf:
      return factored_product("s", range_shifts(c.I.empty() ? c.m : k, 0, 2));
    case Family::antisym_det:
      return factored_product("2s", range_shifts(2 * (c.I.empty() ? c.m : k), -1, 1));
    case Family::rect_two_matrix: {
      unsigned q = kk(c.m);
      std::vector<Rational> sh;
      for (unsigned j = 0; j < q; ++j) {
        sh.push_back(Rational(j));
        sh.push_back(Rational(static_cast<long>(c.n) - c.m + j));
      }
      return factored_product("s", sh);
    }
    case Family::rect_sym: {
      unsigned q = kk(c.m);
      std::vector<Rational> sh;
      for (unsigned j = 0; j < q; ++j) {
        sh.push_back(Rational(j));
        sh.push_back(Rational(static_cast<long>(c.n) - c.m - 1 + j));
      }
      return factored_product("2s", sh);
    }
    case Family::rect_antisym: {
      unsigned q = c.I.empty() ? c.m : k;
      std::vector<Rational> sh;
      for (unsigned j = 0; j < q; ++j) {
        sh.push_back(Rational(2 * j));
        sh.push_back(Rational(2 * (static_cast<long>(c.n) - c.m) + 1 + 2 * j));
      }
      return factored_product("s", sh);
    }
    case Family::rect_multi: {
      unsigned q = (c.I.empty() && c.J.empty()) ? c.ns.at(0) : k;
      std::vector<Rational> sh;
      for (unsigned a = 0; a < c.ns.size(); ++a)
        for (unsigned j = 0; j < q; ++j)
          sh.push_back(Rational(static_cast<long>(c.ns[a]) - static_cast<long>(c.ns[0]) + j));
      return factored_product("s", sh);
    }
    case Family::laplacian_row:
    case Family::tree_row: return factored_product("s", range_shifts(c.n - 1, 0, 1));
    case Family::laplacian_sym:
    case Family::tree_sym: return factored_product("2s", range_shifts(c.n - 1, 0, 1));
    case Family::product_param: return factored_product("s", range_shifts(kk(c.m), 0, 1));
    case Family::border_param: return factored_product("s", range_shifts(c.m, 0, 1));
  }
  return "1";
}

VerificationReport verify_identity(const IdentityCase& c) {
  auto t0 = std::chrono::steady_clock::now();
  if (auto err = validate_case(c)) throw std::invalid_argument("verify_identity: " + *err);

  VerificationReport rep;
  rep.kase = c;
  CasePieces pc = build_pieces(c);
  rep.expected_b = pc.bpoly;

  if (pc.P->is_zero() || pc.cofactor.is_zero()) {
    rep.vacuous = true;
    rep.holds = true;
    rep.lhs_text = rep.rhs_text = "0";
    rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return rep;
  }

  PowerElement target = PowerElement::power_of_base(pc.P);
  PowerElement lhs = apply_lhs(pc, target);
  PowerElement rhs(pc.bpoly * pc.cofactor, pc.P, -1);

  rep.holds = pe_normalize_eq(lhs, rhs) && pc.product_alt_ok;
  rep.lhs_text = lhs.str();
  rep.rhs_text = rhs.str();

  // b(s) extraction: divide the canonical numerator by the non-b factors.
  PowerElement nonb(pc.cofactor, pc.P, -1);
  if (!lhs.is_zero() && lhs.offset() == nonb.offset()) {
    if (auto q = lhs.numerator().div_exact(nonb.numerator())) rep.computed_b = std::move(*q);
  } else if (lhs.is_zero() && pc.bpoly.is_zero()) {
    rep.computed_b = Poly::zero();
  }
  if (rep.holds && (!rep.computed_b || !(*rep.computed_b == rep.expected_b))) rep.holds = false;

  rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
  return rep;
}

namespace {

// (prod etabar eta)_{I^c,J^c} over pair indices offset by `first`.
GElement minor_monomial_pairs(const std::shared_ptr<const GContext>& ctx, unsigned first,
                              const IndexSet& Ic, const IndexSet& Jc) {
  GElement acc = GElement::scalar(ctx, Poly::one());
  for (std::size_t p = 0; p < Ic.size(); ++p) {
    acc = acc * GElement::generator(ctx, ctx->psibar(first + Ic[p] - 1));
    acc = acc * GElement::generator(ctx, ctx->psi(first + Jc[p] - 1));
  }
  return acc;
}

}  // namespace

bool grassmann_path_check(const IdentityCase& c, unsigned s0) {
  if (s0 < 1) throw std::invalid_argument("grassmann_path_check: s0 must be a positive integer");
  if (auto err = validate_case(c)) throw std::invalid_argument("grassmann_path_check: " + *err);
  CasePieces pc = build_pieces(c);
  if (pc.P->is_zero()) return true;  // vacuous

  // Weyl route, specialized at s = s0.
  PowerElement target = PowerElement::power_of_base(pc.P);
  PowerElement lhs = apply_lhs(pc, target);
  Poly weyl = lhs.specialize(static_cast<long>(s0));

  Poly grass;
  switch (c.family) {
    case Family::ordinary: {
      auto ctx = GContext::paired(c.n, "eta");
      std::map<VarId, GElement> bind;
      for (unsigned i = 1; i <= c.n; ++i)
        for (unsigned j = 1; j <= c.n; ++j)
          bind.emplace(VarId::x(i, j),
                       GElement::scalar(ctx, Poly::var(VarId::x(i, j))) +
                           GElement::generator(ctx, ctx->psibar(i - 1)) *
                               GElement::generator(ctx, ctx->psi(j - 1)));
      GElement Ptrans = g_subst_poly(ctx, *pc.P, bind).pow(s0);
      GElement mono =
          minor_monomial_pairs(ctx, 0, complement(c.I, c.n), complement(c.J, c.n));
      GElement full = (mono * Ptrans).berezin(measure_pairs(*ctx, 0, c.n));
      grass = eps_sign(c.I, c.J) * scalar_part(full);
      break;
    }
    case Family::symmetric: {
      auto ctx = GContext::paired(c.n, "eta");
      std::map<VarId, GElement> bind;
      for (unsigned i = 1; i <= c.n; ++i)
        for (unsigned j = i; j <= c.n; ++j) {
          GElement soul =
              GElement::generator(ctx, ctx->psibar(i - 1)) *
                  GElement::generator(ctx, ctx->psi(j - 1)) -
              GElement::generator(ctx, ctx->psi(i - 1)) *
                  GElement::generator(ctx, ctx->psibar(j - 1));
          bind.emplace(VarId::x(i, j), GElement::scalar(ctx, Poly::var(VarId::x(i, j))) +
                                           soul.scale(Poly::constant(Rational(1, 2))));
        }
      GElement Ptrans = g_subst_poly(ctx, *pc.P, bind).pow(s0);
      GElement mono =
          minor_monomial_pairs(ctx, 0, complement(c.I, c.n), complement(c.J, c.n));
      GElement full = (mono * Ptrans).berezin(measure_pairs(*ctx, 0, c.n));
      grass = eps_sign(c.I, c.J) * scalar_part(full);
      break;
    }
    case Family::antisym_pf: {
      unsigned two_m = 2 * c.m;
      auto ctx = GContext::unpaired(two_m, "theta");
      std::map<VarId, GElement> bind;
      for (unsigned i = 1; i <= two_m; ++i)
        for (unsigned j = i + 1; j <= two_m; ++j)
          bind.emplace(VarId::x(i, j),
                       GElement::scalar(ctx, Poly::var(VarId::x(i, j))) +
                           GElement::generator(ctx, i - 1) * GElement::generator(ctx, j - 1));
      GElement Ptrans = g_subst_poly(ctx, *pc.P, bind).pow(s0);
      GElement mono = GElement::scalar(ctx, Poly::one());
      for (unsigned i : complement(c.I, two_m)) mono = mono * GElement::generator(ctx, i - 1);
      GElement full = (mono * Ptrans).berezin(measure_all_reversed(two_m));
      grass = eps_sign(c.I) * scalar_part(full);
      break;
    }
    case Family::product_param: {
      // m psi-pairs then n eta-pairs.
      auto ctx = GContext::paired(c.m + c.n, "g");
      std::map<VarId, GElement> bind;
      for (unsigned i = 1; i <= c.m; ++i)
        for (unsigned j = 1; j <= c.n; ++j)
          bind.emplace(VarId::x(i, j),
                       GElement::scalar(ctx, Poly::var(VarId::x(i, j))) +
                           GElement::generator(ctx, ctx->psibar(i - 1)) *
                               GElement::generator(ctx, ctx->psi(c.m + j - 1)));
      GElement Ptrans = g_subst_poly(ctx, *pc.P, bind).pow(s0);
      // exp(etabar^T eta - etabar^T B psi)
      GElement q = GElement::zero(ctx);
      for (unsigned i = 1; i <= c.n; ++i) {
        q = q + GElement::generator(ctx, ctx->psibar(c.m + i - 1)) *
                    GElement::generator(ctx, ctx->psi(c.m + i - 1));
        for (unsigned j = 1; j <= c.m; ++j)
          q = q - (GElement::generator(ctx, ctx->psibar(c.m + i - 1)) *
                   GElement::generator(ctx, ctx->psi(j - 1)))
                      .scale(Poly::constant(c.B.at(i - 1, j - 1)));
      }
      GElement mono =
          minor_monomial_pairs(ctx, 0, complement(c.I, c.m), complement(c.J, c.m));
      GElement full =
          (mono * q.exp_even() * Ptrans).berezin(measure_pairs(*ctx, 0, c.m + c.n));
      grass = eps_sign(c.I, c.J) * scalar_part(full);
      break;
    }
    case Family::border_param: {
      // m psi-pairs then (n-m) eta-pairs; v = (psi; eta) has length n.
      unsigned r = c.n - c.m;
      auto ctx = GContext::paired(c.m + r, "g");
      auto v_gen = [&](unsigned j) {  // 1-based component of (psi; eta)
        return GElement::generator(ctx, ctx->psi(j - 1));
      };
      std::map<VarId, GElement> bind;
      for (unsigned i = 1; i <= c.m; ++i)
        for (unsigned j = 1; j <= c.n; ++j)
          bind.emplace(VarId::x(i, j),
                       GElement::scalar(ctx, Poly::var(VarId::x(i, j))) +
                           GElement::generator(ctx, ctx->psibar(i - 1)) * v_gen(j));
      GElement Ptrans = g_subst_poly(ctx, *pc.P, bind).pow(s0);
      // exp(etabar^T B v)
      GElement q = GElement::zero(ctx);
      for (unsigned i = 1; i <= r; ++i)
        for (unsigned j = 1; j <= c.n; ++j)
          q = q + (GElement::generator(ctx, ctx->psibar(c.m + i - 1)) * v_gen(j))
                      .scale(Poly::constant(c.B.at(i - 1, j - 1)));
      GElement full = (q.exp_even() * Ptrans).berezin(measure_pairs(*ctx, 0, c.m + r));
      grass = scalar_part(full);
      break;
    }
    default:
      throw std::invalid_argument("grassmann_path_check: unsupported family");
  }
  return grass == weyl;
}

}  // namespace cayley
