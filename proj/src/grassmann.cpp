#include "cayley/grassmann.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace cayley {

std::shared_ptr<const GContext> GContext::unpaired(unsigned n, const std::string& prefix) {
  auto ctx = std::make_shared<GContext>();
  if (n > 62) throw std::invalid_argument("GContext: at most 62 generators");
  ctx->n = n;
  for (unsigned i = 0; i < n; ++i) ctx->names.push_back(prefix + std::to_string(i + 1));
  return ctx;
}

std::shared_ptr<const GContext> GContext::paired(unsigned m, const std::string& prefix) {
  auto ctx = std::make_shared<GContext>();
  if (2 * m > 62) throw std::invalid_argument("GContext: at most 62 generators");
  ctx->n = 2 * m;
  std::vector<unsigned> partner(2 * m);
  for (unsigned i = 0; i < m; ++i) {
    ctx->names.push_back(prefix + std::to_string(i + 1));
    ctx->names.push_back(prefix + "b" + std::to_string(i + 1));
    partner[2 * i] = 2 * i + 1;
    partner[2 * i + 1] = 2 * i;
  }
  ctx->pairing = std::move(partner);
  return ctx;
}

std::shared_ptr<const GContext> GContext::named(std::vector<std::string> names,
                                                std::optional<std::vector<unsigned>> pairing) {
  auto ctx = std::make_shared<GContext>();
  if (names.size() > 62) throw std::invalid_argument("GContext: at most 62 generators");
  ctx->n = static_cast<unsigned>(names.size());
  ctx->names = std::move(names);
  if (pairing) {
    if (pairing->size() != ctx->n) throw std::invalid_argument("GContext: bad pairing");
    ctx->pairing = std::move(pairing);
  }
  return ctx;
}

int merge_sign(std::uint64_t I, std::uint64_t J) {
  // (-1)^{#{(i,j) in I x J : i > j}}, the crossings when sorting I then J.
  int crossings = 0;
  std::uint64_t j = J;
  while (j) {
    unsigned b = static_cast<unsigned>(std::countr_zero(j));
    j &= j - 1;
    crossings += std::popcount(I >> (b + 1));
  }
  return (crossings % 2 == 0) ? 1 : -1;
}

GElement GElement::zero(std::shared_ptr<const GContext> ctx) {
  GElement g;
  g.ctx_ = std::move(ctx);
  return g;
}

GElement GElement::scalar(std::shared_ptr<const GContext> ctx, Poly body) {
  GElement g;
  g.ctx_ = std::move(ctx);
  if (!body.is_zero()) g.c_.emplace(0, std::move(body));
  return g;
}

GElement GElement::generator(std::shared_ptr<const GContext> ctx, unsigned i) {
  if (i >= ctx->n) throw std::invalid_argument("GElement::generator: index out of range");
  GElement g;
  g.ctx_ = std::move(ctx);
  g.c_.emplace(std::uint64_t{1} << i, Poly::one());
  return g;
}

GElement GElement::monomial(std::shared_ptr<const GContext> ctx, std::uint64_t mask, Poly coeff) {
  if (ctx->n < 64 && (mask >> ctx->n) != 0)
    throw std::invalid_argument("GElement::monomial: mask out of range");
  GElement g;
  g.ctx_ = std::move(ctx);
  if (!coeff.is_zero()) g.c_.emplace(mask, std::move(coeff));
  return g;
}

void GElement::prune() {
  for (auto it = c_.begin(); it != c_.end();)
    it = it->second.is_zero() ? c_.erase(it) : std::next(it);
}

bool GElement::is_even() const {
  for (const auto& [m, p] : c_)
    if (std::popcount(m) % 2 != 0) return false;
  return true;
}

bool GElement::is_odd() const {
  for (const auto& [m, p] : c_)
    if (std::popcount(m) % 2 == 0) return false;
  return true;
}

Poly GElement::body() const { return coeff(0); }

Poly GElement::coeff(std::uint64_t mask) const {
  auto it = c_.find(mask);
  return it == c_.end() ? Poly::zero() : it->second;
}

const GElement& GElement::pick_ctx(const GElement& a, const GElement& b) {
  if (a.ctx_ && b.ctx_ && a.ctx_ != b.ctx_)
    throw std::invalid_argument("GElement: context mismatch");
  return a.ctx_ ? a : b;
}

GElement GElement::operator+(const GElement& o) const {
  GElement r;
  r.ctx_ = pick_ctx(*this, o).ctx_;
  r.c_ = c_;
  for (const auto& [m, p] : o.c_) {
    auto [it, inserted] = r.c_.emplace(m, p);
    if (!inserted) it->second += p;
  }
  r.prune();
  return r;
}

GElement GElement::operator-(const GElement& o) const { return *this + o.scale(Poly::constant(-1)); }

GElement GElement::operator*(const GElement& o) const {
  GElement r;
  r.ctx_ = pick_ctx(*this, o).ctx_;
  for (const auto& [ma, pa] : c_) {
    for (const auto& [mb, pb] : o.c_) {
      if (ma & mb) continue;
      Poly prod = pa * pb;
      if (merge_sign(ma, mb) < 0) prod = -prod;
      auto [it, inserted] = r.c_.emplace(ma | mb, prod);
      if (!inserted) it->second += prod;
    }
  }
  r.prune();
  return r;
}

GElement GElement::scale(const Poly& p) const {
  GElement r;
  r.ctx_ = ctx_;
  if (p.is_zero()) return r;
  for (const auto& [m, c] : c_) r.c_.emplace(m, c * p);
  r.prune();
  return r;
}

GElement GElement::pow(std::uint32_t k) const {
  GElement acc = GElement::scalar(ctx_, Poly::one());
  for (std::uint32_t i = 0; i < k; ++i) {
    acc = acc * *this;
    if (acc.is_zero()) break;
  }
  return acc;
}

bool operator==(const GElement& a, const GElement& b) {
  if (a.ctx_ && b.ctx_ && a.ctx_ != b.ctx_) return false;
  return a.c_ == b.c_;
}

GElement GElement::berezin(const std::vector<unsigned>& order) const {
  GElement r = *this;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    unsigned i = *it;
    if (!ctx_ || i >= ctx_->n) throw std::invalid_argument("berezin: index out of range");
    std::map<std::uint64_t, Poly> out;
    const std::uint64_t bit = std::uint64_t{1} << i;
    for (const auto& [m, p] : r.c_) {
      if (!(m & bit)) continue;
      int sg = (std::popcount(m & (bit - 1)) % 2 == 0) ? 1 : -1;
      out.emplace(m & ~bit, sg > 0 ? p : -p);
    }
    r.c_ = std::move(out);
  }
  return r;
}

GElement GElement::exp_even() const {
  if (c_.count(0)) throw std::invalid_argument("exp_even: element has nonzero body");
  if (!is_even()) throw std::invalid_argument("exp_even: element not even");
  GElement acc = GElement::scalar(ctx_, Poly::one());
  GElement pw = acc;
  Rational fact = 1;
  for (std::uint32_t k = 1; k <= (ctx_ ? ctx_->n / 2 + 1 : 0); ++k) {
    pw = pw * *this;
    if (pw.is_zero()) break;
    fact *= Rational(k);
    acc = acc + pw.scale(Poly::constant(Rational(1) / fact));
  }
  return acc;
}

GElement GElement::series(const std::vector<Poly>& series_coeffs) const {
  if (c_.count(0)) throw std::invalid_argument("series: element has nonzero body");
  if (!is_even()) throw std::invalid_argument("series: element not even");
  GElement acc = GElement::zero(ctx_);
  GElement pw = GElement::scalar(ctx_, Poly::one());
  for (std::size_t k = 0; k < series_coeffs.size(); ++k) {
    if (k > 0) {
      pw = pw * *this;
      if (pw.is_zero()) break;
    }
    acc = acc + pw.scale(series_coeffs[k]);
  }
  return acc;
}

GElement GElement::linear_change(const RMatrix<Poly>& A) const {
  if (!ctx_ || A.rows() != ctx_->n || A.cols() != ctx_->n)
    throw std::invalid_argument("linear_change: matrix must be n x n");
  std::vector<GElement> forms;
  forms.reserve(ctx_->n);
  for (unsigned i = 0; i < ctx_->n; ++i) {
    GElement f = GElement::zero(ctx_);
    for (unsigned j = 0; j < ctx_->n; ++j)
      f = f + GElement::generator(ctx_, j).scale(A.at(i, j));
    forms.push_back(std::move(f));
  }
  GElement r = GElement::zero(ctx_);
  for (const auto& [m, p] : c_) {
    GElement piece = GElement::scalar(ctx_, p);
    for (unsigned i = 0; i < ctx_->n; ++i)
      if (m & (std::uint64_t{1} << i)) piece = piece * forms[i];
    r = r + piece;
  }
  return r;
}

std::string GElement::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, p] : c_) {
    if (!first) os << " + ";
    first = false;
    os << '(' << p.str() << ')';
    for (unsigned i = 0; ctx_ && i < ctx_->n; ++i)
      if (m & (std::uint64_t{1} << i)) os << '*' << ctx_->names[i];
  }
  return os.str();
}

std::vector<unsigned> measure_all_reversed(unsigned n) {
  std::vector<unsigned> order(n);
  for (unsigned i = 0; i < n; ++i) order[i] = n - 1 - i;
  return order;
}

std::vector<unsigned> measure_pairs(const GContext& ctx, unsigned first_pair, unsigned m) {
  std::vector<unsigned> order;
  order.reserve(2 * m);
  for (unsigned i = 0; i < m; ++i) {
    order.push_back(ctx.psi(first_pair + i));
    order.push_back(ctx.psibar(first_pair + i));
  }
  return order;
}

Poly scalar_part(const GElement& g) {
  for (const auto& [m, p] : g.coeffs())
    if (m != 0) throw std::logic_error("scalar_part: element not fully integrated");
  return g.body();
}

GElement g_subst_poly(std::shared_ptr<const GContext> ctx, const Poly& p,
                      const std::map<VarId, GElement>& bindings) {
  for (const auto& [v, g] : bindings)
    if (!g.is_even()) throw std::invalid_argument("g_subst_poly: binding for " + v.str() +
                                                  " is not Grassmann-even");
  std::map<VarId, std::vector<GElement>> cache;
  auto power_of = [&](VarId v, std::uint32_t e) -> const GElement& {
    auto& powers = cache[v];
    if (powers.empty()) powers.push_back(GElement::scalar(ctx, Poly::one()));
    while (powers.size() <= e) powers.push_back(powers.back() * bindings.at(v));
    return powers[e];
  };
  GElement out = GElement::zero(ctx);
  for (const auto& [m, c] : p.terms()) {
    GElement piece = GElement::scalar(ctx, Poly::constant(c));
    Monomial untouched;
    for (const auto& [v, e] : m.entries()) {
      if (bindings.count(v)) {
        piece = piece * power_of(v, e);
      } else {
        untouched.push_sorted(v, e);
      }
    }
    if (!untouched.is_one()) piece = piece.scale(Poly::term(untouched, 1));
    out = out + piece;
  }
  return out;
}

GElement quad_form_real(std::shared_ptr<const GContext> ctx, const RMatrix<Poly>& A,
                        const std::vector<unsigned>& gens) {
  if (A.rows() != A.cols() || A.rows() != gens.size())
    throw std::invalid_argument("quad_form_real: shape mismatch");
  if (!is_antisymmetric(A, Poly::zero()))
    throw std::invalid_argument("quad_form_real: matrix not antisymmetric");
  GElement q = GElement::zero(ctx);
  for (unsigned i = 0; i < A.rows(); ++i)
    for (unsigned j = i + 1; j < A.cols(); ++j) {
      if (A.at(i, j).is_zero()) continue;
      GElement mono = GElement::generator(ctx, gens[i]) * GElement::generator(ctx, gens[j]);
      q = q + mono.scale(A.at(i, j));
    }
  return q;
}

GElement quad_form_complex(std::shared_ptr<const GContext> ctx, const RMatrix<Poly>& A,
                           unsigned first_pair) {
  if (!ctx->pairing)
    throw std::invalid_argument("quad_form_complex: context is not paired");
  GElement q = GElement::zero(ctx);
  for (unsigned i = 0; i < A.rows(); ++i)
    for (unsigned j = 0; j < A.cols(); ++j) {
      if (A.at(i, j).is_zero()) continue;
      GElement mono = GElement::generator(ctx, ctx->psibar(first_pair + i)) *
                      GElement::generator(ctx, ctx->psi(first_pair + j));
      q = q + mono.scale(A.at(i, j));
    }
  return q;
}

Poly gaussian_real(const RMatrix<Poly>& A) {
  unsigned n = A.rows();
  auto ctx = GContext::unpaired(n);
  std::vector<unsigned> gens(n);
  for (unsigned i = 0; i < n; ++i) gens[i] = i;
  GElement integrand = quad_form_real(ctx, A, gens).exp_even();
  return scalar_part(integrand.berezin(measure_all_reversed(n)));
}

Poly gaussian_complex(const RMatrix<Poly>& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("gaussian_complex: matrix not square");
  unsigned m = A.rows();
  auto ctx = GContext::paired(m);
  GElement integrand = quad_form_complex(ctx, A, 0).exp_even();
  return scalar_part(integrand.berezin(measure_pairs(*ctx, 0, m)));
}

}  // namespace cayley
