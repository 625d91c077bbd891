#include "cayley/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace cayley {

std::string rat_str(const Rational& r) {
  std::ostringstream os;
  os << rat_num(r);
  if (rat_den(r) != 1) os << '/' << rat_den(r);
  return os.str();
}

std::optional<Rational> rat_parse(const std::string& s) {
  if (s.empty()) return std::nullopt;
  auto digits = [](const std::string& t, std::size_t from, std::size_t to) {
    if (from >= to) return false;
    for (std::size_t k = from; k < to; ++k)
      if (!std::isdigit(static_cast<unsigned char>(t[k]))) return false;
    return true;
  };
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  std::size_t slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      if (!digits(s, start, s.size())) return std::nullopt;
      return Rational(Int(s));
    }
    if (!digits(s, start, slash) || !digits(s, slash + 1, s.size())) return std::nullopt;
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) return std::nullopt;
    return make_rational(num, den);
  } catch (...) {
    return std::nullopt;
  }
}

std::string VarId::str() const {
  std::ostringstream os;
  switch (kind()) {
    case VarKind::X: os << "x[" << i() << "][" << j() << "]"; break;
    case VarKind::Y: os << "y[" << i() << "][" << j() << "]"; break;
    case VarKind::S: os << "s"; break;
    case VarKind::T: os << "t[" << i() << "]"; break;
    case VarKind::Alpha: os << "alpha[" << i() << "]"; break;
    case VarKind::Param: os << name() << "[" << i() << "][" << j() << "]"; break;
  }
  return os.str();
}

Monomial Monomial::var(VarId v, std::uint32_t e) {
  Monomial m;
  if (e > 0) {
    m.pw_.emplace_back(v, e);
    m.deg_ = e;
  }
  return m;
}

void Monomial::push_sorted(VarId v, std::uint32_t e) {
  if (e == 0) return;
  if (!pw_.empty() && !(pw_.back().first < v))
    throw std::logic_error("Monomial::push_sorted: out of order");
  pw_.emplace_back(v, e);
  deg_ += e;
}

std::uint32_t Monomial::exponent(VarId v) const {
  for (const auto& [w, e] : pw_)
    if (w == v) return e;
  return 0;
}

Monomial Monomial::mul(const Monomial& o) const {
  Monomial r;
  r.deg_ = deg_ + o.deg_;
  r.pw_.reserve(pw_.size() + o.pw_.size());
  std::size_t a = 0, b = 0;
  while (a < pw_.size() && b < o.pw_.size()) {
    if (pw_[a].first < o.pw_[b].first) {
      r.pw_.push_back(pw_[a++]);
    } else if (o.pw_[b].first < pw_[a].first) {
      r.pw_.push_back(o.pw_[b++]);
    } else {
      r.pw_.emplace_back(pw_[a].first, pw_[a].second + o.pw_[b].second);
      ++a, ++b;
    }
  }
  for (; a < pw_.size(); ++a) r.pw_.push_back(pw_[a]);
  for (; b < o.pw_.size(); ++b) r.pw_.push_back(o.pw_[b]);
  return r;
}

std::optional<Monomial> Monomial::div(const Monomial& o) const {
  if (o.deg_ > deg_) return std::nullopt;
  Monomial r;
  r.deg_ = deg_ - o.deg_;
  std::size_t a = 0, b = 0;
  while (b < o.pw_.size()) {
    if (a >= pw_.size()) return std::nullopt;
    if (pw_[a].first < o.pw_[b].first) {
      r.pw_.push_back(pw_[a++]);
    } else if (o.pw_[b].first < pw_[a].first) {
      return std::nullopt;
    } else {
      if (pw_[a].second < o.pw_[b].second) return std::nullopt;
      if (pw_[a].second > o.pw_[b].second)
        r.pw_.emplace_back(pw_[a].first, pw_[a].second - o.pw_[b].second);
      ++a, ++b;
    }
  }
  for (; a < pw_.size(); ++a) r.pw_.push_back(pw_[a]);
  return r;
}

bool Monomial::divides(const Monomial& into) const { return into.div(*this).has_value(); }

std::string Monomial::str() const {
  if (pw_.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& [v, e] : pw_) {
    if (!first) os << '*';
    first = false;
    os << v.str();
    if (e > 1) os << '^' << e;
  }
  return os.str();
}

bool grevlex_less(const Monomial& a, const Monomial& b) {
  std::uint64_t da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  // Scan exponents from the least significant (largest VarId) end; at the
  // first difference the monomial with the larger exponent there is smaller.
  const auto& pa = a.entries();
  const auto& pb = b.entries();
  auto ia = pa.rbegin();
  auto ib = pb.rbegin();
  while (ia != pa.rend() && ib != pb.rend()) {
    if (ia->first == ib->first) {
      if (ia->second != ib->second) return ia->second > ib->second;
      ++ia, ++ib;
    } else if (ib->first < ia->first) {
      return true;  // a has positive exponent at a larger VarId
    } else {
      return false;
    }
  }
  if (ia != pa.rend()) return true;
  if (ib != pb.rend()) return false;
  return false;
}

Poly Poly::constant(Rational c) {
  Poly p;
  if (c != 0) p.terms_.emplace_back(Monomial::one(), std::move(c));
  return p;
}

Poly Poly::var(VarId v) { return term(Monomial::var(v), 1); }

Poly Poly::term(Monomial m, Rational c) {
  Poly p;
  if (c != 0) p.terms_.emplace_back(std::move(m), std::move(c));
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one());
}

std::optional<Rational> Poly::as_constant() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() == 1 && terms_[0].first.is_one()) return terms_[0].second;
  return std::nullopt;
}

std::uint64_t Poly::total_degree() const {
  std::uint64_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

Poly Poly::from_terms(std::vector<Term> ts) {
  std::sort(ts.begin(), ts.end(),
            [](const Term& a, const Term& b) { return grevlex_less(b.first, a.first); });
  Poly p;
  p.terms_.reserve(ts.size());
  for (auto& t : ts) {
    if (!p.terms_.empty() && p.terms_.back().first == t.first) {
      p.terms_.back().second += t.second;
      if (p.terms_.back().second == 0) p.terms_.pop_back();
    } else if (t.second != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r;
  r.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t a = 0, b = 0;
  while (a < terms_.size() && b < o.terms_.size()) {
    if (terms_[a].first == o.terms_[b].first) {
      Rational c = terms_[a].second + o.terms_[b].second;
      if (c != 0) r.terms_.emplace_back(terms_[a].first, std::move(c));
      ++a, ++b;
    } else if (grevlex_less(o.terms_[b].first, terms_[a].first)) {
      r.terms_.push_back(terms_[a++]);
    } else {
      r.terms_.push_back(o.terms_[b++]);
    }
  }
  for (; a < terms_.size(); ++a) r.terms_.push_back(terms_[a]);
  for (; b < o.terms_.size(); ++b) r.terms_.push_back(o.terms_[b]);
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  if (terms_.empty() || o.terms_.empty()) return Poly();
  // Single-term fast path keeps the common coefficient/monomial scalings cheap.
  if (terms_.size() == 1) {
    Poly r;
    r.terms_.reserve(o.terms_.size());
    for (const auto& [m, c] : o.terms_)
      r.terms_.emplace_back(terms_[0].first.mul(m), terms_[0].second * c);
    return r;  // multiplying by a fixed monomial preserves the term order
  }
  if (o.terms_.size() == 1) return o * *this;
  // One sorted stream per term of the smaller factor, folded by merging;
  // merging combines equal monomials early, which matters when sums cancel.
  const Poly& small = terms_.size() <= o.terms_.size() ? *this : o;
  const Poly& big = terms_.size() <= o.terms_.size() ? o : *this;
  std::vector<Poly> streams;
  streams.reserve(small.terms_.size());
  for (const auto& [m, c] : small.terms_) {
    Poly s;
    s.terms_.reserve(big.terms_.size());
    for (const auto& [mb, cb] : big.terms_) s.terms_.emplace_back(m.mul(mb), c * cb);
    streams.push_back(std::move(s));
  }
  while (streams.size() > 1) {
    std::vector<Poly> next;
    next.reserve((streams.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < streams.size(); i += 2)
      next.push_back(streams[i] + streams[i + 1]);
    if (streams.size() % 2 == 1) next.push_back(std::move(streams.back()));
    streams = std::move(next);
  }
  return std::move(streams[0]);
}

Poly Poly::scale(const Rational& c) const {
  if (c == 0) return Poly();
  Poly r = *this;
  for (auto& [m, k] : r.terms_) k *= c;
  return r;
}

Poly Poly::pow(std::uint32_t k) const {
  Poly acc = Poly::one();
  Poly base = *this;
  while (k > 0) {
    if (k & 1u) acc = acc * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return acc;
}

Poly Poly::diff(VarId v) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [m, c] : terms_) {
    std::uint32_t e = m.exponent(v);
    if (e == 0) continue;
    Monomial q = *m.div(Monomial::var(v));
    out.emplace_back(std::move(q), c * e);
  }
  return from_terms(std::move(out));
}

Poly Poly::subst(const std::map<VarId, Poly>& bindings) const {
  // Per-variable power cache; exponents at desk scale are small.
  std::map<VarId, std::vector<Poly>> cache;
  auto power_of = [&](VarId v, std::uint32_t e) -> const Poly& {
    auto& powers = cache[v];
    if (powers.empty()) powers.push_back(Poly::one());
    while (powers.size() <= e) powers.push_back(powers.back() * bindings.at(v));
    return powers[e];
  };
  Poly result;
  for (const auto& [m, c] : terms_) {
    Poly piece = Poly::constant(c);
    Monomial untouched;
    for (const auto& [v, e] : m.entries()) {
      if (bindings.count(v)) {
        piece = piece * power_of(v, e);
      } else {
        untouched.push_sorted(v, e);
      }
    }
    if (!untouched.is_one()) piece = piece * Poly::term(untouched, 1);
    result += piece;
  }
  return result;
}

Rational Poly::eval(const std::map<VarId, Rational>& point) const {
  Rational total = 0;
  for (const auto& [m, c] : terms_) {
    Rational v = c;
    for (const auto& [var, e] : m.entries()) {
      auto it = point.find(var);
      if (it == point.end())
        throw std::invalid_argument("Poly::eval: unbound variable " + var.str());
      Rational p = 1;
      for (std::uint32_t k = 0; k < e; ++k) p *= it->second;
      v *= p;
    }
    total += v;
  }
  return total;
}

std::optional<Poly> Poly::div_exact(const Poly& q) const {
  if (q.is_zero()) throw std::invalid_argument("Poly::div_exact: division by zero polynomial");
  const auto& [lm, lc] = q.leading();
  std::map<Monomial, Rational, MonomialGreater> rem;
  for (const auto& [m, c] : terms_) rem.emplace(m, c);
  std::vector<Term> quot;
  while (!rem.empty()) {
    auto lead = rem.begin();
    auto mq = lead->first.div(lm);
    if (!mq) return std::nullopt;
    Rational cq = lead->second / lc;
    for (const auto& [m, c] : q.terms()) {
      Monomial prod = mq->mul(m);
      auto [it, inserted] = rem.emplace(prod, -(cq * c));
      if (!inserted) {
        it->second -= cq * c;
        if (it->second == 0) rem.erase(it);
      }
    }
    quot.emplace_back(std::move(*mq), std::move(cq));
  }
  return from_terms(std::move(quot));
}

bool Poly::depends_on(VarId v) const {
  for (const auto& [m, c] : terms_)
    if (m.exponent(v) > 0) return true;
  return false;
}

std::vector<VarId> Poly::variables() const {
  std::vector<VarId> vs;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m.entries()) vs.push_back(v);
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational a = c;
    if (first) {
      if (a < 0) {
        os << '-';
        a = -a;
      }
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    if (m.is_one()) {
      os << rat_str(a);
    } else {
      if (a != 1) os << rat_str(a) << '*';
      os << m.str();
    }
  }
  return os.str();
}

Poly poly_s() { return Poly::var(VarId::s()); }

Poly binom_poly(const Poly& r, std::uint32_t k) {
  Poly acc = Poly::one();
  Rational fact = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    acc = acc * (r - Poly::constant(i));
    fact *= Rational(i + 1);
  }
  return acc.scale(Rational(1) / fact);
}

}  // namespace cayley
