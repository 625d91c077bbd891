#pragma once

#include "cayley/rational.hpp"
#include "cayley/var.hpp"

#include <boost/container/small_vector.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cayley {

// Power product of variables.  Entries sorted by VarId, no zero exponents;
// the empty product is the constant monomial 1.
class Monomial {
 public:
  using Entry = std::pair<VarId, std::uint32_t>;
  using Storage = boost::container::small_vector<Entry, 4>;

  Monomial() = default;

  static Monomial one() { return Monomial(); }
  static Monomial var(VarId v, std::uint32_t e = 1);

  bool is_one() const { return pw_.empty(); }
  std::uint64_t degree() const { return deg_; }
  std::uint32_t exponent(VarId v) const;
  const Storage& entries() const { return pw_; }

  Monomial mul(const Monomial& o) const;
  // Componentwise quotient; nullopt when some exponent would go negative.
  std::optional<Monomial> div(const Monomial& o) const;
  bool divides(const Monomial& into) const;

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.deg_ == b.deg_ && a.pw_ == b.pw_;
  }

  std::string str() const;

  // Pushes (v, e); v must be strictly greater than everything pushed so far.
  void push_sorted(VarId v, std::uint32_t e);

 private:
  Storage pw_;
  std::uint64_t deg_ = 0;  // cached sum of exponents
};

// Graded reverse-lexicographic order over the VarId total order
// (smaller VarId = more significant variable).  Returns true when a < b.
bool grevlex_less(const Monomial& a, const Monomial& b);

struct MonomialGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return grevlex_less(b, a); }
};

// Sparse multivariate polynomial over Rational.  Terms kept sorted with the
// leading monomial first; zero coefficients never stored.
class Poly {
 public:
  using Term = std::pair<Monomial, Rational>;

  Poly() = default;

  static Poly zero() { return Poly(); }
  static Poly one() { return constant(1); }
  static Poly constant(Rational c);
  static Poly var(VarId v);
  static Poly term(Monomial m, Rational c);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::size_t nterms() const { return terms_.size(); }
  std::uint64_t total_degree() const;
  const std::vector<Term>& terms() const { return terms_; }
  const Term& leading() const { return terms_.front(); }

  // When the polynomial is a constant, returns it (zero for the empty poly).
  std::optional<Rational> as_constant() const;

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly scale(const Rational& c) const;
  Poly pow(std::uint32_t k) const;

  Poly diff(VarId v) const;
  Poly subst(const std::map<VarId, Poly>& bindings) const;
  Rational eval(const std::map<VarId, Rational>& point) const;

  // Exact quotient decided by leading-term elimination; nullopt when the
  // divisor does not divide exactly.  Dividing by zero is a usage error.
  std::optional<Poly> div_exact(const Poly& q) const;

  bool depends_on(VarId v) const;
  std::vector<VarId> variables() const;

  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  std::string str() const;

  // Builds from arbitrary (monomial, coeff) pairs; sorts and merges.
  static Poly from_terms(std::vector<Term> ts);

 private:
  std::vector<Term> terms_;
};

inline Poly operator*(const Rational& c, const Poly& p) { return p.scale(c); }
inline Poly operator*(const Poly& p, const Rational& c) { return p.scale(c); }

// Convenience: x[i][j], s, binomial in a polynomial upper argument.
Poly poly_s();
// (r choose k) = r(r-1)...(r-k+1)/k! for a polynomial argument r.
Poly binom_poly(const Poly& r, std::uint32_t k);
// Falling-product b(s) builders live with their users in cayley.hpp.

}  // namespace cayley
