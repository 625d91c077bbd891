#pragma once

#include "cayley/poly.hpp"

#include <memory>
#include <string>

namespace cayley {

// Element f * P^(s+a) of the module K[x,s,P^-1] P^s for a fixed nonzero
// base polynomial P.  Canonical form: P does not divide f unless f = 0.
// Elements that get combined must share the same base.
class PowerElement {
 public:
  PowerElement(Poly numerator, std::shared_ptr<const Poly> base, int offset);

  static PowerElement power_of_base(std::shared_ptr<const Poly> base, int offset = 0) {
    return PowerElement(Poly::one(), std::move(base), offset);
  }

  const Poly& numerator() const { return num_; }
  const Poly& base() const { return *base_; }
  const std::shared_ptr<const Poly>& base_ptr() const { return base_; }
  int offset() const { return off_; }
  bool is_zero() const { return num_.is_zero(); }

  // d/dv (f P^(s+a)) = [(df/dv) P + (s+a) f dP/dv] P^(s+a-1).
  PowerElement diff(VarId v) const;

  PowerElement operator+(const PowerElement& o) const;
  PowerElement operator-(const PowerElement& o) const;
  PowerElement mul_poly(const Poly& q) const;
  PowerElement scale(const Rational& c) const;

  // Structural equality of canonical forms (bases must match).
  friend bool operator==(const PowerElement& a, const PowerElement& b);

  // Expands to an ordinary polynomial at integer s = s0 (requires s0 + offset >= 0
  // after canonicalization, and a numerator free of further s-dependence is not
  // required: s is substituted first).
  Poly specialize(long s0) const;

  std::string str() const;

 private:
  void canonicalize();
  static void align(PowerElement& a, PowerElement& b);

  Poly num_;
  std::shared_ptr<const Poly> base_;
  int off_;
};

inline bool pe_normalize_eq(const PowerElement& a, const PowerElement& b) { return a == b; }

}  // namespace cayley
