#include "cayley/powers.hpp"

#include <sstream>
#include <stdexcept>

namespace cayley {

PowerElement::PowerElement(Poly numerator, std::shared_ptr<const Poly> base, int offset)
    : num_(std::move(numerator)), base_(std::move(base)), off_(offset) {
  if (!base_ || base_->is_zero())
    throw std::invalid_argument("PowerElement: base must be a nonzero polynomial");
  canonicalize();
}

void PowerElement::canonicalize() {
  if (num_.is_zero()) {
    off_ = 0;
    return;
  }
  // A constant base would let the offset run away; treat P as a unit.
  if (base_->is_constant()) return;
  while (true) {
    auto q = num_.div_exact(*base_);
    if (!q) break;
    num_ = std::move(*q);
    ++off_;
    if (num_.is_zero()) {  // unreachable for nonzero input, kept as a guard
      off_ = 0;
      break;
    }
  }
}

PowerElement PowerElement::diff(VarId v) const {
  if (v == VarId::s())
    throw std::invalid_argument("PowerElement::diff: differentiation in s is undefined");
  Poly sa = poly_s() + Poly::constant(off_);
  Poly f = num_.diff(v) * *base_ + sa * num_ * base_->diff(v);
  return PowerElement(std::move(f), base_, off_ - 1);
}

void PowerElement::align(PowerElement& a, PowerElement& b) {
  if (a.base_ != b.base_ && !(*a.base_ == *b.base_))
    throw std::invalid_argument("PowerElement: mismatched bases");
  while (a.off_ > b.off_) {
    a.num_ = a.num_ * *a.base_;
    --a.off_;
  }
  while (b.off_ > a.off_) {
    b.num_ = b.num_ * *b.base_;
    --b.off_;
  }
}

PowerElement PowerElement::operator+(const PowerElement& o) const {
  PowerElement a = *this, b = o;
  if (a.is_zero()) a.off_ = b.off_;
  if (b.is_zero()) b.off_ = a.off_;
  align(a, b);
  return PowerElement(a.num_ + b.num_, base_, a.off_);
}

PowerElement PowerElement::operator-(const PowerElement& o) const {
  return *this + o.scale(Rational(-1));
}

PowerElement PowerElement::mul_poly(const Poly& q) const {
  return PowerElement(num_ * q, base_, off_);
}

PowerElement PowerElement::scale(const Rational& c) const {
  return PowerElement(num_.scale(c), base_, off_);
}

bool operator==(const PowerElement& a, const PowerElement& b) {
  if (a.base_ != b.base_ && !(*a.base_ == *b.base_))
    throw std::invalid_argument("PowerElement: mismatched bases");
  if (a.is_zero() || b.is_zero()) return a.num_ == b.num_;
  return a.off_ == b.off_ && a.num_ == b.num_;
}

Poly PowerElement::specialize(long s0) const {
  if (is_zero()) return Poly::zero();
  std::map<VarId, Poly> bind;
  bind.emplace(VarId::s(), Poly::constant(Rational(s0)));
  Poly f = num_.subst(bind);
  if (f.is_zero()) return Poly::zero();
  long e = s0 + off_;
  if (e < 0) throw std::invalid_argument("PowerElement::specialize: negative exponent");
  return f * base_->pow(static_cast<std::uint32_t>(e));
}

std::string PowerElement::str() const {
  std::ostringstream os;
  os << '(' << num_.str() << ") * P^(s";
  if (off_ > 0) os << '+' << off_;
  if (off_ < 0) os << off_;
  os << ')';
  return os.str();
}

}  // namespace cayley
