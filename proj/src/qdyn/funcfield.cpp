#include "qdyn/funcfield.hpp"

#include <ostream>
#include <stdexcept>

namespace qdyn {

FuncField::FuncField(IntPoly num, IntPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("function field element with zero denominator");
  reduce();
}

void FuncField::reduce() {
  if (num_.is_zero()) {
    den_ = IntPoly({1});
    return;
  }
  IntPoly g = IntPoly::gcd(num_, den_);
  if (g.degree() > 0 || !g.lead().is_one()) {
    // gcd carries the common content too
    num_ = IntPoly::divexact(num_, g);
    den_ = IntPoly::divexact(den_, g);
  }
  Integer cn = num_.content(), cd = den_.content();
  Integer c = Integer::gcd(cn, cd);
  if (!c.is_one()) {
    num_ = num_.divexact_scalar(c);
    den_ = den_.divexact_scalar(c);
  }
  if (den_.lead().sign() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

FuncField operator/(const FuncField& a, const FuncField& b) {
  if (b.is_zero()) throw std::domain_error("division by zero in Q(t)");
  return FuncField(a.num_ * b.den_, a.den_ * b.num_);
}

std::optional<Rational> FuncField::eval(const Rational& t) const {
  Rational d = den_.eval(t);
  if (d.is_zero()) return std::nullopt;
  return num_.eval(t) / d;
}

std::string FuncField::to_string() const {
  if (den_ == IntPoly({1})) return num_.to_string("t");
  return "(" + num_.to_string("t") + ")/(" + den_.to_string("t") + ")";
}

std::ostream& operator<<(std::ostream& os, const FuncField& v) {
  return os << v.to_string();
}

}  // namespace qdyn
