#pragma once

#include <optional>

#include "qdyn/intpoly.hpp"

namespace qdyn {

// Element of Q(t) as a reduced fraction of integer polynomials: the primitive
// parts are coprime, the integer contents are coprime, and the denominator's
// leading coefficient is positive. Reduction happens after every operation to
// keep expression swell down.
class FuncField {
 public:
  FuncField() : num_(), den_({1}) {}
  FuncField(long v) : num_({v}), den_({1}) {}
  FuncField(const Integer& v) : num_(std::vector<Integer>{v}), den_({1}) {}
  explicit FuncField(IntPoly num) : num_(std::move(num)), den_({1}) {}
  FuncField(IntPoly num, IntPoly den);
  explicit FuncField(const Rational& q)
      : num_(std::vector<Integer>{q.num()}), den_(std::vector<Integer>{q.den()}) {}

  static FuncField t() { return FuncField(IntPoly({0, 1})); }

  const IntPoly& num() const { return num_; }
  const IntPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  friend FuncField operator+(const FuncField& a, const FuncField& b) {
    return FuncField(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend FuncField operator-(const FuncField& a, const FuncField& b) {
    return FuncField(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend FuncField operator*(const FuncField& a, const FuncField& b) {
    return FuncField(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend FuncField operator/(const FuncField& a, const FuncField& b);
  friend FuncField operator-(const FuncField& a) { return FuncField(-a.num_, a.den_, no_reduce_tag{}); }

  friend bool operator==(const FuncField& a, const FuncField& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  // evaluation at a rational t; nullopt if the denominator vanishes there
  std::optional<Rational> eval(const Rational& t) const;

  std::string to_string() const;

 private:
  struct no_reduce_tag {};
  FuncField(IntPoly num, IntPoly den, no_reduce_tag)
      : num_(std::move(num)), den_(std::move(den)) {}
  void reduce();
  IntPoly num_, den_;
};

std::ostream& operator<<(std::ostream& os, const FuncField& v);

}  // namespace qdyn
