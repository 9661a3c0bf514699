#pragma once

#include <optional>
#include <string>

#include "qdyn/integer.hpp"

namespace qdyn {

// Rational number in lowest terms: gcd(num,den)=1, den >= 1, zero is 0/1.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long v) : num_(v), den_(1) {}
  Rational(Integer v) : num_(std::move(v)), den_(1) {}
  Rational(Integer num, Integer den);
  Rational(long num, long den) : Rational(Integer(num), Integer(den)) {}

  // Canonical reduction; den == 0 is a domain error.
  static Rational reduce(Integer num, Integer den) {
    return Rational(std::move(num), std::move(den));
  }

  // "a/b" or "a"
  static Rational parse(const std::string& s);

  const Integer& num() const { return num_; }
  const Integer& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_integer() const { return den_.is_one(); }
  int sign() const { return num_.sign(); }

  Rational abs() const;
  Rational inverse() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a);

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator==(const Rational& a, long b) {
    return a.den_.is_one() && a.num_ == b;
  }
  friend auto operator<=>(const Rational& a, const Rational& b) {
    return (a.num_ * b.den_) <=> (b.num_ * a.den_);
  }

  double to_double() const;
  // log max(|num|, den)
  double height() const;
  std::string to_string() const;

 private:
  Integer num_, den_;
};

std::ostream& operator<<(std::ostream& os, const Rational& v);

// p-adic valuation of a nonzero integer.
long int_valuation(const Integer& n, const Integer& p);

// v_p(x); nullopt encodes +infinity (x = 0). p must be prime.
std::optional<long> valuation(const Rational& x, const Integer& p);

// Point of P^1(Q) as a coprime pair (a:b) with b >= 0 and infinity = (1:0).
class P1Point {
 public:
  P1Point() : a_(0), b_(1) {}
  P1Point(Integer a, Integer b);
  P1Point(const Rational& x) : a_(x.num()), b_(x.den()) {}
  static P1Point infinity() { return P1Point(Integer(1), Integer(0)); }

  const Integer& a() const { return a_; }
  const Integer& b() const { return b_; }
  bool is_infinity() const { return b_.is_zero(); }
  Rational as_rational() const;  // throws on infinity

  friend bool operator==(const P1Point& p, const P1Point& q) {
    return p.a_ == q.a_ && p.b_ == q.b_;
  }

  // log max(|a|, b)
  double height() const;
  std::string to_string() const;
  static P1Point parse(const std::string& s);  // "inf" | "a/b" | "a"

 private:
  Integer a_, b_;
};

std::ostream& operator<<(std::ostream& os, const P1Point& p);

inline double weil_height(const P1Point& p) { return p.height(); }
inline double weil_height(const Rational& x) { return x.height(); }

}  // namespace qdyn
