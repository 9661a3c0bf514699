#include "qdyn/rational.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace qdyn {

Rational::Rational(Integer num, Integer den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("rational with zero denominator");
  if (num_.is_zero()) {
    den_ = Integer(1);
    return;
  }
  if (den_.sign() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  Integer g = Integer::gcd(num_, den_);
  if (!g.is_one()) {
    num_ = Integer::divexact(num_, g);
    den_ = Integer::divexact(den_, g);
  }
}

Rational Rational::parse(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(Integer(s));
  return Rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
}

Rational Rational::abs() const {
  Rational r = *this;
  r.num_ = r.num_.abs();
  return r;
}

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  return Rational(den_, num_);
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}
Rational operator-(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}
Rational operator*(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.num_, a.den_ * b.den_);
}
Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  return Rational(a.num_ * b.den_, a.den_ * b.num_);
}
Rational operator-(const Rational& a) {
  Rational r = a;
  r.num_ = -r.num_;
  return r;
}

double Rational::to_double() const {
  if (num_.is_zero()) return 0.0;
  long ea = 0, eb = 0;
  double ma = mpz_get_d_2exp(&ea, num_.raw());
  double mb = mpz_get_d_2exp(&eb, den_.raw());
  return (ma / mb) * std::ldexp(1.0, static_cast<int>(ea - eb));
}

double Rational::height() const {
  Integer m = num_.abs();
  const Integer& worst = (m > den_) ? m : den_;
  return worst.is_zero() ? 0.0 : worst.log_abs();
}

std::string Rational::to_string() const {
  if (den_.is_one()) return num_.to_string();
  return num_.to_string() + "/" + den_.to_string();
}

std::ostream& operator<<(std::ostream& os, const Rational& v) {
  return os << v.to_string();
}

long int_valuation(const Integer& n, const Integer& p) {
  if (n.is_zero()) throw std::domain_error("valuation of zero integer");
  Integer m = n;
  long v = 0;
  while (Integer::divisible(m, p)) {
    m = Integer::divexact(m, p);
    ++v;
  }
  return v;
}

std::optional<long> valuation(const Rational& x, const Integer& p) {
  if (!is_prime(p)) throw std::domain_error("valuation at a non-prime");
  if (x.is_zero()) return std::nullopt;
  if (Integer::divisible(x.num(), p)) return int_valuation(x.num(), p);
  return -int_valuation(x.den(), p);
}

P1Point::P1Point(Integer a, Integer b) : a_(std::move(a)), b_(std::move(b)) {
  if (a_.is_zero() && b_.is_zero())
    throw std::domain_error("(0:0) is not a projective point");
  if (b_.is_zero()) {
    a_ = Integer(1);
    return;
  }
  if (b_.sign() < 0) {
    a_ = -a_;
    b_ = -b_;
  }
  Integer g = Integer::gcd(a_, b_);
  if (!g.is_one()) {
    a_ = Integer::divexact(a_, g);
    b_ = Integer::divexact(b_, g);
  }
}

Rational P1Point::as_rational() const {
  if (is_infinity()) throw std::domain_error("infinity is not a rational number");
  return Rational(a_, b_);
}

double P1Point::height() const {
  Integer m = a_.abs();
  const Integer& worst = (m > b_) ? m : b_;
  return worst.is_one() ? 0.0 : worst.log_abs();
}

std::string P1Point::to_string() const {
  if (is_infinity()) return "inf";
  if (b_.is_one()) return a_.to_string();
  return a_.to_string() + "/" + b_.to_string();
}

P1Point P1Point::parse(const std::string& s) {
  if (s == "inf" || s == "oo" || s == "infinity") return infinity();
  Rational q = Rational::parse(s);
  return P1Point(q);
}

std::ostream& operator<<(std::ostream& os, const P1Point& p) {
  return os << p.to_string();
}

}  // namespace qdyn
