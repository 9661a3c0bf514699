#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "qdyn/rational.hpp"

namespace qdyn {

// Integer-coefficient polynomial; coeff(i) is the coefficient of z^i.
// Stored without trailing zeros, so degree() is the true degree (-1 for 0).
// Operations that treat it as a degree-d binary form take d explicitly.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { trim(); }
  IntPoly(std::initializer_list<long> coeffs);

  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Integer coeff(long i) const {
    return (i >= 0 && i < static_cast<long>(c_.size())) ? c_[i] : Integer(0);
  }
  const Integer& lead() const { return c_.back(); }
  const std::vector<Integer>& coeffs() const { return c_; }

  friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator-(const IntPoly& a);
  friend IntPoly operator*(const IntPoly& a, const Integer& s);
  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }

  IntPoly derivative() const;
  // z^d * p(1/z); requires deg p <= d
  IntPoly reverse(long d) const;
  // p(z + a)
  IntPoly shift(const Integer& a) const;

  Rational eval(const Rational& x) const;
  // Degree-d homogenization evaluated at (a, b): sum c_i a^i b^{d-i}.
  Integer eval_form(const Integer& a, const Integer& b, long d) const;

  // gcd of |coefficients| (0 for the zero polynomial)
  Integer content() const;
  IntPoly divexact_scalar(const Integer& s) const;
  // content-free with positive leading coefficient
  IntPoly primitive() const;

  // primitive polynomial gcd over Z, positive leading coefficient
  static IntPoly gcd(const IntPoly& a, const IntPoly& b);
  // pseudo-remainder of a by b (lc(b)^(deg a - deg b + 1) * a mod b)
  static IntPoly pseudo_rem(const IntPoly& a, const IntPoly& b);
  // exact division; remainder must vanish
  static IntPoly divexact(const IntPoly& a, const IntPoly& b);

  std::string to_string(const std::string& var = "z") const;

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Integer> c_;
};

std::ostream& operator<<(std::ostream& os, const IntPoly& p);

// Resultant of the degree-d homogenizations of f and g (Sylvester determinant
// of the two binary forms). Degree deficiency counts as a root at infinity,
// so e.g. Res_d(z^2-1, z-1) = 0 only through the shared affine root while a
// pair with deg f, deg g < d shares the root (1:0).
Integer resultant_forms(const IntPoly& f, const IntPoly& g, long d);

// Mixed-bound variant: f homogenized to degree df, g to degree dg.
Integer resultant_forms(const IntPoly& f, long df, const IntPoly& g, long dg);

// Same Sylvester determinant with rational entries (for identities that are
// stated before clearing denominators).
Rational resultant_forms_q(const std::vector<Rational>& f,
                           const std::vector<Rational>& g, long d);

// Exact determinant of a square matrix by fraction-free elimination.
Integer det_bareiss(std::vector<std::vector<Integer>> m);

}  // namespace qdyn
