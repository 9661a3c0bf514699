#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "qdyn/intpoly.hpp"

namespace qdyn {

// z -> (az+b)/(cz+d) with nonzero determinant, acting on P^1(Q).
struct Mobius {
  Integer a, b, c, d;

  Mobius(Integer a_, Integer b_, Integer c_, Integer d_);
  static Mobius identity() { return Mobius(Integer(1), Integer(0), Integer(0), Integer(1)); }
  // The unique transformation sending p0 -> infinity, p1 -> 1, p2 -> 0
  // (points must be pairwise distinct).
  static Mobius to_normal_frame(const P1Point& p0, const P1Point& p1, const P1Point& p2);

  Mobius inverse() const { return Mobius(d, -b, -c, a); }  // adjugate; same PGL class
  P1Point apply(const P1Point& p) const;
};

// Degree-2 rational self-map of P^1 as a coprime-content pair of integer
// polynomials (f, g) with resultant_forms(f, g, 2) != 0. Quadratic
// polynomials z^2 + k/n^2 are the case f = n^2 z^2 + k, g = n^2.
class QuadRatMap {
 public:
  // Throws std::domain_error if the degree-2 forms are degenerate.
  static QuadRatMap create(IntPoly f, IntPoly g);
  static std::optional<QuadRatMap> try_create(IntPoly f, IntPoly g);
  static QuadRatMap create(std::initializer_list<long> f, std::initializer_list<long> g) {
    return create(IntPoly(f), IntPoly(g));
  }
  // z^2 + c
  static QuadRatMap poly_map(const Rational& c);
  // For callers that already hold content-normalized, sign-normalized data
  // and its nonzero resultant (fast construction paths).
  static QuadRatMap from_normalized(IntPoly f, IntPoly g, Integer res) {
    return QuadRatMap(std::move(f), std::move(g), std::move(res));
  }

  const IntPoly& f() const { return f_; }
  const IntPoly& g() const { return g_; }
  // resultant of the degree-2 homogenizations, cached at construction
  const Integer& resultant() const { return res_; }
  bool is_polynomial() const { return g_.degree() == 0; }
  // the parameter c for a map stored in z^2+c shape, if it is one
  std::optional<Rational> poly_parameter() const;

  Integer max_abs_coeff() const;

  P1Point apply(const P1Point& p) const;
  P1Point apply_iter(const P1Point& p, long k) const;

  // eta . phi . eta^{-1}
  QuadRatMap conjugate(const Mobius& eta) const;

  // phi'(x) at a finite non-pole point
  Rational derivative_at(const Rational& x) const;

  friend bool operator==(const QuadRatMap& a, const QuadRatMap& b) {
    return a.f_ == b.f_ && a.g_ == b.g_;
  }

  std::string to_string() const;

 private:
  QuadRatMap(IntPoly f, IntPoly g, Integer res)
      : f_(std::move(f)), g_(std::move(g)), res_(std::move(res)) {}
  IntPoly f_, g_;
  Integer res_;
};

std::ostream& operator<<(std::ostream& os, const QuadRatMap& m);

// Orbit of x: iterates[i] = phi^i(x). Resolved means iterates[tail+period]
// == iterates[tail] exactly with everything before pairwise distinct.
struct OrbitRecord {
  std::vector<P1Point> iterates;
  std::optional<long> tail, period;
  bool resolved = false;

  long orbit_size() const { return static_cast<long>(iterates.size()); }
};

// Iterates up to max_iter steps looking for an exact projective repeat.
// height_abort, when finite, stops early once an iterate's height exceeds it;
// sound for preperiodicity tests when the abort is >= log(|R|/D), since a
// resolving orbit never exceeds that bound.
OrbitRecord detect_orbit(const QuadRatMap& phi, const P1Point& x, long max_iter,
                         double height_abort = std::numeric_limits<double>::infinity());

// The second solution y != x of phi(y) = phi(x); nullopt when x is critical.
std::optional<P1Point> preimage_partner(const QuadRatMap& phi, const P1Point& x);

// Both rational preimages of a target point, if any.
std::vector<P1Point> rational_preimages(const QuadRatMap& phi, const P1Point& target);

}  // namespace qdyn
