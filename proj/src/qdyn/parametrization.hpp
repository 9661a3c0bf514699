#pragma once

#include <optional>

#include "qdyn/quadmap.hpp"

namespace qdyn {

// Orbit-normalized coordinates on the space of pairs (x, phi): the unique
// representative with orbit starting  infinity -> 1 -> 0 -> x3 -> x4 -> x5.
// The coordinates must be pairwise distinct and different from 0 and 1.
struct TripleParam {
  Rational x3, x4, x5;

  bool valid() const;
  std::string to_string() const;
};

// Raw numerator/denominator coefficients of the normalized map, before
// clearing denominators:  phi = (a1 z + a0)(z - 1) / (a1 z^2 + b1 z + b0).
struct TripleCoeffs {
  Rational a1, a0, b1, b0;
};
TripleCoeffs triple_coeffs(const TripleParam& t);

// The degree-2 map with the stipulated six-point orbit, content-normalized;
// nullopt exactly on the zero locus of the resultant (degenerate triples).
// Throws std::domain_error if the triple violates its invariants.
std::optional<QuadRatMap> construct_map(const TripleParam& t);

// x5 on the tail-4 period-2 locus, as a function of (x3, x4); nullopt when
// the chart denominator x3^2 - 2 x3 + x4 vanishes.
std::optional<Rational> x42_x5(const Rational& x3, const Rational& x4);

// Whether the triple lies on that locus, i.e. phi(x5) = x4. Division-free:
// x5 (x3^2 - 2 x3 + x4) == x4 - x3.
bool on_x42(const TripleParam& t);

// Exact identity for the resultant of the chart map: Res(f, g) of the
// rational-coefficient map at (x3, x4, x5(x3,x4)) equals
//   x3^2 x4^2 (x3-x4) (x3-1)^8 (x4-1)^2 (x3^2-2x3+x4) (x3 x4 - x3 + x4)^5.
struct X42ResultantCheck {
  Rational resultant;  // Res of the un-cleared coefficients
  Rational predicted;  // displayed factored product
  bool match = false;
};
X42ResultantCheck x42_resultant_factored(const Rational& x3, const Rational& x4);

// Defining polynomial of the tail-5 period-2 surface in the (x3, x4, w)
// chart: g = 0 iff the tail-4 map psi with parameters (x3, x4) has a pole
// at w. Works over any exact field (Q or Q(t)).
template <class K>
K x52_g(const K& x3, const K& x4, const K& w) {
  K one(1), two(2);
  return w * (one - x4) * x3 * x3 * x3 + (one - w) * x3 * x4 * x4 +
         w * (x4 * w + x4 - two) * x3 * x3 - (two * w * w - two * w + one) * x3 * x4 +
         w * x3 + (w * w - w) * x4 * x4;
}

bool x52_membership(const Rational& x3, const Rational& x4, const Rational& w);

// Birational map from the (x3, x4, w) chart to the elliptic surface
//   y^2 = 4x^3 + (4t^4+4t^3+1)x^2 - 2t^3(t+1)^2(2t^2+2t+1)x + t^6(t+1)^4,
// and back. nullopt on the displayed degeneracy loci (vanishing denominators).
template <class K>
struct X52SurfacePoint {
  K t, x, y;
};

template <class K>
std::optional<X52SurfacePoint<K>> x52_forward(const K& x3, const K& x4, const K& w) {
  K one(1);
  K d1 = x3 - one;
  if (d1.is_zero() || x3.is_zero()) return std::nullopt;
  K wm3 = w - x3, wm1 = w - one;
  K t = wm3 / d1;
  K x = (wm3 * wm3 * wm1) / (x3 * d1 * d1 * d1);
  K bracket = wm3 * wm1 * (K(2) * x4 + x3 * x3) - x3 * (wm3 * wm3 + wm1 * wm1);
  K y = (wm3 * wm3 * wm1) / (x3 * x3 * d1 * d1 * d1 * d1 * d1) * bracket;
  return X52SurfacePoint<K>{std::move(t), std::move(x), std::move(y)};
}

template <class K>
struct X52ChartPoint {
  K w, x3, x4;
};

template <class K>
std::optional<X52ChartPoint<K>> x52_inverse(const K& t, const K& x, const K& y) {
  if (x.is_zero()) return std::nullopt;
  K one(1);
  K tp1 = t + one;
  K w = (t / x) * (t * tp1 * tp1 - x);
  K x3 = (t * t * tp1) / x;
  K x4 = (t / (K(2) * x * x)) *
         (y + (K(2) * t * t + K(2) * t + one) * x - t * t * t * tp1 * tp1);
  return X52ChartPoint<K>{std::move(w), std::move(x3), std::move(x4)};
}

// Whether (x, y) satisfies the non-monic surface equation above.
template <class K>
bool x52_on_surface(const K& t, const K& x, const K& y) {
  K one(1);
  K tp1 = t + one;
  K t2 = t * t, t3 = t2 * t, t4 = t3 * t;
  K lhs = y * y;
  K rhs = K(4) * x * x * x + (K(4) * t4 + K(4) * t3 + one) * x * x -
          K(2) * t3 * tp1 * tp1 * (K(2) * t2 + K(2) * t + one) * x +
          t3 * t3 * tp1 * tp1 * tp1 * tp1;
  return lhs == rhs;
}

}  // namespace qdyn
