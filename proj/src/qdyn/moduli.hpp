#pragma once

#include <variant>

#include "qdyn/ellcurve.hpp"
#include "qdyn/funcfield.hpp"
#include "qdyn/heights.hpp"
#include "qdyn/parametrization.hpp"

namespace qdyn {

// (tail m, period n) of a resolved orbit.
struct ModuliLabel {
  long tail = 0;
  long period = 0;
  friend bool operator==(const ModuliLabel&, const ModuliLabel&) = default;
};

// Throws std::invalid_argument on an open orbit.
ModuliLabel classify_orbit(const OrbitRecord& rec);

// All x in P^1(Q) with weil height <= height_bound whose orbit resolves
// within 50 iterates, i.e. every rational preperiodic point below the bound.
// Iteration aborts early once an iterate's height exceeds the certified
// log(|R|/D) bound, which no resolving orbit can do.
std::vector<P1Point> preperiodic_scan(const QuadRatMap& phi, double height_bound,
                                      int workers = 1);

// The elliptic surface attached to the tail-5 period-2 locus, in the monic
// model (X, Y) = (4x, 4y):
//   Y^2 = X^3 + (4t^4+4t^3+1) X^2 - 8t^3(t+1)^2(2t^2+2t+1) X + 16 t^6 (t+1)^4.
// Points below are exchanged with the non-monic (x, y) coordinates of the
// surface equation itself.
template <class K>
ShortWCurve<K> x52_curve(const K& t) {
  K one(1), t2 = t * t, t3 = t2 * t, t4 = t3 * t;
  K tp1 = t + one, tp1sq = tp1 * tp1;
  K a2 = K(4) * t4 + K(4) * t3 + one;
  K a4 = K(0) - K(8) * t3 * tp1sq * (K(2) * t2 + K(2) * t + one);
  K a6 = K(16) * t3 * t3 * tp1sq * tp1sq;
  return ShortWCurve<K>(std::move(a2), std::move(a4), std::move(a6));
}

// The generator P = (0, t^3 (t+1)^2) in surface coordinates.
template <class K>
ECPoint<K> x52_generator(const K& t) {
  K t3 = t * t * t;
  K tp1 = t + K(1);
  return ECPoint<K>::affine(K(0), t3 * tp1 * tp1);
}

template <class K>
ECPoint<K> to_monic(const ECPoint<K>& p) {
  if (p.inf) return p;
  return ECPoint<K>::affine(K(4) * p.x, K(4) * p.y);
}
template <class K>
ECPoint<K> from_monic(const ECPoint<K>& p) {
  if (p.inf) return p;
  return ECPoint<K>::affine(p.x / K(4), p.y / K(4));
}

// Group law in surface coordinates. Both points must satisfy the surface
// equation; a singular specialization of the curve is a domain error.
template <class K>
ECPoint<K> ec_add(const K& t, const ECPoint<K>& p, const ECPoint<K>& q) {
  ShortWCurve<K> curve = x52_curve(t);
  if (curve.cubic_disc().is_zero()) throw std::domain_error("singular specialization");
  return from_monic(curve.add(to_monic(p), to_monic(q)));
}

template <class K>
ECPoint<K> ec_multiple(const K& t, long n) {
  ShortWCurve<K> curve = x52_curve(t);
  if (curve.cubic_disc().is_zero()) throw std::domain_error("singular specialization");
  return from_monic(curve.mul(n, to_monic(x52_generator(t))));
}

// Full pipeline from a multiple [n]P at a rational parameter t to a
// normalized tail-5 period-2 pair: [n]P -> (w, x3, x4) -> x5 -> map -> the
// orbit of w, renormalized so that w sits at infinity.
struct X52PointData {
  TripleParam triple;   // normalized coordinates of the pair (w, psi)
  QuadRatMap map;       // map attached to the normalized triple
  OrbitRecord orbit;    // orbit of infinity under that map
};
struct X52Degenerate {
  std::string reason;
};
using X52PointResult = std::variant<X52PointData, X52Degenerate>;

X52PointResult x52_point_from_multiple(long n, const Rational& t);

}  // namespace qdyn
