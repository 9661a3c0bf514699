#pragma once

#include "qdyn/quadmap.hpp"

namespace qdyn {

// Elementary symmetric functions of the three fixed-point multipliers
// (with multiplicity), computed exactly in Q without extracting roots,
// plus the moduli height log max(|a|,|b|,|c|) for s1 = a/c, s2 = b/c,
// gcd(a,b,c) = 1. The identity s3 = s1 - 2 always holds.
struct SigmaInvariants {
  Rational s1, s2, s3;
  double map_height = 0.0;
};

// Closed-form route: s1 = P1(coeffs)/Res, s2 = P2(coeffs)/Res with fixed
// integer numerator polynomials, homogeneous of degree 4 in the six map
// coefficients.
SigmaInvariants sigma_invariants(const QuadRatMap& phi);

// Reference route through the quotient algebra Q[z]/(fixed-point cubic):
// char poly of the multiplier element gives all three elementary symmetric
// functions independently, so s3 is computed rather than forced.
SigmaInvariants sigma_invariants_algebraic(const QuadRatMap& phi);

// Multiplier (phi^n)'(x) of an n-periodic point, computed by the chain rule
// along the cycle; a cycle through infinity is moved first by a coordinate
// change. Throws std::invalid_argument if x is not n-periodic of minimal
// period n (checked by orbit detection).
Rational multiplier(const QuadRatMap& phi, const P1Point& x, long n);

}  // namespace qdyn
