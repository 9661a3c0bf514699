#pragma once

#include "qdyn/quadmap.hpp"

namespace qdyn {

// Data for the iterate-height lower bound: R is the exact resultant of the
// degree-2 forms, D a certified positive lower bound for
//   min over real t (and infinity) of max(|f(t)|,|g(t)|) / max(t^2, 1),
// and C = log(|R| / D) >= 0. Then hhat(x) >= 2^{-i} [ h(phi^i(x)) - C ].
struct HeightBoundData {
  Integer R;
  Rational D_exact;  // the certified bound itself, exact
  double D = 0.0;
  double C = 0.0;
  bool exhausted = false;  // node budget hit; bound still certified, just coarse
};

// Branch-and-bound over the two charts |t|<=1 and |t|>=1 with exact rational
// arithmetic; coefficient-based Lipschitz bounds per subinterval; refines
// until the certified lower bound is within rel_gap of the sampled minimum.
HeightBoundData height_bound_data(const QuadRatMap& phi, double rel_gap = 0.01,
                                  long max_nodes = 400000);

// max over x of h(phi(x)) - 2 h(x) is at most log(3 * max|coeff|).
double upper_growth_const(const QuadRatMap& phi);

// Same certified bound computed in double precision with explicit
// floating-point error margins folded into every comparison; D stays a true
// lower bound and C = log(|R|/D) a true upper bound, a few ulps coarser than
// the exact op. Falls back to the exact computation when it cannot certify.
// Meant for search inner loops.
struct FastHeightBound {
  double D = 0.0;
  double C = 0.0;
};
FastHeightBound fast_height_bound(const QuadRatMap& phi);

struct CanonicalHeightResult {
  double estimate = 0.0;  // 2^{-iters} h(phi^iters(x)), or exactly 0 once resolved
  double floor = 0.0;     // max over observed i of the certified lower bound
  bool preperiodic = false;
  long iters_used = 0;
};

// estimate = 2^{-iters} h(phi^iters(x)); floor from the resultant bound at
// every observed iterate. Preperiodic inputs resolve to estimate exactly 0.
CanonicalHeightResult canonical_height(const QuadRatMap& phi, const P1Point& x, long iters);

// Chooses the iterate count from the certified two-sided error constant so
// that |estimate - hhat(x)| <= abs_err, then runs canonical_height.
CanonicalHeightResult canonical_height_refined(const QuadRatMap& phi, const P1Point& x,
                                               double abs_err);

// The quadratic-polynomial p-adic height floor for z^2 + c, applicable when
// the caller has checked v_p(phi^i(x)) < min(0, v_p(c)/2):
//   s = v_p(c);  (p,s)=(2,-2) -> log(2)/2;  (p,s)=(2,-4) -> log 2;
//   s <= -2 even -> 2^{-i-1} (2-s) log p;  otherwise -> log(p)/2.
double padic_height_floor(const Rational& c, const Integer& p, long i);

// Primes of bad reduction: exactly the prime divisors of the resultant.
std::vector<Integer> bad_primes(const QuadRatMap& phi);

}  // namespace qdyn
