#pragma once

#include "qdyn/heights.hpp"
#include "qdyn/moduli.hpp"
#include "qdyn/parametrization.hpp"
#include "qdyn/sigma.hpp"

namespace qdyn {

// Search over orbit-normalized triples (x3, x4, x5) for quadratic rational
// maps with long preperiodic orbits of infinity or small hhat(inf)/h(phi).
struct RatSearchConfig {
  long height_cap = 20;  // coordinates with max(|num|, den) <= cap
  double ratio_threshold = 0.002;
  long screen_a = 8;
  long screen_b = 10;
  long estimate_iters = 15;
  long preper_horizon = 10;
  long recheck_horizon = 20;
};

struct RatRecord {
  enum class Kind { SmallHeight, Preperiodic };
  TripleParam triple;
  std::optional<QuadRatMap> map;  // engaged for every record
  Kind kind = Kind::SmallHeight;
  Rational s1, s2;
  double map_height = 0.0;
  double screen_estimate = 0.0;
  double estimate = 0.0;  // refined
  double floor = 0.0;
  double ratio = 0.0;
  long refine_iters = 0;
  std::optional<ModuliLabel> label;
  // Normalized coordinates of the partner pair (second preimage of phi(inf)
  // started at infinity); small-height and preperiodic pairs come in twos.
  std::optional<TripleParam> partner;
};

// Normalized triple of the pair (y, phi) for y the second preimage of
// phi(inf); nullopt when inf is critical or the renormalization leaves the
// affine chart.
std::optional<TripleParam> partner_triple(const QuadRatMap& phi);

// Reduced rationals with max(|num|, den) <= cap in a deterministic order:
// ascending height shell, within a shell denominator-first then the two
// +-cap numerator columns. Includes 0 and 1; searches skip them.
std::vector<Rational> rationals_up_to(long cap);

std::vector<RatRecord> rat_search_partition(const RatSearchConfig& cfg, const Rational& x3);

// Full search; merged order sorted by (h(x3), h(x4), h(x5)) then by value,
// independent of worker count.
std::vector<RatRecord> rat_search(const RatSearchConfig& cfg, int workers = 1);

}  // namespace qdyn
