#pragma once

#include "qdyn/quadmap.hpp"

namespace qdyn::fixtures {

// Degree-2 map with a rational 7-cycle through infinity; together with the
// seven extra preimages its rational preperiodic locus has exactly 14 points.
QuadRatMap seven_cycle_map();
// the cycle, starting at infinity
std::vector<P1Point> seven_cycle();
// extra_preimages()[i] is the second rational preimage of seven_cycle()[i]
std::vector<P1Point> seven_cycle_extra_preimages();

// Maps whose orbit of infinity is strictly preperiodic of total length 8.
struct TailMapFixture {
  QuadRatMap map;
  long tail;
  long period;
  std::vector<P1Point> orbit;  // first 9 iterates of infinity
};
const std::vector<TailMapFixture>& length8_maps();

// Small canonical-height-ratio pairs (x, z^2 + c) with reference values.
struct PolyRowFixture {
  const char* c;
  const char* x;
  double hhat;
  double ratio;
  long n;  // denominator of x
};
const std::vector<PolyRowFixture>& small_ratio_poly_rows();

// The record-holder rational map: hhat(infinity) = 0.00360, ratio 0.000466.
QuadRatMap min_ratio_rat_map();

}  // namespace qdyn::fixtures
