#pragma once

#include <functional>

#include "qdyn/heights.hpp"
#include "qdyn/moduli.hpp"

namespace qdyn {

// Exhaustive search over pairs (x, c) for quadratic maps z^2 + c with
// preperiodic or small-canonical-height rational points. x = m/n in lowest
// terms forces c = k/n^2 with k = -m^2 (mod n), gcd(n, (k+m^2)/n) = 1 and
// -N_max n^2 <= k < -3n^2/4.
struct PolySearchConfig {
  long n_max = 144;
  long N_max = 10;
  double ratio_threshold = 0.02;
  // when nonzero, pairs with 4 not dividing n use this (larger) threshold
  double ratio_threshold_odd = 0.0;
  long screen_iters = 4;
  long estimate_iters = 12;

  double threshold_for(long n) const {
    if (ratio_threshold_odd > 0.0 && n % 4 != 0) return ratio_threshold_odd;
    return ratio_threshold;
  }
};

struct PolyRecord {
  enum class Kind { SmallHeight, Preperiodic };
  long n = 0, m = 0;
  long long k = 0;
  Rational x, c;
  Kind kind = Kind::SmallHeight;
  double h_c = 0.0;
  double screen_estimate = 0.0;  // 2^{-12} h(phi^12 x) as screened
  long screen_iters = 0;
  double estimate = 0.0;  // refined
  double floor = 0.0;
  double ratio = 0.0;
  long refine_iters = 0;
  std::optional<ModuliLabel> label;  // orbit of x for preperiodic records
};

void for_each_admissible_k(long m, long n, long N_max,
                           const std::function<void(long long)>& fn);
std::vector<long long> admissible_k_values(long m, long n, long N_max);

// All positive x = (m + jn)/n inside the allowed real interval: [0,2] when
// c >= -2, else [sqrt(-c-B), B] with B = (1+sqrt(1-4c))/2. Membership is
// decided by exact rational comparison (squaring), never by float roots.
std::vector<Rational> start_points(const Rational& c, long m, long n);

// One partition = one denominator n. Records come back refined and sorted.
std::vector<PolyRecord> poly_search_partition(const PolySearchConfig& cfg, long n);

// Whole search, optionally multithreaded; deterministic merged order
// (n, m, k, x) independent of worker count.
std::vector<PolyRecord> poly_search(const PolySearchConfig& cfg, int workers = 1);

}  // namespace qdyn
