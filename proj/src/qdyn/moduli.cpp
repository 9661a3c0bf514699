#include "qdyn/moduli.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace qdyn {

ModuliLabel classify_orbit(const OrbitRecord& rec) {
  if (!rec.resolved || !rec.tail || !rec.period)
    throw std::invalid_argument("classify_orbit needs a resolved orbit");
  return ModuliLabel{*rec.tail, *rec.period};
}

namespace {

using i128 = __int128;

using u128 = unsigned __int128;

i128 iabs(i128 v) { return v < 0 ? -v : v; }

int ctz128(u128 v) {
  uint64_t lo = static_cast<uint64_t>(v);
  if (lo) return __builtin_ctzll(lo);
  return 64 + __builtin_ctzll(static_cast<uint64_t>(v >> 64));
}

struct SmallForm {
  long c2, c1, c0;
  bool fits = false;
};

// Coefficients capped at 2^20 so that c * a * b stays inside i128 for
// |a|,|b| up to the 2^52 iterate guard below.
SmallForm small_form(const IntPoly& p) {
  SmallForm s{};
  Integer lim = Integer::mul_2exp(Integer(1), 20);
  for (long i = 0; i <= 2; ++i)
    if (p.coeff(i).abs() > lim) return s;
  s.c2 = p.coeff(2).to_long();
  s.c1 = p.coeff(1).to_long();
  s.c0 = p.coeff(0).to_long();
  s.fits = true;
  return s;
}

int bitlen128(i128 v) {
  unsigned __int128 u = static_cast<unsigned __int128>(iabs(v));
  uint64_t hi = static_cast<uint64_t>(u >> 64);
  if (hi) return 128 - __builtin_clzll(hi);
  uint64_t lo = static_cast<uint64_t>(u);
  return lo ? 64 - __builtin_clzll(lo) : 0;
}

// Divisibility by a fixed odd prime via the modular-inverse trick: u is
// divisible by p exactly when u * p^{-1} (mod 2^128) lands at or below
// (2^128-1)/p, and that product is then the exact quotient.
struct PrimeDivider {
  u128 p, inv, limit;

  explicit PrimeDivider(u128 prime) : p(prime) {
    u128 x = prime;  // Newton: x *= 2 - p x, doubling correct bits
    for (int i = 0; i < 7; ++i) x *= 2 - prime * x;
    inv = x;
    limit = ~static_cast<u128>(0) / prime;
  }
  bool divides(u128 u, u128& quotient) const {
    u128 q = u * inv;
    if (q > limit) return false;
    quotient = q;
    return true;
  }
};

struct PrimeDivider64 {
  uint64_t p, inv, limit;

  explicit PrimeDivider64(uint64_t prime) : p(prime) {
    uint64_t x = prime;
    for (int i = 0; i < 6; ++i) x *= 2 - prime * x;
    inv = x;
    limit = ~static_cast<uint64_t>(0) / prime;
  }
  bool divides(uint64_t u, uint64_t& quotient) const {
    uint64_t q = u * inv;
    if (q > limit) return false;
    quotient = q;
    return true;
  }
};

struct ProbeLimits {
  unsigned __int128 escape;  // reduced max above this is provably escaping
  int raw_escape_bits;       // raw values this wide escape before any gcd
  int two_adic = 0;          // v_2 of the resultant
  std::vector<PrimeDivider> odd_primes;      // odd primes of the resultant
  std::vector<PrimeDivider64> odd_primes64;  // the same, in 64-bit form
};

void cancel_via_primes64(i128& na, i128& nb, const ProbeLimits& lim) {
  bool neg_a = na < 0, neg_b = nb < 0;
  uint64_t ua = static_cast<uint64_t>(neg_a ? -na : na);
  uint64_t ub = static_cast<uint64_t>(neg_b ? -nb : nb);
  if (lim.two_adic > 0 && ua && ub) {
    int sh = std::min(__builtin_ctzll(ua), __builtin_ctzll(ub));
    ua >>= sh;
    ub >>= sh;
  }
  for (const auto& pd : lim.odd_primes64) {
    uint64_t qa, qb;
    while (pd.divides(ua, qa) && pd.divides(ub, qb)) {
      ua = qa;
      ub = qb;
    }
  }
  na = neg_a ? -static_cast<i128>(ua) : static_cast<i128>(ua);
  nb = neg_b ? -static_cast<i128>(ub) : static_cast<i128>(ub);
}

// gcd of a coprime-input iterate pair through the resultant's prime support;
// cheaper than a full binary gcd once values outgrow 64 bits.
void cancel_via_primes(i128& na, i128& nb, const ProbeLimits& lim) {
  bool neg_a = na < 0, neg_b = nb < 0;
  u128 ua = static_cast<u128>(neg_a ? -na : na);
  u128 ub = static_cast<u128>(neg_b ? -nb : nb);
  if (lim.two_adic > 0) {
    int sh = std::min(ctz128(ua), ctz128(ub));
    ua >>= sh;
    ub >>= sh;
  }
  for (const auto& pd : lim.odd_primes) {
    u128 qa, qb;
    while (pd.divides(ua, qa) && pd.divides(ub, qb)) {
      ua = qa;
      ub = qb;
    }
  }
  na = neg_a ? -static_cast<i128>(ua) : static_cast<i128>(ua);
  nb = neg_b ? -static_cast<i128>(ub) : static_cast<i128>(ub);
}

// One orbit probe in machine arithmetic. Returns +1 if the orbit provably
// never resolves (a reduced iterate passed the escape bound), 0 if it
// resolved, -1 if 128 bits are not enough to decide and the caller should
// rerun with exact arithmetic.
int probe_small(const SmallForm& F, const SmallForm& G, long a0, long b0,
                const ProbeLimits& lim, long max_iter) {
  constexpr i128 kGuard = static_cast<i128>(1) << 52;
  i128 a = a0, b = b0;
  i128 seen_a[64], seen_b[64];
  long count = 0;
  for (long i = 0; i < max_iter; ++i) {
    if (count < 64) {
      seen_a[count] = a;
      seen_b[count] = b;
      ++count;
    }
    if (iabs(a) > kGuard || iabs(b) > kGuard) return -1;
    i128 na = (i128)F.c2 * a * a + (i128)F.c1 * a * b + (i128)F.c0 * b * b;
    i128 nb = (i128)G.c2 * a * a + (i128)G.c1 * a * b + (i128)G.c0 * b * b;
    // any cancellation divides the resultant, so raw values this wide stay
    // above the escape bound even after reduction
    i128 rawmax = std::max(iabs(na), iabs(nb));
    if (bitlen128(rawmax) > lim.raw_escape_bits) return 1;
    if (na == 0 || nb == 0) {
      if (na == 0 && nb == 0) return -1;  // cannot happen for nondegenerate maps
      // projective point 0 or infinity
      na = na == 0 ? 0 : 1;
      nb = nb == 0 ? 0 : 1;
      if (na == 0) nb = 1;
    } else if (rawmax < (i128(1) << 62)) {
      cancel_via_primes64(na, nb, lim);
    } else {
      // coprime inputs cancel only inside the resultant's prime support
      cancel_via_primes(na, nb, lim);
    }
    if (nb < 0) {
      na = -na;
      nb = -nb;
    } else if (nb == 0 && na < 0) {
      na = -na;
    }
    for (long j = 0; j < count; ++j)
      if (seen_a[j] == na && seen_b[j] == nb) return 0;
    unsigned __int128 m =
        static_cast<unsigned __int128>(std::max(iabs(na), iabs(nb)));
    if (m > lim.escape) return 1;
    a = na;
    b = nb;
  }
  return -1;
}

}  // namespace

std::vector<P1Point> preperiodic_scan(const QuadRatMap& phi, double height_bound, int workers) {
  HeightBoundData hbd = height_bound_data(phi);
  const double abort_h = hbd.C + 1e-9;
  const long cap = static_cast<long>(std::floor(std::exp(height_bound) + 1e-9));
  const long max_iter = 50;

  SmallForm F = small_form(phi.f()), G = small_form(phi.g());
  const bool fast = F.fits && G.fits && abort_h < 85.0;
  ProbeLimits lim{};
  if (fast) {
    // escape: smallest integer bound with (value > escape => height > C)
    long double e = std::exp(static_cast<long double>(abort_h));
    lim.escape = static_cast<unsigned __int128>(e) + 2;
    // raw escape: raw/|R| > escape suffices since any cancellation divides R
    double bits = (abort_h + phi.resultant().abs().log_abs()) / M_LN2 + 3.0;
    lim.raw_escape_bits = bits < 125.0 ? static_cast<int>(bits) : 1000000;
    for (const auto& p : bad_primes(phi)) {
      u128 v = 0;
      for (size_t word = p.bit_length(); word > 0;) {
        --word;
        v = (v << 1) | (mpz_tstbit(p.raw(), word) ? 1 : 0);
      }
      if (v == 2) {
        lim.two_adic = 1;
      } else {
        lim.odd_primes.emplace_back(v);
        if (v < (static_cast<u128>(1) << 63))
          lim.odd_primes64.emplace_back(static_cast<uint64_t>(v));
      }
    }
  }

  auto resolves = [&](long a, long b) {
    if (fast) {
      int r = probe_small(F, G, a, b, lim, max_iter);
      if (r >= 0) return r == 0;
    }
    OrbitRecord rec = detect_orbit(phi, P1Point(Integer(a), Integer(b)), max_iter, abort_h);
    return rec.resolved;
  };

  if (workers < 1) workers = 1;
  std::vector<std::vector<std::pair<long, long>>> found(static_cast<size_t>(workers));
  std::atomic<long> next_b{0};
  auto run = [&](int w) {
    for (;;) {
      long b = next_b.fetch_add(1);
      if (b > cap) break;
      if (b == 0) {
        if (resolves(1, 0)) found[static_cast<size_t>(w)].push_back({1, 0});
        continue;
      }
      // coprime residues via a small sieve on the prime factors of b
      std::vector<char> bad(static_cast<size_t>(b), 0);
      long m = b;
      for (long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
          for (long r = 0; r < b; r += p) bad[static_cast<size_t>(r)] = 1;
          while (m % p == 0) m /= p;
        }
      }
      if (m > 1)
        for (long r = 0; r < b; r += m) bad[static_cast<size_t>(r)] = 1;
      if (b == 1) bad[0] = 0;  // 0/1 is a point
      for (long a = -cap; a <= cap; ++a) {
        long r = a % b;
        if (r < 0) r += b;
        if (bad[static_cast<size_t>(r)]) continue;
        if (a == 0 && b != 1) continue;
        if (resolves(a, b)) found[static_cast<size_t>(w)].push_back({a, b});
      }
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& th : pool) th.join();
  }

  std::vector<std::pair<long, long>> all;
  for (auto& v : found) all.insert(all.end(), v.begin(), v.end());
  std::sort(all.begin(), all.end());
  std::vector<P1Point> out;
  out.reserve(all.size());
  for (auto& [a, b] : all) out.emplace_back(Integer(a), Integer(b));
  return out;
}

X52PointResult x52_point_from_multiple(long n, const Rational& t) {
  ShortWCurve<Rational> curve = x52_curve(t);
  if (curve.cubic_disc().is_zero()) throw std::domain_error("singular specialization");
  ECPoint<Rational> np = from_monic(curve.mul(n, to_monic(x52_generator(t))));
  if (np.inf) return X52Degenerate{"multiple is the identity"};
  if (np.x.is_zero()) return X52Degenerate{"multiple lies over x = 0"};
  auto chart = x52_inverse<Rational>(t, np.x, np.y);
  if (!chart) return X52Degenerate{"inverse map undefined"};
  auto x5 = x42_x5(chart->x3, chart->x4);
  if (!x5) return X52Degenerate{"x5 chart denominator vanishes"};
  TripleParam base{chart->x3, chart->x4, *x5};
  if (!base.valid()) return X52Degenerate{"triple invariants fail"};
  auto psi = construct_map(base);
  if (!psi) return X52Degenerate{"map degenerates"};

  // orbit of w under psi: w -> inf -> 1 -> 0 -> x3 -> x4 -> x5 -> x4
  P1Point w(chart->w);
  if (!(psi->apply(w) == P1Point::infinity())) return X52Degenerate{"w is not a pole"};

  // renormalize so the pair (w, psi) starts at infinity
  Mobius eta = Mobius::to_normal_frame(w, P1Point::infinity(), P1Point(Rational(1)));
  P1Point n3 = eta.apply(P1Point(Rational(0)));
  P1Point n4 = eta.apply(P1Point(base.x3));
  P1Point n5 = eta.apply(P1Point(base.x4));
  if (n3.is_infinity() || n4.is_infinity() || n5.is_infinity())
    return X52Degenerate{"normalized triple leaves the affine chart"};
  TripleParam norm{n3.as_rational(), n4.as_rational(), n5.as_rational()};
  if (!norm.valid()) return X52Degenerate{"normalized triple invariants fail"};
  auto map = construct_map(norm);
  if (!map) return X52Degenerate{"normalized map degenerates"};
  OrbitRecord orbit = detect_orbit(*map, P1Point::infinity(), 12);
  return X52PointData{norm, *map, std::move(orbit)};
}

}  // namespace qdyn
