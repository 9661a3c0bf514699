#include "qdyn/ratsearch.hpp"

#include <atomic>
#include <cmath>
#include <thread>

namespace qdyn {

namespace {

long gcd_long(long a, long b) {
  while (b) {
    long r = a % b;
    a = b;
    b = r;
  }
  return a < 0 ? -a : a;
}

struct TripleContext {
  TripleParam triple;
  QuadRatMap map;
  SigmaInvariants sigma;
  std::vector<P1Point> orbit;  // iterates of infinity, orbit[i] = phi^i(inf)
};

// Extends the orbit by one iterate and reports the first index j with
// orbit[j] == new iterate, or -1.
long extend_orbit(TripleContext& ctx) {
  P1Point next = ctx.map.apply(ctx.orbit.back());
  for (size_t j = 0; j < ctx.orbit.size(); ++j)
    if (ctx.orbit[j] == next) return static_cast<long>(j);
  ctx.orbit.push_back(std::move(next));
  return -1;
}

RatRecord make_preperiodic(const TripleContext& ctx, long j, long i) {
  RatRecord rec;
  rec.triple = ctx.triple;
  rec.map = ctx.map;
  rec.kind = RatRecord::Kind::Preperiodic;
  rec.s1 = ctx.sigma.s1;
  rec.s2 = ctx.sigma.s2;
  rec.map_height = ctx.sigma.map_height;
  rec.label = ModuliLabel{j, i - j};
  rec.estimate = 0.0;
  rec.ratio = 0.0;
  rec.floor = 0.0;
  return rec;
}

void refine_record(RatRecord& rec) {
  rec.partner = partner_triple(*rec.map);
  double abs_err = 1e-5 * std::max(1.0, rec.map_height);
  CanonicalHeightResult ch = canonical_height_refined(*rec.map, P1Point::infinity(), abs_err);
  rec.refine_iters = ch.iters_used;
  rec.floor = ch.floor;
  if (ch.preperiodic) {
    rec.kind = RatRecord::Kind::Preperiodic;
    rec.estimate = 0.0;
    rec.ratio = 0.0;
    OrbitRecord orb = detect_orbit(*rec.map, P1Point::infinity(), 60);
    if (orb.resolved) rec.label = classify_orbit(orb);
    return;
  }
  rec.estimate = ch.estimate;
  rec.ratio = rec.map_height > 0 ? rec.estimate / rec.map_height : 0.0;
}

}  // namespace

std::optional<TripleParam> partner_triple(const QuadRatMap& phi) {
  auto y = preimage_partner(phi, P1Point::infinity());
  if (!y) return std::nullopt;
  // orbit of y continues 1 -> 0 -> x3 -> x4 -> x5 exactly like infinity's
  Mobius eta = Mobius::to_normal_frame(*y, P1Point(Rational(1)), P1Point(Rational(0)));
  P1Point cur = P1Point(Rational(0));
  Rational coords[3];
  for (int i = 0; i < 3; ++i) {
    cur = phi.apply(cur);
    P1Point img = eta.apply(cur);
    if (img.is_infinity()) return std::nullopt;
    coords[i] = img.as_rational();
  }
  TripleParam t{coords[0], coords[1], coords[2]};
  if (!t.valid()) return std::nullopt;
  return t;
}

std::vector<Rational> rationals_up_to(long cap) {
  std::vector<Rational> out;
  for (long h = 1; h <= cap; ++h) {
    for (long p = -h; p <= h; ++p) {
      if (gcd_long(p, h) != 1) continue;
      if (p == -h || p == h) {
        if (h != 1) continue;  // |p| = den only reduced when h = 1
      }
      out.emplace_back(p, h);
    }
    if (h > 1) {
      for (long q = 1; q < h; ++q) {
        if (gcd_long(h, q) != 1) continue;
        out.emplace_back(h, q);
      }
      for (long q = 1; q < h; ++q) {
        if (gcd_long(h, q) != 1) continue;
        out.emplace_back(-h, q);
      }
    }
  }
  return out;
}

std::vector<RatRecord> rat_search_partition(const RatSearchConfig& cfg, const Rational& x3) {
  std::vector<RatRecord> out;
  const Rational zero(0), one(1);
  if (x3 == zero || x3 == one) return out;
  const double r = cfg.ratio_threshold;
  std::vector<Rational> coords = rationals_up_to(cfg.height_cap);

  for (const Rational& x4 : coords) {
    if (x4 == zero || x4 == one || x4 == x3) continue;
    // chart expression reused by the tail-4 skip below
    Rational chart = x3 * x3 - Rational(2) * x3 + x4;
    Rational diff43 = x4 - x3;
    for (const Rational& x5 : coords) {
      if (x5 == zero || x5 == one || x5 == x3 || x5 == x4) continue;
      if (x5 * chart == diff43) continue;  // phi(x5) = x4: tail-4 locus
      TripleParam t{x3, x4, x5};
      auto phi = construct_map(t);
      if (!phi) continue;  // degenerate

      TripleContext ctx{t, *phi, sigma_invariants(*phi), {}};
      ctx.orbit = {P1Point::infinity(), P1Point(one), P1Point(zero),
                   P1Point(x3), P1Point(x4), P1Point(x5)};
      const double h_phi = ctx.sigma.map_height;
      // cheap certified overestimate of log(|R|/D), from the Sylvester-minor
      // Bezout identity; only used for margin discards that provably cannot
      // change the record set
      const double c_over =
          std::log(24.0) + 3.0 * ctx.map.max_abs_coeff().log_abs() + 1e-9;
      const double c_up = upper_growth_const(ctx.map);

      bool discarded = false, recorded = false;
      std::optional<FastHeightBound> hbd;
      // Margin bar at iterate i: exceeding it forces the step-6 estimate over
      // the record threshold, so such triples can never be emitted; it also
      // exceeds C, so they cannot be preperiodic. A strict subset of the
      // literal discard, applied first to keep the exact C computation rare.
      auto margin_bar = [&](long i) {
        return std::ldexp(r * h_phi + std::ldexp(c_over + c_up, -15), static_cast<int>(i)) +
               c_over;
      };
      for (long i = 6; i <= cfg.preper_horizon && !discarded && !recorded; ++i) {
        long j = extend_orbit(ctx);
        if (j >= 0) {
          out.push_back(make_preperiodic(ctx, j, i));
          recorded = true;
          break;
        }
        double hi = ctx.orbit.back().height();
        if (hi >= margin_bar(i)) {
          discarded = true;
        } else if (i == cfg.screen_a || i == cfg.screen_b) {
          if (!hbd) hbd = fast_height_bound(ctx.map);
          if (hi >= std::ldexp(r * h_phi, static_cast<int>(i)) + hbd->C) discarded = true;
        }
      }
      if (discarded || recorded) continue;
      for (long i = cfg.preper_horizon + 1; i <= cfg.estimate_iters; ++i)
        ctx.orbit.push_back(ctx.map.apply(ctx.orbit.back()));
      double h15 = ctx.orbit.back().height();
      double est = std::ldexp(h15, static_cast<int>(-cfg.estimate_iters));
      if (!hbd) hbd = fast_height_bound(ctx.map);
      if (est < r * h_phi + std::ldexp(hbd->C, static_cast<int>(-cfg.estimate_iters))) {
        RatRecord rec;
        rec.triple = t;
        rec.map = ctx.map;
        rec.kind = RatRecord::Kind::SmallHeight;
        rec.s1 = ctx.sigma.s1;
        rec.s2 = ctx.sigma.s2;
        rec.map_height = h_phi;
        rec.screen_estimate = est;
        // repeat recheck beyond the horizon for long hidden periods
        OrbitRecord orb = detect_orbit(ctx.map, P1Point::infinity(), cfg.recheck_horizon);
        if (orb.resolved) {
          rec.kind = RatRecord::Kind::Preperiodic;
          rec.label = classify_orbit(orb);
        }
        out.push_back(std::move(rec));
      }
    }
  }
  for (auto& rec : out) {
    if (rec.kind == RatRecord::Kind::SmallHeight) {
      refine_record(rec);
    } else if (rec.map) {
      rec.partner = partner_triple(*rec.map);
      CanonicalHeightResult ch = canonical_height(*rec.map, P1Point::infinity(), 60);
      rec.floor = ch.floor;
    }
  }
  return out;
}

std::vector<RatRecord> rat_search(const RatSearchConfig& cfg, int workers) {
  if (cfg.height_cap < 2 || cfg.ratio_threshold <= 0.0)
    throw std::invalid_argument("invalid search configuration");
  std::vector<Rational> coords = rationals_up_to(cfg.height_cap);
  std::vector<Rational> parts;
  for (const auto& q : coords)
    if (!(q == Rational(0)) && !(q == Rational(1))) parts.push_back(q);

  std::vector<std::vector<RatRecord>> results(parts.size());
  std::atomic<size_t> next{0};
  auto run = [&]() {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= parts.size()) break;
      results[i] = rat_search_partition(cfg, parts[i]);
    }
  };
  if (workers <= 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& th : pool) th.join();
  }
  std::vector<RatRecord> out;
  for (auto& v : results) out.insert(out.end(), v.begin(), v.end());
  auto key_less = [](const RatRecord& a, const RatRecord& b) {
    double ha3 = a.triple.x3.height(), hb3 = b.triple.x3.height();
    if (ha3 != hb3) return ha3 < hb3;
    double ha4 = a.triple.x4.height(), hb4 = b.triple.x4.height();
    if (ha4 != hb4) return ha4 < hb4;
    double ha5 = a.triple.x5.height(), hb5 = b.triple.x5.height();
    if (ha5 != hb5) return ha5 < hb5;
    if (!(a.triple.x3 == b.triple.x3)) return a.triple.x3 < b.triple.x3;
    if (!(a.triple.x4 == b.triple.x4)) return a.triple.x4 < b.triple.x4;
    return a.triple.x5 < b.triple.x5;
  };
  std::stable_sort(out.begin(), out.end(), key_less);
  return out;
}

}  // namespace qdyn
