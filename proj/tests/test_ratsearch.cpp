#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "qdyn/fixtures.hpp"
#include "qdyn/ratsearch.hpp"

using namespace qdyn;

TEST_CASE("rational enumeration shells") {
  auto r5 = rationals_up_to(5);
  // reduced, bounded, deterministic, no duplicates
  std::set<std::string> seen;
  for (const auto& q : r5) {
    CHECK(q.num().abs() <= Integer(5));
    CHECK(q.den() <= Integer(5));
    CHECK(seen.insert(q.to_string()).second);
  }
  // count matches a direct enumeration
  long direct = 0;
  for (long p = -5; p <= 5; ++p)
    for (long q = 1; q <= 5; ++q)
      if (std::gcd(std::abs(p), q) == 1 && (p != 0 || q == 1)) ++direct;
  CHECK(static_cast<long>(r5.size()) == direct);
}

TEST_CASE("construct_map fixtures") {
  TripleParam t1{Rational::parse("-1/3"), Rational::parse("-1/5"), Rational::parse("-3/5")};
  auto m1 = construct_map(t1);
  REQUIRE(m1.has_value());
  CHECK(*m1 == fixtures::min_ratio_rat_map());
  TripleParam t2{Rational::parse("-1/3"), Rational::parse("-11/15"), Rational::parse("-3/5")};
  auto m2 = construct_map(t2);
  REQUIRE(m2.has_value());
  CHECK(*m2 == fixtures::length8_maps()[0].map);
  TripleParam t3{Rational::parse("3/14"), Rational::parse("19/21"), Rational::parse("1/7")};
  auto m3 = construct_map(t3);
  REQUIRE(m3.has_value());
  CHECK(*m3 == fixtures::seven_cycle_map());
  CHECK_THROWS_AS(construct_map(TripleParam{Rational(1), Rational(2), Rational(3)}),
                  std::domain_error);
}

TEST_CASE("six-point orbit contract on 1000 random triples") {
  std::mt19937 rng(14);
  std::uniform_int_distribution<long> num(-25, 25);
  std::uniform_int_distribution<long> den(1, 25);
  long tested = 0;
  while (tested < 1000) {
    TripleParam t{Rational(num(rng), den(rng)), Rational(num(rng), den(rng)),
                  Rational(num(rng), den(rng))};
    if (!t.valid()) continue;
    auto phi = construct_map(t);
    if (!phi) continue;
    ++tested;
    P1Point cur = P1Point::infinity();
    const Rational expect[5] = {Rational(1), Rational(0), t.x3, t.x4, t.x5};
    for (const auto& e : expect) {
      cur = phi->apply(cur);
      CHECK(cur == P1Point(e));
    }
  }
}

TEST_CASE("fast and generic construction agree") {
  // fabricate coordinates beyond the small-path cutoff to force the generic
  // route, then compare against the small route on scaled-down copies
  std::mt19937 rng(88);
  std::uniform_int_distribution<long> num(-59, 59);
  std::uniform_int_distribution<long> den(1, 59);
  long tested = 0;
  while (tested < 300) {
    TripleParam t{Rational(num(rng), den(rng)), Rational(num(rng), den(rng)),
                  Rational(num(rng), den(rng))};
    if (!t.valid()) continue;
    ++tested;
    auto fast = construct_map(t);
    // generic path, reproduced inline from the raw coefficient formulas
    TripleCoeffs c = triple_coeffs(t);
    Rational f2 = c.a1, f1 = c.a0 - c.a1, f0 = -c.a0;
    Integer l(1);
    for (const Rational* q : {&f2, &f1, &f0, &c.b1, &c.b0}) l = Integer::lcm(l, q->den());
    auto lift = [&](const Rational& q) { return Integer::divexact(l, q.den()) * q.num(); };
    IntPoly f(std::vector<Integer>{lift(f0), lift(f1), lift(f2)});
    IntPoly g(std::vector<Integer>{lift(c.b0), lift(c.b1), lift(f2)});
    auto generic = QuadRatMap::try_create(std::move(f), std::move(g));
    CHECK(fast.has_value() == generic.has_value());
    if (fast && generic) {
      CHECK(*fast == *generic);
      CHECK(fast->resultant() == generic->resultant());
    }
  }
}

TEST_CASE("desk search at coordinate cap 7 finds the record triple") {
  RatSearchConfig cfg;
  cfg.height_cap = 7;
  auto recs = rat_search(cfg, 2);
  REQUIRE(!recs.empty());
  const RatRecord* best = nullptr;
  for (const auto& r : recs) {
    if (r.kind != RatRecord::Kind::SmallHeight) continue;
    if (!best || r.ratio < best->ratio) best = &r;
  }
  REQUIRE(best != nullptr);
  // pairs tie exactly (the partner of phi(inf)'s other preimage has equal
  // canonical height), so the minimum is a two-element band; the published
  // triple must sit inside it
  const RatRecord* record_triple = nullptr;
  for (const auto& r : recs) {
    if (r.triple.x3 == Rational::parse("-1/3") && r.triple.x4 == Rational::parse("-1/5") &&
        r.triple.x5 == Rational::parse("-3/5"))
      record_triple = &r;
  }
  REQUIRE(record_triple != nullptr);
  CHECK(record_triple->ratio <= best->ratio + 1e-5);
  CHECK(std::fabs(best->ratio - 0.000466) < 2e-5);
  CHECK(std::fabs(record_triple->ratio - 0.000466) < 2e-5);
  CHECK(std::fabs(record_triple->estimate - 0.00360) < 1e-4);
  REQUIRE(record_triple->map.has_value());
  CHECK(*record_triple->map == fixtures::min_ratio_rat_map());
  // the two minimum records are each other's marked partners
  REQUIRE(record_triple->partner.has_value());
  CHECK(record_triple->partner->x3 == Rational(7));
  CHECK(record_triple->partner->x4 == Rational(-7, 2));
  CHECK(record_triple->partner->x5 == Rational(7, 3));

  // the tail-6 triple from the published length-8 table is in range
  bool found62 = false;
  for (const auto& r : recs) {
    if (r.kind != RatRecord::Kind::Preperiodic || !r.label) continue;
    if (r.triple.x3 == Rational(-3) && r.triple.x4 == Rational(7, 3) &&
        r.triple.x5 == Rational::parse("-1/3")) {
      found62 = true;
      CHECK(r.label->tail == 6);
      CHECK(r.label->period == 2);
    }
  }
  CHECK(found62);
}

TEST_CASE("range contract: no coordinate exceeds the cap") {
  RatSearchConfig cfg;
  cfg.height_cap = 4;
  for (const auto& r : rat_search(cfg, 2)) {
    for (const Rational* q : {&r.triple.x3, &r.triple.x4, &r.triple.x5}) {
      CHECK(q->num().abs() <= Integer(4));
      CHECK(q->den() <= Integer(4));
    }
  }
}

TEST_CASE("emitted records respect the design invariants") {
  RatSearchConfig cfg;
  cfg.height_cap = 5;
  auto recs = rat_search(cfg, 1);
  for (const auto& r : recs) {
    REQUIRE(r.map.has_value());
    // none on the tail-4 locus, all nondegenerate, ratio uses the moduli height
    CHECK(!on_x42(r.triple));
    if (r.kind == RatRecord::Kind::SmallHeight) {
      CHECK(r.map_height > 0.0);
      CHECK(r.ratio == doctest::Approx(r.estimate / r.map_height));
      CHECK(r.floor <= r.estimate + 1e-9);
    } else {
      REQUIRE(r.label.has_value());
      OrbitRecord orb = detect_orbit(*r.map, P1Point::infinity(), 30);
      REQUIRE(orb.resolved);
      CHECK(classify_orbit(orb) == *r.label);
      CHECK(r.label->tail + r.label->period >= 6);
    }
  }
}

TEST_CASE("preperiodic records pair up via the second preimage") {
  RatSearchConfig cfg;
  cfg.height_cap = 5;
  auto recs = rat_search(cfg, 2);
  long paired = 0;
  for (const auto& r : recs) {
    if (r.kind != RatRecord::Kind::Preperiodic || !r.label || r.label->tail < 1) continue;
    auto partner = preimage_partner(*r.map, P1Point::infinity());
    if (!partner) continue;
    OrbitRecord orb = detect_orbit(*r.map, *partner, 30);
    REQUIRE(orb.resolved);
    ModuliLabel pl = classify_orbit(orb);
    if (r.label->tail >= 2) {
      // the partner enters the cycle at the same depth
      CHECK(pl == *r.label);
    } else {
      // tail 1: the second preimage of phi(inf) may be the cycle point that
      // closes the loop, in which case the pair sits over the periodic locus
      bool same = pl == *r.label;
      bool closing = pl == ModuliLabel{0, r.label->period};
      CHECK((same || closing));
    }
    CHECK(r.map->apply(*partner) == r.map->apply(P1Point::infinity()));
    ++paired;
  }
  CHECK(paired > 10);
}

TEST_CASE("step-5 prune soundness is an algebraic implication") {
  // h(phi^i(inf)) >= 2^i r h(phi) + C forces the resultant floor over r h(phi)
  std::mt19937 rng(3);
  std::uniform_int_distribution<long> num(-6, 6);
  std::uniform_int_distribution<long> den(1, 6);
  long tested = 0;
  while (tested < 50) {
    TripleParam t{Rational(num(rng), den(rng)), Rational(num(rng), den(rng)),
                  Rational(num(rng), den(rng))};
    if (!t.valid()) continue;
    auto phi = construct_map(t);
    if (!phi) continue;
    ++tested;
    HeightBoundData hbd = height_bound_data(*phi);
    SigmaInvariants sig = sigma_invariants(*phi);
    double r = 0.002;
    P1Point x = phi->apply_iter(P1Point::infinity(), 8);
    double h8 = x.height();
    if (h8 >= std::ldexp(r * sig.map_height, 8) + hbd.C) {
      double floor = std::ldexp(h8 - hbd.C, -8);
      CHECK(floor >= r * sig.map_height - 1e-12);
    }
  }
}

TEST_CASE("worker count does not change the result") {
  RatSearchConfig cfg;
  cfg.height_cap = 4;
  auto one = rat_search(cfg, 1);
  auto four = rat_search(cfg, 4);
  REQUIRE(one.size() == four.size());
  for (size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].triple.x3 == four[i].triple.x3);
    CHECK(one[i].triple.x4 == four[i].triple.x4);
    CHECK(one[i].triple.x5 == four[i].triple.x5);
    CHECK(one[i].estimate == four[i].estimate);
  }
}

TEST_CASE("sigma routes agree") {
  // the closed-form numerators against the quotient-algebra reference
  std::mt19937 rng(1212);
  std::uniform_int_distribution<long> d(-60, 60);
  long tested = 0;
  while (tested < 400) {
    auto phi = QuadRatMap::try_create(IntPoly({d(rng), d(rng), d(rng)}),
                                      IntPoly({d(rng), d(rng), d(rng)}));
    if (!phi) continue;
    ++tested;
    SigmaInvariants fast = sigma_invariants(*phi);
    SigmaInvariants ref = sigma_invariants_algebraic(*phi);
    CHECK(fast.s1 == ref.s1);
    CHECK(fast.s2 == ref.s2);
    CHECK(fast.s3 == ref.s3);
    CHECK(fast.map_height == ref.map_height);
  }
}
