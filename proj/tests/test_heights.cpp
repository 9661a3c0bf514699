#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qdyn/fixtures.hpp"
#include "qdyn/heights.hpp"

using namespace qdyn;

namespace {

// Dense-grid oracle: an upper bound for
//   min over R-union-infinity of max(|f|,|g|) / max(t^2,1),
// sampling both charts on a fine grid.
double grid_min_upper(const QuadRatMap& phi, int samples = 20000) {
  auto val = [&](const IntPoly& a, const IntPoly& b, double s) {
    auto horner = [&](const IntPoly& p) {
      double acc = 0;
      for (long i = 2; i >= 0; --i) acc = acc * s + p.coeff(i).to_double();
      return std::fabs(acc);
    };
    return std::max(horner(a), horner(b));
  };
  IntPoly fr = phi.f().reverse(2), gr = phi.g().reverse(2);
  double best = val(phi.f(), phi.g(), 0.0);
  for (int i = 0; i <= samples; ++i) {
    double s = -1.0 + 2.0 * i / samples;
    best = std::min(best, val(phi.f(), phi.g(), s));
    best = std::min(best, val(fr, gr, s));
  }
  return best;
}

}  // namespace

TEST_CASE("height bound data for z^2 is exact") {
  HeightBoundData hbd = height_bound_data(QuadRatMap::poly_map(Rational(0)));
  CHECK(hbd.R == Integer(1));
  CHECK(hbd.D_exact == Rational(1));
  CHECK(hbd.C == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("certified minimum against the dense grid oracle") {
  std::vector<QuadRatMap> maps;
  maps.push_back(QuadRatMap::poly_map(Rational::parse("-181/144")));
  maps.push_back(fixtures::seven_cycle_map());
  maps.push_back(fixtures::min_ratio_rat_map());
  std::mt19937 rng(31);
  std::uniform_int_distribution<long> d(-20, 20);
  while (maps.size() < 40) {
    auto phi = QuadRatMap::try_create(IntPoly({d(rng), d(rng), d(rng)}),
                                      IntPoly({d(rng), d(rng), d(rng)}));
    if (phi) maps.push_back(*phi);
  }
  for (const auto& phi : maps) {
    HeightBoundData hbd = height_bound_data(phi);
    CHECK(!hbd.exhausted);
    double grid = grid_min_upper(phi);
    CHECK(hbd.D > 0.0);
    // certified lower bound cannot exceed the sampled value...
    CHECK(hbd.D <= grid * (1 + 1e-9));
    // ...and the 1% gap plus grid granularity keeps it close
    CHECK(hbd.D >= grid * 0.97);
  }
}

TEST_CASE("record polynomial pair height bound data") {
  QuadRatMap phi = QuadRatMap::poly_map(Rational::parse("-181/144"));
  HeightBoundData hbd = height_bound_data(phi);
  CHECK(hbd.R == Integer::pow(Integer(144), 4));
  CHECK(hbd.D <= 144.0);
  // true minimum is 144^2/325 at |t| = sqrt(325)/12
  double true_min = 144.0 * 144.0 / 325.0;
  CHECK(hbd.D <= true_min * (1 + 1e-9));
  CHECK(hbd.D >= true_min * 0.99 * (1 - 1e-9));
  HeightBoundData hbd2 = height_bound_data(fixtures::seven_cycle_map());
  CHECK(hbd2.C > 0.0);
  CHECK(std::isfinite(hbd2.C));
}

TEST_CASE("canonical height of the record polynomial pair") {
  QuadRatMap phi = QuadRatMap::poly_map(Rational::parse("-181/144"));
  CanonicalHeightResult ch = canonical_height_refined(phi, P1Point::parse("7/12"), 1e-6);
  CHECK(std::fabs(ch.estimate - 0.03433) < 1e-4);
  CHECK(ch.floor <= ch.estimate + 1e-12);
  CHECK(!ch.preperiodic);
  double hc = Rational::parse("-181/144").height();
  CHECK(std::fabs(ch.estimate / hc - 0.00660) < 1e-4);
}

TEST_CASE("canonical height of preperiodic points is exactly zero") {
  CanonicalHeightResult ch =
      canonical_height(fixtures::seven_cycle_map(), P1Point::infinity(), 30);
  CHECK(ch.preperiodic);
  CHECK(ch.estimate == 0.0);
  CHECK(ch.floor <= 0.0);
}

TEST_CASE("canonical height of the record rational pair") {
  QuadRatMap psi = fixtures::min_ratio_rat_map();
  CanonicalHeightResult ch = canonical_height_refined(psi, P1Point::infinity(), 1e-6);
  CHECK(std::fabs(ch.estimate - 0.00360) < 1e-4);
}

TEST_CASE("floor never exceeds the estimate and respects the functional equation") {
  std::mt19937 rng(4321);
  std::uniform_int_distribution<long> d(-9, 9);
  int tested = 0;
  while (tested < 60) {
    auto phi = QuadRatMap::try_create(IntPoly({d(rng), d(rng), d(rng)}),
                                      IntPoly({d(rng), d(rng), d(rng)}));
    if (!phi) continue;
    P1Point x(Integer(d(rng)), Integer(1));
    ++tested;
    long iters = 14;
    CanonicalHeightResult ch = canonical_height(*phi, x, iters);
    if (ch.preperiodic) {
      CHECK(ch.floor <= 1e-12);
      continue;
    }
    CHECK(ch.floor <= ch.estimate + std::ldexp(upper_growth_const(*phi), -int(iters)) + 1e-9);
    // |2 est(x) - est(phi x)| below the certified tolerance at these iterates
    CanonicalHeightResult chf = canonical_height(*phi, phi->apply(x), iters);
    if (!chf.preperiodic) {
      double tol = std::ldexp(std::max(height_bound_data(*phi).C, upper_growth_const(*phi)),
                              -int(iters)) *
                   3.0;
      CHECK(std::fabs(2.0 * ch.estimate - chf.estimate) <= tol + 1e-9);
    }
  }
}

TEST_CASE("p-adic height floor cases") {
  // s = v_2(c) = -2
  CHECK(padic_height_floor(Rational(3, 4), Integer(2), 5) == doctest::Approx(0.5 * M_LN2));
  // s = v_2(c) = -4
  CHECK(padic_height_floor(Rational(7, 16), Integer(2), 1) == doctest::Approx(M_LN2));
  // odd s, p = 5
  CHECK(padic_height_floor(Rational(2, 125), Integer(5), 3) ==
        doctest::Approx(0.5 * std::log(5.0)));
  // even s <= -2, p = 3, i = 0: 2^{-1} (2 - s) log 3
  CHECK(padic_height_floor(Rational(1, 9), Integer(3), 0) ==
        doctest::Approx(0.5 * 4.0 * std::log(3.0)));
  // nonnegative valuation lands in the otherwise case
  CHECK(padic_height_floor(Rational(5), Integer(3), 2) == doctest::Approx(0.5 * std::log(3.0)));
  CHECK_THROWS_AS(padic_height_floor(Rational(1, 4), Integer(6), 1), std::domain_error);
}

TEST_CASE("canonical_height rejects bad iteration counts") {
  CHECK_THROWS_AS(canonical_height(QuadRatMap::poly_map(Rational(0)), P1Point::infinity(), 0),
                  std::domain_error);
}
