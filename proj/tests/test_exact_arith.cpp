#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qdyn/intpoly.hpp"
#include "qdyn/rational.hpp"

using namespace qdyn;

TEST_CASE("rational reduction to canonical lowest terms") {
  Rational a = Rational::reduce(Integer(14), Integer(-12));
  CHECK(a.num() == Integer(-7));
  CHECK(a.den() == Integer(6));
  Rational z = Rational::reduce(Integer(0), Integer(5));
  CHECK(z.num() == Integer(0));
  CHECK(z.den() == Integer(1));
  Rational c = Rational::reduce(Integer(181), Integer(144));
  CHECK(c.num() == Integer(181));
  CHECK(c.den() == Integer(144));
  CHECK_THROWS_AS(Rational::reduce(Integer(3), Integer(0)), std::domain_error);
}

TEST_CASE("reduce(ka, kb) = reduce(a, b) for nonzero k") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<long> d(-300, 300);
  for (int i = 0; i < 500; ++i) {
    long a = d(rng), b = d(rng), k = d(rng);
    if (b == 0 || k == 0) continue;
    CHECK(Rational::reduce(Integer(k) * Integer(a), Integer(k) * Integer(b)) ==
          Rational::reduce(Integer(a), Integer(b)));
  }
}

TEST_CASE("p-adic valuation on rationals") {
  CHECK(valuation(Rational(12, 5), Integer(2)) == 2);
  CHECK(valuation(Rational(7, 12), Integer(2)) == -2);
  CHECK(valuation(Rational(7, 12), Integer(5)) == 0);
  CHECK(!valuation(Rational(0), Integer(7)).has_value());  // +infinity
  CHECK_THROWS_AS(valuation(Rational(3), Integer(6)), std::domain_error);
  CHECK_THROWS_AS(valuation(Rational(3), Integer(1)), std::domain_error);
}

TEST_CASE("valuation is additive on products") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> d(-400, 400);
  const Integer primes[3] = {Integer(2), Integer(3), Integer(7)};
  for (int i = 0; i < 300; ++i) {
    long an = d(rng), ad = d(rng), bn = d(rng), bd = d(rng);
    if (an == 0 || ad == 0 || bn == 0 || bd == 0) continue;
    Rational a(an, ad), b(bn, bd);
    for (const auto& p : primes)
      CHECK(*valuation(a * b, p) == *valuation(a, p) + *valuation(b, p));
  }
}

TEST_CASE("projective point canonical form") {
  P1Point p(Integer(-3), Integer(-6));
  CHECK(p.a() == Integer(1));
  CHECK(p.b() == Integer(2));
  P1Point inf(Integer(-4), Integer(0));
  CHECK(inf.is_infinity());
  CHECK(inf.a() == Integer(1));
  CHECK(inf == P1Point::infinity());
  CHECK_THROWS_AS(P1Point(Integer(0), Integer(0)), std::domain_error);
  CHECK(P1Point::parse("7/12").height() == doctest::Approx(std::log(12.0)));
  CHECK(P1Point::infinity().height() == 0.0);
  CHECK(P1Point::parse("-377/324").height() == doctest::Approx(std::log(377.0)));
}

TEST_CASE("resultant of homogenized degree-2 forms: fixed values") {
  // z^2 against the constant 1 homogenized to w^2
  CHECK(resultant_forms(IntPoly({0, 0, 1}), IntPoly({1}), 2) == Integer(1));
  // shared affine root z = 1
  CHECK(resultant_forms(IntPoly({-1, 0, 1}), IntPoly({-1, 1}), 2) == Integer(0));
  // shared root at infinity when both degrees drop
  CHECK(resultant_forms(IntPoly({1, 1}), IntPoly({3, 1}), 2) == Integer(0));
  CHECK(resultant_forms(IntPoly({1, 1}), IntPoly({3, 1}), 1) == Integer(2));
}

namespace {

// Independent oracle: resultant via the root-product formula over F_p for
// split forms, compared on several primes.
long mod_eval_form(const std::vector<long>& c, long a, long b, long d, long p) {
  long acc = 0;
  long bp = 1;
  std::vector<long> apow(static_cast<size_t>(d) + 1, 1);
  for (long i = 1; i <= d; ++i) apow[static_cast<size_t>(i)] = apow[static_cast<size_t>(i - 1)] * a % p;
  for (long i = d; i >= 0; --i) {
    long ci = i < static_cast<long>(c.size()) ? ((c[static_cast<size_t>(i)] % p) + p) % p : 0;
    acc = (acc + ci % p * apow[static_cast<size_t>(i)] % p * bp) % p;
    bp = bp * b % p;
  }
  return acc;
}

// Roots of the degree-d homogenization of c over P^1(F_p), with multiplicity,
// found by trial division of the form.
bool split_roots(std::vector<long> c, long d, long p, std::vector<std::pair<long, long>>& roots,
                 long& unit) {
  // represent the form by its coefficient list c[0..d] (z^i w^{d-i});
  std::vector<long> cur(static_cast<size_t>(d) + 1);
  for (long i = 0; i <= d; ++i)
    cur[static_cast<size_t>(i)] = i < static_cast<long>(c.size()) ? (((c[static_cast<size_t>(i)] % p) + p) % p) : 0;
  roots.clear();
  long deg = d;
  while (deg > 0) {
    bool found = false;
    for (long a = 0; a < p && !found; ++a) {
      // candidate root (a : 1)
      long acc = 0;
      for (long i = deg; i >= 0; --i) acc = (acc * a + cur[static_cast<size_t>(i)]) % p;
      if (acc == 0) {
        roots.push_back({a, 1});
        // synthetic division by (z - a)
        std::vector<long> q(static_cast<size_t>(deg), 0);
        long carry = cur[static_cast<size_t>(deg)];
        for (long i = deg - 1; i >= 0; --i) {
          q[static_cast<size_t>(i)] = carry;
          carry = (cur[static_cast<size_t>(i)] + carry * a) % p;
        }
        cur.assign(q.begin(), q.end());
        --deg;
        found = true;
      }
    }
    if (!found) {
      if (cur[static_cast<size_t>(deg)] % p == 0) {
        // root at infinity (1 : 0): drop the top coefficient
        roots.push_back({1, 0});
        cur.pop_back();
        --deg;
      } else {
        return false;  // irreducible factor; oracle skips this prime
      }
    }
  }
  unit = ((cur[0] % p) + p) % p;
  return true;
}

}  // namespace

TEST_CASE("resultant agrees with the mod-p root-product oracle") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<long> d(-9, 9);
  const long primes[] = {101, 103, 107, 109, 113};
  int compared = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<long> fc = {d(rng), d(rng), d(rng)};
    std::vector<long> gc = {d(rng), d(rng), d(rng)};
    IntPoly f(std::vector<Integer>{Integer(fc[0]), Integer(fc[1]), Integer(fc[2])});
    IntPoly g(std::vector<Integer>{Integer(gc[0]), Integer(gc[1]), Integer(gc[2])});
    if (f.degree() < 0 || g.degree() < 0) continue;
    Integer r = resultant_forms(f, g, 2);
    for (long p : primes) {
      std::vector<std::pair<long, long>> roots;
      long unit = 0;
      if (!split_roots(fc, 2, p, roots, unit)) continue;
      // Res = unit^{deg G} * prod G(root_i)
      long prod = 1;
      for (auto& [a, b] : roots) prod = prod * mod_eval_form(gc, a, b, 2, p) % p;
      prod = prod * (unit * unit % p) % p;
      long rm = ((r % Integer(p)).to_long() % p + p) % p;
      CHECK(rm == prod);
      ++compared;
    }
  }
  CHECK(compared > 200);
}

TEST_CASE("resultant is multiplicative in the first argument") {
  std::mt19937 rng(5150);
  std::uniform_int_distribution<long> d(-7, 7);
  for (int trial = 0; trial < 200; ++trial) {
    IntPoly f1({d(rng), d(rng)});
    IntPoly f2({d(rng), d(rng)});
    IntPoly g({d(rng), d(rng), d(rng)});
    if (f1.is_zero() || f2.is_zero() || g.is_zero()) continue;
    CHECK(resultant_forms(f1 * f2, 2, g, 2) ==
          resultant_forms(f1, 1, g, 2) * resultant_forms(f2, 1, g, 2));
  }
}

TEST_CASE("resultant vanishes exactly when the homogenized gcd is nonconstant") {
  std::mt19937 rng(31337);
  std::uniform_int_distribution<long> d(-6, 6);
  for (int trial = 0; trial < 400; ++trial) {
    IntPoly f({d(rng), d(rng), d(rng)});
    IntPoly g({d(rng), d(rng), d(rng)});
    if (f.is_zero() || g.is_zero()) continue;
    bool res_zero = resultant_forms(f, g, 2).is_zero();
    // homogenized common factor: affine gcd nonconstant, or both degrees < 2
    bool common = IntPoly::gcd(f, g).degree() > 0 || (f.degree() < 2 && g.degree() < 2);
    CHECK(res_zero == common);
  }
}

TEST_CASE("integer polynomial gcd basics") {
  IntPoly a({-1, 0, 1});        // z^2 - 1
  IntPoly b({1, 1});            // z + 1
  CHECK(IntPoly::gcd(a, b) == b);
  IntPoly c({2, 2});
  CHECK(IntPoly::gcd(a * c, b * c) == b * c);
  CHECK(IntPoly::gcd(IntPoly(), a) == a);
}

TEST_CASE("factorization helper") {
  auto fs = factor(Integer(144));
  REQUIRE(fs.size() == 2);
  CHECK(fs[0].first == Integer(2));
  CHECK(fs[0].second == 4);
  CHECK(fs[1].first == Integer(3));
  CHECK(fs[1].second == 2);
  CHECK(is_prime(Integer(4655)) == false);
  CHECK(is_prime(Integer(59)));
}
