#include "qdyn/parametrization.hpp"

#include <stdexcept>

namespace qdyn {

bool TripleParam::valid() const {
  const Rational zero(0), one(1);
  const Rational* v[3] = {&x3, &x4, &x5};
  for (int i = 0; i < 3; ++i) {
    if (*v[i] == zero || *v[i] == one) return false;
    for (int j = i + 1; j < 3; ++j)
      if (*v[i] == *v[j]) return false;
  }
  return true;
}

std::string TripleParam::to_string() const {
  return "(" + x3.to_string() + ", " + x4.to_string() + ", " + x5.to_string() + ")";
}

TripleCoeffs triple_coeffs(const TripleParam& t) {
  const Rational &x3 = t.x3, &x4 = t.x4, &x5 = t.x5;
  Rational x3s = x3 * x3;
  TripleCoeffs c;
  c.a1 = x4 * (x3s * x4 - x3s * x5 - x3s + Rational(2) * x3 * x5 - x4 * x5);
  c.a0 = x3s * x4 * (x4 - Rational(1)) * (x5 - x4 + x4 * x5 - x3 * x5);
  c.b0 = -(c.a0 / x3);
  c.b1 = x3s * x4 * x4 * x5 - x3s * x3 * x4 * x4 + Rational(2) * x3s * x3 * x4 - x3s * x4 * x4 +
         x4 * x4 * x4 * x5 - x3s * x4 * x5 - x3 * x4 * x4 * x5 - x3s * x3 + x3 * x4 * x4 -
         x4 * x4 * x4 + x3s * x5 + x3s - x3 * x4 + x4 * x4 - x3 * x5;
  return c;
}

namespace {

using i128 = __int128;

i128 iabs128(i128 v) { return v < 0 ? -v : v; }

i128 gcd_i128(i128 a, i128 b) {
  a = iabs128(a);
  b = iabs128(b);
  while (b) {
    i128 r = a % b;
    a = b;
    b = r;
  }
  return a;
}

// Exact 128-bit evaluation of the cleared coefficient six-tuple when the
// coordinates are small. Writing x3 = A/q, x4 = B/q, x5 = C/q over the
// common denominator q = q3 q4 q5, every coefficient polynomial has total
// degree <= 6, so its q^6-homogenization is an integer polynomial in
// (A, B, C, q); with |A|,|B|,|C|,q <= 60^3 < 2^18 all sums stay well inside
// 128 bits. The shared q^6 cancels projectively.
std::optional<QuadRatMap> construct_map_small(const TripleParam& t) {
  const long lim = 60;
  long p3, q3, p4, q4, p5, q5;
  auto grab = [&](const Rational& r, long& p, long& q) {
    if (!r.num().fits_long() || !r.den().fits_long()) return false;
    p = r.num().to_long();
    q = r.den().to_long();
    return std::labs(p) <= lim && q <= lim;
  };
  if (!grab(t.x3, p3, q3) || !grab(t.x4, p4, q4) || !grab(t.x5, p5, q5)) return std::nullopt;

  const i128 q = static_cast<i128>(q3) * q4 * q5;
  const i128 A = static_cast<i128>(p3) * q4 * q5;
  const i128 B = static_cast<i128>(p4) * q3 * q5;
  const i128 C = static_cast<i128>(p5) * q3 * q4;
  const i128 q2 = q * q, qq3 = q2 * q;

  // v = x5 - x4 + x4 x5 - x3 x5 scaled by q^2; u = (x4 - 1) scaled by q
  const i128 V = C * q - B * q + B * C - A * C;
  const i128 U = B - q;
  const i128 W = U * V;  // (x4-1) v scaled by q^3

  // a1 = x4 (x3^2 x4 - x3^2 x5 - x3^2 + 2 x3 x5 - x4 x5): inner scaled q^3
  const i128 inner = A * A * B - A * A * C - A * A * q + 2 * A * C * q - B * C * q;
  const i128 a1_q4 = B * inner;            // a1 q^4
  const i128 a1 = a1_q4 * q2;       // a1 q^6
  const i128 a0 = A * A * B * W;    // x3^2 x4 (x4-1) v  = a0 q^6
  const i128 b0 = -(A * B * W) * q; // -x3 x4 (x4-1) v   = b0 q^6
  // b1 on the q^5 scale, term by term, then one more q
  const i128 A2 = A * A, B2 = B * B;
  i128 b1v = A2 * B2 * C - A2 * A * B2 + 2 * A2 * A * B * q - A2 * B2 * q + B2 * B * C * q -
             A2 * B * C * q - A * B2 * C * q + (-A2 * A + A * B2 - B2 * B + A2 * C) * q2 +
             (A2 - A * B + B2 - A * C) * qq3;
  b1v *= q;  // b1 q^6

  i128 f2 = a1, f1 = a0 - a1, f0 = -a0;
  i128 g0 = b0, g1 = b1v, g2 = a1;

  i128 cont = gcd_i128(gcd_i128(gcd_i128(f0, f1), gcd_i128(f2, g0)), gcd_i128(g1, g2));
  if (cont == 0) return std::nullopt;
  int sgn = g2 > 0 ? 1 : (g2 < 0 ? -1 : 0);
  if (sgn == 0) sgn = g1 > 0 ? 1 : (g1 < 0 ? -1 : 0);
  if (sgn == 0) sgn = g0 > 0 ? 1 : (g0 < 0 ? -1 : 0);
  if (sgn == 0) sgn = f2 > 0 ? 1 : (f2 < 0 ? -1 : (f1 > 0 ? 1 : (f1 < 0 ? -1 : (f0 >= 0 ? 1 : -1))));
  if (sgn < 0) cont = -cont;
  f0 /= cont; f1 /= cont; f2 /= cont;
  g0 /= cont; g1 /= cont; g2 /= cont;

  auto big = [](i128 v) { return Integer::from_i128(v); };
  IntPoly f(std::vector<Integer>{big(f0), big(f1), big(f2)});
  IntPoly g(std::vector<Integer>{big(g0), big(g1), big(g2)});

  // degeneracy test: 4x4 Sylvester determinant, in 128 bits when safe
  const i128 safe = static_cast<i128>(1) << 30;
  i128 mx = 0;
  for (i128 v : {f0, f1, f2, g0, g1, g2}) mx = std::max(mx, iabs128(v));
  Integer res;
  if (mx <= safe) {
    // rows (f2 f1 f0 0 / 0 f2 f1 f0 / g2 g1 g0 0 / 0 g2 g1 g0)
    auto det2 = [](i128 a, i128 b, i128 c, i128 d) { return a * d - b * c; };
    // Laplace along the first two rows
    i128 m01 = det2(f2, f1, 0, f2), m02 = det2(f2, f0, 0, f1), m03 = det2(f2, 0, 0, f0);
    i128 m12 = det2(f1, f0, f2, f1), m13 = det2(f1, 0, f2, f0), m23 = det2(f0, 0, f1, f0);
    i128 n01 = det2(g2, g1, 0, g2), n02 = det2(g2, g0, 0, g1), n03 = det2(g2, 0, 0, g0);
    i128 n12 = det2(g1, g0, g2, g1), n13 = det2(g1, 0, g2, g0), n23 = det2(g0, 0, g1, g0);
    i128 det = m01 * n23 - m02 * n13 + m03 * n12 + m12 * n03 - m13 * n02 + m23 * n01;
    if (det == 0) return std::nullopt;
    res = Integer::from_i128(det);
  } else {
    res = resultant_forms(f, g, 2);
    if (res.is_zero()) return std::nullopt;
  }
  return QuadRatMap::from_normalized(std::move(f), std::move(g), std::move(res));
}

}  // namespace

std::optional<QuadRatMap> construct_map(const TripleParam& t) {
  if (!t.valid()) throw std::domain_error("triple violates the parametrization invariants");
  if (auto fast = construct_map_small(t)) return fast;
  TripleCoeffs c = triple_coeffs(t);
  // f = (a1 z + a0)(z - 1), g = a1 z^2 + b1 z + b0, cleared to integers
  Rational f2 = c.a1, f1 = c.a0 - c.a1, f0 = -c.a0;
  Integer l(1);
  for (const Rational* q : {&f2, &f1, &f0, &c.b1, &c.b0}) l = Integer::lcm(l, q->den());
  auto lift = [&](const Rational& q) { return Integer::divexact(l, q.den()) * q.num(); };
  IntPoly f(std::vector<Integer>{lift(f0), lift(f1), lift(f2)});
  IntPoly g(std::vector<Integer>{lift(c.b0), lift(c.b1), lift(f2)});
  return QuadRatMap::try_create(std::move(f), std::move(g));
}

std::optional<Rational> x42_x5(const Rational& x3, const Rational& x4) {
  Rational den = x3 * x3 - Rational(2) * x3 + x4;
  if (den.is_zero()) return std::nullopt;
  return (x4 - x3) / den;
}

bool on_x42(const TripleParam& t) {
  return t.x5 * (t.x3 * t.x3 - Rational(2) * t.x3 + t.x4) == t.x4 - t.x3;
}

X42ResultantCheck x42_resultant_factored(const Rational& x3, const Rational& x4) {
  X42ResultantCheck out;
  auto x5 = x42_x5(x3, x4);
  if (!x5) throw std::domain_error("point is outside the (x3,x4) chart");
  TripleCoeffs c = triple_coeffs({x3, x4, *x5});
  Rational chart = x3 * x3 - Rational(2) * x3 + x4;
  // each coefficient is linear in x5, so clearing its chart-denominator
  // multiplies the bidegree-(2,2) resultant by chart^4; the displayed
  // factorization is for the cleared coefficients (global constant 1)
  std::vector<Rational> f = {-c.a0 * chart, (c.a0 - c.a1) * chart, c.a1 * chart};
  std::vector<Rational> g = {c.b0 * chart, c.b1 * chart, c.a1 * chart};
  out.resultant = resultant_forms_q(f, g, 2);
  Rational one(1), d = x3 - one, e = x4 - one;
  Rational degen = x3 * x4 - x3 + x4;
  Rational d2 = d * d, d4 = d2 * d2;
  Rational degen2 = degen * degen;
  out.predicted = x3 * x3 * x4 * x4 * (x3 - x4) * d4 * d4 * e * e * chart *
                  degen2 * degen2 * degen;
  out.match = out.resultant == out.predicted;
  return out;
}

bool x52_membership(const Rational& x3, const Rational& x4, const Rational& w) {
  return x52_g(x3, x4, w).is_zero();
}

}  // namespace qdyn
