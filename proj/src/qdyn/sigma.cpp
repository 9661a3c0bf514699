#include "qdyn/sigma.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace qdyn {

namespace {

using QVec = std::array<Rational, 3>;  // element of Q[z]/(Phi), basis 1, z, z^2

// Monic cubic modulus z^3 + m2 z^2 + m1 z + m0.
struct CubicMod {
  Rational m0, m1, m2;

  QVec reduce(std::vector<Rational> c) const {
    while (c.size() > 3) {
      Rational top = c.back();
      c.pop_back();
      size_t d = c.size();  // degree of the removed term is d
      c[d - 1] = c[d - 1] - top * m2;
      c[d - 2] = c[d - 2] - top * m1;
      c[d - 3] = c[d - 3] - top * m0;
    }
    c.resize(3, Rational(0));
    return {c[0], c[1], c[2]};
  }

  QVec mul(const QVec& a, const QVec& b) const {
    std::vector<Rational> c(5, Rational(0));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) c[i + j] = c[i + j] + a[i] * b[j];
    return reduce(std::move(c));
  }

  // multiply by z
  QVec mulz(const QVec& a) const {
    return reduce({Rational(0), a[0], a[1], a[2]});
  }
};

bool qvec_zero(const QVec& v) { return v[0].is_zero() && v[1].is_zero() && v[2].is_zero(); }

// Inverse of u modulo the cubic, by the extended Euclidean algorithm in Q[z].
QVec invert_mod(const CubicMod& mod, const QVec& u) {
  using Poly = std::vector<Rational>;
  auto deg = [](const Poly& p) {
    for (long i = static_cast<long>(p.size()) - 1; i >= 0; --i)
      if (!p[i].is_zero()) return i;
    return -1L;
  };
  auto trim = [&](Poly& p) { p.resize(static_cast<size_t>(deg(p) + 1)); };
  Poly a = {mod.m0, mod.m1, mod.m2, Rational(1)};
  Poly b = {u[0], u[1], u[2]};
  trim(b);
  if (b.empty()) throw std::domain_error("inverting zero in the fixed-point algebra");
  // maintain s*u = b (mod Phi)
  Poly s_prev = {}, s_cur = {Rational(1)};
  while (deg(b) > 0) {
    // divide a by b
    Poly q(static_cast<size_t>(deg(a) - deg(b) + 1), Rational(0));
    Poly r = a;
    while (deg(r) >= deg(b)) {
      long k = deg(r) - deg(b);
      Rational f = r[static_cast<size_t>(deg(r))] / b[static_cast<size_t>(deg(b))];
      q[static_cast<size_t>(k)] = f;
      for (long i = 0; i <= deg(b); ++i)
        r[static_cast<size_t>(i + k)] = r[static_cast<size_t>(i + k)] - f * b[static_cast<size_t>(i)];
      trim(r);
      if (r.empty()) break;
    }
    // (a, b) <- (b, r); (s_prev, s_cur) <- (s_cur, s_prev - q*s_cur)
    Poly s_next(std::max(s_prev.size(), q.size() + s_cur.size()), Rational(0));
    for (size_t i = 0; i < s_prev.size(); ++i) s_next[i] = s_next[i] + s_prev[i];
    for (size_t i = 0; i < q.size(); ++i)
      for (size_t j = 0; j < s_cur.size(); ++j) s_next[i + j] = s_next[i + j] - q[i] * s_cur[j];
    trim(s_next);
    a = std::move(b);
    b = std::move(r);
    s_prev = std::move(s_cur);
    s_cur = std::move(s_next);
    if (b.empty()) throw std::domain_error("fixed-point algebra element is a zero divisor");
  }
  Rational c = b[0];
  QVec out{Rational(0), Rational(0), Rational(0)};
  for (size_t i = 0; i < s_cur.size() && i < 3; ++i) out[i] = s_cur[i] / c;
  return out;
}

double moduli_height(const Rational& s1, const Rational& s2) {
  Integer l = Integer::lcm(s1.den(), s2.den());
  Integer a = Integer::divexact(l, s1.den()) * s1.num();
  Integer b = Integer::divexact(l, s2.den()) * s2.num();
  Integer g = Integer::gcd(Integer::gcd(a, b), l);
  a = Integer::divexact(a, g).abs();
  b = Integer::divexact(b, g).abs();
  Integer c = Integer::divexact(l, g).abs();
  Integer m = std::max(std::max(a, b), c);
  return m.is_one() ? 0.0 : m.log_abs();
}

// A small finite point that phi does not fix, used to move a fixed point or a
// cycle away from infinity. At most three fixed points exist.
Mobius frame_shift_avoiding(const QuadRatMap& phi, const std::vector<P1Point>& avoid) {
  for (long a = 0; a <= 16; ++a) {
    for (int sgn : {1, -1}) {
      if (a == 0 && sgn < 0) continue;
      P1Point pa(Integer(sgn * a), Integer(1));
      bool bad = phi.apply(pa) == pa;
      for (const auto& q : avoid) bad = bad || q == pa;
      if (!bad) return Mobius(Integer(0), Integer(1), Integer(1), Integer(-sgn * a));
    }
  }
  throw std::logic_error("no usable base point for the coordinate change");
}

// Numerator polynomials of the multiplier invariants over the resultant,
// in the variables (f0, f1, f2, g0, g1, g2); each row is
// {coefficient, exponents...}. Derived once by exact linear algebra from the
// quotient-algebra route below and cross-checked against it in the tests.
struct SigmaTerm {
  long coef;
  int e[6];
};

static const SigmaTerm kSigma1Terms[] = {
    {2, {0, 0, 2, 2, 0, 0}},  {-1, {0, 1, 0, 1, 2, 0}}, {4, {0, 1, 0, 2, 0, 1}},
    {-2, {0, 2, 0, 1, 0, 1}}, {-1, {0, 2, 1, 0, 1, 0}}, {1, {0, 3, 0, 0, 0, 1}},
    {1, {1, 0, 0, 0, 3, 0}},  {-4, {1, 0, 0, 1, 1, 1}}, {-2, {1, 0, 1, 0, 2, 0}},
    {4, {1, 0, 1, 1, 0, 1}},  {4, {1, 0, 2, 0, 1, 0}},  {4, {1, 1, 0, 0, 1, 1}},
    {-4, {1, 1, 1, 0, 0, 1}}, {-6, {2, 0, 0, 0, 0, 2}},
};

static const SigmaTerm kSigma2Terms[] = {
    {-1, {0, 0, 0, 2, 2, 0}}, {4, {0, 0, 0, 3, 0, 1}},  {2, {0, 0, 1, 2, 1, 0}},
    {-4, {0, 1, 0, 2, 0, 1}}, {-1, {0, 1, 1, 1, 1, 0}}, {2, {0, 1, 2, 1, 0, 0}},
    {-1, {0, 2, 0, 0, 2, 0}}, {5, {0, 2, 0, 1, 0, 1}},  {-1, {0, 2, 2, 0, 0, 0}},
    {-2, {0, 3, 0, 0, 0, 1}}, {-2, {1, 0, 0, 0, 3, 0}}, {10, {1, 0, 0, 1, 1, 1}},
    {5, {1, 0, 1, 0, 2, 0}},  {-4, {1, 0, 1, 1, 0, 1}}, {-4, {1, 0, 2, 0, 1, 0}},
    {4, {1, 0, 3, 0, 0, 0}},  {-7, {1, 1, 0, 0, 1, 1}}, {10, {1, 1, 1, 0, 0, 1}},
    {12, {2, 0, 0, 0, 0, 2}},
};

template <size_t N>
Integer eval_sigma_terms(const SigmaTerm (&terms)[N], const Integer coeffs[6]) {
  Integer acc(0);
  for (const auto& t : terms) {
    Integer m(t.coef);
    for (int i = 0; i < 6; ++i)
      for (int k = 0; k < t.e[i]; ++k) m *= coeffs[i];
    acc += m;
  }
  return acc;
}

template <size_t N>
__int128 eval_sigma_terms_small(const SigmaTerm (&terms)[N], const long coeffs[6]) {
  __int128 acc = 0;
  for (const auto& t : terms) {
    __int128 m = t.coef;
    for (int i = 0; i < 6; ++i)
      for (int k = 0; k < t.e[i]; ++k) m *= coeffs[i];
    acc += m;
  }
  return acc;
}

SigmaInvariants finish_sigma(Rational s1, Rational s2) {
  SigmaInvariants out;
  out.s3 = s1 - Rational(2);
  out.map_height = moduli_height(s1, s2);
  out.s1 = std::move(s1);
  out.s2 = std::move(s2);
  return out;
}

}  // namespace

SigmaInvariants sigma_invariants(const QuadRatMap& phi) {
  Integer coeffs[6] = {phi.f().coeff(0), phi.f().coeff(1), phi.f().coeff(2),
                       phi.g().coeff(0), phi.g().coeff(1), phi.g().coeff(2)};
  // coefficients below 2^19 keep every term sum inside 128 bits
  bool small = true;
  long small_coeffs[6];
  const long lim = 1L << 19;
  for (int i = 0; i < 6; ++i) {
    if (!coeffs[i].fits_long() || std::labs(coeffs[i].to_long()) >= lim) {
      small = false;
      break;
    }
    small_coeffs[i] = coeffs[i].to_long();
  }
  Integer p1, p2;
  if (small) {
    p1 = Integer::from_i128(eval_sigma_terms_small(kSigma1Terms, small_coeffs));
    p2 = Integer::from_i128(eval_sigma_terms_small(kSigma2Terms, small_coeffs));
  } else {
    p1 = eval_sigma_terms(kSigma1Terms, coeffs);
    p2 = eval_sigma_terms(kSigma2Terms, coeffs);
  }
  return finish_sigma(Rational(p1, phi.resultant()), Rational(p2, phi.resultant()));
}

SigmaInvariants sigma_invariants_algebraic(const QuadRatMap& phi) {
  // Need the fixed-point polynomial Phi = f - z g to have degree exactly 3,
  // i.e. infinity not fixed; otherwise conjugate away first (the sigmas are
  // conjugation invariants).
  const QuadRatMap* work = &phi;
  QuadRatMap moved = phi;
  if (phi.g().coeff(2).is_zero()) {
    Mobius eta = frame_shift_avoiding(phi, {});
    moved = phi.conjugate(eta);
    work = &moved;
  }
  const IntPoly& f = work->f();
  const IntPoly& g = work->g();
  // Phi(z) = f(z) - z g(z), z^3 coefficient -g2 != 0
  Integer p3 = -g.coeff(2);
  Integer p2 = f.coeff(2) - g.coeff(1);
  Integer p1 = f.coeff(1) - g.coeff(0);
  Integer p0 = f.coeff(0);
  CubicMod mod{Rational(p0, p3), Rational(p1, p3), Rational(p2, p3)};

  // multiplier element  lambda = (f' g - f g') / g^2  mod Phi
  IntPoly num = f.derivative() * g - f * g.derivative();
  IntPoly gg = g * g;
  auto to_vec = [](const IntPoly& p) {
    std::vector<Rational> v;
    for (long i = 0; i <= p.degree(); ++i) v.emplace_back(p.coeff(i));
    return v;
  };
  QVec nred = mod.reduce(to_vec(num));
  QVec gred = mod.reduce(to_vec(gg));
  QVec ginv = invert_mod(mod, gred);
  QVec lambda = mod.mul(nred, ginv);

  // columns of the multiplication-by-lambda matrix
  QVec col0 = lambda;
  QVec col1 = mod.mulz(col0);
  QVec col2 = mod.mulz(col1);
  // e1 = trace, e2 = sum of principal 2x2 minors, e3 = det
  Rational t = col0[0] + col1[1] + col2[2];
  Rational min01 = col0[0] * col1[1] - col1[0] * col0[1];
  Rational min02 = col0[0] * col2[2] - col2[0] * col0[2];
  Rational min12 = col1[1] * col2[2] - col2[1] * col1[2];
  Rational e2 = min01 + min02 + min12;
  Rational det = col0[0] * (col1[1] * col2[2] - col2[1] * col1[2]) -
                 col1[0] * (col0[1] * col2[2] - col2[1] * col0[2]) +
                 col2[0] * (col0[1] * col1[2] - col1[1] * col0[2]);

  SigmaInvariants out;
  out.s1 = t;
  out.s2 = e2;
  out.s3 = det;
  out.map_height = moduli_height(out.s1, out.s2);
  if (!(out.s3 == out.s1 - Rational(2)))
    throw std::logic_error("sigma identity s3 = s1 - 2 violated");
  return out;
}

Rational multiplier(const QuadRatMap& phi, const P1Point& x, long n) {
  if (n < 1) throw std::invalid_argument("period must be positive");
  OrbitRecord rec = detect_orbit(phi, x, n + 1);
  if (!rec.resolved || !rec.tail || *rec.tail != 0 || *rec.period != n)
    throw std::invalid_argument("point is not periodic of minimal period n");
  std::vector<P1Point> cycle(rec.iterates.begin(), rec.iterates.begin() + n);

  bool has_inf = false;
  for (const auto& p : cycle) has_inf = has_inf || p.is_infinity();
  const QuadRatMap* work = &phi;
  QuadRatMap moved = phi;
  if (has_inf) {
    Mobius eta = frame_shift_avoiding(phi, cycle);
    moved = phi.conjugate(eta);
    for (auto& p : cycle) p = eta.apply(p);
    work = &moved;
  }
  Rational m(1);
  for (const auto& p : cycle) m = m * work->derivative_at(p.as_rational());
  return m;
}

}  // namespace qdyn
