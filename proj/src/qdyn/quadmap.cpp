#include "qdyn/quadmap.hpp"

#include <array>
#include <ostream>
#include <stdexcept>

namespace qdyn {

Mobius::Mobius(Integer a_, Integer b_, Integer c_, Integer d_)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
  if ((a * d - b * c).is_zero()) throw std::domain_error("singular Mobius transformation");
}

Mobius Mobius::to_normal_frame(const P1Point& p0, const P1Point& p1, const P1Point& p2) {
  if (p0 == p1 || p0 == p2 || p1 == p2)
    throw std::domain_error("normal frame needs three distinct points");
  // Row 1 kills p2 (-> 0), row 2 kills p0 (-> infinity); scale so p1 -> 1.
  Integer r1a = p2.b(), r1b = -p2.a();
  Integer r2a = p0.b(), r2b = -p0.a();
  Integer u = r1a * p1.a() + r1b * p1.b();
  Integer v = r2a * p1.a() + r2b * p1.b();
  return Mobius(r1a * v, r1b * v, r2a * u, r2b * u);
}

P1Point Mobius::apply(const P1Point& p) const {
  return P1Point(a * p.a() + b * p.b(), c * p.a() + d * p.b());
}

QuadRatMap QuadRatMap::create(IntPoly f, IntPoly g) {
  auto m = try_create(std::move(f), std::move(g));
  if (!m) throw std::domain_error("degenerate map: resultant of the degree-2 forms is zero");
  return *std::move(m);
}

std::optional<QuadRatMap> QuadRatMap::try_create(IntPoly f, IntPoly g) {
  if (f.degree() > 2 || g.degree() > 2)
    throw std::domain_error("quadratic map needs degree <= 2 data");
  Integer cont = Integer::gcd(f.content(), g.content());
  if (cont.is_zero()) return std::nullopt;  // both zero
  // sign: first nonzero coefficient of g from z^2 down is positive
  int sgn = 0;
  for (long i = 2; i >= 0 && sgn == 0; --i) sgn = g.coeff(i).sign();
  if (sgn == 0)
    for (long i = 2; i >= 0 && sgn == 0; --i) sgn = f.coeff(i).sign();
  if (sgn < 0) cont = -cont;
  if (!cont.is_one()) {
    f = f.divexact_scalar(cont);
    g = g.divexact_scalar(cont);
  }
  Integer res = resultant_forms(f, g, 2);
  if (res.is_zero()) return std::nullopt;
  return QuadRatMap(std::move(f), std::move(g), std::move(res));
}

QuadRatMap QuadRatMap::poly_map(const Rational& c) {
  return create(IntPoly(std::vector<Integer>{c.num(), Integer(0), c.den()}),
                IntPoly(std::vector<Integer>{c.den()}));
}

std::optional<Rational> QuadRatMap::poly_parameter() const {
  if (g_.degree() != 0) return std::nullopt;
  if (!(f_.coeff(2) == g_.coeff(0)) || !f_.coeff(1).is_zero()) return std::nullopt;
  return Rational(f_.coeff(0), g_.coeff(0));
}

Integer QuadRatMap::max_abs_coeff() const {
  Integer h(0);
  for (long i = 0; i <= 2; ++i) {
    Integer a = f_.coeff(i).abs(), b = g_.coeff(i).abs();
    if (a > h) h = a;
    if (b > h) h = b;
  }
  return h;
}

P1Point QuadRatMap::apply(const P1Point& p) const {
  // nondegeneracy means (F,G)(a,b) != (0,0) for (a,b) != (0,0)
  return P1Point(f_.eval_form(p.a(), p.b(), 2), g_.eval_form(p.a(), p.b(), 2));
}

P1Point QuadRatMap::apply_iter(const P1Point& p, long k) const {
  P1Point q = p;
  for (long i = 0; i < k; ++i) q = apply(q);
  return q;
}

QuadRatMap QuadRatMap::conjugate(const Mobius& eta) const {
  // On column vectors: phi~ = M . (F,G) . M^{-1}, with M^{-1} the adjugate.
  Integer ia = eta.d, ib = -eta.b, ic = -eta.c, id = eta.a;
  // substitute (z, w) -> (ia*z + ib*w, ic*z + id*w) into a degree-2 form
  auto subst = [&](const IntPoly& p) {
    Integer c2 = p.coeff(2), c1 = p.coeff(1), c0 = p.coeff(0);
    // c2*(ia z + ib w)^2 + c1*(ia z + ib w)(ic z + id w) + c0*(ic z + id w)^2
    Integer z2 = c2 * ia * ia + c1 * ia * ic + c0 * ic * ic;
    Integer zw = c2 * Integer(2) * ia * ib + c1 * (ia * id + ib * ic) + c0 * Integer(2) * ic * id;
    Integer w2 = c2 * ib * ib + c1 * ib * id + c0 * id * id;
    return std::array<Integer, 3>{w2, zw, z2};
  };
  auto fs = subst(f_), gs = subst(g_);
  std::vector<Integer> nf(3), ng(3);
  for (int i = 0; i < 3; ++i) {
    nf[i] = eta.a * fs[i] + eta.b * gs[i];
    ng[i] = eta.c * fs[i] + eta.d * gs[i];
  }
  return create(IntPoly(std::move(nf)), IntPoly(std::move(ng)));
}

Rational QuadRatMap::derivative_at(const Rational& x) const {
  Rational fx = f_.eval(x), gx = g_.eval(x);
  Rational dfx = f_.derivative().eval(x), dgx = g_.derivative().eval(x);
  if (gx.is_zero()) throw std::domain_error("derivative at a pole");
  return (dfx * gx - fx * dgx) / (gx * gx);
}

std::string QuadRatMap::to_string() const {
  if (is_polynomial()) {
    if (g_.coeff(0).is_one()) return f_.to_string();
    return "(" + f_.to_string() + ")/" + g_.coeff(0).to_string();
  }
  return "(" + f_.to_string() + ")/(" + g_.to_string() + ")";
}

std::ostream& operator<<(std::ostream& os, const QuadRatMap& m) {
  return os << m.to_string();
}

OrbitRecord detect_orbit(const QuadRatMap& phi, const P1Point& x, long max_iter,
                         double height_abort) {
  OrbitRecord rec;
  rec.iterates.push_back(x);
  for (long i = 1; i <= max_iter; ++i) {
    P1Point next = phi.apply(rec.iterates.back());
    for (size_t j = 0; j < rec.iterates.size(); ++j) {
      if (rec.iterates[j] == next) {
        rec.resolved = true;
        rec.tail = static_cast<long>(j);
        rec.period = i - static_cast<long>(j);
        return rec;
      }
    }
    rec.iterates.push_back(std::move(next));
    if (rec.iterates.back().height() > height_abort) return rec;
  }
  return rec;
}

std::vector<P1Point> rational_preimages(const QuadRatMap& phi, const P1Point& target) {
  // Solve Q(y1,y2) = tb*F(y1,y2) - ta*G(y1,y2) = 0, a binary quadratic form.
  Integer q2 = target.b() * phi.f().coeff(2) - target.a() * phi.g().coeff(2);
  Integer q1 = target.b() * phi.f().coeff(1) - target.a() * phi.g().coeff(1);
  Integer q0 = target.b() * phi.f().coeff(0) - target.a() * phi.g().coeff(0);
  std::vector<P1Point> out;
  if (q2.is_zero() && q1.is_zero() && q0.is_zero()) return out;  // cannot happen, coprime forms
  if (q2.is_zero()) {
    // (q1 y1 + q0 y2) y2 = 0: root at infinity plus the linear root
    out.push_back(P1Point::infinity());
    if (!q1.is_zero()) out.push_back(P1Point(-q0, q1));
    return out;
  }
  Integer disc = q1 * q1 - Integer(4) * q2 * q0;
  if (disc.sign() < 0) return out;
  Integer s;
  mpz_sqrt(s.raw(), disc.raw());
  if (!(s * s == disc)) return out;  // irrational pair
  out.push_back(P1Point(-q1 + s, Integer(2) * q2));
  if (!s.is_zero()) out.push_back(P1Point(-q1 - s, Integer(2) * q2));
  return out;
}

std::optional<P1Point> preimage_partner(const QuadRatMap& phi, const P1Point& x) {
  P1Point image = phi.apply(x);
  Integer q2 = image.b() * phi.f().coeff(2) - image.a() * phi.g().coeff(2);
  Integer q1 = image.b() * phi.f().coeff(1) - image.a() * phi.g().coeff(1);
  Integer q0 = image.b() * phi.f().coeff(0) - image.a() * phi.g().coeff(0);
  // Q has x as a projective root; divide out the linear form (b_x y1 - a_x y2).
  // Q = (b_x y1 - a_x y2)(u y1 - v y2) with u = q2/b_x (or matched at infinity).
  Integer u, v;
  if (!x.b().is_zero()) {
    u = Integer::divexact(q2, x.b());
    // q0 = (-a_x)(-v) = a_x v; match the middle coefficient when a_x = 0
    v = x.a().is_zero() ? -q1 : Integer::divexact(q0, x.a());
  } else {
    // x = (1:0) root means q2 = 0; Q = y2 (q1 y1 + q0 y2) up to sign
    u = -q1;
    v = q0;
  }
  if (u.is_zero() && v.is_zero()) return std::nullopt;
  P1Point other(v, u);
  if (other == x) return std::nullopt;  // critical point
  return other;
}

}  // namespace qdyn
