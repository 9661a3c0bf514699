#include "qdyn/intpoly.hpp"

#include <ostream>
#include <stdexcept>

namespace qdyn {

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
  for (long v : coeffs) c_.emplace_back(v);
  trim();
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
  std::vector<Integer> c(std::max(a.c_.size(), b.c_.size()), Integer(0));
  for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return IntPoly(std::move(c));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
  std::vector<Integer> c(std::max(a.c_.size(), b.c_.size()), Integer(0));
  for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
  return IntPoly(std::move(c));
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return IntPoly();
  std::vector<Integer> c(a.c_.size() + b.c_.size() - 1, Integer(0));
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return IntPoly(std::move(c));
}

IntPoly operator-(const IntPoly& a) {
  std::vector<Integer> c = a.c_;
  for (auto& v : c) v = -v;
  return IntPoly(std::move(c));
}

IntPoly operator*(const IntPoly& a, const Integer& s) {
  std::vector<Integer> c = a.c_;
  for (auto& v : c) v *= s;
  return IntPoly(std::move(c));
}

IntPoly IntPoly::derivative() const {
  if (c_.size() <= 1) return IntPoly();
  std::vector<Integer> c(c_.size() - 1, Integer(0));
  for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * static_cast<long>(i);
  return IntPoly(std::move(c));
}

IntPoly IntPoly::reverse(long d) const {
  if (degree() > d) throw std::domain_error("reverse: degree exceeds bound");
  std::vector<Integer> c(static_cast<size_t>(d) + 1, Integer(0));
  for (size_t i = 0; i < c_.size(); ++i) c[static_cast<size_t>(d) - i] = c_[i];
  return IntPoly(std::move(c));
}

IntPoly IntPoly::shift(const Integer& a) const {
  // Horner: p(z+a)
  IntPoly res;
  IntPoly za(std::vector<Integer>{a, Integer(1)});
  for (long i = degree(); i >= 0; --i) {
    res = res * za;
    res = res + IntPoly(std::vector<Integer>{coeff(i)});
  }
  return res;
}

Rational IntPoly::eval(const Rational& x) const {
  Rational r(0);
  for (long i = degree(); i >= 0; --i) r = r * x + Rational(coeff(i));
  return r;
}

Integer IntPoly::eval_form(const Integer& a, const Integer& b, long d) const {
  if (degree() > d) throw std::domain_error("eval_form: degree exceeds bound");
  // sum c_i a^i b^(d-i), Horner in a with trailing b powers
  Integer acc(0);
  for (long i = d; i >= 0; --i) {
    acc *= a;
    if (i <= degree() && !c_[static_cast<size_t>(i)].is_zero()) {
      acc += c_[static_cast<size_t>(i)] * Integer::pow(b, static_cast<unsigned long>(d - i));
    }
  }
  return acc;
}

Integer IntPoly::content() const {
  Integer g(0);
  for (const auto& v : c_) {
    g = Integer::gcd(g, v);
    if (g.is_one()) break;
  }
  return g;
}

IntPoly IntPoly::divexact_scalar(const Integer& s) const {
  std::vector<Integer> c = c_;
  for (auto& v : c) v = Integer::divexact(v, s);
  return IntPoly(std::move(c));
}

IntPoly IntPoly::primitive() const {
  if (is_zero()) return IntPoly();
  Integer g = content();
  if (lead().sign() < 0) g = -g;
  return divexact_scalar(g);
}

IntPoly IntPoly::pseudo_rem(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw std::domain_error("pseudo_rem by zero");
  IntPoly r = a;
  long db = b.degree();
  const Integer& lb = b.lead();
  while (!r.is_zero() && r.degree() >= db) {
    long k = r.degree() - db;
    Integer lr = r.lead();
    // r := lb*r - lr*z^k*b
    std::vector<Integer> c(r.c_.size(), Integer(0));
    for (size_t i = 0; i < r.c_.size(); ++i) c[i] = r.c_[i] * lb;
    for (long i = 0; i <= db; ++i) c[static_cast<size_t>(i + k)] -= lr * b.coeff(i);
    r = IntPoly(std::move(c));
  }
  return r;
}

IntPoly IntPoly::gcd(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero()) return b.primitive();
  if (b.is_zero()) return a.primitive();
  Integer cont = Integer::gcd(a.content(), b.content());
  IntPoly u = a.primitive(), v = b.primitive();
  if (u.degree() < v.degree()) std::swap(u, v);
  while (!v.is_zero()) {
    IntPoly r = pseudo_rem(u, v).primitive();
    u = std::move(v);
    v = std::move(r);
  }
  return u.primitive() * cont;
}

IntPoly IntPoly::divexact(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw std::domain_error("divexact by zero polynomial");
  if (a.is_zero()) return IntPoly();
  long dq = a.degree() - b.degree();
  if (dq < 0) throw std::domain_error("divexact: not divisible");
  std::vector<Integer> q(static_cast<size_t>(dq) + 1, Integer(0));
  IntPoly r = a;
  for (long k = dq; k >= 0; --k) {
    if (r.degree() == b.degree() + k) {
      if (!Integer::divisible(r.lead(), b.lead()))
        throw std::domain_error("divexact: not divisible");
      Integer qk = Integer::divexact(r.lead(), b.lead());
      q[static_cast<size_t>(k)] = qk;
      std::vector<Integer> c = r.c_;
      for (long i = 0; i <= b.degree(); ++i)
        c[static_cast<size_t>(i + k)] -= qk * b.coeff(i);
      r = IntPoly(std::move(c));
    }
  }
  if (!r.is_zero()) throw std::domain_error("divexact: nonzero remainder");
  return IntPoly(std::move(q));
}

std::string IntPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (long i = degree(); i >= 0; --i) {
    Integer ci = coeff(i);
    if (ci.is_zero()) continue;
    bool first = out.empty();
    if (ci.sign() < 0) {
      out += first ? "-" : " - ";
      ci = -ci;
    } else if (!first) {
      out += " + ";
    }
    bool unit = ci.is_one();
    if (i == 0 || !unit) out += ci.to_string();
    if (i >= 1) {
      if (!unit) out += "*";
      out += var;
      if (i >= 2) out += "^" + std::to_string(i);
    }
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const IntPoly& p) {
  return os << p.to_string();
}

Integer det_bareiss(std::vector<std::vector<Integer>> m) {
  size_t n = m.size();
  if (n == 0) return Integer(1);
  Integer denom(1);
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      size_t piv = k + 1;
      while (piv < n && m[piv][k].is_zero()) ++piv;
      if (piv == n) return Integer(0);
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        Integer v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        m[i][j] = Integer::divexact(v, denom);
      }
      m[i][k] = Integer(0);
    }
    denom = m[k][k];
  }
  Integer d = m[n - 1][n - 1];
  return sign < 0 ? -d : d;
}

Integer resultant_forms(const IntPoly& f, long df, const IntPoly& g, long dg) {
  if (f.degree() > df || g.degree() > dg)
    throw std::domain_error("resultant_forms: degree exceeds bound");
  if (df <= 0 || dg <= 0) throw std::domain_error("resultant_forms: bounds must be positive");
  size_t n = static_cast<size_t>(df + dg);
  std::vector<std::vector<Integer>> m(n, std::vector<Integer>(n, Integer(0)));
  // dg rows of f's coefficient vector (z^df ... z^0), then df rows of g's
  for (long r = 0; r < dg; ++r)
    for (long j = 0; j <= df; ++j)
      m[static_cast<size_t>(r)][static_cast<size_t>(r + j)] = f.coeff(df - j);
  for (long r = 0; r < df; ++r)
    for (long j = 0; j <= dg; ++j)
      m[static_cast<size_t>(dg + r)][static_cast<size_t>(r + j)] = g.coeff(dg - j);
  return det_bareiss(std::move(m));
}

Integer resultant_forms(const IntPoly& f, const IntPoly& g, long d) {
  return resultant_forms(f, d, g, d);
}

Rational resultant_forms_q(const std::vector<Rational>& f,
                           const std::vector<Rational>& g, long d) {
  // Clear denominators, use the integer path, undo the scaling:
  // Res(u f, v g) = u^d v^d Res(f, g) for degree-d forms.
  auto clear = [](const std::vector<Rational>& p, Integer& scale) {
    Integer l(1);
    for (const auto& q : p) l = Integer::lcm(l, q.den());
    std::vector<Integer> c;
    c.reserve(p.size());
    for (const auto& q : p) c.push_back(Integer::divexact(l, q.den()) * q.num());
    scale = l;
    return IntPoly(std::move(c));
  };
  Integer u, v;
  IntPoly fi = clear(f, u), gi = clear(g, v);
  Integer r = resultant_forms(fi, gi, d);
  Integer denom = Integer::pow(u, static_cast<unsigned long>(d)) *
                  Integer::pow(v, static_cast<unsigned long>(d));
  return Rational(r, denom);
}

}  // namespace qdyn
