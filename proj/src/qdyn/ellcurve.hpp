#pragma once

#include <stdexcept>

namespace qdyn {

// Point on a short Weierstrass model; K is any exact field type with
// value-semantic +,-,*,/, equality, is_zero() and construction from long.
template <class K>
struct ECPoint {
  bool inf = true;
  K x{}, y{};

  static ECPoint infinity() { return ECPoint{}; }
  static ECPoint affine(K px, K py) { return ECPoint{false, std::move(px), std::move(py)}; }

  friend bool operator==(const ECPoint& p, const ECPoint& q) {
    if (p.inf || q.inf) return p.inf == q.inf;
    return p.x == q.x && p.y == q.y;
  }
};

// Y^2 = X^3 + a2 X^2 + a4 X + a6 with the textbook chord-tangent law.
template <class K>
class ShortWCurve {
 public:
  ShortWCurve(K a2, K a4, K a6) : a2_(std::move(a2)), a4_(std::move(a4)), a6_(std::move(a6)) {}

  const K& a2() const { return a2_; }
  const K& a4() const { return a4_; }
  const K& a6() const { return a6_; }

  bool contains(const ECPoint<K>& p) const {
    if (p.inf) return true;
    K lhs = p.y * p.y;
    K rhs = ((p.x + a2_) * p.x + a4_) * p.x + a6_;
    return lhs == rhs;
  }

  // discriminant of the cubic; zero exactly at singular models
  K cubic_disc() const {
    K A = a2_, B = a4_, C = a6_;
    return K(18) * A * B * C - K(4) * A * A * A * C + A * A * B * B - K(4) * B * B * B -
           K(27) * C * C;
  }

  ECPoint<K> neg(const ECPoint<K>& p) const {
    if (p.inf) return p;
    return ECPoint<K>::affine(p.x, K(0) - p.y);
  }

  ECPoint<K> add(const ECPoint<K>& p, const ECPoint<K>& q) const {
    if (!contains(p) || !contains(q)) throw std::domain_error("point not on the curve");
    if (p.inf) return q;
    if (q.inf) return p;
    K lambda;
    if (p.x == q.x) {
      if (p.y == (K(0) - q.y)) return ECPoint<K>::infinity();
      // tangent
      K num = K(3) * p.x * p.x + K(2) * a2_ * p.x + a4_;
      lambda = num / (K(2) * p.y);
    } else {
      lambda = (q.y - p.y) / (q.x - p.x);
    }
    K x3 = lambda * lambda - a2_ - p.x - q.x;
    K y3 = lambda * (p.x - x3) - p.y;
    return ECPoint<K>::affine(std::move(x3), std::move(y3));
  }

  ECPoint<K> mul(long n, const ECPoint<K>& p) const {
    if (n < 0) return neg(mul(-n, p));
    ECPoint<K> acc = ECPoint<K>::infinity();
    ECPoint<K> base = p;
    while (n > 0) {
      if (n & 1) acc = add(acc, base);
      n >>= 1;
      if (n > 0) base = add(base, base);
    }
    return acc;
  }

 private:
  K a2_, a4_, a6_;
};

}  // namespace qdyn
