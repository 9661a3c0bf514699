#pragma once

#include <gmp.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace qdyn {

// Arbitrary-precision integer with value semantics, backed by GMP.
// Iterate numerators in this project grow doubly exponentially, so every
// arithmetic path must stay exact and multi-precision.
class Integer {
 public:
  Integer() { mpz_init(z_); }
  Integer(int v) { mpz_init_set_si(z_, v); }
  Integer(long v) { mpz_init_set_si(z_, v); }
  Integer(long long v) : Integer() { set_i64(v); }
  explicit Integer(const std::string& s) : Integer() {
    if (mpz_set_str(z_, s.c_str(), 10) != 0)
      throw_parse_error(s);
  }
  Integer(const Integer& o) { mpz_init_set(z_, o.z_); }
  Integer(Integer&& o) noexcept {
    mpz_init(z_);
    mpz_swap(z_, o.z_);
  }
  Integer& operator=(const Integer& o) {
    if (this != &o) mpz_set(z_, o.z_);
    return *this;
  }
  Integer& operator=(Integer&& o) noexcept {
    mpz_swap(z_, o.z_);
    return *this;
  }
  ~Integer() { mpz_clear(z_); }

  mpz_srcptr raw() const { return z_; }
  mpz_ptr raw() { return z_; }

  int sign() const { return mpz_sgn(z_); }
  bool is_zero() const { return mpz_sgn(z_) == 0; }
  bool is_one() const { return mpz_cmp_si(z_, 1) == 0; }
  bool odd() const { return mpz_odd_p(z_) != 0; }

  bool fits_long() const { return mpz_fits_slong_p(z_) != 0; }
  long to_long() const { return mpz_get_si(z_); }
  double to_double() const { return mpz_get_d(z_); }
  size_t bit_length() const { return is_zero() ? 0 : mpz_sizeinbase(z_, 2); }

  // natural log of |x|; x must be nonzero
  double log_abs() const;

  std::string to_string() const;

  Integer abs() const {
    Integer r;
    mpz_abs(r.z_, z_);
    return r;
  }
  Integer neg() const {
    Integer r;
    mpz_neg(r.z_, z_);
    return r;
  }

  Integer& operator+=(const Integer& o) { mpz_add(z_, z_, o.z_); return *this; }
  Integer& operator-=(const Integer& o) { mpz_sub(z_, z_, o.z_); return *this; }
  Integer& operator*=(const Integer& o) { mpz_mul(z_, z_, o.z_); return *this; }
  Integer& operator*=(long v) { mpz_mul_si(z_, z_, v); return *this; }

  friend Integer operator+(const Integer& a, const Integer& b) {
    Integer r;
    mpz_add(r.z_, a.z_, b.z_);
    return r;
  }
  friend Integer operator-(const Integer& a, const Integer& b) {
    Integer r;
    mpz_sub(r.z_, a.z_, b.z_);
    return r;
  }
  friend Integer operator-(const Integer& a) { return a.neg(); }
  friend Integer operator*(const Integer& a, const Integer& b) {
    Integer r;
    mpz_mul(r.z_, a.z_, b.z_);
    return r;
  }
  friend Integer operator*(const Integer& a, long b) {
    Integer r;
    mpz_mul_si(r.z_, a.z_, b);
    return r;
  }
  friend Integer operator*(long a, const Integer& b) { return b * a; }

  // Truncating division, like C integer division.
  friend Integer operator/(const Integer& a, const Integer& b) {
    Integer r;
    mpz_tdiv_q(r.z_, a.z_, b.z_);
    return r;
  }
  friend Integer operator%(const Integer& a, const Integer& b) {
    Integer r;
    mpz_tdiv_r(r.z_, a.z_, b.z_);
    return r;
  }

  // Exact division; quotient must be integral.
  static Integer divexact(const Integer& a, const Integer& b) {
    Integer r;
    mpz_divexact(r.z_, a.z_, b.z_);
    return r;
  }
  // Floor division / nonnegative remainder.
  static Integer fdiv_q(const Integer& a, const Integer& b) {
    Integer r;
    mpz_fdiv_q(r.z_, a.z_, b.z_);
    return r;
  }
  static Integer fdiv_r(const Integer& a, const Integer& b) {
    Integer r;
    mpz_fdiv_r(r.z_, a.z_, b.z_);
    return r;
  }
  static bool divisible(const Integer& a, const Integer& b) {
    return mpz_divisible_p(a.z_, b.z_) != 0;
  }

  static Integer gcd(const Integer& a, const Integer& b) {
    Integer r;
    mpz_gcd(r.z_, a.z_, b.z_);
    return r;
  }
  static Integer lcm(const Integer& a, const Integer& b) {
    Integer r;
    mpz_lcm(r.z_, a.z_, b.z_);
    return r;
  }
  static Integer pow(const Integer& a, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.z_, a.z_, e);
    return r;
  }
  static Integer mul_2exp(const Integer& a, unsigned long e) {
    Integer r;
    mpz_mul_2exp(r.z_, a.z_, e);
    return r;
  }
  static Integer from_i128(__int128 v) {
    Integer r;
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v)
                              : static_cast<unsigned __int128>(v);
    uint64_t limbs[2] = {static_cast<uint64_t>(u), static_cast<uint64_t>(u >> 64)};
    mpz_import(r.z_, 2, -1, sizeof(uint64_t), 0, 0, limbs);
    if (neg) mpz_neg(r.z_, r.z_);
    return r;
  }

  friend bool operator==(const Integer& a, const Integer& b) {
    return mpz_cmp(a.z_, b.z_) == 0;
  }
  friend bool operator==(const Integer& a, long b) {
    return mpz_cmp_si(a.z_, b) == 0;
  }
  friend auto operator<=>(const Integer& a, const Integer& b) {
    int c = mpz_cmp(a.z_, b.z_);
    return c <=> 0;
  }
  friend auto operator<=>(const Integer& a, long b) {
    int c = mpz_cmp_si(a.z_, b);
    return c <=> 0;
  }

  friend void swap(Integer& a, Integer& b) noexcept { mpz_swap(a.z_, b.z_); }

 private:
  void set_i64(long long v);
  [[noreturn]] static void throw_parse_error(const std::string& s);
  mpz_t z_;
};

std::ostream& operator<<(std::ostream& os, const Integer& v);

// Deterministic for operands below the Baillie-PSW range we ever hit here;
// treats negatives and 0,1 as non-prime.
bool is_prime(const Integer& n);

// Prime factorization |n| = prod p_i^{e_i}, p_i ascending. n must be nonzero.
std::vector<std::pair<Integer, int>> factor(const Integer& n);

}  // namespace qdyn
