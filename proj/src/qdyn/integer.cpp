#include "qdyn/integer.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace qdyn {

void Integer::set_i64(long long v) {
  if (v >= LONG_MIN && v <= LONG_MAX) {
    mpz_set_si(z_, static_cast<long>(v));
  } else {
    bool neg = v < 0;
    unsigned long long u = neg ? 0ULL - static_cast<unsigned long long>(v)
                               : static_cast<unsigned long long>(v);
    mpz_import(z_, 1, 1, sizeof(u), 0, 0, &u);
    if (neg) mpz_neg(z_, z_);
  }
}

void Integer::throw_parse_error(const std::string& s) {
  throw std::invalid_argument("not an integer literal: '" + s + "'");
}

double Integer::log_abs() const {
  if (is_zero()) throw std::domain_error("log of zero");
  long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, z_);
  return std::log(std::fabs(mant)) + static_cast<double>(exp2) * M_LN2;
}

std::string Integer::to_string() const {
  char* s = mpz_get_str(nullptr, 10, z_);
  std::string out(s);
  void (*freefn)(void*, size_t);
  mp_get_memory_functions(nullptr, nullptr, reinterpret_cast<void (**)(void*, size_t)>(&freefn));
  freefn(s, out.size() + 1);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Integer& v) {
  return os << v.to_string();
}

bool is_prime(const Integer& n) {
  if (n <= 1) return false;
  return mpz_probab_prime_p(n.raw(), 40) != 0;
}

namespace {

Integer pollard_rho(const Integer& n) {
  // n odd composite, no factor below the trial bound
  for (long c = 1;; ++c) {
    Integer x(2), y(2), d(1);
    while (d.is_one()) {
      x = (x * x + Integer(c)) % n;
      y = (y * y + Integer(c)) % n;
      y = (y * y + Integer(c)) % n;
      Integer diff = (x - y).abs();
      if (diff.is_zero()) break;
      d = Integer::gcd(diff, n);
    }
    if (!d.is_one() && d != n && !d.is_zero()) return d;
  }
}

void factor_into(Integer n, std::vector<std::pair<Integer, int>>& out) {
  if (n.is_one()) return;
  if (is_prime(n)) {
    out.emplace_back(n, 1);
    return;
  }
  Integer d = pollard_rho(n);
  factor_into(d, out);
  factor_into(Integer::divexact(n, d), out);
}

}  // namespace

std::vector<std::pair<Integer, int>> factor(const Integer& n_in) {
  if (n_in.is_zero()) throw std::domain_error("factor(0)");
  Integer n = n_in.abs();
  std::vector<std::pair<Integer, int>> out;
  if (n.is_one()) return out;
  for (long p = 2; p < 1000000 && Integer(p) * Integer(p) <= n; p += (p == 2 ? 1 : 2)) {
    if (mpz_divisible_ui_p(n.raw(), static_cast<unsigned long>(p))) {
      int e = 0;
      while (mpz_divisible_ui_p(n.raw(), static_cast<unsigned long>(p))) {
        n = Integer::divexact(n, Integer(p));
        ++e;
      }
      out.emplace_back(Integer(p), e);
    }
  }
  if (!n.is_one()) {
    std::vector<std::pair<Integer, int>> rest;
    factor_into(n, rest);
    // collect duplicates from the rho split
    std::sort(rest.begin(), rest.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& pe : rest) {
      if (!out.empty() && out.back().first == pe.first)
        out.back().second += pe.second;
      else
        out.push_back(pe);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

}  // namespace qdyn
