#include "qdyn/polysearch.hpp"

#include <atomic>
#include <cmath>
#include <thread>

namespace qdyn {

namespace {

long gcd_long(long a, long b) {
  while (b) {
    long r = a % b;
    a = b;
    b = r;
  }
  return a < 0 ? -a : a;
}

// exact test  x <= B = (1 + sqrt(1-4c))/2  via (2x-1)^2 <= 1-4c
bool le_B(const Rational& x, const Rational& c) {
  Rational lhs = Rational(2) * x - Rational(1);
  if (lhs.sign() <= 0) return true;
  return lhs * lhs <= Rational(1) - Rational(4) * c;
}

// exact test  x >= sqrt(-c - B), i.e. -c - x^2 <= B
bool ge_lower(const Rational& x, const Rational& c) {
  Rational lhs = -c - x * x;
  if (lhs.sign() <= 0) return true;
  Rational t = Rational(2) * lhs - Rational(1);
  if (t.sign() <= 0) return true;
  return t * t <= Rational(1) - Rational(4) * c;
}

}  // namespace

namespace {

// Conditions (a) and the range only; the coprimality condition depends on the
// starting point itself, not just its residue class, so it is checked per x.
void for_each_k_in_class(long m, long n, long N_max,
                         const std::function<void(long long)>& fn) {
  if (n < 1 || m < 1 || m > n || gcd_long(m, n) != 1)
    throw std::invalid_argument("need 1 <= m <= n with gcd(m,n) = 1");
  long long n2 = static_cast<long long>(n) * n;
  long long lo = -static_cast<long long>(N_max) * n2;
  // strict k < -3n^2/4 in both parities: largest admissible is -floor(3n^2/4)-1
  long long hi = -(3 * n2) / 4 - 1;
  // largest k <= hi with k = -m^2 (mod n)
  long long target = ((-static_cast<long long>(m) * m) % n + n) % n;
  long long k0 = hi - ((hi % n - target) % n + n) % n;
  for (long long k = k0; k >= lo; k -= n) fn(k);
}

// gcd(n, (k + m^2)/n) = 1 for the actual numerator m of the starting point:
// the first iterate must keep denominator exactly n, which every preperiodic
// point does.
bool point_coprimality(long long m, long n, long long k) {
  long long q = (k + m * m) / n;
  return gcd_long(n, static_cast<long>(((q % n) + n) % n)) == 1;
}

}  // namespace

void for_each_admissible_k(long m, long n, long N_max,
                           const std::function<void(long long)>& fn) {
  for_each_k_in_class(m, n, N_max, [&](long long k) {
    if (point_coprimality(m, n, k)) fn(k);
  });
}

std::vector<long long> admissible_k_values(long m, long n, long N_max) {
  std::vector<long long> out;
  for_each_admissible_k(m, n, N_max, [&](long long k) { out.push_back(k); });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Rational> start_points(const Rational& c, long m, long n) {
  std::vector<Rational> out;
  bool shallow = c >= Rational(-2);
  for (long j = 0;; ++j) {
    Rational x(static_cast<long long>(m) + static_cast<long long>(j) * n, n);
    if (shallow) {
      if (x > Rational(2)) break;
      out.push_back(x);
    } else {
      if (!le_B(x, c)) break;
      if (ge_lower(x, c)) out.push_back(x);
    }
  }
  return out;
}

namespace {

struct Candidate {
  long n, m;
  long long k;
  Rational x, c;
  bool preperiodic = false;
  double screen_estimate = 0.0;
  ModuliLabel label;
};

// Screen one (x, c) with the published iteration schedule. Returns true and
// fills the candidate when the pair should be recorded.
bool screen_pair(const PolySearchConfig& cfg, Candidate& cand) {
  if (!point_coprimality(cand.x.num().to_long(), cand.n, cand.k)) return false;
  const Rational& c = cand.c;
  const double h_c = c.height();
  const double thr = cfg.threshold_for(cand.n);
  const Integer n_int(cand.n);
  // sound non-recordability bound: hhat >= 2^{-i}(h_i - C') with
  // C' = log(24 H^3) >= log(|R|/D); keeps iterate sizes bounded
  const double c_over = std::log(24.0) + 3.0 * h_c + 1e-9;

  std::vector<Rational> xs;
  xs.reserve(static_cast<size_t>(cfg.estimate_iters) + 1);
  xs.push_back(cand.x);
  for (long i = 1; i <= cfg.estimate_iters; ++i) {
    Rational xi = xs.back() * xs.back() + c;
    for (size_t j = 0; j < xs.size(); ++j) {
      if (xs[j] == xi) {
        if (i <= cfg.screen_iters) return false;  // short orbit, classified elsewhere
        cand.preperiodic = true;
        cand.label = ModuliLabel{static_cast<long>(j), i - static_cast<long>(j)};
        return true;
      }
    }
    if (i <= 3 && xi.den() > n_int) return false;  // wrong denominator growth
    xs.push_back(xi);
    if (i > cfg.screen_iters) {
      double hi = xi.height();
      if (std::ldexp(hi - c_over, static_cast<int>(-i)) >= thr * h_c) return false;
    }
  }
  double h_last = xs.back().height();
  cand.screen_estimate = std::ldexp(h_last, static_cast<int>(-cfg.estimate_iters));
  return cand.screen_estimate < thr * h_c;
}

PolyRecord refine(const PolySearchConfig& cfg, const Candidate& cand) {
  PolyRecord rec;
  rec.n = cand.n;
  rec.m = cand.x.num().to_long();  // x = m/n in lowest terms
  rec.k = cand.k;
  rec.x = cand.x;
  rec.c = cand.c;
  rec.h_c = cand.c.height();
  rec.screen_estimate = cand.screen_estimate;
  rec.screen_iters = cfg.estimate_iters;
  QuadRatMap phi = QuadRatMap::poly_map(cand.c);
  if (cand.preperiodic) {
    rec.kind = PolyRecord::Kind::Preperiodic;
    rec.label = cand.label;
    CanonicalHeightResult ch = canonical_height(phi, P1Point(cand.x), 60);
    rec.estimate = 0.0;
    rec.floor = ch.floor;
    rec.ratio = 0.0;
    rec.refine_iters = ch.iters_used;
    return rec;
  }
  rec.kind = PolyRecord::Kind::SmallHeight;
  double abs_err = 1e-5 * std::max(1.0, rec.h_c);
  CanonicalHeightResult ch = canonical_height_refined(phi, P1Point(cand.x), abs_err);
  rec.estimate = ch.preperiodic ? 0.0 : ch.estimate;
  rec.floor = ch.floor;
  rec.ratio = rec.estimate / rec.h_c;
  rec.refine_iters = ch.iters_used;
  if (ch.preperiodic) {
    rec.kind = PolyRecord::Kind::Preperiodic;
    OrbitRecord orb = detect_orbit(phi, P1Point(cand.x), 60);
    if (orb.resolved) rec.label = classify_orbit(orb);
  }
  return rec;
}

}  // namespace

std::vector<PolyRecord> poly_search_partition(const PolySearchConfig& cfg, long n) {
  std::vector<PolyRecord> out;
  long long n2 = static_cast<long long>(n) * n;
  for (long m = 1; m <= n; ++m) {
    if (gcd_long(m, n) != 1) continue;
    for_each_k_in_class(m, n, cfg.N_max, [&](long long k) {
      Rational c{Integer(k), Integer(n2)};
      for (const Rational& x : start_points(c, m, n)) {
        Candidate cand{n, m, k, x, c, false, 0.0, {}};
        if (screen_pair(cfg, cand)) out.push_back(refine(cfg, cand));
      }
    });
  }
  std::sort(out.begin(), out.end(), [](const PolyRecord& a, const PolyRecord& b) {
    if (a.m != b.m) return a.m < b.m;
    if (a.k != b.k) return a.k < b.k;
    return a.x < b.x;
  });
  return out;
}

std::vector<PolyRecord> poly_search(const PolySearchConfig& cfg, int workers) {
  if (cfg.n_max < 1 || cfg.N_max < 1 || cfg.ratio_threshold <= 0.0)
    throw std::invalid_argument("invalid search configuration");
  std::vector<std::vector<PolyRecord>> per_n(static_cast<size_t>(cfg.n_max) + 1);
  std::atomic<long> next{1};
  auto run = [&]() {
    for (;;) {
      long n = next.fetch_add(1);
      if (n > cfg.n_max) break;
      per_n[static_cast<size_t>(n)] = poly_search_partition(cfg, n);
    }
  };
  if (workers <= 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& th : pool) th.join();
  }
  std::vector<PolyRecord> out;
  for (auto& v : per_n) out.insert(out.end(), v.begin(), v.end());
  return out;
}

}  // namespace qdyn
