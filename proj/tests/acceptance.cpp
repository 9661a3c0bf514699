// Acceptance suite: one pass/fail line per criterion, at the stated
// tolerances, with measured runtimes. Exits nonzero if any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <thread>

#include "qdyn/fixtures.hpp"
#include "qdyn/heights.hpp"
#include "qdyn/moduli.hpp"
#include "qdyn/polysearch.hpp"
#include "qdyn/ratsearch.hpp"
#include "qdyn/sigma.hpp"

using namespace qdyn;
using clk = std::chrono::steady_clock;

namespace {

int g_failures = 0;
int g_workers = 2;

double since(clk::time_point t0) {
  return std::chrono::duration<double>(clk::now() - t0).count();
}

void report(int criterion, bool pass, const std::string& what, double seconds) {
  std::printf("%s  criterion %d  (%.1fs)  %s\n", pass ? "PASS" : "FAIL", criterion, seconds,
              what.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

// ---- criterion 1: the record polynomial pair ------------------------------
void criterion1() {
  auto t0 = clk::now();
  QuadRatMap phi = QuadRatMap::poly_map(Rational::parse("-181/144"));
  CanonicalHeightResult ch = canonical_height_refined(phi, P1Point::parse("7/12"), 1e-6);
  double hc = Rational::parse("-181/144").height();
  bool ok = std::fabs(ch.estimate - 0.03433) < 1e-4 &&
            std::fabs(ch.estimate / hc - 0.00660) < 1e-4;
  char buf[160];
  snprintf(buf, sizeof(buf), "canonical height %.6f (want 0.03433 +-1e-4), ratio %.6f (want 0.00660 +-1e-4)",
           ch.estimate, ch.estimate / hc);
  report(1, ok, buf, since(t0));
}

// ---- criterion 2: desk-scale polynomial search ----------------------------
void criterion2() {
  auto t0 = clk::now();
  PolySearchConfig cfg;
  cfg.n_max = 144;
  cfg.N_max = 10;
  cfg.ratio_threshold = 0.02;
  auto recs = poly_search(cfg, g_workers);
  const std::set<long> desk_n = {12, 24, 60, 84, 140};
  bool ok = true;
  std::string missing;
  int matched = 0;
  for (const auto& row : fixtures::small_ratio_poly_rows()) {
    if (!desk_n.count(row.n)) continue;
    bool found = false;
    for (const auto& r : recs) {
      if (r.x == Rational::parse(row.x) && r.c == Rational::parse(row.c)) {
        found = std::fabs(r.ratio - row.ratio) < 1e-4;
        break;
      }
    }
    if (found) {
      ++matched;
    } else {
      ok = false;
      missing += std::string(" ") + row.x;
    }
  }
  char buf[200];
  snprintf(buf, sizeof(buf),
           "n_max=144 N_max=10 r=0.02: %d/13 published rows with n in {12,24,60,84,140} "
           "matched to +-1e-4 (%zu records)%s%s",
           matched, recs.size(), ok ? "" : "; missing:", missing.c_str());
  report(2, ok, buf, since(t0));
}

// ---- criterion 3: the 7-cycle map ------------------------------------------
void criterion3() {
  auto t0 = clk::now();
  QuadRatMap phi = fixtures::seven_cycle_map();
  OrbitRecord orbit = detect_orbit(phi, P1Point::infinity(), 10);
  bool ok = orbit.resolved && classify_orbit(orbit) == ModuliLabel{0, 7};

  auto cyc = fixtures::seven_cycle();
  auto pre = fixtures::seven_cycle_extra_preimages();
  std::set<std::string> expect, got;
  for (const auto& p : pre) expect.insert(p.to_string());
  for (const auto& p : cyc) {
    auto partner = preimage_partner(phi, p);
    if (partner) got.insert(partner->to_string());
  }
  ok = ok && expect == got;

  auto scan = preperiodic_scan(phi, std::log(1000.0), g_workers);
  ok = ok && scan.size() == 14;
  char buf[160];
  snprintf(buf, sizeof(buf),
           "orbit (0,7), %zu/7 partners match the published list, scan at log 1000 finds %zu "
           "points (want 14)",
           got.size(), scan.size());
  report(3, ok, buf, since(t0));
}

// ---- criterion 4: the sixteen length-8 maps --------------------------------
void criterion4() {
  auto t0 = clk::now();
  const auto& maps = fixtures::length8_maps();
  int label_ok = 0;
  int scan_ok = 0;
  std::string scan_detail;
  for (size_t i = 0; i < maps.size(); ++i) {
    const auto& fx = maps[i];
    OrbitRecord orbit = detect_orbit(fx.map, P1Point::infinity(), 12);
    if (orbit.resolved && classify_orbit(orbit) == ModuliLabel{fx.tail, fx.period}) ++label_ok;
    auto pts = preperiodic_scan(fx.map, std::log(1e4), g_workers);
    if (pts.size() >= 14) {
      ++scan_ok;
    } else {
      scan_detail += " map" + std::to_string(i) + "=" + std::to_string(pts.size());
    }
  }
  bool ok = label_ok == 16 && scan_ok == 16;
  char buf[300];
  snprintf(buf, sizeof(buf),
           "classifications %d/16 as listed; scans at log 10^4 with >=14 points: %d/16%s%s",
           label_ok, scan_ok, scan_detail.empty() ? "" : "; short:", scan_detail.c_str());
  report(4, ok, buf, since(t0));
  if (scan_ok != 16) {
    std::printf(
        "      note: the two short maps are exact outcomes, not scan gaps. Their 14th\n"
        "      preperiodic point is the second preimage of 0 -- 16081/3960 (height\n"
        "      log 16081 = 9.685) and -14855/693 (height log 14855 = 9.606) -- both just\n"
        "      above the stated bound log 10^4 = 9.210. At bound log 10^5 every map has\n"
        "      >= 14 points; see the decisions ledger for the verification.\n");
    std::fflush(stdout);
  }
}

// ---- criterion 5: the record rational pair ---------------------------------
void criterion5() {
  auto t0 = clk::now();
  QuadRatMap psi = fixtures::min_ratio_rat_map();
  SigmaInvariants sig = sigma_invariants(psi);
  CanonicalHeightResult ch = canonical_height_refined(psi, P1Point::infinity(), 1e-7);
  double ratio = ch.estimate / sig.map_height;
  bool ok = std::fabs(ch.estimate - 0.00360) < 1e-4 && std::fabs(ratio - 0.000466) < 2e-5;
  char buf[160];
  snprintf(buf, sizeof(buf),
           "hhat(inf) %.6f (want 0.00360 +-1e-4), ratio %.6f (want 0.000466 +-2e-5)",
           ch.estimate, ratio);
  report(5, ok, buf, since(t0));
}

// ---- criterion 6: desk-scale rational search -------------------------------
void criterion6() {
  auto t0 = clk::now();
  RatSearchConfig cfg;
  cfg.height_cap = 20;  // B = log 20
  cfg.ratio_threshold = 0.002;
  auto recs = rat_search(cfg, g_workers);
  const RatRecord* best = nullptr;
  long small_count = 0, pre_count = 0;
  for (const auto& r : recs) {
    if (r.kind == RatRecord::Kind::SmallHeight) {
      ++small_count;
      if (!best || r.ratio < best->ratio) best = &r;
    } else {
      ++pre_count;
    }
  }
  // partner pairs tie exactly, so the minimum is a band; the published triple
  // must lie within refinement tolerance of the smallest ratio
  const RatRecord* published = nullptr;
  for (const auto& r : recs)
    if (r.triple.x3 == Rational::parse("-1/3") && r.triple.x4 == Rational::parse("-1/5") &&
        r.triple.x5 == Rational::parse("-3/5"))
      published = &r;
  bool ok = best && published && published->ratio <= best->ratio + 1e-5 &&
            std::fabs(published->ratio - 0.000466) < 2e-5;
  char buf[300];
  if (best && published)
    snprintf(buf, sizeof(buf),
             "B=log20 r=0.002: %zu records (%ld small-height, %ld preperiodic); minimum "
             "ratio %.6f at (%s); published triple ratio %.6f within the minimum band",
             recs.size(), small_count, pre_count, best->ratio,
             best->triple.to_string().c_str(), published->ratio);
  else
    snprintf(buf, sizeof(buf), "record triple missing from the output");
  report(6, ok, buf, since(t0));
}

// ---- criterion 7: the tail-5 period-2 surface ------------------------------
void criterion7() {
  auto t0 = clk::now();
  bool ok = true;
  std::string detail;

  FuncField t = FuncField::t(), one(1);
  FuncField tp1 = t + one;
  struct {
    long n;
    FuncField x, y;
  } mults[] = {
      {2, t * tp1 * tp1, t * tp1 * tp1 * tp1 * tp1},
      {3, FuncField(0) - t * t * tp1 * tp1, t * t * tp1 * tp1 * tp1},
      {4, t * t * tp1, FuncField(0) - t * t * tp1 * (t * t + t - one)},
      {5, FuncField(0) - t * tp1,
       FuncField(0) - t * tp1 * (t * t * t + FuncField(3) * t * t + FuncField(2) * t - one)},
      {6, t * t * t * tp1 * tp1 * (t + FuncField(2)),
       FuncField(0) - t * t * t * tp1 * tp1 * tp1 *
           (FuncField(2) * t * t * t + FuncField(6) * t * t + FuncField(4) * t - one)},
  };
  for (const auto& m : mults) {
    auto p = ec_multiple<FuncField>(t, m.n);
    if (p.inf || !(p.x == m.x) || !(p.y == m.y)) {
      ok = false;
      detail += " [" + std::to_string(m.n) + "]P mismatch";
    }
  }

  for (long k = 1; k <= 20; ++k)
    if (ec_multiple<Rational>(Rational(1), k).inf) {
      ok = false;
      detail += " torsion at k=" + std::to_string(k);
    }

  std::mt19937 rng(2026);
  std::uniform_int_distribution<long> tn(-40, 40);
  std::uniform_int_distribution<long> td(1, 12);
  std::uniform_int_distribution<long> mul(1, 9);
  int roundtrips = 0;
  while (roundtrips < 100) {
    Rational tv(tn(rng), td(rng));
    if (tv == Rational(0) || tv == Rational(-1)) continue;
    if (x52_curve(tv).cubic_disc().is_zero()) continue;
    auto p = ec_multiple<Rational>(tv, mul(rng));
    if (p.inf || p.x.is_zero()) continue;
    auto chart = x52_inverse<Rational>(tv, p.x, p.y);
    if (!chart) continue;
    if (chart->x3 == Rational(0) || chart->x3 == Rational(1)) continue;
    ++roundtrips;
    auto back = x52_forward<Rational>(chart->x3, chart->x4, chart->w);
    if (!back || !(back->t == tv) || !(back->x == p.x) || !(back->y == p.y)) {
      ok = false;
      detail += " roundtrip fail at t=" + tv.to_string();
    }
  }

  int pipelines = 0;
  while (pipelines < 20) {
    Rational tv(tn(rng), td(rng));
    if (tv == Rational(0) || tv == Rational(-1)) continue;
    if (x52_curve(tv).cubic_disc().is_zero()) continue;
    auto res = x52_point_from_multiple(6, tv);
    if (!std::holds_alternative<X52PointData>(res)) continue;
    ++pipelines;
    if (!(classify_orbit(std::get<X52PointData>(res).orbit) == ModuliLabel{5, 2})) {
      ok = false;
      detail += " pipeline label fail at t=" + tv.to_string();
    }
  }
  char buf[300];
  snprintf(buf, sizeof(buf),
           "[2]P..[6]P exact over Q(t); [k]P != O for k<=20 at t=1; 100 roundtrips; 20 "
           "pipelines give (5,2)%s",
           detail.c_str());
  report(7, ok, buf, since(t0));
}

// ---- criterion 8: property suites ------------------------------------------
void criterion8() {
  auto t0 = clk::now();
  bool ok = true;
  std::string detail;
  std::mt19937 rng(99);
  std::uniform_int_distribution<long> d(-9, 9);

  // sigma identity through the independent quotient-algebra route
  long tested = 0;
  while (tested < 1000) {
    auto phi = QuadRatMap::try_create(IntPoly({d(rng), d(rng), d(rng)}),
                                      IntPoly({d(rng), d(rng), d(rng)}));
    if (!phi) continue;
    ++tested;
    SigmaInvariants s = sigma_invariants_algebraic(*phi);
    if (!(s.s3 == s.s1 - Rational(2))) {
      ok = false;
      detail += " sigma identity";
      break;
    }
    SigmaInvariants f = sigma_invariants(*phi);
    if (!(f.s1 == s.s1) || !(f.s2 == s.s2)) {
      ok = false;
      detail += " sigma route mismatch";
      break;
    }
  }

  // conjugation invariance of sigmas and multipliers
  long conj = 0;
  while (conj < 100) {
    auto phi = QuadRatMap::try_create(IntPoly({d(rng), d(rng), d(rng)}),
                                      IntPoly({d(rng), d(rng), d(rng)}));
    if (!phi) continue;
    Integer a(d(rng)), b(d(rng)), c(d(rng)), e(d(rng));
    if ((a * e - b * c).is_zero()) continue;
    ++conj;
    Mobius eta(a, b, c, e);
    SigmaInvariants s0 = sigma_invariants(*phi), s1 = sigma_invariants(phi->conjugate(eta));
    if (!(s0.s1 == s1.s1) || !(s0.s2 == s1.s2)) {
      ok = false;
      detail += " sigma conjugation";
      break;
    }
  }

  // floor <= estimate for random pairs
  long floors = 0;
  while (floors < 40) {
    auto phi = QuadRatMap::try_create(IntPoly({d(rng), d(rng), d(rng)}),
                                      IntPoly({d(rng), d(rng), d(rng)}));
    if (!phi) continue;
    ++floors;
    CanonicalHeightResult ch = canonical_height(*phi, P1Point(Integer(d(rng)), Integer(1)), 14);
    double slack = std::ldexp(upper_growth_const(*phi), -14) + 1e-9;
    if (ch.preperiodic ? ch.floor > 1e-12 : ch.floor > ch.estimate + slack) {
      ok = false;
      detail += " floor above estimate";
      break;
    }
  }

  // micro-range oracle equivalence for the polynomial search
  {
    PolySearchConfig cfg;
    cfg.n_max = 24;
    cfg.N_max = 3;
    auto recs = poly_search(cfg, g_workers);
    std::set<std::string> search_pre, oracle_pre;
    for (const auto& r : recs)
      if (r.kind == PolyRecord::Kind::Preperiodic)
        search_pre.insert(r.x.to_string() + "|" + r.c.to_string());
    for (long n = 1; n <= cfg.n_max; ++n) {
      std::set<long long> all_k;
      for (long m = 1; m <= n; ++m) {
        if (std::gcd(m, n) != 1) continue;
        for (long long k : admissible_k_values(m, n, cfg.N_max)) all_k.insert(k);
      }
      for (long long k : all_k) {
        Rational c{Integer(k), Integer(n) * Integer(n)};
        QuadRatMap phi = QuadRatMap::poly_map(c);
        double abort_h = height_bound_data(phi).C + 1e-9;
        for (long l = 1; l <= 3 * n; ++l) {
          OrbitRecord orb = detect_orbit(phi, P1Point(Rational(l, n)), 30, abort_h);
          if (orb.resolved && *orb.tail + *orb.period > 4)
            oracle_pre.insert(Rational(l, n).to_string() + "|" + c.to_string());
        }
      }
    }
    if (search_pre != oracle_pre) {
      ok = false;
      detail += " micro-range oracle mismatch";
    }
  }

  // six-point orbit contract
  std::uniform_int_distribution<long> num(-25, 25);
  std::uniform_int_distribution<long> den(1, 25);
  long contract = 0;
  while (contract < 1000) {
    TripleParam t{Rational(num(rng), den(rng)), Rational(num(rng), den(rng)),
                  Rational(num(rng), den(rng))};
    if (!t.valid()) continue;
    auto phi = construct_map(t);
    if (!phi) continue;
    ++contract;
    P1Point cur = P1Point::infinity();
    const Rational expect[5] = {Rational(1), Rational(0), t.x3, t.x4, t.x5};
    for (const auto& e : expect) {
      cur = phi->apply(cur);
      if (!(cur == P1Point(e))) {
        ok = false;
        detail += " orbit contract";
        break;
      }
    }
  }

  // factored resultant identity
  long identity = 0;
  std::uniform_int_distribution<long> xn(-15, 15);
  std::uniform_int_distribution<long> xd(1, 15);
  while (identity < 200) {
    Rational x3(xn(rng), xd(rng)), x4(xn(rng), xd(rng));
    if (x3 == Rational(0) || x3 == Rational(1) || x4 == Rational(0) || x4 == Rational(1) ||
        x3 == x4)
      continue;
    if (!x42_x5(x3, x4)) continue;
    ++identity;
    if (!x42_resultant_factored(x3, x4).match) {
      ok = false;
      detail += " resultant identity";
      break;
    }
  }

  char buf[300];
  snprintf(buf, sizeof(buf),
           "sigma identity+routes (1000), conjugation invariance (100), floor<=estimate, "
           "micro-range oracle (n<=24), orbit contract (1000), factored resultant (200)%s",
           detail.c_str());
  report(8, ok, buf, since(t0));
}

}  // namespace

int main() {
  unsigned hw = std::thread::hardware_concurrency();
  g_workers = hw > 0 ? static_cast<int>(hw) : 2;
  std::printf("acceptance suite, %d workers\n", g_workers);
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  std::printf("%d criterion(s) failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
