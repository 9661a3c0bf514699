#include "qdyn/qdyn.h"

#include <cmath>
#include <cstring>
#include <sstream>
#include <string>

#include "qdyn/heights.hpp"
#include "qdyn/moduli.hpp"
#include "qdyn/parametrization.hpp"
#include "qdyn/records.hpp"
#include "qdyn/runner.hpp"
#include "qdyn/sigma.hpp"
#include "qdyn/verify.hpp"

using namespace qdyn;

struct qdyn_map {
  QuadRatMap impl;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class Fn>
qdyn_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return QDYN_ERR_USAGE;
  } catch (const std::domain_error& e) {
    g_last_error = e.what();
    return QDYN_ERR_DOMAIN;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QDYN_ERR_INTERNAL;
  }
}

}  // namespace

extern "C" {

const char* qdyn_version(void) { return kToolVersion; }

const char* qdyn_status_name(qdyn_status s) {
  switch (s) {
    case QDYN_OK: return "ok";
    case QDYN_ERR_USAGE: return "usage-error";
    case QDYN_ERR_DOMAIN: return "domain-error";
    case QDYN_ERR_DEGENERATE: return "degenerate-map";
    case QDYN_ERR_VERIFY: return "verification-failure";
    case QDYN_ERR_IO: return "io-error";
    case QDYN_ERR_INTERNAL: return "internal-error";
  }
  return "unknown";
}

const char* qdyn_last_error(void) { return g_last_error.c_str(); }

void qdyn_string_free(char* s) { free(s); }
void qdyn_map_free(qdyn_map* m) { delete m; }

qdyn_status qdyn_map_poly(const char* c, qdyn_map** out) {
  return guarded([&]() {
    if (!c || !out) throw std::invalid_argument("null argument");
    *out = new qdyn_map{QuadRatMap::poly_map(Rational::parse(c))};
    return QDYN_OK;
  });
}

qdyn_status qdyn_map_rational(const char* f0, const char* f1, const char* f2, const char* g0,
                              const char* g1, const char* g2, qdyn_map** out) {
  return guarded([&]() {
    if (!f0 || !f1 || !f2 || !g0 || !g1 || !g2 || !out)
      throw std::invalid_argument("null argument");
    IntPoly f(std::vector<Integer>{Integer(std::string(f0)), Integer(std::string(f1)),
                                   Integer(std::string(f2))});
    IntPoly g(std::vector<Integer>{Integer(std::string(g0)), Integer(std::string(g1)),
                                   Integer(std::string(g2))});
    auto m = QuadRatMap::try_create(std::move(f), std::move(g));
    if (!m) {
      g_last_error = "degenerate map";
      return QDYN_ERR_DEGENERATE;
    }
    *out = new qdyn_map{*std::move(m)};
    return QDYN_OK;
  });
}

qdyn_status qdyn_map_from_triple(const char* x3, const char* x4, const char* x5,
                                 qdyn_map** out) {
  return guarded([&]() {
    if (!x3 || !x4 || !x5 || !out) throw std::invalid_argument("null argument");
    TripleParam t{Rational::parse(x3), Rational::parse(x4), Rational::parse(x5)};
    auto m = construct_map(t);
    if (!m) {
      g_last_error = "triple lies on the degeneracy locus";
      return QDYN_ERR_DEGENERATE;
    }
    *out = new qdyn_map{*std::move(m)};
    return QDYN_OK;
  });
}

qdyn_status qdyn_map_format(const qdyn_map* m, char** out) {
  return guarded([&]() {
    if (!m || !out) throw std::invalid_argument("null argument");
    *out = dup_string(m->impl.to_string());
    return QDYN_OK;
  });
}

qdyn_status qdyn_map_apply(const qdyn_map* m, const char* point, char** out) {
  return guarded([&]() {
    if (!m || !point || !out) throw std::invalid_argument("null argument");
    *out = dup_string(m->impl.apply(P1Point::parse(point)).to_string());
    return QDYN_OK;
  });
}

qdyn_status qdyn_map_resultant(const qdyn_map* m, char** out) {
  return guarded([&]() {
    if (!m || !out) throw std::invalid_argument("null argument");
    *out = dup_string(m->impl.resultant().to_string());
    return QDYN_OK;
  });
}

qdyn_status qdyn_map_bad_primes(const qdyn_map* m, char** out) {
  return guarded([&]() {
    if (!m || !out) throw std::invalid_argument("null argument");
    std::string s;
    for (const auto& p : bad_primes(m->impl)) {
      if (!s.empty()) s += ",";
      s += p.to_string();
    }
    *out = dup_string(s);
    return QDYN_OK;
  });
}

qdyn_status qdyn_map_orbit(const qdyn_map* m, const char* point, long max_iter,
                           qdyn_orbit_info* out) {
  return guarded([&]() {
    if (!m || !point || !out) throw std::invalid_argument("null argument");
    if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
    OrbitRecord rec = detect_orbit(m->impl, P1Point::parse(point), max_iter);
    out->resolved = rec.resolved ? 1 : 0;
    out->tail = rec.tail.value_or(0);
    out->period = rec.period.value_or(0);
    out->iterates = rec.orbit_size();
    return QDYN_OK;
  });
}

qdyn_status qdyn_map_canonical_height(const qdyn_map* m, const char* point, double abs_err,
                                      double* estimate, double* floor_out, int* preperiodic) {
  return guarded([&]() {
    if (!m || !point || !estimate || !floor_out) throw std::invalid_argument("null argument");
    CanonicalHeightResult r =
        canonical_height_refined(m->impl, P1Point::parse(point), abs_err > 0 ? abs_err : 1e-6);
    *estimate = r.estimate;
    *floor_out = r.floor;
    if (preperiodic) *preperiodic = r.preperiodic ? 1 : 0;
    return QDYN_OK;
  });
}

qdyn_status qdyn_map_height_bound(const qdyn_map* m, char** resultant, double* d_lower,
                                  double* c_const) {
  return guarded([&]() {
    if (!m) throw std::invalid_argument("null argument");
    HeightBoundData hbd = height_bound_data(m->impl);
    if (resultant) *resultant = dup_string(hbd.R.to_string());
    if (d_lower) *d_lower = hbd.D;
    if (c_const) *c_const = hbd.C;
    return QDYN_OK;
  });
}

qdyn_status qdyn_map_sigma(const qdyn_map* m, char** sigma1, char** sigma2,
                           double* map_height) {
  return guarded([&]() {
    if (!m) throw std::invalid_argument("null argument");
    SigmaInvariants sig = sigma_invariants(m->impl);
    if (sigma1) *sigma1 = dup_string(sig.s1.to_string());
    if (sigma2) *sigma2 = dup_string(sig.s2.to_string());
    if (map_height) *map_height = sig.map_height;
    return QDYN_OK;
  });
}

qdyn_status qdyn_map_preperiodic_points(const qdyn_map* m, double height_bound, int workers,
                                        char** out) {
  return guarded([&]() {
    if (!m || !out) throw std::invalid_argument("null argument");
    std::ostringstream os;
    for (const auto& p : preperiodic_scan(m->impl, height_bound, workers < 1 ? 1 : workers))
      os << p.to_string() << "\n";
    *out = dup_string(os.str());
    return QDYN_OK;
  });
}

qdyn_status qdyn_poly_search(const qdyn_poly_search_opts* opts, long* n_records) {
  return guarded([&]() {
    if (!opts) throw std::invalid_argument("null options");
    PolySearchConfig cfg;
    cfg.n_max = opts->n_max;
    cfg.N_max = opts->N_max;
    cfg.ratio_threshold = opts->ratio > 0 ? opts->ratio : 0.02;
    cfg.ratio_threshold_odd = opts->ratio_odd;
    RunOptions run;
    run.out_path = opts->out_path ? opts->out_path : "";
    run.csv_path = opts->csv_path ? opts->csv_path : "";
    run.resume = opts->resume != 0;
    run.workers = opts->workers > 0 ? opts->workers : 1;
    long n = run_poly_search(cfg, run);
    if (n_records) *n_records = n;
    return QDYN_OK;
  });
}

qdyn_status qdyn_rat_search(const qdyn_rat_search_opts* opts, long* n_records) {
  return guarded([&]() {
    if (!opts) throw std::invalid_argument("null options");
    RatSearchConfig cfg;
    if (!(opts->height_bound > 0)) throw std::invalid_argument("height bound must be positive");
    cfg.height_cap = static_cast<long>(std::floor(std::exp(opts->height_bound) + 1e-9));
    cfg.ratio_threshold = opts->ratio > 0 ? opts->ratio : 0.002;
    RunOptions run;
    run.out_path = opts->out_path ? opts->out_path : "";
    run.csv_path = opts->csv_path ? opts->csv_path : "";
    run.resume = opts->resume != 0;
    run.workers = opts->workers > 0 ? opts->workers : 1;
    long n = run_rat_search(cfg, run);
    if (n_records) *n_records = n;
    return QDYN_OK;
  });
}

qdyn_status qdyn_verify(const char* target, int workers, char** report) {
  return guarded([&]() {
    if (!target) throw std::invalid_argument("null target");
    VerifyReport rep = run_verify(target, workers < 1 ? 1 : workers);
    if (report) *report = dup_string(rep.render());
    return rep.ok() ? QDYN_OK : QDYN_ERR_VERIFY;
  });
}

}  // extern "C"
