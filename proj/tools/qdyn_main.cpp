// Command-line front end for the qdyn shared library. Talks to the C API
// only. Exit codes: 0 success, 1 verification failure, 2 usage error.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <thread>

#include "qdyn/qdyn.h"

namespace {

int workers_or_default(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("QDYN_WORKERS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// accepts "logN" (e.g. log20, log100) or a plain number of nats
bool parse_height_bound(const std::string& s, double& out) {
  if (s.rfind("log", 0) == 0) {
    char* end = nullptr;
    double v = std::strtod(s.c_str() + 3, &end);
    if (!end || *end != '\0' || !(v > 0)) return false;
    out = std::log(v);
    return true;
  }
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (!end || *end != '\0' || !(v > 0)) return false;
  out = v;
  return true;
}

int fail(qdyn_status st) {
  std::fprintf(stderr, "error: %s: %s\n", qdyn_status_name(st), qdyn_last_error());
  return st == QDYN_ERR_VERIFY ? 1 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-arithmetic search and verification for degree-2 dynamics on P^1(Q)"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qdyn_version()));

  // poly-search
  auto* poly = app.add_subcommand("poly-search",
                                  "search pairs (x, z^2+c) for preperiodic points and small "
                                  "canonical-height ratios");
  long n_max = 0, N_max = 10;
  double poly_ratio = 0.02, poly_ratio_odd = 0.0;
  std::string out_path, csv_path;
  bool resume = false;
  int workers = 0;
  poly->add_option("--n-max", n_max, "largest denominator of x")->required();
  poly->add_option("--N-max", N_max, "|c| search depth: k ranges down to -N_max n^2");
  poly->add_option("--ratio", poly_ratio, "record threshold for hhat/h(c)");
  poly->add_option("--ratio-odd", poly_ratio_odd,
                   "separate threshold when 4 does not divide the denominator");
  poly->add_option("--out", out_path, "JSONL output file (default: stdout)");
  poly->add_option("--csv", csv_path, "also write a CSV table");
  poly->add_flag("--resume", resume, "reuse completed partitions from the manifest");
  poly->add_option("--workers", workers, "worker threads (default: QDYN_WORKERS or hardware)");

  // rat-search
  auto* rat = app.add_subcommand("rat-search",
                                 "search normalized triples (x3,x4,x5) of degree-2 rational "
                                 "maps for long orbits and small height ratios");
  std::string height_bound_str = "log20";
  double rat_ratio = 0.002;
  std::string rat_out, rat_csv;
  bool rat_resume = false;
  int rat_workers = 0;
  rat->add_option("--height-bound", height_bound_str,
                  "coordinate height bound, e.g. log20 or a value in nats");
  rat->add_option("--ratio", rat_ratio, "record threshold for hhat/h(phi)");
  rat->add_option("--out", rat_out, "JSONL output file (default: stdout)");
  rat->add_option("--csv", rat_csv, "also write a CSV table");
  rat->add_flag("--resume", rat_resume, "reuse completed partitions from the manifest");
  rat->add_option("--workers", rat_workers, "worker threads");

  // verify
  auto* verify = app.add_subcommand("verify", "run a built-in verification suite");
  std::string target;
  int verify_workers = 0;
  verify->add_option("target", target, "eq11 | tables | x42 | x52 | sigma")->required();
  verify->add_option("--workers", verify_workers, "worker threads");

  // one-shot utilities over a single map
  auto* height = app.add_subcommand("height", "canonical height of a point under z^2+c or f/g");
  std::string h_c, h_point = "inf";
  std::vector<std::string> h_coeffs;
  double h_err = 1e-6;
  height->add_option("--c", h_c, "polynomial parameter c (map z^2+c)");
  height->add_option("--map", h_coeffs, "six integers f0 f1 f2 g0 g1 g2")->expected(6);
  height->add_option("--point", h_point, "rational point or inf");
  height->add_option("--abs-err", h_err, "certified absolute error");

  CLI11_PARSE(app, argc, argv);

  if (poly->parsed()) {
    if (n_max < 1 || N_max < 1 || !(poly_ratio > 0)) {
      std::fprintf(stderr, "error: usage-error: --n-max and --N-max must be positive\n");
      return 2;
    }
    qdyn_poly_search_opts opts{};
    opts.n_max = n_max;
    opts.N_max = N_max;
    opts.ratio = poly_ratio;
    opts.ratio_odd = poly_ratio_odd;
    opts.workers = workers_or_default(workers);
    opts.resume = resume ? 1 : 0;
    opts.out_path = out_path.empty() ? nullptr : out_path.c_str();
    opts.csv_path = csv_path.empty() ? nullptr : csv_path.c_str();
    long n = 0;
    qdyn_status st = qdyn_poly_search(&opts, &n);
    if (st != QDYN_OK) return fail(st);
    if (!out_path.empty()) std::fprintf(stderr, "%ld records -> %s\n", n, out_path.c_str());
    return 0;
  }

  if (rat->parsed()) {
    double bound = 0;
    if (!parse_height_bound(height_bound_str, bound)) {
      std::fprintf(stderr, "error: usage-error: bad --height-bound '%s'\n",
                   height_bound_str.c_str());
      return 2;
    }
    qdyn_rat_search_opts opts{};
    opts.height_bound = bound;
    opts.ratio = rat_ratio;
    opts.workers = workers_or_default(rat_workers);
    opts.resume = rat_resume ? 1 : 0;
    opts.out_path = rat_out.empty() ? nullptr : rat_out.c_str();
    opts.csv_path = rat_csv.empty() ? nullptr : rat_csv.c_str();
    long n = 0;
    qdyn_status st = qdyn_rat_search(&opts, &n);
    if (st != QDYN_OK) return fail(st);
    if (!rat_out.empty()) std::fprintf(stderr, "%ld records -> %s\n", n, rat_out.c_str());
    return 0;
  }

  if (verify->parsed()) {
    char* report = nullptr;
    qdyn_status st = qdyn_verify(target.c_str(), workers_or_default(verify_workers), &report);
    if (report) {
      std::fputs(report, stdout);
      qdyn_string_free(report);
    }
    if (st == QDYN_OK) return 0;
    if (st == QDYN_ERR_VERIFY) return 1;
    return fail(st);
  }

  if (height->parsed()) {
    qdyn_map* map = nullptr;
    qdyn_status st;
    if (!h_c.empty()) {
      st = qdyn_map_poly(h_c.c_str(), &map);
    } else if (h_coeffs.size() == 6) {
      st = qdyn_map_rational(h_coeffs[0].c_str(), h_coeffs[1].c_str(), h_coeffs[2].c_str(),
                             h_coeffs[3].c_str(), h_coeffs[4].c_str(), h_coeffs[5].c_str(), &map);
    } else {
      std::fprintf(stderr, "error: usage-error: give --c or --map\n");
      return 2;
    }
    if (st != QDYN_OK) return fail(st);
    double est = 0, floor = 0;
    int pre = 0;
    st = qdyn_map_canonical_height(map, h_point.c_str(), h_err, &est, &floor, &pre);
    if (st != QDYN_OK) {
      qdyn_map_free(map);
      return fail(st);
    }
    char* fmt = nullptr;
    qdyn_map_format(map, &fmt);
    std::printf("map        %s\npoint      %s\nestimate   %.10f\nfloor      %.10f\n%s", fmt,
                h_point.c_str(), est, floor, pre ? "preperiodic yes\n" : "preperiodic no\n");
    qdyn_string_free(fmt);
    qdyn_map_free(map);
    return 0;
  }

  return 2;
}
