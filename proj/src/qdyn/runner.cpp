#include "qdyn/runner.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace qdyn {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct PartitionPlan {
  std::string key;
  std::string segment;  // file name inside the parts dir
  bool done = false;
};

struct ManifestIO {
  fs::path manifest_path, parts_dir;
  json config_echo;
  std::string command;
  std::vector<PartitionPlan> parts;
  std::mutex mu;

  void load_or_init(bool resume) {
    if (resume && fs::exists(manifest_path)) {
      std::ifstream in(manifest_path);
      json j = json::parse(in);
      if (j.at("command") != command || j.at("config") != config_echo)
        throw std::invalid_argument("resume manifest does not match this configuration");
      auto jparts = j.at("partitions");
      if (jparts.size() != parts.size())
        throw std::invalid_argument("resume manifest partition list mismatch");
      for (size_t i = 0; i < parts.size(); ++i) {
        if (jparts[i].at("key") != parts[i].key)
          throw std::invalid_argument("resume manifest partition key mismatch");
        parts[i].done = jparts[i].at("status") == "done" &&
                        fs::exists(parts_dir / parts[i].segment);
      }
    }
    fs::create_directories(parts_dir);
    write();
  }

  void write() {
    json j;
    j["schema"] = "manifest/1";
    j["tool"] = "qdyn";
    j["version"] = kToolVersion;
    j["command"] = command;
    j["config"] = config_echo;
    json arr = json::array();
    for (const auto& p : parts) {
      json e;
      e["key"] = p.key;
      e["segment"] = p.segment;
      e["status"] = p.done ? "done" : "pending";
      arr.push_back(e);
    }
    j["partitions"] = arr;
    fs::path tmp = manifest_path;
    tmp += ".tmp";
    {
      std::ofstream out(tmp);
      out << j.dump(2) << "\n";
    }
    fs::rename(tmp, manifest_path);
  }

  void mark_done(size_t idx) {
    std::lock_guard<std::mutex> lock(mu);
    parts[idx].done = true;
    write();
  }
};

void write_segment(const fs::path& path, const std::vector<json>& rows) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    for (const auto& r : rows) out << r.dump() << "\n";
  }
  fs::rename(tmp, path);
}

std::vector<json> read_segment(const fs::path& path) {
  std::vector<json> rows;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) rows.push_back(json::parse(line));
  }
  return rows;
}

// Runs pending partitions across workers, then merges all segments with the
// supplied comparator and emits JSONL (file or stdout) and optional CSV.
template <class RunFn, class LessFn, class CsvFn>
long drive(ManifestIO& mio, const RunOptions& opt, RunFn run_partition, LessFn less,
           CsvFn csv_row, const std::string& csv_header) {
  std::atomic<size_t> next{0};
  auto work = [&]() {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= mio.parts.size()) break;
      if (mio.parts[i].done) continue;
      std::vector<json> rows = run_partition(mio.parts[i].key);
      write_segment(mio.parts_dir / mio.parts[i].segment, rows);
      mio.mark_done(i);
    }
  };
  int workers = std::max(1, opt.workers);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  std::vector<json> all;
  for (const auto& p : mio.parts) {
    auto rows = read_segment(mio.parts_dir / p.segment);
    all.insert(all.end(), rows.begin(), rows.end());
  }
  std::stable_sort(all.begin(), all.end(), less);

  if (opt.out_path.empty()) {
    for (const auto& r : all) std::cout << r.dump() << "\n";
  } else {
    fs::path tmp = fs::path(opt.out_path);
    tmp += ".tmp";
    {
      std::ofstream out(tmp);
      for (const auto& r : all) out << r.dump() << "\n";
    }
    fs::rename(tmp, fs::path(opt.out_path));
  }
  if (!opt.csv_path.empty()) {
    std::ofstream csv(opt.csv_path);
    csv << csv_header << "\n";
    for (const auto& r : all) csv << csv_row(r) << "\n";
  }
  return static_cast<long>(all.size());
}

// In-memory variant used when streaming to stdout (no manifest files).
template <class RunAll, class LessFn>
long drive_stdout(RunAll run_all, LessFn less, const RunOptions& opt) {
  std::vector<json> all = run_all();
  std::stable_sort(all.begin(), all.end(), less);
  for (const auto& r : all) std::cout << r.dump() << "\n";
  (void)opt;
  return static_cast<long>(all.size());
}

std::string fmt_double(double v) {
  char buf[64];
  snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

bool poly_less(const json& a, const json& b) {
  long an = a.at("n").get<long>(), bn = b.at("n").get<long>();
  if (an != bn) return an < bn;
  long am = a.at("m").get<long>(), bm = b.at("m").get<long>();
  if (am != bm) return am < bm;
  long long ak = a.at("k").get<long long>(), bk = b.at("k").get<long long>();
  if (ak != bk) return ak < bk;
  Rational ax = Rational::parse(a.at("x").get<std::string>());
  Rational bx = Rational::parse(b.at("x").get<std::string>());
  return ax < bx;
}

bool rat_less(const json& a, const json& b) {
  auto key = [](const json& j) {
    return std::array<Rational, 3>{Rational::parse(j.at("x3").get<std::string>()),
                                   Rational::parse(j.at("x4").get<std::string>()),
                                   Rational::parse(j.at("x5").get<std::string>())};
  };
  auto ka = key(a), kb = key(b);
  for (int i = 0; i < 3; ++i) {
    double ha = ka[i].height(), hb = kb[i].height();
    if (ha != hb) return ha < hb;
  }
  for (int i = 0; i < 3; ++i)
    if (!(ka[i] == kb[i])) return ka[i] < kb[i];
  return false;
}

std::string poly_csv_row(const json& r) {
  return r.at("c").get<std::string>() + "," + r.at("x").get<std::string>() + "," +
         fmt_double(r.at("estimate").get<double>()) + "," +
         fmt_double(r.at("ratio").get<double>()) + "," + r.at("kind").get<std::string>();
}

std::string rat_csv_row(const json& r) {
  std::string phi = "(" + r.at("f").dump() + ")/(" + r.at("g").dump() + ")";
  std::string tail = r.contains("tail") ? std::to_string(r.at("tail").get<long>()) : "";
  std::string period = r.contains("period") ? std::to_string(r.at("period").get<long>()) : "";
  return r.at("x3").get<std::string>() + "," + r.at("x4").get<std::string>() + "," +
         r.at("x5").get<std::string>() + "," + fmt_double(r.at("estimate").get<double>()) +
         "," + fmt_double(r.at("ratio").get<double>()) + "," +
         r.at("kind").get<std::string>() + "," + tail + "," + period;
}

}  // namespace

long run_poly_search(const PolySearchConfig& cfg, const RunOptions& opt) {
  json echo;
  echo["n_max"] = cfg.n_max;
  echo["N_max"] = cfg.N_max;
  echo["ratio"] = cfg.ratio_threshold;
  echo["ratio_odd"] = cfg.ratio_threshold_odd;

  auto run_part = [&](const std::string& key) {
    long n = std::stol(key.substr(2));
    std::vector<json> rows;
    for (const auto& rec : poly_search_partition(cfg, n)) rows.push_back(to_json(rec));
    return rows;
  };

  if (opt.out_path.empty()) {
    if (opt.resume) throw std::invalid_argument("--resume needs --out");
    return drive_stdout(
        [&]() {
          std::vector<json> rows;
          for (const auto& rec : poly_search(cfg, opt.workers)) rows.push_back(to_json(rec));
          return rows;
        },
        poly_less, opt);
  }

  ManifestIO mio;
  mio.manifest_path = opt.out_path + ".manifest.json";
  mio.parts_dir = opt.out_path + ".parts";
  mio.command = "poly-search";
  mio.config_echo = echo;
  for (long n = 1; n <= cfg.n_max; ++n) {
    char seg[32];
    snprintf(seg, sizeof(seg), "n-%06ld.jsonl", n);
    mio.parts.push_back({"n=" + std::to_string(n), seg, false});
  }
  mio.load_or_init(opt.resume);
  return drive(mio, opt, run_part, poly_less, poly_csv_row,
               "c,x,canonical_height,ratio,kind");
}

long run_rat_search(const RatSearchConfig& cfg, const RunOptions& opt) {
  json echo;
  echo["height_cap"] = cfg.height_cap;
  echo["ratio"] = cfg.ratio_threshold;

  auto run_part = [&](const std::string& key) {
    Rational x3 = Rational::parse(key.substr(3));
    std::vector<json> rows;
    for (const auto& rec : rat_search_partition(cfg, x3)) rows.push_back(to_json(rec));
    return rows;
  };

  if (opt.out_path.empty()) {
    if (opt.resume) throw std::invalid_argument("--resume needs --out");
    return drive_stdout(
        [&]() {
          std::vector<json> rows;
          for (const auto& rec : rat_search(cfg, opt.workers)) rows.push_back(to_json(rec));
          return rows;
        },
        rat_less, opt);
  }

  ManifestIO mio;
  mio.manifest_path = opt.out_path + ".manifest.json";
  mio.parts_dir = opt.out_path + ".parts";
  mio.command = "rat-search";
  mio.config_echo = echo;
  std::vector<Rational> coords = rationals_up_to(cfg.height_cap);
  long idx = 0;
  for (const auto& q : coords) {
    if (q == Rational(0) || q == Rational(1)) continue;
    char seg[32];
    snprintf(seg, sizeof(seg), "x3-%06ld.jsonl", idx++);
    mio.parts.push_back({"x3=" + q.to_string(), seg, false});
  }
  mio.load_or_init(opt.resume);
  return drive(mio, opt, run_part, rat_less, rat_csv_row,
               "x3,x4,x5,canonical_height,ratio,kind,tail,period");
}

}  // namespace qdyn
