#pragma once

#include <string>

#include "qdyn/records.hpp"

namespace qdyn {

// Options shared by the CLI-facing search runners. Empty out_path streams the
// merged records to stdout (no manifest, resume unavailable). With an output
// file, per-partition segments live in <out>.parts/ and the manifest in
// <out>.manifest.json; a resumed run never recomputes a completed partition
// and the merged output is byte-identical regardless of worker count.
struct RunOptions {
  std::string out_path;  // empty = stdout
  std::string csv_path;  // optional table-style export
  bool resume = false;
  int workers = 1;
};

long run_poly_search(const PolySearchConfig& cfg, const RunOptions& opt);
long run_rat_search(const RatSearchConfig& cfg, const RunOptions& opt);

}  // namespace qdyn
