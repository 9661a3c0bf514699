#pragma once

#include <string>
#include <vector>

namespace qdyn {

struct VerifyCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct VerifyReport {
  std::string target;
  std::vector<VerifyCheck> checks;
  bool ok() const {
    for (const auto& c : checks)
      if (!c.ok) return false;
    return true;
  }
  std::string render() const;
};

// targets: eq11 | tables | x42 | x52 | sigma
// Throws std::invalid_argument for an unknown target.
VerifyReport run_verify(const std::string& target, int workers = 1);

std::vector<std::string> verify_targets();

}  // namespace qdyn
