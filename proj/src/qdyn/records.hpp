#pragma once

#include <json.hpp>

#include "qdyn/polysearch.hpp"
#include "qdyn/ratsearch.hpp"

namespace qdyn {

extern const char* kToolVersion;

nlohmann::json to_json(const PolyRecord& rec);
PolyRecord poly_record_from_json(const nlohmann::json& j);

nlohmann::json to_json(const RatRecord& rec);
RatRecord rat_record_from_json(const nlohmann::json& j);

// one compact JSON object per line
std::string json_line(const nlohmann::json& j);

}  // namespace qdyn
