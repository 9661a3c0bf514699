#include "qdyn/records.hpp"

namespace qdyn {

const char* kToolVersion = "0.1.0";

using nlohmann::json;

json to_json(const PolyRecord& rec) {
  json j;
  j["schema"] = "poly/1";
  j["kind"] = rec.kind == PolyRecord::Kind::Preperiodic ? "preperiodic" : "small-height";
  j["n"] = rec.n;
  j["m"] = rec.m;
  j["k"] = rec.k;
  j["x"] = rec.x.to_string();
  j["c"] = rec.c.to_string();
  j["h_c"] = rec.h_c;
  j["screen_iters"] = rec.screen_iters;
  j["screen_estimate"] = rec.screen_estimate;
  j["estimate"] = rec.estimate;
  j["floor"] = rec.floor;
  j["ratio"] = rec.ratio;
  j["refine_iters"] = rec.refine_iters;
  if (rec.label) {
    j["tail"] = rec.label->tail;
    j["period"] = rec.label->period;
  }
  return j;
}

PolyRecord poly_record_from_json(const json& j) {
  PolyRecord rec;
  rec.kind = j.at("kind").get<std::string>() == "preperiodic" ? PolyRecord::Kind::Preperiodic
                                                              : PolyRecord::Kind::SmallHeight;
  rec.n = j.at("n").get<long>();
  rec.m = j.at("m").get<long>();
  rec.k = j.at("k").get<long long>();
  rec.x = Rational::parse(j.at("x").get<std::string>());
  rec.c = Rational::parse(j.at("c").get<std::string>());
  rec.h_c = j.at("h_c").get<double>();
  rec.screen_iters = j.at("screen_iters").get<long>();
  rec.screen_estimate = j.at("screen_estimate").get<double>();
  rec.estimate = j.at("estimate").get<double>();
  rec.floor = j.at("floor").get<double>();
  rec.ratio = j.at("ratio").get<double>();
  rec.refine_iters = j.at("refine_iters").get<long>();
  if (j.contains("tail"))
    rec.label = ModuliLabel{j.at("tail").get<long>(), j.at("period").get<long>()};
  return rec;
}

namespace {

json poly_to_coeffs(const IntPoly& p) {
  json arr = json::array();
  for (long i = 0; i <= 2; ++i) arr.push_back(p.coeff(i).to_string());
  return arr;
}

IntPoly coeffs_to_poly(const json& arr) {
  std::vector<Integer> c;
  for (const auto& v : arr) c.emplace_back(v.get<std::string>());
  return IntPoly(std::move(c));
}

}  // namespace

json to_json(const RatRecord& rec) {
  json j;
  j["schema"] = "rat/1";
  j["kind"] = rec.kind == RatRecord::Kind::Preperiodic ? "preperiodic" : "small-height";
  j["x3"] = rec.triple.x3.to_string();
  j["x4"] = rec.triple.x4.to_string();
  j["x5"] = rec.triple.x5.to_string();
  if (rec.map) {
    j["f"] = poly_to_coeffs(rec.map->f());
    j["g"] = poly_to_coeffs(rec.map->g());
  }
  j["s1"] = rec.s1.to_string();
  j["s2"] = rec.s2.to_string();
  j["map_height"] = rec.map_height;
  j["screen_estimate"] = rec.screen_estimate;
  j["estimate"] = rec.estimate;
  j["floor"] = rec.floor;
  j["ratio"] = rec.ratio;
  j["refine_iters"] = rec.refine_iters;
  if (rec.label) {
    j["tail"] = rec.label->tail;
    j["period"] = rec.label->period;
  }
  if (rec.partner) {
    j["partner"] = {rec.partner->x3.to_string(), rec.partner->x4.to_string(),
                    rec.partner->x5.to_string()};
  }
  return j;
}

RatRecord rat_record_from_json(const json& j) {
  RatRecord rec;
  rec.kind = j.at("kind").get<std::string>() == "preperiodic" ? RatRecord::Kind::Preperiodic
                                                              : RatRecord::Kind::SmallHeight;
  rec.triple.x3 = Rational::parse(j.at("x3").get<std::string>());
  rec.triple.x4 = Rational::parse(j.at("x4").get<std::string>());
  rec.triple.x5 = Rational::parse(j.at("x5").get<std::string>());
  if (j.contains("f")) rec.map = QuadRatMap::create(coeffs_to_poly(j.at("f")), coeffs_to_poly(j.at("g")));
  rec.s1 = Rational::parse(j.at("s1").get<std::string>());
  rec.s2 = Rational::parse(j.at("s2").get<std::string>());
  rec.map_height = j.at("map_height").get<double>();
  rec.screen_estimate = j.at("screen_estimate").get<double>();
  rec.estimate = j.at("estimate").get<double>();
  rec.floor = j.at("floor").get<double>();
  rec.ratio = j.at("ratio").get<double>();
  rec.refine_iters = j.at("refine_iters").get<long>();
  if (j.contains("tail"))
    rec.label = ModuliLabel{j.at("tail").get<long>(), j.at("period").get<long>()};
  if (j.contains("partner")) {
    auto arr = j.at("partner");
    rec.partner = TripleParam{Rational::parse(arr[0].get<std::string>()),
                              Rational::parse(arr[1].get<std::string>()),
                              Rational::parse(arr[2].get<std::string>())};
  }
  return rec;
}

std::string json_line(const json& j) { return j.dump(); }

}  // namespace qdyn
