#include "qdyn/fixtures.hpp"

namespace qdyn::fixtures {

namespace {

std::vector<P1Point> parse_points(std::initializer_list<const char*> pts) {
  std::vector<P1Point> out;
  for (const char* s : pts) out.push_back(P1Point::parse(s));
  return out;
}

}  // namespace

QuadRatMap seven_cycle_map() {
  return QuadRatMap::create({171, -4826, 4655}, {798, -8071, 4655});
}

std::vector<P1Point> seven_cycle() {
  return parse_points({"inf", "1", "0", "3/14", "19/21", "1/7", "57/35"});
}

std::vector<P1Point> seven_cycle_extra_preimages() {
  return parse_points({"2/19", "57/295", "9/245", "563/665", "-29/5", "3/190", "27/10"});
}

const std::vector<TailMapFixture>& length8_maps() {
  static const std::vector<TailMapFixture> fixtures = [] {
    std::vector<TailMapFixture> v;
    auto add = [&](std::initializer_list<long> f, std::initializer_list<long> g, long tail,
                   long period, std::initializer_list<const char*> orbit) {
      v.push_back({QuadRatMap::create(f, g), tail, period, parse_points(orbit)});
    };
    add({-143, -187, 330}, {429, 1217, 330}, 5, 3,
        {"inf", "1", "0", "-1/3", "-11/15", "-3/5", "-55/114", "-13/44", "-3/5"});
    // the seventh entry is printed elsewhere with a minus sign, but the
    // 2-cycle only closes through +3/2: phi(-7) = 3/2 and phi(3/2) = -7
    add({63, -84, 21}, {-21, -16, 21}, 6, 2,
        {"inf", "1", "0", "-3", "7/3", "-1/3", "-7", "3/2", "-7"});
    add({-22, -30, 52}, {88, 245, 52}, 6, 2,
        {"inf", "1", "0", "-1/4", "-3/8", "-1", "-4/7", "-9/26", "-4/7"});
    add({-22, -98, 120}, {132, 749, 120}, 6, 2,
        {"inf", "1", "0", "-1/6", "-2/9", "-1/5", "-12/65", "-1/12", "-12/65"});
    add({-20, -10, 30}, {-30, 7, 30}, 6, 2,
        {"inf", "1", "0", "2/3", "10/9", "2/5", "6/7", "10/3", "6/7"});
    add({396, -429, 33}, {132, -197, 33}, 6, 2,
        {"inf", "1", "0", "3", "11/3", "5", "33", "3/4", "33"});
    add({-1573, 1397, 176}, {-1144, 500, 176}, 6, 2,
        {"inf", "1", "0", "11/8", "-11/2", "-11/4", "55/16", "2", "55/16"});
    add({-513, -837, 1350}, {1710, 5585, 1350}, 6, 2,
        {"inf", "1", "0", "-3/10", "-9/10", "-3/5", "-72/175", "-1/6", "-72/175"});
    add({-605, -95, 700}, {880, 1336, 700}, 6, 2,
        {"inf", "1", "0", "-11/16", "-5/7", "-7/11", "-5/6", "-11/70", "-5/6"});
    add({-368, -416, 784}, {644, 3885, 784}, 6, 2,
        {"inf", "1", "0", "-4/7", "-2/21", "-8/7", "-20/49", "1/12", "-20/49"});
    add({240, -1668, 1428}, {900, -1723, 1428}, 6, 2,
        {"inf", "1", "0", "4/15", "-4/21", "10/21", "-4/7", "12/17", "-4/7"});
    add({-19600, 19292, 308}, {7700, 1937, 308}, 6, 2,
        {"inf", "1", "0", "-28/11", "-14", "-28/5", "-308/17", "-40/11", "-308/17"});
    add({8085, -17094, 9009}, {-10395, -18454, 9009}, 6, 2,
        {"inf", "1", "0", "-7/9", "77/27", "35/11", "63/31", "-77/78", "63/31"});
    add({225, -5937, 5712}, {5400, -137612, 5712}, 6, 2,
        {"inf", "1", "0", "1/24", "1/26", "3/68", "117/2992", "2/35", "117/2992"});
    add({-52390, 910, 51480}, {-120900, 275477, 51480}, 6, 2,
        {"inf", "1", "0", "13/30", "-26/5", "-91/11", "780/253", "13/36", "780/253"});
    add({253575, -277830, 24255}, {65205, 314788, 24255}, 6, 2,
        {"inf", "1", "0", "35/9", "-5/18", "-49/3", "105/13", "-15/154", "105/13"});
    return v;
  }();
  return fixtures;
}

const std::vector<PolyRowFixture>& small_ratio_poly_rows() {
  static const std::vector<PolyRowFixture> rows = {
      {"-181/144", "7/12", .03433, .00660, 12},
      {"-1153/576", "11/24", .06505, .00923, 24},
      {"-517/144", "17/12", .06885, .01102, 12},
      {"-36989/19600", "153/140", .12319, .01171, 140},
      {"-31949/19600", "27/140", .12319, .01187, 140},
      {"-5149/3600", "23/60", .10274, .01202, 60},
      {"-205/144", "1/12", .06866, .01290, 12},
      {"-181/144", "11/12", .06866, .01321, 12},
      {"-16381/7056", "97/84", .13059, .01346, 84},
      {"-931161001/476985600", "30379/21840", .28548, .01382, 21840},
      {"-10381/3600", "121/60", .12758, .01380, 60},
      {"-9901/3600", "131/60", .12912, .01403, 60},
      {"-293749/176400", "433/420", .17685, .01405, 420},
      {"-271909/176400", "43/420", .17685, .01413, 420},
      {"-1513/576", "31/24", .10590, .01446, 24},
      {"-373/144", "23/12", .08640, .01459, 12},
      {"-1013082841/476985600", "10541/21840", .30762, .01483, 21840},
      {"-160021/63054", "181/252", .17952, .01498, 252},
  };
  return rows;
}

QuadRatMap min_ratio_rat_map() {
  return QuadRatMap::create({-3, -7, 10}, {9, 37, 10});
}

}  // namespace qdyn::fixtures
