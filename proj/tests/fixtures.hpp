#pragma once

#include "ftl/instance.hpp"
#include "ftl/routing.hpp"

namespace fixtures {

// Five-terminal sample used across the suites: one 12-hour shift, two
// commodity pairs moving 1->2 and 3->4. Unusable arcs carry a travel time far
// past the shift so the service-arc chains are exactly the ones between the
// two pairs. Values chosen so a route over both pairs (0,1,2,3,4,0) costs 79
// against 129 for the reversed visit order and 64/75 for the dedicated runs.
inline ftl::Instance five_node() {
  using namespace ftl;
  constexpr Km XD = 9999;
  constexpr Minutes XT = 9999;
  Instance inst;
  inst.network.node_count = 5;
  inst.network.distance = {
      {0, 10, XD, 41, XD},
      {XD, 0, 30, XD, XD},
      {24, XD, 0, 5, XD},
      {XD, XD, XD, 0, 20},
      {14, 14, XD, XD, 0},
  };
  inst.network.travel_time = {
      {0, 15, XT, 50, XT},
      {XT, 0, 50, XT, XT},
      {50, XT, 0, 0, XT},
      {XT, XT, XT, 0, 40},
      {40, 40, XT, XT, 0},
  };
  inst.network.service_time = {0, 30, 30, 40, 60};
  inst.shifts = {1, 0, 720};
  inst.fleet_size = 2;
  inst.commodities = {
      {"k1", 1, 2, 1, 340, 425},
      {"k2", 1, 2, 1, 0, 310},
      {"v1", 3, 4, 1, 0, 480},
      {"v2", 3, 4, 1, 60, 470},
  };
  return inst;
}

inline ftl::Route combined_forward(const ftl::Instance& inst) {  // 79 km
  return ftl::make_route({0, 1, 2, 3, 4, 0}, inst);
}
inline ftl::Route combined_reverse(const ftl::Instance& inst) {  // 129 km
  return ftl::make_route({0, 3, 4, 1, 2, 0}, inst);
}
inline ftl::Route dedicated_12(const ftl::Instance& inst) {  // 64 km
  return ftl::make_route({0, 1, 2, 0}, inst);
}
inline ftl::Route dedicated_34(const ftl::Instance& inst) {  // 75 km
  return ftl::make_route({0, 3, 4, 0}, inst);
}

inline std::vector<ftl::Route> four_route_pool(const ftl::Instance& inst) {
  return {combined_forward(inst), combined_reverse(inst), dedicated_12(inst), dedicated_34(inst)};
}

}  // namespace fixtures
