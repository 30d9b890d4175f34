#pragma once

#include <string>
#include <vector>

#include "ftl/instance.hpp"

namespace ftl {

// Depot-to-depot node sequence in duplicated-node encoding: odd indices load,
// even interior indices unload, a terminal doing both appears twice.
struct Route {
  std::vector<int> nodes;
  Km distance = 0;

  bool operator==(const Route& other) const { return nodes == other.nodes; }
  bool operator<(const Route& other) const { return nodes < other.nodes; }
};

// units of a commodity loaded at one position of a route.
struct FlowEntry {
  int position = 0;   // odd route index
  int commodity = 0;  // index into Instance::commodities
  int64_t units = 0;
};

// Aggregate usage of one route in one shift (count identical trucks).
struct RouteUse {
  Route route;
  int shift = 0;
  int64_t count = 0;
  std::vector<FlowEntry> flows;  // aggregated over the count trucks
};

// One physical truck tour with its own unit assignment.
struct TruckItinerary {
  Route route;
  int shift = 0;
  std::vector<FlowEntry> flows;  // at most one unit per position
};

struct Schedule {
  std::vector<RouteUse> uses;
  std::vector<TruckItinerary> trucks;
  Km objective = 0;
  int cuts_applied = 0;

  bool empty() const { return uses.empty(); }
};

// Splits aggregate flows of every use into per-truck itineraries, dealing the
// units of each position out round-robin.
std::vector<TruckItinerary> disaggregate_round_robin(const Schedule& schedule);

// Structural checks: demand coverage, per-arc capacity, fleet usage.
std::vector<Violation> validate_schedule(const Schedule& schedule, const Instance& inst, bool check_fleet);

std::string serialize_schedule(const Schedule& schedule, const Instance& inst);
Schedule parse_schedule(std::string_view text, const Instance& inst);

}  // namespace ftl
