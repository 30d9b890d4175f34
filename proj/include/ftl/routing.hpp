#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ftl/instance.hpp"
#include "ftl/schedule.hpp"

namespace ftl {

// Earliest service start / latest departure per route index within a shift.
struct RouteTiming {
  std::vector<Minutes> earliest;
  std::vector<Minutes> latest;
  int shift = 0;
};

// A pair of commodities whose joint assignment to one route instance in one
// shift forces a deadline violation through push-back propagation.
struct IncompatiblePair {
  Route route;
  int shift = 0;
  int i = 0;          // position of the pushing commodity
  int k = 0;          // pushing commodity index
  int j = 0;          // position of the violated commodity, i <= j
  int v = 0;          // violated commodity index
  Minutes k_push_back = 0;            // delay contributed by k, net of earlier delays
  Minutes v_acceptable_push_back = 0; // slack of v before its deadline breaks
};

// All functions in this header are pure and safe to call concurrently.

std::vector<Violation> validate_route(const Route& route, const Instance& inst);

Km route_distance(const std::vector<int>& nodes, const Instance& inst);

Route make_route(std::vector<int> nodes, const Instance& inst);

// Forward/backward time-window recursion; exact integer arithmetic.
RouteTiming compute_time_windows(const Route& route, int shift, const Instance& inst);

// True iff the route returns to the depot before the shift ends, ignoring
// commodity windows.
bool is_distance_feasible(const Route& route, int shift, const Instance& inst);

// Indicator that commodity k can be loaded at position i of the route in the
// timed shift: odd position, matching origin/destination, reachable after the
// availability, delivered before the deadline.
bool service_feasible(const Route& route, const RouteTiming& timing, int i, const Commodity& k,
                      const Instance& inst);

struct EnumerationOptions {
  int64_t budget = 2'000'000;  // candidate extensions explored before giving up
  int max_legs = 12;
  int shift = 0;
};

class EnumerationBudgetExceeded : public std::runtime_error {
 public:
  EnumerationBudgetExceeded(int64_t reached)
      : std::runtime_error("route enumeration budget exceeded after " + std::to_string(reached) + " candidates"),
        reached_(reached) {}
  int64_t reached() const { return reached_; }

 private:
  int64_t reached_;
};

// Every distance-wise feasible route built from the instance's commodity
// origin-destination pairs, in lexicographic node order.
std::vector<Route> enumerate_routes(const Instance& inst, const EnumerationOptions& opts = {});

// Earliest service starts after waiting for the availability of every carried
// commodity; delays propagate in full to all later positions.
std::vector<Minutes> propagate_push_back(const Route& route, const RouteTiming& timing,
                                         const std::vector<FlowEntry>& flows, const Instance& inst);

// Scans one route instance's flows for commodity pairs whose joint presence
// breaks a deadline; result ordered by (i, k id, j, v id).
std::vector<IncompatiblePair> detect_incompatibilities(const Route& route, const std::vector<FlowEntry>& flows,
                                                       int shift, const Instance& inst);

// A late delivery caused by several small waits that no single pair explains:
// the strongest pusher per waiting node up to the victim, plus the victim
// itself, are jointly infeasible on this route and shift.
struct PushBackChain {
  Route route;
  int shift = 0;
  std::vector<std::pair<int, int>> pushers;  // (position, commodity), positive net push
  int j = 0;  // victim position
  int v = 0;  // victim commodity
  Minutes delay = 0;
  Minutes slack = 0;
};

std::vector<PushBackChain> detect_push_back_chains(const Route& route, const std::vector<FlowEntry>& flows,
                                                   int shift, const Instance& inst);

struct DeadlineViolation {
  int commodity = 0;
  int shift = 0;
  int truck = 0;  // index into the replayed itinerary list
  Minutes delivery = 0;
  Minutes deadline = 0;
  std::string kind;  // "deadline" or "shift-overrun"
};

struct SimulationReport {
  std::vector<DeadlineViolation> violations;
  std::vector<Minutes> truck_completion;  // depot return time per itinerary

  bool clean() const { return violations.empty(); }
};

// Independent replay of a schedule: walks every truck itinerary minute by
// minute, waiting at pickups for availability, and reports every late
// delivery. Uses the schedule's itineraries when present, otherwise a
// round-robin split of the aggregate flows.
SimulationReport simulate_schedule(const Schedule& schedule, const Instance& inst);

std::string serialize_route_set(const std::vector<Route>& routes);
std::vector<Route> parse_route_set(std::string_view text, const Instance& inst);

}  // namespace ftl
