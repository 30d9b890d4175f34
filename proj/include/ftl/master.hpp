#pragma once

#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "ftl/instance.hpp"
#include "ftl/lp.hpp"
#include "ftl/routing.hpp"
#include "ftl/schedule.hpp"

namespace ftl {

// Prices extracted from the relaxed master: alpha per fleet row, pi per
// commodity, beta per (route, position, shift) capacity row, gamma per flow
// feasibility row when those are materialised. Missing entries read as zero.
// Signs are oriented so that a larger pi marks a more valuable commodity and
// alpha/beta/gamma are non-negative.
struct DualValues {
  std::vector<double> alpha;
  std::vector<double> pi;
  std::map<std::tuple<std::vector<int>, int, int>, double> beta;        // (nodes, pos, shift)
  std::map<std::tuple<std::vector<int>, int, int, int>, double> gamma;  // (nodes, pos, commodity, shift)

  double beta_at(const std::vector<int>& nodes, int pos, int shift) const {
    const auto it = beta.find({nodes, pos, shift});
    return it == beta.end() ? 0.0 : it->second;
  }
  double gamma_at(const std::vector<int>& nodes, int pos, int commodity, int shift) const {
    const auto it = gamma.find({nodes, pos, commodity, shift});
    return it == gamma.end() ? 0.0 : it->second;
  }
};

struct RmpOptions {
  bool relaxed = true;
  bool fleet_active = false;
  bool materialize_flow_rows = false;  // debug: expose gamma duals
};

class UncoverableCommodityError : public std::runtime_error {
 public:
  UncoverableCommodityError(std::string message, std::vector<std::string> ids)
      : std::runtime_error(std::move(message)), offenders(std::move(ids)) {}
  std::vector<std::string> offenders;
};

// Restricted master over a route pool. Flow variables exist only where the
// service indicator holds, which stands in for the flow-feasibility rows.
struct RmpModel {
  LinearModel lin;
  RmpOptions options;
  std::vector<Route> routes;  // sorted, distinct

  std::vector<std::vector<int>> y_var;  // [route][shift] -> var or -1
  struct XVar {
    int route;
    int position;
    int commodity;
    int shift;
    int var;
  };
  std::vector<XVar> x_vars;
  std::map<std::tuple<int, int, int, int>, int> x_var_of;  // (route,pos,k,shift) -> var
  std::vector<int> fleet_row;                              // per shift, -1 when absent
  std::vector<int> demand_row;                             // per commodity
  std::map<std::tuple<int, int, int>, int> capacity_row;   // (route,pos,shift)
  std::map<std::tuple<int, int, int, int>, int> flow_row;  // (route,pos,k,shift), debug only

  std::set<std::tuple<int, int, int, int, int, int>> cut_keys;  // (route,shift,i,k,j,v)
  std::map<std::tuple<int, int, int, int>, int> activity_var;   // (route,pos,k,shift) -> indicator
  std::set<std::vector<int>> chain_keys;
  int cut_count = 0;

  int route_index(const std::vector<int>& nodes) const;
};

RmpModel build_rmp(const std::vector<Route>& pool, const Instance& inst, const RmpOptions& opts);

// lp must be an optimal relaxed solve of rmp.lin.
DualValues extract_duals(const LPSolution& lp, const RmpModel& rmp, const Instance& inst);

// One binary split per new pair: the pushing flow and the violated flow may
// not both be positive on the same route and shift. Duplicates are ignored;
// returns the number of cuts actually added.
int add_incompatibility_cuts(RmpModel& rmp, const std::vector<IncompatiblePair>& pairs, const Instance& inst);

// Fallback for delays that only several waits together explain: forbids the
// listed pusher flows and the victim flow from all being positive on the same
// route and shift. Shares one activity indicator per flow variable.
int add_push_back_chain_cuts(RmpModel& rmp, const std::vector<PushBackChain>& chains, const Instance& inst);

// Integral solve -> Schedule with aggregate uses, round-robin itineraries and
// an exact integer objective.
Schedule extract_solution(const LPSolution& mip, const RmpModel& rmp, const Instance& inst);

// Maps a schedule onto the model's variable space (zeros elsewhere), e.g. to
// seed the integral solve with a known feasible point. Empty when the
// schedule uses a route outside the pool.
std::vector<double> schedule_as_primal(const Schedule& schedule, const RmpModel& rmp);

}  // namespace ftl
