#pragma once

#include <vector>

#include "ftl/instance.hpp"
#include "ftl/master.hpp"
#include "ftl/rng.hpp"
#include "ftl/routing.hpp"

namespace ftl {

// Pure functions over immutable dual values; safe to call concurrently.

enum class PricingVariant { Enumeration, P1Average, P2Weighted, RandomAblation };

const char* to_string(PricingVariant v);

// One commodity per loading position, ascending positions.
using AssignmentW = std::vector<std::pair<int, int>>;  // (position, commodity index)

// Commodities serviceable at each position of the route, as the union over
// all shifts; indexed by route position (empty at even positions).
std::vector<std::vector<int>> service_candidates(const Route& route, const Instance& inst);

// Reduced cost of the route column itself in one shift: distance plus the
// fleet price minus the capacity and flow-row prices the column touches. The
// assignment is validated against the service indicator but does not change
// the value. Throws on an infeasible assignment.
double reduced_cost_exact(const Route& route, const AssignmentW& w, const DualValues& duals, int shift,
                          const Instance& inst);

// The same shift-dependent terms averaged over all shifts.
double reduced_cost_shift_avg(const Route& route, const DualValues& duals, const Instance& inst);

// P1: each position collects the plain average price of the commodities it
// can service.
double reduced_cost_avg(const Route& route, const DualValues& duals, const Instance& inst);

// P2: the position price weighs each commodity by its share of the position's
// total quantity.
double reduced_cost_weighted(const Route& route, const DualValues& duals, const Instance& inst);

double estimate_reduced_cost(PricingVariant variant, const Route& route, const DualValues& duals,
                             const Instance& inst);

// Reduced cost of a route column bundled with one unit of flow per assigned
// position; this is what the assignment enumeration scans.
double assignment_reduced_cost(const Route& route, const AssignmentW& w, const DualValues& duals, int shift,
                               const Instance& inst);

struct PricedColumn {
  Route route;
  AssignmentW assignment;
  int shift = 0;
  double value = 0;
};

// Scans routes in order; per route and shift finds the assignment with the
// lowest bundled reduced cost (the search is separable per position) and
// admits the route on the first negative finding. An empty result certifies
// that no assignment of any supplied route prices negative under these duals.
std::vector<PricedColumn> price_by_enumeration(const std::vector<Route>& routes, const DualValues& duals,
                                               const Instance& inst, int max_columns);

// Uniform sample without replacement, deterministic per rng state.
std::vector<Route> price_random_ablation(const std::vector<Route>& routes, DetRng& rng, int max_columns);

}  // namespace ftl
