#pragma once

#include <vector>

#include "ftl/instance.hpp"
#include "ftl/master.hpp"
#include "ftl/pricing.hpp"
#include "ftl/routing.hpp"
#include "ftl/schedule.hpp"

namespace ftl {

// The generators read the incumbent without mutating it and draw all
// randomness from one seeded source per invocation.

struct SimpleInitResult {
  std::vector<Route> routes;    // one dedicated route per distinct O-D pair
  bool fleet_warning = false;   // demand exceeds n trucks x shifts capacity
};

// Dedicated depot-origin-destination-depot route per commodity pair. Hard
// error when such a route cannot fit a shift at all.
SimpleInitResult simple_init(const Instance& inst);

struct InsertionInitResult {
  std::vector<Route> routes;  // distinct routes used by the schedule
  Schedule schedule;          // full feasible schedule, clean under simulation
  bool used_virtual_trucks = false;
};

// Greedy construction: shift by shift, repeatedly appends the most urgent
// insertable unit to the truck where it adds the least empty-load distance.
InsertionInitResult insertion_init(const Instance& inst);

struct PoolEntry {
  Route route;
  double value = 0;       // estimated reduced cost at admission
  bool incumbent = false; // carried over from the current solution
};

// Capped best-first set of candidate columns. Non-incumbent entries are
// distinct, negative-valued and limited by the cap; incumbent routes ride
// along uncounted.
struct ColumnPool {
  std::vector<PoolEntry> entries;
  int capacity = 0;
  std::vector<double> descent;  // minimum estimate recorded at each reset (VNS)

  std::vector<Route> routes() const;
  size_t generated_count() const;
};

struct VnsParams {
  int max_columns = 1000;
};

struct GaParams {
  int population_size = 500;
  int generations = 500;
  double mutation_rate = 0.02;
  double tournament_rate = 0.1;
  int max_columns = 1000;
  uint64_t seed = 0;
};

// Swap / 2-opt / relocate descent over the incumbent's routes, restarting
// from the first neighbourhood whenever the minimum estimate improves. No
// shaking; fully deterministic.
ColumnPool vns_generate(const std::vector<Route>& incumbent_routes, const DualValues& duals,
                        const VnsParams& params, PricingVariant variant, const Instance& inst);
ColumnPool vns_generate(const Schedule& z, const DualValues& duals, const VnsParams& params,
                        PricingVariant variant, const Instance& inst);

// Tournament selection, two-point arc crossover (segments of 0..2 arcs),
// 2-opt mutation and a pairwise node-swap local search; offspring enter the
// next population only with a negative estimate. Deterministic per seed.
ColumnPool ga_generate(const std::vector<Route>& incumbent_routes, const DualValues& duals, const GaParams& params,
                       PricingVariant variant, const Instance& inst);
ColumnPool ga_generate(const Schedule& z, const DualValues& duals, const GaParams& params, PricingVariant variant,
                       const Instance& inst);

}  // namespace ftl
