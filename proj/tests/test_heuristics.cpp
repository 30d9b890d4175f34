#include "doctest.h"

#include <set>

#include "fixtures.hpp"
#include "ftl/heuristics.hpp"
#include "ftl/master.hpp"

using namespace ftl;

namespace {

DualValues pi_duals(const Instance& inst, std::vector<double> pi) {
  DualValues d;
  d.alpha.assign(inst.shifts.shift_count, 0.0);
  d.pi = std::move(pi);
  return d;
}

DualValues zero_duals(const Instance& inst) {
  return pi_duals(inst, std::vector<double>(inst.commodities.size(), 0.0));
}

std::string pool_signature(const ColumnPool& pool) {
  std::string s;
  for (const auto& e : pool.entries) {
    for (int n : e.route.nodes) s += std::to_string(n) + ".";
    s += e.incumbent ? "i|" : "g|";
  }
  return s;
}

}  // namespace

TEST_CASE("simple init builds one dedicated route per pair") {
  const Instance inst = fixtures::five_node();
  const auto res = simple_init(inst);
  REQUIRE(res.routes.size() == 2);  // duplicate O-D pairs collapse
  CHECK(res.routes[0].nodes == std::vector<int>{0, 1, 2, 0});
  CHECK(res.routes[1].nodes == std::vector<int>{0, 3, 4, 0});
  CHECK(res.fleet_warning);  // four units, two trucks, one shift
}

TEST_CASE("simple init stays quiet with enough trucks") {
  Instance inst = fixtures::five_node();
  inst.fleet_size = 4;
  CHECK(!simple_init(inst).fleet_warning);
}

TEST_CASE("simple init fails hard on an unreachable pair") {
  Instance inst = fixtures::five_node();
  inst.network.travel_time[0][1] = 9999;  // dedicated run cannot close in a shift
  CHECK_THROWS_AS(simple_init(inst), std::runtime_error);
}

TEST_CASE("simple init of an empty instance is empty") {
  Instance inst = fixtures::five_node();
  inst.commodities.clear();
  CHECK(simple_init(inst).routes.empty());
}

TEST_CASE("insertion init covers everything and simulates clean") {
  const Instance inst = fixtures::five_node();
  const auto res = insertion_init(inst);
  CHECK(simulate_schedule(res.schedule, inst).clean());
  CHECK(validate_schedule(res.schedule, inst, false).empty());
  // never worse than running every unit on its dedicated pair
  CHECK(res.schedule.objective <= 2 * (64 + 75));
  CHECK(res.used_virtual_trucks);  // two trucks cannot host the late pickup chain
}

TEST_CASE("insertion init of a single commodity is its dedicated route") {
  Instance inst = fixtures::five_node();
  inst.commodities = {inst.commodities[1]};  // the early 1->2 batch
  const auto res = insertion_init(inst);
  REQUIRE(res.routes.size() == 1);
  CHECK(res.routes[0].nodes == std::vector<int>{0, 1, 2, 0});
  CHECK(!res.used_virtual_trucks);
}

TEST_CASE("insertion chains two units when that saves empty distance") {
  Instance inst = fixtures::five_node();
  inst.commodities = {
      {"a", 1, 2, 1, 0, 700},
      {"b", 3, 4, 1, 0, 700},
  };
  const auto res = insertion_init(inst);
  // appending 3->4 after 1->2 saves five empty kilometres over a fresh truck
  REQUIRE(res.routes.size() == 1);
  CHECK(res.routes[0].nodes == std::vector<int>{0, 1, 2, 3, 4, 0});
  CHECK(simulate_schedule(res.schedule, inst).clean());
}

TEST_CASE("vns with zero prices returns only the incumbent") {
  const Instance inst = fixtures::five_node();
  const auto init = simple_init(inst);
  const auto pool = vns_generate(init.routes, zero_duals(inst), {}, PricingVariant::P2Weighted, inst);
  CHECK(pool.generated_count() == 0);
  CHECK(pool.routes().size() == init.routes.size());
  CHECK(pool.descent.empty());
}

TEST_CASE("vns discovers the combined route when the prices pay for it") {
  const Instance inst = fixtures::five_node();
  const auto init = simple_init(inst);
  const auto duals = pi_duals(inst, {100.0, 100.0, 100.0, 100.0});
  VnsParams params;
  params.max_columns = 10;
  const auto pool = vns_generate(init.routes, duals, params, PricingVariant::P2Weighted, inst);
  CHECK(pool.generated_count() >= 1);
  bool found = false;
  for (const auto& e : pool.entries)
    if (!e.incumbent && e.route.nodes == std::vector<int>{0, 1, 2, 3, 4, 0}) {
      found = true;
      CHECK(e.value == doctest::Approx(-121.0));  // 79 minus two collected prices
    }
  CHECK(found);
  // the incumbent rides along and the cap holds
  CHECK(pool.routes().size() <= pool.generated_count() + init.routes.size());
  REQUIRE(!pool.descent.empty());
  for (size_t i = 1; i < pool.descent.size(); ++i) CHECK(pool.descent[i] < pool.descent[i - 1]);
  CHECK(pool.descent.back() <= -121.0);
}

TEST_CASE("vns pools stay within the cap") {
  const Instance inst = fixtures::five_node();
  const auto init = simple_init(inst);
  const auto duals = pi_duals(inst, {100.0, 100.0, 100.0, 100.0});
  VnsParams params;
  params.max_columns = 1;
  const auto pool = vns_generate(init.routes, duals, params, PricingVariant::P2Weighted, inst);
  CHECK(pool.generated_count() <= 1);
  for (const auto& e : pool.entries)
    if (!e.incumbent) CHECK(e.value < 0);
}

TEST_CASE("ga with zero prices returns only the incumbent") {
  const Instance inst = fixtures::five_node();
  const auto init = simple_init(inst);
  GaParams params;
  params.population_size = 12;
  params.generations = 6;
  params.seed = 5;
  const auto pool = ga_generate(init.routes, zero_duals(inst), params, PricingVariant::P2Weighted, inst);
  CHECK(pool.generated_count() == 0);
  CHECK(pool.routes().size() == init.routes.size());
}

TEST_CASE("ga is deterministic per seed") {
  const Instance inst = fixtures::five_node();
  const auto init = simple_init(inst);
  const auto duals = pi_duals(inst, {100.0, 100.0, 100.0, 100.0});
  GaParams params;
  params.population_size = 16;
  params.generations = 8;
  params.seed = 11;
  const auto a = ga_generate(init.routes, duals, params, PricingVariant::P2Weighted, inst);
  const auto b = ga_generate(init.routes, duals, params, PricingVariant::P2Weighted, inst);
  CHECK(pool_signature(a) == pool_signature(b));
  params.seed = 12;
  const auto c = ga_generate(init.routes, duals, params, PricingVariant::P2Weighted, inst);
  // a different seed may wander elsewhere but stays a valid pool
  for (const auto& e : c.entries)
    if (!e.incumbent) CHECK(e.value < 0);
}

TEST_CASE("ga crossover reaches the combined route") {
  const Instance inst = fixtures::five_node();
  const auto init = simple_init(inst);
  const auto duals = pi_duals(inst, {100.0, 100.0, 100.0, 100.0});
  GaParams params;
  params.population_size = 20;
  params.generations = 10;
  params.mutation_rate = 0.05;
  params.seed = 3;
  const auto pool = ga_generate(init.routes, duals, params, PricingVariant::P2Weighted, inst);
  REQUIRE(pool.generated_count() >= 1);
  // the best find can only beat the single-crossover product of the two
  // dedicated routes
  CHECK(pool.entries.front().value <= -121.0);
}

TEST_CASE("ga pools contain no duplicates and honour the cap") {
  const Instance inst = fixtures::five_node();
  const auto init = simple_init(inst);
  const auto duals = pi_duals(inst, {150.0, 90.0, 120.0, 60.0});
  GaParams params;
  params.population_size = 24;
  params.generations = 12;
  params.max_columns = 3;
  params.seed = 9;
  const auto pool = ga_generate(init.routes, duals, params, PricingVariant::P2Weighted, inst);
  CHECK(pool.generated_count() <= 3);
  std::set<std::vector<int>> seen;
  for (const auto& e : pool.entries)
    if (!e.incumbent) {
      CHECK(seen.insert(e.route.nodes).second);
      CHECK(e.value < 0);
      CHECK(validate_route(e.route, inst).empty());
      CHECK(is_distance_feasible(e.route, 0, inst));
    }
}

TEST_CASE("generators never emit structurally broken or slow routes") {
  const Instance inst = fixtures::five_node();
  const auto init = simple_init(inst);
  for (double price : {40.0, 90.0, 100.0, 180.0}) {
    const auto duals = pi_duals(inst, {price, price * 0.5, price, price * 0.25});
    const auto vns_pool = vns_generate(init.routes, duals, {}, PricingVariant::P2Weighted, inst);
    GaParams params;
    params.population_size = 10;
    params.generations = 5;
    params.seed = 17;
    const auto ga_pool = ga_generate(init.routes, duals, params, PricingVariant::P2Weighted, inst);
    for (const auto* pool : {&vns_pool, &ga_pool})
      for (const auto& e : pool->entries) {
        CHECK(validate_route(e.route, inst).empty());
        CHECK(is_distance_feasible(e.route, 0, inst));
        if (!e.incumbent) CHECK(e.value < 0);
      }
  }
}

TEST_CASE("generators accept a schedule as the incumbent") {
  const Instance inst = fixtures::five_node();
  const auto init = insertion_init(inst);
  const auto duals = pi_duals(inst, {100.0, 100.0, 100.0, 100.0});
  const auto pool = vns_generate(init.schedule, duals, {}, PricingVariant::P2Weighted, inst);
  std::set<std::vector<int>> incumbent_routes;
  for (const auto& use : init.schedule.uses) incumbent_routes.insert(use.route.nodes);
  size_t incumbents = 0;
  for (const auto& e : pool.entries)
    if (e.incumbent) {
      ++incumbents;
      CHECK(incumbent_routes.count(e.route.nodes) == 1);
    }
  CHECK(incumbents == incumbent_routes.size());

  GaParams params;
  params.population_size = 10;
  params.generations = 4;
  params.seed = 2;
  const auto ga_pool = ga_generate(init.schedule, duals, params, PricingVariant::P2Weighted, inst);
  CHECK(ga_pool.routes().size() >= incumbent_routes.size());
}
