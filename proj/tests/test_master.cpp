#include "doctest.h"

#include <cmath>
#include <map>
#include <set>

#include "fixtures.hpp"
#include "ftl/driver.hpp"
#include "ftl/master.hpp"
#include "ftl/routing.hpp"

using namespace ftl;

namespace {

constexpr int K1 = 0, K2 = 1, V1 = 2, V2 = 3;

double flow_value(const Schedule& s, const std::vector<int>& route, int pos, int commodity) {
  for (const auto& use : s.uses)
    if (use.route.nodes == route)
      for (const auto& f : use.flows)
        if (f.position == pos && f.commodity == commodity) return static_cast<double>(f.units);
  return 0.0;
}

}  // namespace

TEST_CASE("relaxed master over the four-route pool prices at 158") {
  const Instance inst = fixtures::five_node();
  const RmpModel rmp = build_rmp(fixtures::four_route_pool(inst), inst, {});
  const auto lp = solve_lp(rmp.lin);
  REQUIRE(lp.status == SolveStatus::Optimal);
  CHECK(lp.objective == doctest::Approx(158.0));
}

TEST_CASE("commodity prices add up to the relaxed objective") {
  const Instance inst = fixtures::five_node();
  const RmpModel rmp = build_rmp(fixtures::four_route_pool(inst), inst, {});
  const auto lp = solve_lp(rmp.lin);
  const DualValues duals = extract_duals(lp, rmp, inst);
  double total = 0.0;
  for (size_t k = 0; k < inst.commodities.size(); ++k) total += duals.pi[k] * inst.commodities[k].quantity;
  CHECK(total == doctest::Approx(158.0));
  for (double a : duals.alpha) CHECK(a == 0.0);  // no fleet rows in the relaxed build
}

TEST_CASE("slack fleet row carries a zero price") {
  Instance inst = fixtures::five_node();
  inst.fleet_size = 5;
  RmpOptions opts;
  opts.fleet_active = true;
  const RmpModel rmp = build_rmp(fixtures::four_route_pool(inst), inst, opts);
  const auto lp = solve_lp(rmp.lin);
  REQUIRE(lp.status == SolveStatus::Optimal);
  const DualValues duals = extract_duals(lp, rmp, inst);
  CHECK(duals.alpha[0] == doctest::Approx(0.0));
}

TEST_CASE("extract_duals rejects non-optimal input") {
  const Instance inst = fixtures::five_node();
  const RmpModel rmp = build_rmp(fixtures::four_route_pool(inst), inst, {});
  LPSolution bogus;
  bogus.status = SolveStatus::Infeasible;
  CHECK_THROWS_AS(extract_duals(bogus, rmp, inst), std::invalid_argument);
}

TEST_CASE("adding columns never raises the relaxed optimum") {
  const Instance inst = fixtures::five_node();
  const RmpModel small = build_rmp({fixtures::dedicated_12(inst), fixtures::dedicated_34(inst)}, inst, {});
  const auto lp_small = solve_lp(small.lin);
  REQUIRE(lp_small.status == SolveStatus::Optimal);
  CHECK(lp_small.objective == doctest::Approx(278.0));  // two units per dedicated pair

  const RmpModel full = build_rmp(fixtures::four_route_pool(inst), inst, {});
  const auto lp_full = solve_lp(full.lin);
  CHECK(lp_full.objective <= lp_small.objective + 1e-9);
}

TEST_CASE("incompatibility cuts move the integer optimum from 158 to 208") {
  const Instance inst = fixtures::five_node();
  RmpOptions opts;
  opts.relaxed = false;
  opts.fleet_active = true;
  RmpModel rmp = build_rmp(fixtures::four_route_pool(inst), inst, opts);

  const auto pre = solve_mip(rmp.lin);
  REQUIRE(pre.status == SolveStatus::Optimal);
  CHECK(pre.objective == doctest::Approx(158.0));
  const Schedule pre_schedule = extract_solution(pre, rmp, inst);
  REQUIRE(pre_schedule.uses.size() == 1);
  CHECK(pre_schedule.uses[0].route.nodes == fixtures::combined_forward(inst).nodes);
  CHECK(pre_schedule.uses[0].count == 2);

  // cuts come straight from the detector on the incumbent flows
  const auto pairs = detect_incompatibilities(pre_schedule.uses[0].route, pre_schedule.uses[0].flows, 0, inst);
  REQUIRE(pairs.size() == 3);
  const int before_vars = rmp.lin.num_vars();
  CHECK(add_incompatibility_cuts(rmp, pairs, inst) == 3);
  CHECK(rmp.lin.num_vars() == before_vars + 3);  // one switch per pair
  CHECK(rmp.cut_count == 3);

  // adding the same pairs again changes nothing
  CHECK(add_incompatibility_cuts(rmp, pairs, inst) == 0);
  CHECK(rmp.lin.num_vars() == before_vars + 3);

  const auto post = solve_mip(rmp.lin);
  REQUIRE(post.status == SolveStatus::Optimal);
  CHECK(post.objective == doctest::Approx(208.0));
  const Schedule post_schedule = extract_solution(post, rmp, inst);
  CHECK(post_schedule.objective == 208);
  CHECK(post_schedule.cuts_applied == 3);

  const auto r1 = fixtures::combined_forward(inst).nodes;
  const auto r2 = fixtures::combined_reverse(inst).nodes;
  CHECK(flow_value(post_schedule, r1, 1, K2) == 1.0);
  CHECK(flow_value(post_schedule, r1, 3, V2) == 1.0);
  CHECK(flow_value(post_schedule, r2, 1, V1) == 1.0);
  CHECK(flow_value(post_schedule, r2, 3, K1) == 1.0);
  CHECK(simulate_schedule(post_schedule, inst).clean());
}

TEST_CASE("empty pair list leaves the model unchanged") {
  const Instance inst = fixtures::five_node();
  RmpModel rmp = build_rmp(fixtures::four_route_pool(inst), inst, {});
  const int vars = rmp.lin.num_vars();
  const int rows = rmp.lin.num_rows();
  CHECK(add_incompatibility_cuts(rmp, {}, inst) == 0);
  CHECK(rmp.lin.num_vars() == vars);
  CHECK(rmp.lin.num_rows() == rows);
}

TEST_CASE("cuts referencing unknown routes are rejected") {
  const Instance inst = fixtures::five_node();
  RmpModel rmp = build_rmp({fixtures::dedicated_12(inst), fixtures::dedicated_34(inst)}, inst, {});
  IncompatiblePair pair;
  pair.route = fixtures::combined_forward(inst);  // not in the pool
  pair.shift = 0;
  pair.i = 1;
  pair.k = K1;
  pair.j = 3;
  pair.v = V1;
  CHECK_THROWS_AS(add_incompatibility_cuts(rmp, {pair}, inst), std::invalid_argument);
}

TEST_CASE("uncoverable commodities are reported by id") {
  Instance inst = fixtures::five_node();
  try {
    build_rmp({fixtures::dedicated_12(inst)}, inst, {});  // nothing services the 3->4 pair
    FAIL("expected the coverage error");
  } catch (const UncoverableCommodityError& e) {
    REQUIRE(e.offenders.size() == 2);
    CHECK(e.offenders[0] == "v1");
    CHECK(e.offenders[1] == "v2");
  }
}

TEST_CASE("zero-commodity instance builds an empty model") {
  Instance inst = fixtures::five_node();
  inst.commodities.clear();
  const RmpModel rmp = build_rmp(fixtures::four_route_pool(inst), inst, {});
  const auto lp = solve_lp(rmp.lin);
  REQUIRE(lp.status == SolveStatus::Optimal);
  CHECK(lp.objective == doctest::Approx(0.0));
  const Schedule schedule = extract_solution(lp, rmp, inst);
  CHECK(schedule.empty());
  CHECK(schedule.objective == 0);
}

TEST_CASE("materialised flow rows do not change the optimum") {
  const Instance inst = fixtures::five_node();
  RmpOptions debug;
  debug.materialize_flow_rows = true;
  const RmpModel with_rows = build_rmp(fixtures::four_route_pool(inst), inst, debug);
  const RmpModel without = build_rmp(fixtures::four_route_pool(inst), inst, {});
  const auto lp_with = solve_lp(with_rows.lin);
  const auto lp_without = solve_lp(without.lin);
  REQUIRE(lp_with.status == SolveStatus::Optimal);
  CHECK(lp_with.objective == doctest::Approx(lp_without.objective));
  CHECK(!with_rows.flow_row.empty());

  const DualValues duals = extract_duals(lp_with, with_rows, inst);
  for (const auto& [key, g] : duals.gamma) {
    CHECK(std::isfinite(g));
    CHECK(g >= 0.0);
  }
}

TEST_CASE("fractional solutions are rejected by extract_solution") {
  const Instance inst = fixtures::five_node();
  const RmpModel rmp = build_rmp(fixtures::four_route_pool(inst), inst, {});
  auto lp = solve_lp(rmp.lin);
  REQUIRE(lp.status == SolveStatus::Optimal);
  // doctor one route count to a fraction
  for (size_t r = 0; r < rmp.routes.size(); ++r)
    if (rmp.y_var[r][0] >= 0 && lp.primal[rmp.y_var[r][0]] > 0.5) {
      lp.primal[rmp.y_var[r][0]] += 0.5;
      break;
    }
  CHECK_THROWS_AS(extract_solution(lp, rmp, inst), std::invalid_argument);
}

TEST_CASE("extracted schedules satisfy their structural invariants") {
  const Instance inst = fixtures::five_node();
  RmpOptions opts;
  opts.relaxed = false;
  opts.fleet_active = true;
  const RmpModel rmp = build_rmp(fixtures::four_route_pool(inst), inst, opts);
  const auto mip = solve_mip(rmp.lin);
  const Schedule schedule = extract_solution(mip, rmp, inst);
  CHECK(validate_schedule(schedule, inst, true).empty());
  CHECK(schedule.trucks.size() == 2);  // two trucks carry the four units
}

TEST_CASE("dedicated pools give each commodity exactly one loading slot") {
  const Instance inst = fixtures::five_node();
  const RmpModel rmp = build_rmp({fixtures::dedicated_12(inst), fixtures::dedicated_34(inst)}, inst, {});
  std::map<int, int> slots;
  for (const auto& xv : rmp.x_vars) slots[xv.commodity] += 1;
  for (size_t k = 0; k < inst.commodities.size(); ++k) CHECK(slots[static_cast<int>(k)] == 1);
}

TEST_CASE("schedules map onto the model variable space") {
  const Instance inst = fixtures::five_node();
  RmpOptions opts;
  opts.relaxed = false;
  opts.fleet_active = true;
  const RmpModel rmp = build_rmp(fixtures::four_route_pool(inst), inst, opts);
  const auto mip = solve_mip(rmp.lin);
  const Schedule schedule = extract_solution(mip, rmp, inst);
  const auto primal = schedule_as_primal(schedule, rmp);
  REQUIRE(static_cast<int>(primal.size()) == rmp.lin.num_vars());
  for (int j = 0; j < rmp.lin.num_vars(); ++j) CHECK(primal[j] == doctest::Approx(mip.primal[j]));

  // a schedule over a foreign route cannot be mapped
  Schedule foreign = schedule;
  foreign.uses[0].route = make_route({0, 1, 2, 1, 2, 0}, inst);
  CHECK(schedule_as_primal(foreign, rmp).empty());
}

TEST_CASE("chain cuts forbid the grouped flows") {
  // rebuild the absorbed-wait scenario and block the group in the model
  Instance inst;
  inst.network.node_count = 5;
  inst.network.distance.assign(5, std::vector<Km>(5, 10));
  inst.network.travel_time.assign(5, std::vector<Minutes>(5, 10));
  for (int i = 0; i < 5; ++i) {
    inst.network.distance[i][i] = 0;
    inst.network.travel_time[i][i] = 0;
  }
  inst.network.service_time = {0, 10, 10, 10, 10};
  inst.shifts = {1, 0, 720};
  inst.fleet_size = 5;
  inst.commodities = {
      {"p1", 1, 2, 1, 40, 700},
      {"p2", 2, 3, 1, 100, 700},
      {"p3", 3, 4, 1, 160, 700},
      {"vv", 4, 1, 1, 0, 200},
  };
  const Route chained = make_route({0, 1, 2, 2, 3, 3, 4, 4, 1, 0}, inst);
  const std::vector<Route> pool{chained, make_route({0, 1, 2, 0}, inst), make_route({0, 2, 3, 0}, inst),
                                make_route({0, 3, 4, 0}, inst), make_route({0, 4, 1, 0}, inst)};
  RmpOptions opts;
  opts.relaxed = false;
  opts.fleet_active = true;
  RmpModel rmp = build_rmp(pool, inst, opts);
  const auto before = solve_mip(rmp.lin);
  REQUIRE(before.status == SolveStatus::Optimal);
  // the single chained truck is the cheapest cover but misses the deadline
  const Schedule sb = extract_solution(before, rmp, inst);
  REQUIRE(sb.uses.size() == 1);
  CHECK(!simulate_schedule(sb, inst).clean());

  const std::vector<FlowEntry> flows{{1, 0, 1}, {3, 1, 1}, {5, 2, 1}, {7, 3, 1}};
  const auto chains = detect_push_back_chains(chained, flows, 0, inst);
  REQUIRE(chains.size() == 1);
  const int vars_before = rmp.lin.num_vars();
  CHECK(add_push_back_chain_cuts(rmp, chains, inst) == 1);
  CHECK(rmp.lin.num_vars() == vars_before + 4);  // one indicator per grouped flow
  CHECK(add_push_back_chain_cuts(rmp, chains, inst) == 0);  // idempotent

  const auto after = solve_mip(rmp.lin);
  REQUIRE(after.status == SolveStatus::Optimal);
  CHECK(after.objective > before.objective);
  // the forbidden grouping is gone; later rounds handle whatever remains
  const Schedule sa = extract_solution(after, rmp, inst);
  for (const auto& use : sa.uses) {
    if (use.route.nodes != chained.nodes) continue;
    std::set<int> carried;
    for (const auto& f : use.flows) carried.insert(f.commodity);
    CHECK(carried != std::set<int>{0, 1, 2, 3});
  }
}

TEST_CASE("the repair loop converges on the absorbed-wait instance") {
  Instance inst;
  inst.network.node_count = 5;
  inst.network.distance.assign(5, std::vector<Km>(5, 10));
  inst.network.travel_time.assign(5, std::vector<Minutes>(5, 10));
  for (int i = 0; i < 5; ++i) {
    inst.network.distance[i][i] = 0;
    inst.network.travel_time[i][i] = 0;
  }
  inst.network.service_time = {0, 10, 10, 10, 10};
  inst.shifts = {1, 0, 720};
  inst.fleet_size = 5;
  inst.commodities = {
      {"p1", 1, 2, 1, 40, 700},
      {"p2", 2, 3, 1, 100, 700},
      {"p3", 3, 4, 1, 160, 700},
      {"vv", 4, 1, 1, 0, 200},
  };
  ColGenConfig cfg;
  cfg.generator = GeneratorKind::Enumerated;
  cfg.pricing = PricingVariant::P2Weighted;
  cfg.init = InitKind::Simple;
  cfg.enumeration.max_legs = 4;
  cfg.max_iterations = 10;
  const auto res = solve(inst, cfg);
  CHECK(res.outcome == SolveOutcome::Success);
  CHECK(res.stats.simulation_clean);
  CHECK(res.stats.cuts_added >= 1);
  CHECK(simulate_schedule(res.schedule, inst).clean());
}
