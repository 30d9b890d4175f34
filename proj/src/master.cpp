#include "ftl/master.hpp"

#include <algorithm>
#include <cmath>

namespace ftl {

int RmpModel::route_index(const std::vector<int>& nodes) const {
  Route probe;
  probe.nodes = nodes;
  const auto it = std::lower_bound(routes.begin(), routes.end(), probe);
  if (it == routes.end() || it->nodes != nodes) return -1;
  return static_cast<int>(it - routes.begin());
}

RmpModel build_rmp(const std::vector<Route>& pool, const Instance& inst, const RmpOptions& opts) {
  RmpModel rmp;
  rmp.options = opts;
  rmp.routes = pool;
  std::sort(rmp.routes.begin(), rmp.routes.end());
  rmp.routes.erase(std::unique(rmp.routes.begin(), rmp.routes.end()), rmp.routes.end());

  const int S = inst.shifts.shift_count;
  const int R = static_cast<int>(rmp.routes.size());
  const int K = static_cast<int>(inst.commodities.size());

  rmp.y_var.assign(R, std::vector<int>(S, -1));
  rmp.fleet_row.assign(S, -1);
  rmp.demand_row.assign(K, -1);

  struct PlannedX {
    int route, position, commodity, shift;
  };
  std::vector<PlannedX> planned;
  for (int r = 0; r < R; ++r) {
    const Route& route = rmp.routes[r];
    for (int s = 0; s < S; ++s) {
      if (!is_distance_feasible(route, s, inst)) continue;
      const RouteTiming timing = compute_time_windows(route, s, inst);
      bool any = false;
      for (size_t i = 1; i + 1 < route.nodes.size(); i += 2)
        for (int k = 0; k < K; ++k)
          if (service_feasible(route, timing, static_cast<int>(i), inst.commodities[k], inst)) {
            planned.push_back({r, static_cast<int>(i), k, s});
            any = true;
          }
      if (any) {
        rmp.y_var[r][s] = rmp.lin.add_variable("y_r" + std::to_string(r) + "_s" + std::to_string(s), 0.0, kInf,
                                               static_cast<double>(route.distance), !opts.relaxed);
      }
    }
  }

  std::vector<bool> coverable(K, false);
  for (const auto& p : planned) coverable[p.commodity] = true;
  std::vector<std::string> uncovered;
  for (int k = 0; k < K; ++k)
    if (!coverable[k]) uncovered.push_back(inst.commodities[k].id);
  if (!uncovered.empty()) {
    std::string msg = "no pool route can service:";
    for (const auto& id : uncovered) msg += " " + id;
    throw UncoverableCommodityError(msg, uncovered);
  }

  for (const auto& p : planned) {
    const int var = rmp.lin.add_variable("x_r" + std::to_string(p.route) + "_p" + std::to_string(p.position) +
                                             "_k" + std::to_string(p.commodity) + "_s" + std::to_string(p.shift),
                                         0.0, kInf, 0.0, !opts.relaxed);
    rmp.x_vars.push_back({p.route, p.position, p.commodity, p.shift, var});
    rmp.x_var_of[{p.route, p.position, p.commodity, p.shift}] = var;
  }

  if (opts.fleet_active) {
    for (int s = 0; s < S; ++s) {
      std::vector<std::pair<int, double>> terms;
      for (int r = 0; r < R; ++r)
        if (rmp.y_var[r][s] >= 0) terms.push_back({rmp.y_var[r][s], 1.0});
      if (!terms.empty())
        rmp.fleet_row[s] = rmp.lin.add_row("fleet_s" + std::to_string(s), RowSense::LessEqual,
                                           static_cast<double>(inst.fleet_size), std::move(terms));
    }
  }

  for (int k = 0; k < K; ++k) {
    std::vector<std::pair<int, double>> terms;
    for (const auto& xv : rmp.x_vars)
      if (xv.commodity == k) terms.push_back({xv.var, 1.0});
    rmp.demand_row[k] = rmp.lin.add_row("demand_" + inst.commodities[k].id, RowSense::Equal,
                                        static_cast<double>(inst.commodities[k].quantity), std::move(terms));
  }

  std::map<std::tuple<int, int, int>, std::vector<std::pair<int, double>>> capacity_terms;
  for (const auto& xv : rmp.x_vars) capacity_terms[{xv.route, xv.position, xv.shift}].push_back({xv.var, 1.0});
  for (auto& [key, terms] : capacity_terms) {
    const auto [r, pos, s] = key;
    terms.push_back({rmp.y_var[r][s], -1.0});
    rmp.capacity_row[key] = rmp.lin.add_row(
        "cap_r" + std::to_string(r) + "_p" + std::to_string(pos) + "_s" + std::to_string(s), RowSense::LessEqual,
        0.0, std::move(terms));
  }

  if (opts.materialize_flow_rows) {
    for (const auto& xv : rmp.x_vars) {
      rmp.flow_row[{xv.route, xv.position, xv.commodity, xv.shift}] = rmp.lin.add_row(
          "flow_r" + std::to_string(xv.route) + "_p" + std::to_string(xv.position) + "_k" +
              std::to_string(xv.commodity) + "_s" + std::to_string(xv.shift),
          RowSense::LessEqual, 0.0, {{xv.var, 1.0}, {rmp.y_var[xv.route][xv.shift], -1.0}});
    }
  }
  return rmp;
}

DualValues extract_duals(const LPSolution& lp, const RmpModel& rmp, const Instance& inst) {
  if (lp.status != SolveStatus::Optimal)
    throw std::invalid_argument("extract_duals requires an optimal relaxed solve");
  DualValues duals;
  duals.alpha.assign(inst.shifts.shift_count, 0.0);
  duals.pi.assign(inst.commodities.size(), 0.0);
  for (int s = 0; s < inst.shifts.shift_count; ++s)
    if (rmp.fleet_row[s] >= 0) duals.alpha[s] = std::max(0.0, -lp.dual[rmp.fleet_row[s]]);
  for (size_t k = 0; k < inst.commodities.size(); ++k)
    if (rmp.demand_row[k] >= 0) duals.pi[k] = lp.dual[rmp.demand_row[k]];
  for (const auto& [key, row] : rmp.capacity_row) {
    const auto [r, pos, s] = key;
    const double b = std::max(0.0, -lp.dual[row]);
    if (b != 0.0) duals.beta[{rmp.routes[r].nodes, pos, s}] = b;
  }
  for (const auto& [key, row] : rmp.flow_row) {
    const auto [r, pos, k, s] = key;
    const double g = std::max(0.0, -lp.dual[row]);
    if (g != 0.0) duals.gamma[{rmp.routes[r].nodes, pos, k, s}] = g;
  }
  return duals;
}

int add_incompatibility_cuts(RmpModel& rmp, const std::vector<IncompatiblePair>& pairs, const Instance& inst) {
  int64_t big_m = 1;
  for (const auto& k : inst.commodities) big_m = std::max(big_m, k.quantity);

  int added = 0;
  for (const auto& pair : pairs) {
    const int r = rmp.route_index(pair.route.nodes);
    if (r < 0) throw std::invalid_argument("incompatibility cut references a route outside the pool");
    const auto key = std::make_tuple(r, pair.shift, pair.i, pair.k, pair.j, pair.v);
    if (rmp.cut_keys.count(key)) continue;
    const auto xi = rmp.x_var_of.find({r, pair.i, pair.k, pair.shift});
    const auto xj = rmp.x_var_of.find({r, pair.j, pair.v, pair.shift});
    if (xi == rmp.x_var_of.end() || xj == rmp.x_var_of.end())
      throw std::invalid_argument("incompatibility cut references a flow variable outside the model");
    rmp.cut_keys.insert(key);
    const int idx = rmp.cut_count++;
    const int theta = rmp.lin.add_variable("theta_" + std::to_string(idx), 0.0, 1.0, 0.0, true);
    const double m = static_cast<double>(big_m);
    rmp.lin.add_row("cut" + std::to_string(idx) + "_a", RowSense::LessEqual, 0.0,
                    {{xi->second, 1.0}, {theta, -m}});
    rmp.lin.add_row("cut" + std::to_string(idx) + "_b", RowSense::LessEqual, m,
                    {{xj->second, 1.0}, {theta, m}});
    ++added;
  }
  return added;
}

int add_push_back_chain_cuts(RmpModel& rmp, const std::vector<PushBackChain>& chains, const Instance& inst) {
  int64_t big_m = 1;
  for (const auto& k : inst.commodities) big_m = std::max(big_m, k.quantity);
  const double m = static_cast<double>(big_m);

  // indicator z >= x/M per flow variable, shared across chains
  const auto indicator = [&](int route, int pos, int k, int shift) {
    const auto key = std::make_tuple(route, pos, k, shift);
    if (const auto it = rmp.activity_var.find(key); it != rmp.activity_var.end()) return it->second;
    const auto xv = rmp.x_var_of.find(key);
    if (xv == rmp.x_var_of.end())
      throw std::invalid_argument("chain cut references a flow variable outside the model");
    const int z = rmp.lin.add_variable("z_r" + std::to_string(route) + "_p" + std::to_string(pos) + "_k" +
                                           std::to_string(k) + "_s" + std::to_string(shift),
                                       0.0, 1.0, 0.0, true);
    rmp.lin.add_row("act_r" + std::to_string(route) + "_p" + std::to_string(pos) + "_k" + std::to_string(k) +
                        "_s" + std::to_string(shift),
                    RowSense::LessEqual, 0.0, {{xv->second, 1.0}, {z, -m}});
    rmp.activity_var[key] = z;
    return z;
  };

  int added = 0;
  for (const auto& chain : chains) {
    const int r = rmp.route_index(chain.route.nodes);
    if (r < 0) throw std::invalid_argument("chain cut references a route outside the pool");
    std::vector<int> key{r, chain.shift, chain.j, chain.v};
    for (const auto& [pos, k] : chain.pushers) {
      key.push_back(pos);
      key.push_back(k);
    }
    if (!rmp.chain_keys.insert(key).second) continue;
    std::vector<std::pair<int, double>> terms;
    for (const auto& [pos, k] : chain.pushers) terms.push_back({indicator(r, pos, k, chain.shift), 1.0});
    terms.push_back({indicator(r, chain.j, chain.v, chain.shift), 1.0});
    // at most all-but-one of the group may be active together
    rmp.lin.add_row("chain" + std::to_string(rmp.cut_count), RowSense::LessEqual,
                    static_cast<double>(chain.pushers.size()), std::move(terms));
    ++rmp.cut_count;
    ++added;
  }
  return added;
}

std::vector<double> schedule_as_primal(const Schedule& schedule, const RmpModel& rmp) {
  std::vector<double> primal(rmp.lin.num_vars(), 0.0);
  for (const auto& use : schedule.uses) {
    const int r = rmp.route_index(use.route.nodes);
    if (r < 0) return {};
    const int yv = rmp.y_var[r][use.shift];
    if (yv < 0) return {};
    primal[yv] += static_cast<double>(use.count);
    for (const auto& f : use.flows) {
      const auto it = rmp.x_var_of.find({r, f.position, f.commodity, use.shift});
      if (it == rmp.x_var_of.end()) return {};
      primal[it->second] += static_cast<double>(f.units);
    }
  }
  return primal;
}

Schedule extract_solution(const LPSolution& mip, const RmpModel& rmp, const Instance& inst) {
  if (static_cast<int>(mip.primal.size()) != rmp.lin.num_vars())
    throw std::invalid_argument("extract_solution requires a solution with primal values");
  const auto as_int = [](double v, const std::string& what) {
    const long long r = std::llround(v);
    if (std::fabs(v - static_cast<double>(r)) > 1e-6)
      throw std::invalid_argument("fractional " + what + " value " + std::to_string(v));
    return r;
  };

  Schedule schedule;
  const int S = inst.shifts.shift_count;
  for (size_t r = 0; r < rmp.routes.size(); ++r) {
    for (int s = 0; s < S; ++s) {
      const int yv = rmp.y_var[r][s];
      if (yv < 0) continue;
      const long long count = as_int(mip.primal[yv], "route count");
      if (count <= 0) continue;
      RouteUse use;
      use.route = rmp.routes[r];
      use.shift = s;
      use.count = count;
      schedule.uses.push_back(std::move(use));
    }
  }
  for (const auto& xv : rmp.x_vars) {
    const long long units = as_int(mip.primal[xv.var], "flow");
    if (units <= 0) continue;
    bool placed = false;
    for (auto& use : schedule.uses) {
      if (use.shift == xv.shift && use.route.nodes == rmp.routes[xv.route].nodes) {
        use.flows.push_back({xv.position, xv.commodity, units});
        placed = true;
        break;
      }
    }
    if (!placed) throw std::logic_error("flow assigned to a route the solution does not use");
  }

  Km objective = 0;
  for (const auto& use : schedule.uses) objective += use.route.distance * use.count;
  if (std::fabs(static_cast<double>(objective) - mip.objective) > 1e-6 * std::max(1.0, std::fabs(mip.objective)))
    throw std::logic_error("extracted objective disagrees with the model objective");
  schedule.objective = objective;
  schedule.cuts_applied = rmp.cut_count;
  schedule.trucks = disaggregate_round_robin(schedule);

  const auto violations = validate_schedule(schedule, inst, rmp.options.fleet_active);
  if (!violations.empty())
    throw std::logic_error("extracted schedule violates " + violations.front().code + ": " +
                           violations.front().detail);
  return schedule;
}

}  // namespace ftl
