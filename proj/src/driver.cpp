#include "ftl/driver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>

namespace ftl {

const char* to_string(GeneratorKind g) {
  switch (g) {
    case GeneratorKind::Enumerated: return "enumerated";
    case GeneratorKind::Vns: return "vns";
    case GeneratorKind::Ga: return "ga";
    case GeneratorKind::RandomAblation: return "random";
  }
  return "?";
}

const char* to_string(InitKind i) { return i == InitKind::Simple ? "simple" : "insertion"; }

const char* to_string(SolveOutcome o) {
  switch (o) {
    case SolveOutcome::Success: return "success";
    case SolveOutcome::Infeasible: return "infeasible";
    case SolveOutcome::Incomplete: return "incomplete";
  }
  return "?";
}

namespace {

double ms_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

bool audit_pool(const ColumnPool& pool, const Instance& inst) {
  if (static_cast<int>(pool.generated_count()) > pool.capacity) return false;
  std::set<Route> seen;
  for (const auto& e : pool.entries) {
    if (e.incumbent) continue;
    if (!seen.insert(e.route).second) return false;
    if (!validate_route(e.route, inst).empty()) return false;
    if (!is_distance_feasible(e.route, 0, inst)) return false;
    if (!(e.value < 0)) return false;
  }
  return true;
}

struct PricingRound {
  std::vector<Route> admitted;  // new distinct columns
  double min_estimate = kInf;
  bool pool_audit_ok = true;
};

PricingRound run_generator(const ColGenConfig& cfg, const Instance& inst, const DualValues& duals,
                           const std::vector<Route>& z_routes, const std::vector<Route>& all_routes,
                           const std::set<Route>& existing, DetRng& ablation_rng, int iteration) {
  PricingRound out;
  switch (cfg.generator) {
    case GeneratorKind::Enumerated: {
      if (cfg.pricing == PricingVariant::Enumeration) {
        const auto findings = price_by_enumeration(all_routes, duals, inst, cfg.max_columns);
        for (const auto& f : findings) {
          out.min_estimate = std::min(out.min_estimate, f.value);
          if (!existing.count(f.route)) out.admitted.push_back(f.route);
        }
      } else {
        std::vector<std::pair<double, const Route*>> scored;
        for (const auto& r : all_routes) {
          const double v = estimate_reduced_cost(cfg.pricing, r, duals, inst);
          if (v < -1e-7) {
            out.min_estimate = std::min(out.min_estimate, v);
            if (!existing.count(r)) scored.push_back({v, &r});
          }
        }
        std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
          if (a.first != b.first) return a.first < b.first;
          return *a.second < *b.second;
        });
        if (static_cast<int>(scored.size()) > cfg.max_columns) scored.resize(static_cast<size_t>(cfg.max_columns));
        for (const auto& [v, r] : scored) out.admitted.push_back(*r);
      }
      break;
    }
    case GeneratorKind::RandomAblation: {
      const auto sample = price_random_ablation(all_routes, ablation_rng, cfg.max_columns);
      for (const auto& r : sample)
        if (!existing.count(r)) out.admitted.push_back(r);
      break;
    }
    case GeneratorKind::Vns: {
      VnsParams params;
      params.max_columns = cfg.max_columns;
      const ColumnPool pool = vns_generate(z_routes, duals, params, cfg.pricing, inst);
      out.pool_audit_ok = audit_pool(pool, inst);
      for (const auto& e : pool.entries) {
        if (e.incumbent) continue;
        out.min_estimate = std::min(out.min_estimate, e.value);
        if (!existing.count(e.route)) out.admitted.push_back(e.route);
      }
      break;
    }
    case GeneratorKind::Ga: {
      GaParams params = cfg.ga;
      params.max_columns = cfg.max_columns;
      params.seed = cfg.seed + static_cast<uint64_t>(iteration);
      const ColumnPool pool = ga_generate(z_routes, duals, params, cfg.pricing, inst);
      out.pool_audit_ok = audit_pool(pool, inst);
      for (const auto& e : pool.entries) {
        if (e.incumbent) continue;
        out.min_estimate = std::min(out.min_estimate, e.value);
        if (!existing.count(e.route)) out.admitted.push_back(e.route);
      }
      break;
    }
  }
  return out;
}

}  // namespace

SolveResult solve(const Instance& inst, const ColGenConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  SolveResult res;
  const auto out_of_time = [&]() {
    return cfg.time_limit_s > 0 && ms_since(t0) / 1000.0 > cfg.time_limit_s;
  };

  {
    const auto violations = validate_instance(inst);
    if (!violations.empty())
      throw std::invalid_argument("invalid instance: " + violations.front().code + " (" +
                                  violations.front().detail + ")");
  }

  if (inst.commodities.empty()) {
    res.outcome = SolveOutcome::Success;
    res.stats.stop_reason = "no-commodities";
    res.stats.simulation_clean = true;
    res.stats.solve_seconds = ms_since(t0) / 1000.0;
    return res;
  }

  std::vector<Route> columns;
  Schedule init_schedule;  // feasible start used to seed the integral solves
  if (cfg.init == InitKind::Simple) {
    const auto init = simple_init(inst);
    columns = init.routes;
    if (init.fleet_warning) res.diagnostics += "simple init exceeds the fleet capacity; colgen must repair\n";
  } else {
    auto init = insertion_init(inst);
    columns = init.routes;
    init_schedule = std::move(init.schedule);
    if (init.used_virtual_trucks) res.diagnostics += "insertion init needed trucks beyond the fleet\n";
  }
  std::sort(columns.begin(), columns.end());
  columns.erase(std::unique(columns.begin(), columns.end()), columns.end());

  const bool needs_enumeration =
      cfg.generator == GeneratorKind::Enumerated || cfg.generator == GeneratorKind::RandomAblation;
  std::vector<Route> all_routes;
  if (needs_enumeration) all_routes = enumerate_routes(inst, cfg.enumeration);

  DetRng ablation_rng(cfg.seed);
  double prev_relaxed = kInf;
  std::string stop_reason;

  // one column-generation iteration: relaxed master -> duals -> generator
  auto colgen_iteration = [&](int iteration) -> bool {
    const auto it0 = std::chrono::steady_clock::now();
    RmpOptions opts;
    opts.relaxed = true;
    opts.fleet_active = !cfg.fleet_relaxed_during_colgen;
    RmpModel rmp = build_rmp(columns, inst, opts);
    const LPSolution lp = solve_lp(rmp.lin);
    if (lp.status != SolveStatus::Optimal) {
      res.diagnostics += "relaxed master solve ended " + std::string(to_string(lp.status)) + "\n";
      stop_reason = "relaxed-master-failed";
      return false;
    }
    if (lp.objective > prev_relaxed + 1e-6 * std::max(1.0, std::fabs(prev_relaxed)))
      res.stats.monotonic_ok = false;
    prev_relaxed = lp.objective;

    const DualValues duals = extract_duals(lp, rmp, inst);
    std::set<Route> incumbent;
    for (size_t r = 0; r < rmp.routes.size(); ++r) {
      double total = 0.0;
      for (int s = 0; s < inst.shifts.shift_count; ++s)
        if (rmp.y_var[r][s] >= 0) total += lp.primal[rmp.y_var[r][s]];
      if (total > 1e-7) incumbent.insert(rmp.routes[r]);
    }
    const std::vector<Route> z_routes(incumbent.begin(), incumbent.end());
    const std::set<Route> existing(columns.begin(), columns.end());

    PricingRound round = run_generator(cfg, inst, duals, z_routes, all_routes, existing, ablation_rng, iteration);
    if (!round.pool_audit_ok) res.stats.pool_audits_ok = false;

    if (cfg.generator == GeneratorKind::Vns || cfg.generator == GeneratorKind::Ga) {
      // the master is rebuilt from the generated pool plus the incumbent;
      // keeping the incumbent keeps the previous optimum feasible, so the
      // relaxed bound cannot increase
      std::set<Route> next(z_routes.begin(), z_routes.end());
      for (const auto& r : round.admitted) next.insert(r);
      columns.assign(next.begin(), next.end());
    } else {
      for (const auto& r : round.admitted) columns.push_back(r);
      std::sort(columns.begin(), columns.end());
      columns.erase(std::unique(columns.begin(), columns.end()), columns.end());
    }

    res.stats.columns_generated += static_cast<int64_t>(round.admitted.size());
    res.stats.iterations.push_back(
        {lp.objective, static_cast<int>(round.admitted.size()), round.min_estimate, ms_since(it0)});
    if (!round.admitted.empty()) return true;
    if (cfg.generator == GeneratorKind::Enumerated)
      stop_reason = cfg.pricing == PricingVariant::Enumeration ? "pricing-certified" : "no-negative-estimates";
    else if (cfg.generator == GeneratorKind::RandomAblation)
      stop_reason = "sample-exhausted";
    else
      stop_reason = "generator-exhausted";
    return false;
  };

  for (int it = 1; it <= cfg.max_iterations; ++it) {
    if (out_of_time()) {
      stop_reason = "time-limit";
      break;
    }
    if (!colgen_iteration(it)) break;
  }
  if (stop_reason.empty()) stop_reason = "max-iterations";
  if (stop_reason == "relaxed-master-failed") {
    res.outcome = SolveOutcome::Incomplete;
    res.stats.stop_reason = stop_reason;
    res.stats.solve_seconds = ms_since(t0) / 1000.0;
    return res;
  }

  // final integral solve with the fleet restored, repaired by incompatibility
  // cuts until the simulator is clean
  std::vector<IncompatiblePair> accumulated_pairs;
  std::vector<PushBackChain> accumulated_chains;
  std::set<std::tuple<std::vector<int>, int, int, int, int, int>> pair_keys;
  std::set<std::vector<int>> chain_keys;
  bool clean = false;
  int reprice_rounds_left = cfg.reprice_after_cuts ? 1 : 0;

  while (true) {
    RmpOptions final_opts;
    final_opts.relaxed = false;
    final_opts.fleet_active = true;
    RmpModel final_rmp = build_rmp(columns, inst, final_opts);
    add_incompatibility_cuts(final_rmp, accumulated_pairs, inst);
    add_push_back_chain_cuts(final_rmp, accumulated_chains, inst);
    MipConfig mip_cfg = cfg.mip;
    std::vector<double> seed_primal;
    if (!init_schedule.empty()) {
      seed_primal = schedule_as_primal(init_schedule, final_rmp);
      if (!seed_primal.empty()) mip_cfg.initial_primal = &seed_primal;
    }
    LPSolution mip = solve_mip(final_rmp.lin, mip_cfg);
    if (mip.status == SolveStatus::IterationLimit) res.stats.mip_truncated = true;
    if (mip.status == SolveStatus::Infeasible) {
      res.outcome = SolveOutcome::Infeasible;
      res.diagnostics += "final master is infeasible; the fleet of " + std::to_string(inst.fleet_size) +
                         " trucks per shift cannot cover the demand with the generated columns\n";
      res.stats.stop_reason = stop_reason;
      res.stats.solve_seconds = ms_since(t0) / 1000.0;
      return res;
    }
    if (mip.primal.empty()) {
      res.outcome = SolveOutcome::Incomplete;
      res.diagnostics += "final solve ended " + std::string(to_string(mip.status)) + " without an incumbent\n";
      res.stats.stop_reason = "final-mip-" + std::string(to_string(mip.status));
      res.stats.solve_seconds = ms_since(t0) / 1000.0;
      return res;
    }
    res.schedule = extract_solution(mip, final_rmp, inst);
    if (res.stats.pre_cut_objective == 0) res.stats.pre_cut_objective = res.schedule.objective;

    bool cuts_this_pass = false;
    clean = false;
    for (int round = 0; round <= cfg.cut_round_limit; ++round) {
      res.simulation = simulate_schedule(res.schedule, inst);
      if (res.simulation.clean()) {
        clean = true;
        break;
      }
      if (round == cfg.cut_round_limit) break;
      if (out_of_time()) {
        res.diagnostics += "wall-clock budget exhausted during the repair rounds\n";
        break;
      }
      std::vector<IncompatiblePair> fresh;
      for (const auto& use : res.schedule.uses)
        for (auto& p : detect_incompatibilities(use.route, use.flows, use.shift, inst))
          if (pair_keys.insert({p.route.nodes, p.shift, p.i, p.k, p.j, p.v}).second) {
            fresh.push_back(p);
            accumulated_pairs.push_back(p);
          }
      int added = add_incompatibility_cuts(final_rmp, fresh, inst);
      if (added == 0) {
        // a delay assembled from several small waits: forbid the whole chain
        std::vector<PushBackChain> fresh_chains;
        for (const auto& use : res.schedule.uses)
          for (auto& c : detect_push_back_chains(use.route, use.flows, use.shift, inst)) {
            std::vector<int> key{use.shift, c.j, c.v};
            for (int n : c.route.nodes) key.push_back(n);
            for (const auto& [pos, k] : c.pushers) {
              key.push_back(pos);
              key.push_back(k);
            }
            if (chain_keys.insert(key).second) {
              fresh_chains.push_back(c);
              accumulated_chains.push_back(c);
            }
          }
        added = add_push_back_chain_cuts(final_rmp, fresh_chains, inst);
      }
      if (added == 0) {
        res.diagnostics += "simulation reports violations but no new incompatibility cut separates them\n";
        break;
      }
      res.stats.cut_rounds += 1;
      res.stats.cuts_added += added;
      cuts_this_pass = true;
      if (!seed_primal.empty()) seed_primal.resize(final_rmp.lin.num_vars(), 0.0);  // new switches start at 0
      mip = solve_mip(final_rmp.lin, mip_cfg);
      if (mip.status == SolveStatus::IterationLimit) res.stats.mip_truncated = true;
      if (mip.status == SolveStatus::Infeasible) {
        res.outcome = SolveOutcome::Infeasible;
        res.diagnostics += "master became infeasible after adding incompatibility cuts\n";
        res.stats.stop_reason = stop_reason;
        res.stats.solve_seconds = ms_since(t0) / 1000.0;
        return res;
      }
      if (mip.primal.empty()) {
        res.diagnostics += "cut-round solve ended " + std::string(to_string(mip.status)) + "\n";
        break;
      }
      res.schedule = extract_solution(mip, final_rmp, inst);
    }

    if (clean && cuts_this_pass && reprice_rounds_left > 0) {
      --reprice_rounds_left;
      const size_t before = res.stats.iterations.size();
      colgen_iteration(cfg.max_iterations + 1);
      const bool grew = res.stats.iterations.size() > before && res.stats.iterations.back().columns_added > 0;
      if (grew) continue;  // re-solve the final model over the extended pool
    }
    break;
  }

  // truncated solves report incumbents, not optima, so the cut direction is
  // only meaningful for exact runs
  if (!res.stats.mip_truncated && res.schedule.objective < res.stats.pre_cut_objective)
    res.stats.monotonic_ok = false;

  res.stats.objective = res.schedule.objective;
  res.stats.simulation_clean = clean;
  res.stats.stop_reason = stop_reason;
  res.stats.solve_seconds = ms_since(t0) / 1000.0;
  res.outcome = clean ? SolveOutcome::Success : SolveOutcome::Incomplete;
  if (!clean && res.diagnostics.empty())
    res.diagnostics += "cut-round limit reached with outstanding deadline violations\n";
  return res;
}

}  // namespace ftl
