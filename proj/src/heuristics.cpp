#include "ftl/heuristics.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ftl/rng.hpp"

namespace ftl {

std::vector<Route> ColumnPool::routes() const {
  std::vector<Route> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.route);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

size_t ColumnPool::generated_count() const {
  size_t c = 0;
  for (const auto& e : entries)
    if (!e.incumbent) ++c;
  return c;
}

SimpleInitResult simple_init(const Instance& inst) {
  SimpleInitResult res;
  std::set<std::pair<int, int>> pairs;
  int64_t total_units = 0;
  for (const auto& k : inst.commodities) {
    pairs.insert({k.origin, k.destination});
    total_units += k.quantity;
  }
  for (const auto& [o, d] : pairs) {
    Route r = make_route({0, o, d, 0}, inst);
    if (!is_distance_feasible(r, 0, inst))
      throw std::runtime_error("dedicated route for pair " + std::to_string(o) + "->" + std::to_string(d) +
                               " does not fit a shift");
    res.routes.push_back(std::move(r));
  }
  std::sort(res.routes.begin(), res.routes.end());
  res.fleet_warning =
      total_units > inst.fleet_size * static_cast<int64_t>(inst.shifts.shift_count);
  return res;
}

namespace {

// Replays one truck itinerary; true when every carried unit meets its
// deadline and the truck returns before the shift ends.
bool itinerary_clean(const TruckItinerary& truck, const Instance& inst) {
  Schedule probe;
  probe.trucks.push_back(truck);
  return simulate_schedule(probe, inst).clean();
}

struct ArcList {
  std::vector<std::pair<int, int>> arcs;
};

ArcList to_arcs(const Route& r) {
  ArcList a;
  for (size_t i = 1; i + 1 < r.nodes.size(); i += 2) a.arcs.push_back({r.nodes[i], r.nodes[i + 1]});
  return a;
}

Route from_arcs(const std::vector<std::pair<int, int>>& arcs, const Instance& inst) {
  std::vector<int> nodes{0};
  for (const auto& [a, b] : arcs) {
    nodes.push_back(a);
    nodes.push_back(b);
  }
  nodes.push_back(0);
  return make_route(std::move(nodes), inst);
}

bool usable_route(const Route& r, const Instance& inst) {
  if (r.nodes.size() < 4) return false;
  return validate_route(r, inst).empty() && is_distance_feasible(r, 0, inst);
}

}  // namespace

InsertionInitResult insertion_init(const Instance& inst) {
  InsertionInitResult res;
  const int S = inst.shifts.shift_count;
  std::vector<int64_t> remaining(inst.commodities.size());
  for (size_t k = 0; k < remaining.size(); ++k) remaining[k] = inst.commodities[k].quantity;

  // candidate commodities by urgency: tightest deadline, then earliest
  // availability, then id
  std::vector<int> order(inst.commodities.size());
  for (size_t k = 0; k < order.size(); ++k) order[k] = static_cast<int>(k);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto& ka = inst.commodities[a];
    const auto& kb = inst.commodities[b];
    return std::tie(ka.deadline, ka.available, ka.id) < std::tie(kb.deadline, kb.available, kb.id);
  });

  std::vector<TruckItinerary> trucks;

  auto try_append = [&](TruckItinerary& truck, int commodity) -> bool {
    const auto& k = inst.commodities[commodity];
    TruckItinerary probe = truck;
    auto arcs = to_arcs(probe.route).arcs;
    arcs.push_back({k.origin, k.destination});
    probe.route = from_arcs(arcs, inst);
    probe.flows.push_back({static_cast<int>(probe.route.nodes.size()) - 3, commodity, 1});
    if (!is_distance_feasible(probe.route, probe.shift, inst)) return false;
    if (!itinerary_clean(probe, inst)) return false;
    truck = std::move(probe);
    return true;
  };

  auto added_empty_distance = [&](const TruckItinerary& truck, int commodity) -> Km {
    const auto& k = inst.commodities[commodity];
    const auto& nodes = truck.route.nodes;
    const int last = nodes.size() > 2 ? nodes[nodes.size() - 2] : 0;
    return inst.network.distance[last][k.origin] + inst.network.distance[k.destination][0] -
           inst.network.distance[last][0];
  };

  for (int s = 0; s < S; ++s) {
    std::vector<TruckItinerary> shift_trucks(static_cast<size_t>(inst.fleet_size));
    for (auto& t : shift_trucks) {
      t.shift = s;
      t.route = make_route({0, 0}, inst);
    }
    while (true) {
      bool inserted = false;
      for (int k : order) {
        if (remaining[k] == 0) continue;
        // best truck by added empty distance, ties by truck index
        int best_truck = -1;
        Km best_added = 0;
        for (size_t t = 0; t < shift_trucks.size(); ++t) {
          TruckItinerary probe = shift_trucks[t];
          if (!try_append(probe, k)) continue;
          const Km added = added_empty_distance(shift_trucks[t], k);
          if (best_truck < 0 || added < best_added) {
            best_truck = static_cast<int>(t);
            best_added = added;
          }
        }
        if (best_truck < 0) continue;
        try_append(shift_trucks[best_truck], k);
        --remaining[k];
        inserted = true;
        break;
      }
      if (!inserted) break;
    }
    for (auto& t : shift_trucks)
      if (t.route.nodes.size() > 2) trucks.push_back(std::move(t));
  }

  // leftovers get dedicated virtual trucks in the first shift that works
  for (int k : order) {
    while (remaining[k] > 0) {
      bool placed = false;
      for (int s = 0; s < S && !placed; ++s) {
        TruckItinerary t;
        t.shift = s;
        t.route = make_route({0, 0}, inst);
        if (try_append(t, k)) {
          trucks.push_back(std::move(t));
          --remaining[k];
          res.used_virtual_trucks = true;
          placed = true;
        }
      }
      if (!placed)
        throw std::runtime_error("insertion heuristic cannot place a unit of " + inst.commodities[k].id);
    }
  }

  // aggregate identical (route, shift) groups
  std::map<std::pair<std::vector<int>, int>, RouteUse> groups;
  for (const auto& t : trucks) {
    auto& use = groups[{t.route.nodes, t.shift}];
    if (use.count == 0) {
      use.route = t.route;
      use.shift = t.shift;
    }
    use.count += 1;
    for (const auto& f : t.flows) {
      bool merged = false;
      for (auto& g : use.flows)
        if (g.position == f.position && g.commodity == f.commodity) {
          g.units += f.units;
          merged = true;
          break;
        }
      if (!merged) use.flows.push_back(f);
    }
  }
  for (auto& [key, use] : groups) res.schedule.uses.push_back(std::move(use));
  res.schedule.trucks = trucks;
  for (const auto& use : res.schedule.uses) res.schedule.objective += use.route.distance * use.count;

  std::set<Route> distinct;
  for (const auto& use : res.schedule.uses) distinct.insert(use.route);
  res.routes.assign(distinct.begin(), distinct.end());
  return res;
}

namespace {

using Arcs = std::vector<std::pair<int, int>>;

void collect_candidate(std::set<Route>& out, const Arcs& arcs, const Instance& inst) {
  if (arcs.empty()) return;
  Route r = from_arcs(arcs, inst);
  if (usable_route(r, inst)) out.insert(std::move(r));
}

// swap: one service arc exchanged between two distinct routes
void neighbourhood_swap(const std::vector<Arcs>& base, std::set<Route>& out, const Instance& inst) {
  for (size_t a = 0; a < base.size(); ++a)
    for (size_t b = a + 1; b < base.size(); ++b)
      for (size_t p = 0; p < base[a].size(); ++p)
        for (size_t q = 0; q < base[b].size(); ++q) {
          Arcs ra = base[a], rb = base[b];
          std::swap(ra[p], rb[q]);
          collect_candidate(out, ra, inst);
          collect_candidate(out, rb, inst);
        }
}

// 2-opt: two service arcs exchange positions within one route
void neighbourhood_two_opt(const std::vector<Arcs>& base, std::set<Route>& out, const Instance& inst) {
  for (const auto& arcs : base)
    for (size_t p = 0; p < arcs.size(); ++p)
      for (size_t q = p + 1; q < arcs.size(); ++q) {
        Arcs r = arcs;
        std::swap(r[p], r[q]);
        collect_candidate(out, r, inst);
      }
}

// relocate: one service arc moves from its route into another
void neighbourhood_relocate(const std::vector<Arcs>& base, std::set<Route>& out, const Instance& inst) {
  for (size_t a = 0; a < base.size(); ++a)
    for (size_t b = 0; b < base.size(); ++b) {
      if (a == b) continue;
      for (size_t p = 0; p < base[a].size(); ++p)
        for (size_t q = 0; q <= base[b].size(); ++q) {
          Arcs ra = base[a], rb = base[b];
          const auto arc = ra[p];
          ra.erase(ra.begin() + static_cast<ptrdiff_t>(p));
          rb.insert(rb.begin() + static_cast<ptrdiff_t>(q), arc);
          collect_candidate(out, ra, inst);
          collect_candidate(out, rb, inst);
        }
    }
}

std::vector<PoolEntry> evaluate_candidates(const std::set<Route>& cands, const std::set<Route>& incumbent,
                                           const DualValues& duals, PricingVariant variant, const Instance& inst,
                                           int max_columns) {
  std::vector<PoolEntry> entries;
  for (const auto& r : cands) {
    if (incumbent.count(r)) continue;
    const double value = estimate_reduced_cost(variant, r, duals, inst);
    if (value < -1e-7) entries.push_back({r, value, false});
  }
  std::sort(entries.begin(), entries.end(), [](const PoolEntry& a, const PoolEntry& b) {
    if (a.value != b.value) return a.value < b.value;
    return a.route < b.route;
  });
  if (static_cast<int>(entries.size()) > max_columns) entries.resize(static_cast<size_t>(max_columns));
  return entries;
}

}  // namespace

ColumnPool vns_generate(const std::vector<Route>& incumbent_routes, const DualValues& duals,
                        const VnsParams& params, PricingVariant variant, const Instance& inst) {
  ColumnPool pool;
  pool.capacity = params.max_columns;
  std::set<Route> incumbent(incumbent_routes.begin(), incumbent_routes.end());
  std::vector<Arcs> base;
  for (const auto& r : incumbent) base.push_back(to_arcs(r).arcs);

  std::vector<PoolEntry> best_entries;
  double c_min = 0.0;
  int i = 1;
  while (i <= 3) {
    std::set<Route> cands;
    if (i == 1) neighbourhood_swap(base, cands, inst);
    else if (i == 2) neighbourhood_two_opt(base, cands, inst);
    else neighbourhood_relocate(base, cands, inst);
    const auto entries = evaluate_candidates(cands, incumbent, duals, variant, inst, params.max_columns);
    const double c = entries.empty() ? kInf : entries.front().value;
    if (c < c_min) {
      c_min = c;
      best_entries = entries;
      pool.descent.push_back(c);
      i = 1;
    } else {
      ++i;
    }
  }

  pool.entries = std::move(best_entries);
  for (const auto& r : incumbent) pool.entries.push_back({r, 0.0, true});
  return pool;
}

ColumnPool vns_generate(const Schedule& z, const DualValues& duals, const VnsParams& params,
                        PricingVariant variant, const Instance& inst) {
  std::set<Route> rz;
  for (const auto& use : z.uses) rz.insert(use.route);
  return vns_generate(std::vector<Route>(rz.begin(), rz.end()), duals, params, variant, inst);
}

namespace {

class GaRun {
 public:
  GaRun(const std::vector<Route>& incumbent, const DualValues& duals, const GaParams& params,
        PricingVariant variant, const Instance& inst)
      : duals_(duals), params_(params), variant_(variant), inst_(inst), rng_(params.seed) {
    for (const auto& r : incumbent) incumbent_.insert(r);
  }

  ColumnPool run() {
    std::vector<Route> population(incumbent_.begin(), incumbent_.end());
    for (int g = 0; g < params_.generations; ++g) {
      for (const auto& r : incumbent_)
        if (std::find(population.begin(), population.end(), r) == population.end()) population.push_back(r);
      std::vector<Route> next;
      int attempts = 0;
      const int attempt_cap = std::max(params_.population_size, 1);
      while (static_cast<int>(next.size()) < params_.population_size && attempts < attempt_cap) {
        ++attempts;
        const Route& p1 = tournament(population);
        const Route& p2 = tournament(population);
        auto [o1, o2] = crossover(p1, p2);
        mutate(o1);
        mutate(o2);
        local_search(o1, o2);
        for (Route* o : {&o1, &o2}) {
          if (!usable_route(*o, inst_)) continue;
          const double f = fitness(*o);
          if (f < -1e-7) {
            next.push_back(*o);
            admit(*o, f);
          }
        }
      }
      population = std::move(next);
      if (population.empty()) population.assign(incumbent_.begin(), incumbent_.end());
    }

    ColumnPool pool;
    pool.capacity = params_.max_columns;
    for (const auto& [route, value] : pool_) pool.entries.push_back({route, value, false});
    std::sort(pool.entries.begin(), pool.entries.end(), [](const PoolEntry& a, const PoolEntry& b) {
      if (a.value != b.value) return a.value < b.value;
      return a.route < b.route;
    });
    for (const auto& r : incumbent_) pool.entries.push_back({r, 0.0, true});
    return pool;
  }

 private:
  double fitness(const Route& r) {
    const auto it = fitness_cache_.find(r);
    if (it != fitness_cache_.end()) return it->second;
    const double f = estimate_reduced_cost(variant_, r, duals_, inst_);
    fitness_cache_.emplace(r, f);
    return f;
  }

  const Route& tournament(const std::vector<Route>& population) {
    const int size = std::max(1, static_cast<int>(std::llround(params_.population_size * params_.tournament_rate)));
    int best = static_cast<int>(rng_.uniform_int(0, static_cast<int64_t>(population.size()) - 1));
    double best_f = fitness(population[static_cast<size_t>(best)]);
    for (int t = 1; t < size; ++t) {
      const int c = static_cast<int>(rng_.uniform_int(0, static_cast<int64_t>(population.size()) - 1));
      const double f = fitness(population[static_cast<size_t>(c)]);
      if (f < best_f || (f == best_f && c < best)) {
        best = c;
        best_f = f;
      }
    }
    return population[static_cast<size_t>(best)];
  }

  // two-point crossover over service arcs; each side contributes a segment of
  // 0..2 arcs, so routes can grow, shrink or swap interior legs
  std::pair<Route, Route> crossover(const Route& p1, const Route& p2) {
    const Arcs a1 = to_arcs(p1).arcs;
    const Arcs a2 = to_arcs(p2).arcs;
    const int len1 = static_cast<int>(rng_.uniform_int(0, std::min<int64_t>(2, static_cast<int64_t>(a1.size()))));
    const int len2 = static_cast<int>(rng_.uniform_int(0, std::min<int64_t>(2, static_cast<int64_t>(a2.size()))));
    const int pos1 = static_cast<int>(rng_.uniform_int(0, static_cast<int64_t>(a1.size()) - len1));
    const int pos2 = static_cast<int>(rng_.uniform_int(0, static_cast<int64_t>(a2.size()) - len2));
    Arcs c1, c2;
    c1.insert(c1.end(), a1.begin(), a1.begin() + pos1);
    c1.insert(c1.end(), a2.begin() + pos2, a2.begin() + pos2 + len2);
    c1.insert(c1.end(), a1.begin() + pos1 + len1, a1.end());
    c2.insert(c2.end(), a2.begin(), a2.begin() + pos2);
    c2.insert(c2.end(), a1.begin() + pos1, a1.begin() + pos1 + len1);
    c2.insert(c2.end(), a2.begin() + pos2 + len2, a2.end());
    Route r1 = c1.empty() ? p1 : from_arcs(c1, inst_);
    Route r2 = c2.empty() ? p2 : from_arcs(c2, inst_);
    return {std::move(r1), std::move(r2)};
  }

  void mutate(Route& r) {
    if (!rng_.bernoulli(params_.mutation_rate)) return;
    Arcs arcs = to_arcs(r).arcs;
    if (arcs.size() < 2) return;
    const int p = static_cast<int>(rng_.uniform_int(0, static_cast<int64_t>(arcs.size()) - 1));
    const int q = static_cast<int>(rng_.uniform_int(0, static_cast<int64_t>(arcs.size()) - 1));
    std::swap(arcs[static_cast<size_t>(p)], arcs[static_cast<size_t>(q)]);
    r = from_arcs(arcs, inst_);
  }

  // best-improvement node swaps between the two offspring until neither
  // improves; candidates that break the encoding or the shift are skipped
  void local_search(Route& a, Route& b) {
    if (!usable_route(a, inst_) || !usable_route(b, inst_)) return;
    while (true) {
      const double current = fitness(a) + fitness(b);
      double best = current;
      Route best_a = a, best_b = b;
      for (size_t u = 1; u + 1 < a.nodes.size(); ++u)
        for (size_t v = 1; v + 1 < b.nodes.size(); ++v) {
          auto na = a.nodes, nb = b.nodes;
          std::swap(na[u], nb[v]);
          Route ca = make_route(std::move(na), inst_);
          Route cb = make_route(std::move(nb), inst_);
          if (!usable_route(ca, inst_) || !usable_route(cb, inst_)) continue;
          const double f = fitness(ca) + fitness(cb);
          if (f < best - 1e-9) {
            best = f;
            best_a = std::move(ca);
            best_b = std::move(cb);
          }
        }
      if (best >= current - 1e-9) break;
      a = std::move(best_a);
      b = std::move(best_b);
    }
  }

  void admit(const Route& r, double value) {
    if (incumbent_.count(r)) return;
    const auto it = pool_.find(r);
    if (it != pool_.end()) {
      it->second = std::min(it->second, value);
      return;
    }
    pool_.emplace(r, value);
    if (static_cast<int>(pool_.size()) > params_.max_columns) {
      // evict the worst value, ties by latest node order
      auto worst = pool_.begin();
      for (auto it2 = pool_.begin(); it2 != pool_.end(); ++it2)
        if (it2->second > worst->second || (it2->second == worst->second && worst->first < it2->first)) worst = it2;
      pool_.erase(worst);
    }
  }

  const DualValues& duals_;
  const GaParams& params_;
  PricingVariant variant_;
  const Instance& inst_;
  DetRng rng_;
  std::set<Route> incumbent_;
  std::map<Route, double> pool_;
  std::map<Route, double> fitness_cache_;
};

}  // namespace

ColumnPool ga_generate(const std::vector<Route>& incumbent_routes, const DualValues& duals, const GaParams& params,
                       PricingVariant variant, const Instance& inst) {
  GaRun run(incumbent_routes, duals, params, variant, inst);
  return run.run();
}

ColumnPool ga_generate(const Schedule& z, const DualValues& duals, const GaParams& params, PricingVariant variant,
                       const Instance& inst) {
  std::set<Route> rz;
  for (const auto& use : z.uses) rz.insert(use.route);
  return ga_generate(std::vector<Route>(rz.begin(), rz.end()), duals, params, variant, inst);
}

}  // namespace ftl
