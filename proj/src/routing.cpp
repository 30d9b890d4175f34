#include "ftl/routing.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace ftl {

std::vector<Violation> validate_route(const Route& route, const Instance& inst) {
  std::vector<Violation> out;
  const auto& nodes = route.nodes;
  const int n = inst.network.node_count;
  if (nodes.size() < 2) {
    out.push_back({"route.too-short", "a route needs at least the two depot endpoints"});
    return out;
  }
  if (nodes.size() % 2 != 0)
    out.push_back({"route.odd-length", "duplicated-node encoding requires an even node count"});
  if (nodes.front() != 0 || nodes.back() != 0)
    out.push_back({"route.endpoints", "routes start and end at the depot"});
  for (int v : nodes)
    if (v < 0 || v >= n) {
      out.push_back({"route.node-range", "node " + std::to_string(v) + " outside the network"});
      return out;
    }
  // each (odd, odd+1) pair is a loaded service arc
  for (size_t i = 1; i + 1 < nodes.size(); i += 2) {
    if (nodes[i] == nodes[i + 1])
      out.push_back({"route.self-arc", "service arc at position " + std::to_string(i) + " loads and unloads at " +
                                            std::to_string(nodes[i])});
  }
  if (out.empty() && route.distance != route_distance(nodes, inst))
    out.push_back({"route.distance", "stored distance does not match the arc sum"});
  return out;
}

Km route_distance(const std::vector<int>& nodes, const Instance& inst) {
  Km d = 0;
  for (size_t i = 0; i + 1 < nodes.size(); ++i) d += inst.network.distance[nodes[i]][nodes[i + 1]];
  return d;
}

Route make_route(std::vector<int> nodes, const Instance& inst) {
  Route r;
  r.distance = route_distance(nodes, inst);
  r.nodes = std::move(nodes);
  return r;
}

RouteTiming compute_time_windows(const Route& route, int shift, const Instance& inst) {
  const auto& nodes = route.nodes;
  const auto& net = inst.network;
  const size_t len = nodes.size();
  RouteTiming t;
  t.shift = shift;
  t.earliest.resize(len);
  t.latest.resize(len);
  t.earliest[0] = inst.shifts.start(shift);
  for (size_t i = 1; i < len; ++i)
    t.earliest[i] = t.earliest[i - 1] + net.service_time[nodes[i - 1]] + net.travel_time[nodes[i - 1]][nodes[i]];
  t.latest[len - 1] = inst.shifts.end(shift);
  for (size_t i = len - 1; i-- > 0;)
    t.latest[i] = t.latest[i + 1] - net.service_time[nodes[i + 1]] - net.travel_time[nodes[i]][nodes[i + 1]];
  return t;
}

bool is_distance_feasible(const Route& route, int shift, const Instance& inst) {
  const RouteTiming t = compute_time_windows(route, shift, inst);
  return t.earliest.back() <= inst.shifts.end(shift);
}

bool service_feasible(const Route& route, const RouteTiming& timing, int i, const Commodity& k,
                      const Instance& inst) {
  const auto& nodes = route.nodes;
  if (i < 0 || static_cast<size_t>(i) + 1 >= nodes.size())
    throw std::out_of_range("service position " + std::to_string(i) + " outside the route");
  if (i % 2 != 1) return false;
  if (nodes[i] != k.origin) return false;
  if (nodes[i + 1] != k.destination) return false;
  if (timing.latest[i] < k.available + inst.network.service_time[nodes[i]]) return false;
  if (timing.earliest[i + 1] > k.deadline) return false;
  return true;
}

std::vector<Route> enumerate_routes(const Instance& inst, const EnumerationOptions& opts) {
  // Loaded arcs are the distinct commodity origin-destination pairs.
  std::set<std::pair<int, int>> arc_set;
  for (const auto& k : inst.commodities) arc_set.insert({k.origin, k.destination});
  const std::vector<std::pair<int, int>> arcs(arc_set.begin(), arc_set.end());

  const auto& net = inst.network;
  const Minutes shift_end = inst.shifts.end(opts.shift);
  std::vector<Route> out;
  int64_t explored = 0;

  std::vector<int> nodes{0};
  auto extend = [&](auto&& self, Minutes ready, int legs) -> void {
    // `ready` = departure-ready time at nodes.back() (service done).
    if (legs >= opts.max_legs) return;
    const int cur = nodes.back();
    for (const auto& [a, b] : arcs) {
      if (++explored > opts.budget) throw EnumerationBudgetExceeded(explored - 1);
      const Minutes at_pickup = ready + net.travel_time[cur][a];
      const Minutes at_delivery = at_pickup + net.service_time[a] + net.travel_time[a][b];
      const Minutes done = at_delivery + net.service_time[b];
      const Minutes back = done + net.travel_time[b][0];
      if (back > shift_end) continue;
      nodes.push_back(a);
      nodes.push_back(b);
      {
        auto full = nodes;
        full.push_back(0);
        out.push_back(make_route(std::move(full), inst));
      }
      self(self, done, legs + 1);
      nodes.pop_back();
      nodes.pop_back();
    }
  };
  extend(extend, inst.shifts.start(opts.shift) + net.service_time[0], 0);

  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Minutes> propagate_push_back(const Route& route, const RouteTiming& timing,
                                         const std::vector<FlowEntry>& flows, const Instance& inst) {
  std::vector<Minutes> adjusted = timing.earliest;
  const size_t len = route.nodes.size();
  for (size_t i = 1; i + 1 < len; i += 2) {
    Minutes wait = 0;
    for (const auto& f : flows) {
      if (static_cast<size_t>(f.position) != i) continue;
      const Minutes lateness = inst.commodities[f.commodity].available - adjusted[i];
      wait = std::max(wait, lateness);
    }
    if (wait > 0)
      for (size_t j = i; j < len; ++j) adjusted[j] += wait;
  }
  return adjusted;
}

std::vector<IncompatiblePair> detect_incompatibilities(const Route& route, const std::vector<FlowEntry>& flows,
                                                       int shift, const Instance& inst) {
  const RouteTiming timing = compute_time_windows(route, shift, inst);
  const auto& e = timing.earliest;
  const std::vector<Minutes> pushed = propagate_push_back(route, timing, flows, inst);
  const size_t len = route.nodes.size();

  struct Pusher {
    int pos;
    int commodity;
    Minutes push;
  };
  struct Violated {
    int pos;
    int commodity;
    Minutes acceptable;
  };
  std::vector<Pusher> pushers;
  std::vector<Violated> violated;

  // Commodities whose availability delays the route; push net of the delay
  // already accumulated before their node, clamped at zero.
  Minutes accumulated = 0;
  for (size_t i = 1; i + 1 < len; i += 2) {
    Minutes node_push = 0;
    for (const auto& f : flows) {
      if (static_cast<size_t>(f.position) != i) continue;
      const Minutes raw = inst.commodities[f.commodity].available - e[i];
      if (raw <= 0) continue;
      const Minutes net = std::max<Minutes>(0, raw - accumulated);
      pushers.push_back({static_cast<int>(i), f.commodity, net});
      node_push = std::max(node_push, net);
    }
    accumulated += node_push;
  }

  // Commodities delivered past their deadline under the propagated delays;
  // the acceptable push-back is their original slack.
  for (size_t j = 1; j + 1 < len; j += 2) {
    for (const auto& f : flows) {
      if (static_cast<size_t>(f.position) != j) continue;
      const Commodity& v = inst.commodities[f.commodity];
      if (v.deadline < pushed[j + 1])
        violated.push_back({static_cast<int>(j), f.commodity, v.deadline - e[j + 1]});
    }
  }

  std::vector<IncompatiblePair> out;
  for (const auto& p : pushers)
    for (const auto& w : violated) {
      if (p.pos > w.pos) continue;
      if (p.push <= w.acceptable) continue;
      IncompatiblePair pair;
      pair.route = route;
      pair.shift = shift;
      pair.i = p.pos;
      pair.k = p.commodity;
      pair.j = w.pos;
      pair.v = w.commodity;
      pair.k_push_back = p.push;
      pair.v_acceptable_push_back = w.acceptable;
      out.push_back(std::move(pair));
    }
  std::sort(out.begin(), out.end(), [&](const IncompatiblePair& a, const IncompatiblePair& b) {
    const auto key = [&](const IncompatiblePair& p) {
      return std::make_tuple(p.i, inst.commodities[p.k].id, p.j, inst.commodities[p.v].id);
    };
    return key(a) < key(b);
  });
  return out;
}

std::vector<PushBackChain> detect_push_back_chains(const Route& route, const std::vector<FlowEntry>& flows,
                                                   int shift, const Instance& inst) {
  const RouteTiming timing = compute_time_windows(route, shift, inst);
  const auto& e = timing.earliest;
  const std::vector<Minutes> pushed = propagate_push_back(route, timing, flows, inst);
  const size_t len = route.nodes.size();

  // strongest net pusher per waiting node, in route order
  struct NodePush {
    int pos;
    int commodity;
    Minutes net;
  };
  std::vector<NodePush> node_pushers;
  Minutes accumulated = 0;
  for (size_t i = 1; i + 1 < len; i += 2) {
    Minutes best = 0;
    int best_k = -1;
    for (const auto& f : flows) {
      if (static_cast<size_t>(f.position) != i) continue;
      const Minutes net = inst.commodities[f.commodity].available - e[i] - accumulated;
      if (net > best || (net == best && net > 0 && (best_k < 0 || f.commodity < best_k))) {
        best = net;
        best_k = f.commodity;
      }
    }
    if (best > 0 && best_k >= 0) {
      node_pushers.push_back({static_cast<int>(i), best_k, best});
      accumulated += best;
    }
  }

  std::vector<PushBackChain> out;
  for (size_t j = 1; j + 1 < len; j += 2) {
    for (const auto& f : flows) {
      if (static_cast<size_t>(f.position) != j) continue;
      const Commodity& victim = inst.commodities[f.commodity];
      if (victim.deadline >= pushed[j + 1]) continue;
      PushBackChain chain;
      chain.route = route;
      chain.shift = shift;
      chain.j = static_cast<int>(j);
      chain.v = f.commodity;
      chain.slack = victim.deadline - e[j + 1];
      for (const auto& p : node_pushers) {
        if (p.pos > static_cast<int>(j)) break;
        if (p.pos == static_cast<int>(j) && p.commodity == f.commodity) continue;  // own wait
        chain.pushers.push_back({p.pos, p.commodity});
        chain.delay += p.net;
      }
      if (chain.pushers.empty()) continue;  // a lone self-wait is the pairwise detector's case
      chain.delay = pushed[j + 1] - e[j + 1];
      out.push_back(std::move(chain));
    }
  }
  std::sort(out.begin(), out.end(), [&](const PushBackChain& a, const PushBackChain& b) {
    return std::tie(a.j, inst.commodities[a.v].id) < std::tie(b.j, inst.commodities[b.v].id);
  });
  return out;
}

SimulationReport simulate_schedule(const Schedule& schedule, const Instance& inst) {
  SimulationReport report;
  const auto trucks = schedule.trucks.empty() ? disaggregate_round_robin(schedule) : schedule.trucks;
  const auto& net = inst.network;
  for (size_t t = 0; t < trucks.size(); ++t) {
    const auto& truck = trucks[t];
    const auto& nodes = truck.route.nodes;
    Minutes clock = inst.shifts.start(truck.shift);
    for (size_t i = 1; i < nodes.size(); ++i) {
      clock += net.service_time[nodes[i - 1]] + net.travel_time[nodes[i - 1]][nodes[i]];
      const Minutes arrival = clock;
      if (i % 2 == 1) {
        // pickups wait for the latest availability among their commodities
        for (const auto& f : truck.flows)
          if (static_cast<size_t>(f.position) == i)
            clock = std::max(clock, inst.commodities[f.commodity].available);
      } else {
        for (const auto& f : truck.flows) {
          if (static_cast<size_t>(f.position) + 1 != i) continue;
          const Commodity& k = inst.commodities[f.commodity];
          if (arrival > k.deadline)
            report.violations.push_back(
                {f.commodity, truck.shift, static_cast<int>(t), arrival, k.deadline, "deadline"});
        }
      }
    }
    report.truck_completion.push_back(clock);
    if (clock > inst.shifts.end(truck.shift))
      report.violations.push_back({-1, truck.shift, static_cast<int>(t), clock, inst.shifts.end(truck.shift),
                                   "shift-overrun"});
  }
  return report;
}

std::string serialize_route_set(const std::vector<Route>& routes) {
  auto sorted = routes;
  std::sort(sorted.begin(), sorted.end());
  std::ostringstream out;
  for (const auto& r : sorted) {
    for (size_t i = 0; i < r.nodes.size(); ++i) out << (i ? "," : "") << r.nodes[i];
    out << "," << r.distance << "\n";
  }
  return out.str();
}

std::vector<Route> parse_route_set(std::string_view text, const Instance& inst) {
  std::vector<Route> out;
  std::istringstream stream{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::vector<int64_t> vals;
    std::istringstream ls(line);
    std::string tok;
    while (std::getline(ls, tok, ',')) {
      try {
        vals.push_back(std::stoll(tok));
      } catch (const std::exception&) {
        throw ParseError(line_no, "expected an integer, got '" + tok + "'");
      }
    }
    if (vals.size() < 3) throw ParseError(line_no, "route lines are node,...,node,distance");
    std::vector<int> nodes(vals.begin(), vals.end() - 1);
    Route r = make_route(std::move(nodes), inst);
    if (r.distance != vals.back())
      throw ParseError(line_no, "stored distance " + std::to_string(vals.back()) + " does not match arc sum " +
                                    std::to_string(r.distance));
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace ftl
