#include "ftl/schedule.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "ftl/routing.hpp"

namespace ftl {

std::vector<TruckItinerary> disaggregate_round_robin(const Schedule& schedule) {
  std::vector<TruckItinerary> out;
  for (const auto& use : schedule.uses) {
    std::vector<TruckItinerary> group(static_cast<size_t>(use.count));
    for (auto& t : group) {
      t.route = use.route;
      t.shift = use.shift;
    }
    // deal the units of each position out one per truck, cycling
    auto flows = use.flows;
    std::sort(flows.begin(), flows.end(), [](const FlowEntry& a, const FlowEntry& b) {
      return std::tie(a.position, a.commodity) < std::tie(b.position, b.commodity);
    });
    std::map<int, size_t> cursor;  // per position
    for (const auto& f : flows) {
      for (int64_t u = 0; u < f.units; ++u) {
        size_t& c = cursor[f.position];
        if (!group.empty()) {
          group[c % group.size()].flows.push_back({f.position, f.commodity, 1});
          ++c;
        }
      }
    }
    for (auto& t : group) out.push_back(std::move(t));
  }
  return out;
}

std::vector<Violation> validate_schedule(const Schedule& schedule, const Instance& inst, bool check_fleet) {
  std::vector<Violation> out;
  std::vector<int64_t> served(inst.commodities.size(), 0);
  std::vector<int64_t> trucks_per_shift(inst.shifts.shift_count, 0);
  for (const auto& use : schedule.uses) {
    if (use.count < 1) out.push_back({"schedule.count", "route use with non-positive count"});
    if (use.shift < 0 || use.shift >= inst.shifts.shift_count)
      out.push_back({"schedule.shift", "route use references an unknown shift"});
    for (const auto& v : validate_route(use.route, inst)) out.push_back(v);
    if (use.shift >= 0 && use.shift < inst.shifts.shift_count) trucks_per_shift[use.shift] += use.count;

    const RouteTiming timing = compute_time_windows(use.route, std::max(0, use.shift), inst);
    std::map<int, int64_t> units_at_position;
    for (const auto& f : use.flows) {
      if (f.units < 0) out.push_back({"schedule.flow-units", "negative flow"});
      if (f.commodity < 0 || f.commodity >= static_cast<int>(inst.commodities.size())) {
        out.push_back({"schedule.flow-commodity", "flow references an unknown commodity"});
        continue;
      }
      if (f.position < 1 || static_cast<size_t>(f.position) + 1 >= use.route.nodes.size() || f.position % 2 != 1) {
        out.push_back({"schedule.flow-position", "flow at a non-loading position"});
        continue;
      }
      if (!service_feasible(use.route, timing, f.position, inst.commodities[f.commodity], inst))
        out.push_back({"schedule.flow-infeasible",
                       "commodity " + inst.commodities[f.commodity].id + " cannot be loaded at position " +
                           std::to_string(f.position)});
      served[f.commodity] += f.units;
      units_at_position[f.position] += f.units;
    }
    for (const auto& [pos, units] : units_at_position)
      if (units > use.count)
        out.push_back({"schedule.capacity", "position " + std::to_string(pos) + " carries " + std::to_string(units) +
                                                " units on " + std::to_string(use.count) + " trucks"});
  }
  for (size_t k = 0; k < served.size(); ++k)
    if (served[k] != inst.commodities[k].quantity)
      out.push_back({"schedule.demand", "commodity " + inst.commodities[k].id + " serves " +
                                            std::to_string(served[k]) + " of " +
                                            std::to_string(inst.commodities[k].quantity) + " units"});
  if (check_fleet)
    for (int s = 0; s < inst.shifts.shift_count; ++s)
      if (trucks_per_shift[s] > inst.fleet_size)
        out.push_back({"schedule.fleet", "shift " + std::to_string(s) + " uses " +
                                             std::to_string(trucks_per_shift[s]) + " trucks, fleet is " +
                                             std::to_string(inst.fleet_size)});
  return out;
}

std::string serialize_schedule(const Schedule& schedule, const Instance& inst) {
  std::ostringstream out;
  auto uses = schedule.uses;
  std::sort(uses.begin(), uses.end(), [](const RouteUse& a, const RouteUse& b) {
    return std::tie(a.shift, a.route.nodes) < std::tie(b.shift, b.route.nodes);
  });
  int current_shift = -1;
  for (const auto& use : uses) {
    if (use.shift != current_shift) {
      out << "[shift " << use.shift << "]\n";
      current_shift = use.shift;
    }
    out << "route=";
    for (size_t i = 0; i < use.route.nodes.size(); ++i) out << (i ? "," : "") << use.route.nodes[i];
    out << " count=" << use.count << "\n";
    auto flows = use.flows;
    std::sort(flows.begin(), flows.end(), [](const FlowEntry& a, const FlowEntry& b) {
      return std::tie(a.position, a.commodity) < std::tie(b.position, b.commodity);
    });
    for (const auto& f : flows)
      out << "flow idx=" << f.position << " commodity=" << inst.commodities[f.commodity].id
          << " units=" << f.units << "\n";
  }
  out << "summary objective=" << schedule.objective << " cuts=" << schedule.cuts_applied << "\n";
  return out.str();
}

namespace {

int64_t value_after(const std::string& token, const std::string& key, int line) {
  if (token.rfind(key, 0) != 0) throw ParseError(line, "expected '" + key + "...', got '" + token + "'");
  try {
    return std::stoll(token.substr(key.size()));
  } catch (const std::exception&) {
    throw ParseError(line, "bad integer in '" + token + "'");
  }
}

}  // namespace

Schedule parse_schedule(std::string_view text, const Instance& inst) {
  Schedule schedule;
  std::map<std::string, int> commodity_index;
  for (size_t k = 0; k < inst.commodities.size(); ++k)
    commodity_index[inst.commodities[k].id] = static_cast<int>(k);

  std::istringstream stream{std::string(text)};
  std::string line;
  int line_no = 0;
  int shift = -1;
  RouteUse* current = nullptr;
  while (std::getline(stream, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head == "[shift") {
      std::string rest;
      ls >> rest;
      if (rest.empty() || rest.back() != ']') throw ParseError(line_no, "malformed shift header");
      shift = std::stoi(rest.substr(0, rest.size() - 1));
      current = nullptr;
    } else if (head.rfind("route=", 0) == 0) {
      if (shift < 0) throw ParseError(line_no, "route line before any shift header");
      std::vector<int> nodes;
      std::istringstream ns(head.substr(6));
      std::string tok;
      while (std::getline(ns, tok, ',')) nodes.push_back(std::stoi(tok));
      std::string count_tok;
      ls >> count_tok;
      RouteUse use;
      use.route = make_route(std::move(nodes), inst);
      use.shift = shift;
      use.count = value_after(count_tok, "count=", line_no);
      schedule.uses.push_back(std::move(use));
      current = &schedule.uses.back();
    } else if (head == "flow") {
      if (!current) throw ParseError(line_no, "flow line before any route line");
      std::string idx_tok, commodity_tok, units_tok;
      ls >> idx_tok >> commodity_tok >> units_tok;
      FlowEntry f;
      f.position = static_cast<int>(value_after(idx_tok, "idx=", line_no));
      if (commodity_tok.rfind("commodity=", 0) != 0) throw ParseError(line_no, "missing commodity field");
      const std::string id = commodity_tok.substr(10);
      // commodity may be stored by id or by index
      if (auto it = commodity_index.find(id); it != commodity_index.end()) {
        f.commodity = it->second;
      } else {
        try {
          f.commodity = std::stoi(id);
        } catch (const std::exception&) {
          throw ParseError(line_no, "unknown commodity '" + id + "'");
        }
      }
      f.units = value_after(units_tok, "units=", line_no);
      current->flows.push_back(f);
    } else if (head == "summary") {
      std::string obj_tok, cuts_tok;
      ls >> obj_tok >> cuts_tok;
      schedule.objective = value_after(obj_tok, "objective=", line_no);
      schedule.cuts_applied = static_cast<int>(value_after(cuts_tok, "cuts=", line_no));
    } else {
      throw ParseError(line_no, "unrecognised line '" + line + "'");
    }
  }
  schedule.trucks = disaggregate_round_robin(schedule);
  return schedule;
}

}  // namespace ftl
