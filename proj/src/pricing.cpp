#include "ftl/pricing.hpp"

#include <algorithm>
#include <cmath>

namespace ftl {

const char* to_string(PricingVariant v) {
  switch (v) {
    case PricingVariant::Enumeration: return "enum";
    case PricingVariant::P1Average: return "p1";
    case PricingVariant::P2Weighted: return "p2";
    case PricingVariant::RandomAblation: return "random";
  }
  return "?";
}

std::vector<std::vector<int>> service_candidates(const Route& route, const Instance& inst) {
  std::vector<std::vector<int>> cands(route.nodes.size());
  for (int s = 0; s < inst.shifts.shift_count; ++s) {
    if (!is_distance_feasible(route, s, inst)) continue;
    const RouteTiming timing = compute_time_windows(route, s, inst);
    for (size_t i = 1; i + 1 < route.nodes.size(); i += 2)
      for (size_t k = 0; k < inst.commodities.size(); ++k)
        if (service_feasible(route, timing, static_cast<int>(i), inst.commodities[k], inst)) {
          auto& v = cands[i];
          if (std::find(v.begin(), v.end(), static_cast<int>(k)) == v.end()) v.push_back(static_cast<int>(k));
        }
  }
  for (auto& v : cands) std::sort(v.begin(), v.end());
  return cands;
}

namespace {

void validate_assignment(const Route& route, const AssignmentW& w, int shift, const Instance& inst) {
  const RouteTiming timing = compute_time_windows(route, shift, inst);
  int prev_pos = 0;
  for (const auto& [pos, k] : w) {
    if (pos <= prev_pos) throw std::invalid_argument("assignment positions must be distinct and ascending");
    prev_pos = pos;
    if (k < 0 || k >= static_cast<int>(inst.commodities.size()))
      throw std::invalid_argument("assignment references an unknown commodity");
    if (!service_feasible(route, timing, pos, inst.commodities[k], inst))
      throw std::invalid_argument("assignment places commodity " + inst.commodities[k].id +
                                  " at an infeasible position");
  }
}

double shift_terms(const Route& route, const DualValues& duals, int shift, const Instance& inst) {
  // alpha - sum(beta) - sum(delta * gamma) for one shift
  double value = shift < static_cast<int>(duals.alpha.size()) ? duals.alpha[shift] : 0.0;
  for (size_t i = 1; i + 1 < route.nodes.size(); i += 2)
    value -= duals.beta_at(route.nodes, static_cast<int>(i), shift);
  if (!duals.gamma.empty() && is_distance_feasible(route, shift, inst)) {
    const RouteTiming timing = compute_time_windows(route, shift, inst);
    for (size_t i = 1; i + 1 < route.nodes.size(); i += 2)
      for (size_t k = 0; k < inst.commodities.size(); ++k)
        if (service_feasible(route, timing, static_cast<int>(i), inst.commodities[k], inst))
          value -= duals.gamma_at(route.nodes, static_cast<int>(i), static_cast<int>(k), shift);
  }
  return value;
}

}  // namespace

double reduced_cost_exact(const Route& route, const AssignmentW& w, const DualValues& duals, int shift,
                          const Instance& inst) {
  validate_assignment(route, w, shift, inst);
  return static_cast<double>(route.distance) + shift_terms(route, duals, shift, inst);
}

double reduced_cost_shift_avg(const Route& route, const DualValues& duals, const Instance& inst) {
  const int S = inst.shifts.shift_count;
  double acc = 0.0;
  for (int s = 0; s < S; ++s) acc += shift_terms(route, duals, s, inst);
  return static_cast<double>(route.distance) + acc / static_cast<double>(S);
}

double reduced_cost_avg(const Route& route, const DualValues& duals, const Instance& inst) {
  const auto cands = service_candidates(route, inst);
  double collected = 0.0;
  for (const auto& v : cands) {
    if (v.empty()) continue;
    double sum = 0.0;
    for (int k : v) sum += duals.pi[k];
    collected += sum / static_cast<double>(v.size());
  }
  return static_cast<double>(route.distance) - collected;
}

double reduced_cost_weighted(const Route& route, const DualValues& duals, const Instance& inst) {
  const auto cands = service_candidates(route, inst);
  double collected = 0.0;
  for (const auto& v : cands) {
    if (v.empty()) continue;
    // single division keeps the weights an exact share of the position total
    double total_quantity = 0.0;
    double weighted = 0.0;
    for (int k : v) {
      total_quantity += static_cast<double>(inst.commodities[k].quantity);
      weighted += duals.pi[k] * static_cast<double>(inst.commodities[k].quantity);
    }
    collected += weighted / total_quantity;
  }
  return static_cast<double>(route.distance) - collected;
}

double estimate_reduced_cost(PricingVariant variant, const Route& route, const DualValues& duals,
                             const Instance& inst) {
  switch (variant) {
    case PricingVariant::P1Average: return reduced_cost_avg(route, duals, inst);
    case PricingVariant::P2Weighted: return reduced_cost_weighted(route, duals, inst);
    default: throw std::invalid_argument("estimate_reduced_cost needs the P1 or P2 variant");
  }
}

double assignment_reduced_cost(const Route& route, const AssignmentW& w, const DualValues& duals, int shift,
                               const Instance& inst) {
  double value = reduced_cost_exact(route, w, duals, shift, inst);
  for (const auto& [pos, k] : w)
    value += -duals.pi[k] + duals.beta_at(route.nodes, pos, shift) +
             duals.gamma_at(route.nodes, pos, k, shift);
  return value;
}

std::vector<PricedColumn> price_by_enumeration(const std::vector<Route>& routes, const DualValues& duals,
                                               const Instance& inst, int max_columns) {
  std::vector<PricedColumn> out;
  for (const auto& route : routes) {
    if (static_cast<int>(out.size()) >= max_columns) break;
    PricedColumn best;
    bool found = false;
    for (int s = 0; s < inst.shifts.shift_count; ++s) {
      if (!is_distance_feasible(route, s, inst)) continue;
      const RouteTiming timing = compute_time_windows(route, s, inst);
      const double base = static_cast<double>(route.distance) + shift_terms(route, duals, s, inst);
      // the bundle value is separable: each position contributes the best of
      // its candidates independently
      AssignmentW positive, fallback;
      double positive_gain = 0.0, best_single = -kInf;
      std::pair<int, int> best_single_slot{-1, -1};
      for (size_t i = 1; i + 1 < route.nodes.size(); i += 2) {
        double best_gain = -kInf;
        int best_k = -1;
        for (size_t k = 0; k < inst.commodities.size(); ++k) {
          if (!service_feasible(route, timing, static_cast<int>(i), inst.commodities[k], inst)) continue;
          const double gain = duals.pi[k] - duals.beta_at(route.nodes, static_cast<int>(i), s) -
                              duals.gamma_at(route.nodes, static_cast<int>(i), static_cast<int>(k), s);
          if (gain > best_gain + 1e-12) {
            best_gain = gain;
            best_k = static_cast<int>(k);
          }
        }
        if (best_k < 0) continue;
        if (best_gain > 0) {
          positive.push_back({static_cast<int>(i), best_k});
          positive_gain += best_gain;
        }
        if (best_gain > best_single) {
          best_single = best_gain;
          best_single_slot = {static_cast<int>(i), best_k};
        }
      }
      AssignmentW w;
      double value;
      if (!positive.empty()) {
        w = positive;
        value = base - positive_gain;
      } else if (best_single_slot.first >= 0) {
        w = {best_single_slot};
        value = base - best_single;
      } else {
        continue;  // the route cannot carry anything in this shift
      }
      if (value < -1e-7 && (!found || value < best.value)) {
        best = {route, w, s, value};
        found = true;
      }
    }
    if (found) out.push_back(std::move(best));
  }
  return out;
}

std::vector<Route> price_random_ablation(const std::vector<Route>& routes, DetRng& rng, int max_columns) {
  std::vector<size_t> idx(routes.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  const size_t take = std::min<size_t>(routes.size(), static_cast<size_t>(std::max(0, max_columns)));
  for (size_t i = 0; i < take; ++i) {
    const size_t j = static_cast<size_t>(rng.uniform_int(static_cast<int64_t>(i), static_cast<int64_t>(idx.size()) - 1));
    std::swap(idx[i], idx[j]);
  }
  std::vector<Route> out;
  out.reserve(take);
  for (size_t i = 0; i < take; ++i) out.push_back(routes[idx[i]]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ftl
