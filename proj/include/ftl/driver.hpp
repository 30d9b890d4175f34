#pragma once

#include <string>
#include <vector>

#include "ftl/heuristics.hpp"
#include "ftl/instance.hpp"
#include "ftl/lp.hpp"
#include "ftl/master.hpp"
#include "ftl/pricing.hpp"
#include "ftl/routing.hpp"
#include "ftl/schedule.hpp"

namespace ftl {

enum class GeneratorKind { Enumerated, Vns, Ga, RandomAblation };
enum class InitKind { Simple, Insertion };

const char* to_string(GeneratorKind g);
const char* to_string(InitKind i);

struct ColGenConfig {
  PricingVariant pricing = PricingVariant::P2Weighted;
  GeneratorKind generator = GeneratorKind::Vns;
  InitKind init = InitKind::Insertion;
  int max_columns = 1000;
  int max_iterations = 30;
  bool fleet_relaxed_during_colgen = true;
  uint64_t seed = 1;
  int cut_round_limit = 20;
  double time_limit_s = 0;  // overall wall-clock budget, 0 = none
  bool reprice_after_cuts = false;
  EnumerationOptions enumeration;
  GaParams ga;
  MipConfig mip;
};

struct IterationStats {
  double relaxed_objective = 0;
  int columns_added = 0;
  double min_estimated_reduced_cost = 0;
  double wall_ms = 0;
};

struct RunStats {
  std::vector<IterationStats> iterations;
  int64_t columns_generated = 0;
  Km pre_cut_objective = 0;
  Km objective = 0;
  int cut_rounds = 0;
  int cuts_added = 0;
  double solve_seconds = 0;  // excludes instance parsing
  double total_seconds = 0;  // filled by callers that also parse
  std::string stop_reason;
  bool mip_truncated = false;  // some integral solve hit its node or time limit
  bool monotonic_ok = true;    // relaxed objective never increased
  bool pool_audits_ok = true;  // generator pools honoured their contract
  bool simulation_clean = false;
};

enum class SolveOutcome { Success, Infeasible, Incomplete };

const char* to_string(SolveOutcome o);

struct SolveResult {
  SolveOutcome outcome = SolveOutcome::Incomplete;
  Schedule schedule;
  RunStats stats;
  SimulationReport simulation;
  std::string diagnostics;
};

// Full pipeline: initial columns, iterated relaxed master + pricing, final
// integral solve with the fleet restored, then the cut-repair loop until the
// push-back simulator is clean.
SolveResult solve(const Instance& inst, const ColGenConfig& cfg);

}  // namespace ftl
