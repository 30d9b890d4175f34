#pragma once

#include <string>
#include <vector>

#include "ftl/driver.hpp"
#include "ftl/instance.hpp"

namespace ftl {

struct BenchRun {
  std::string name;
  ColGenConfig cfg;
  std::vector<uint64_t> seeds{1};  // one solve per seed; means reported per (instance, run)
};

struct BenchCell {
  std::string instance;
  std::string run;
  uint64_t seed = 0;
  bool ok = false;             // solve executed without throwing
  std::string outcome;         // success / infeasible / incomplete / error text
  Km objective = 0;
  double total_seconds = 0;    // includes building the run
  double solve_seconds = 0;    // solver portion only
  int64_t columns = 0;
  int cut_rounds = 0;
  int cuts = 0;
  bool simulation_clean = false;
  bool monotonic = true;
  bool pool_audits = true;
};

struct BenchReport {
  std::vector<BenchCell> cells;

  std::string csv() const;    // one row per cell plus mean rows
  std::string table() const;  // human-readable summary
};

// Runs every (instance, run, seed) cell; failures are recorded per cell and
// the sweep continues.
BenchReport run_bench(const std::vector<std::pair<std::string, Instance>>& instances,
                      const std::vector<BenchRun>& runs);

}  // namespace ftl
