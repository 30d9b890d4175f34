#include "ftl/bench.hpp"

#include <chrono>
#include <iomanip>
#include <map>
#include <sstream>

namespace ftl {

BenchReport run_bench(const std::vector<std::pair<std::string, Instance>>& instances,
                      const std::vector<BenchRun>& runs) {
  BenchReport report;
  for (const auto& [name, inst] : instances) {
    for (const auto& run : runs) {
      for (const uint64_t seed : run.seeds) {
        BenchCell cell;
        cell.instance = name;
        cell.run = run.name;
        cell.seed = seed;
        const auto t0 = std::chrono::steady_clock::now();
        try {
          ColGenConfig cfg = run.cfg;
          cfg.seed = seed;
          const SolveResult sr = solve(inst, cfg);
          cell.ok = true;
          cell.outcome = to_string(sr.outcome);
          cell.objective = sr.stats.objective;
          cell.solve_seconds = sr.stats.solve_seconds;
          cell.columns = sr.stats.columns_generated;
          cell.cut_rounds = sr.stats.cut_rounds;
          cell.cuts = sr.stats.cuts_added;
          cell.simulation_clean = sr.stats.simulation_clean;
          cell.monotonic = sr.stats.monotonic_ok;
          cell.pool_audits = sr.stats.pool_audits_ok;
        } catch (const std::exception& e) {
          cell.ok = false;
          cell.outcome = std::string("error: ") + e.what();
        }
        cell.total_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        report.cells.push_back(std::move(cell));
      }
    }
  }
  return report;
}

std::string BenchReport::csv() const {
  std::ostringstream out;
  out << "instance,run,seed,outcome,objective_km,time_total_s,time_solve_s,columns,cut_rounds,cuts,"
         "sim_clean,monotonic,pool_audits\n";
  for (const auto& c : cells) {
    std::string outcome = c.outcome;
    for (auto& ch : outcome)
      if (ch == ',') ch = ';';
    out << c.instance << "," << c.run << "," << c.seed << "," << outcome << "," << c.objective << ","
        << std::fixed << std::setprecision(3) << c.total_seconds << "," << c.solve_seconds << ","
        << c.columns << "," << c.cut_rounds << "," << c.cuts << "," << (c.simulation_clean ? 1 : 0) << ","
        << (c.monotonic ? 1 : 0) << "," << (c.pool_audits ? 1 : 0) << "\n";
  }
  // mean rows per (instance, run) over successful seeds
  std::map<std::pair<std::string, std::string>, std::vector<const BenchCell*>> groups;
  for (const auto& c : cells) groups[{c.instance, c.run}].push_back(&c);
  for (const auto& [key, group] : groups) {
    if (group.size() < 2) continue;
    double obj = 0, t = 0, ts = 0;
    int64_t cols = 0;
    int n = 0;
    for (const auto* c : group) {
      if (!c->ok) continue;
      obj += static_cast<double>(c->objective);
      t += c->total_seconds;
      ts += c->solve_seconds;
      cols += c->columns;
      ++n;
    }
    if (n == 0) continue;
    out << key.first << "," << key.second << ",mean,,"
        << std::fixed << std::setprecision(1) << obj / n << "," << std::setprecision(3) << t / n << ","
        << ts / n << "," << cols / n << ",,,,,\n";
  }
  return out.str();
}

std::string BenchReport::table() const {
  std::ostringstream out;
  out << std::left << std::setw(18) << "instance" << std::setw(14) << "run" << std::right << std::setw(6)
      << "seed" << std::setw(12) << "outcome" << std::setw(10) << "obj(km)" << std::setw(9) << "T(s)"
      << std::setw(8) << "cols" << std::setw(6) << "cuts" << "\n";
  for (const auto& c : cells) {
    out << std::left << std::setw(18) << c.instance << std::setw(14) << c.run << std::right << std::setw(6)
        << c.seed << std::setw(12) << (c.outcome.size() > 11 ? c.outcome.substr(0, 11) : c.outcome)
        << std::setw(10) << c.objective << std::setw(9) << std::fixed << std::setprecision(2)
        << c.total_seconds << std::setw(8) << c.columns << std::setw(6) << c.cuts << "\n";
  }
  return out.str();
}

}  // namespace ftl
