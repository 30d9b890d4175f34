#include <chrono>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "ftl/bench.hpp"
#include "ftl/driver.hpp"
#include "ftl/instance.hpp"
#include "ftl/routing.hpp"
#include "json.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitIncomplete = 3;

ftl::PricingVariant parse_pricing(const std::string& s) {
  if (s == "p1") return ftl::PricingVariant::P1Average;
  if (s == "p2") return ftl::PricingVariant::P2Weighted;
  if (s == "enum") return ftl::PricingVariant::Enumeration;
  if (s == "random") return ftl::PricingVariant::RandomAblation;
  throw CLI::ValidationError("--pricing", "expected p1|p2|enum|random");
}

ftl::GeneratorKind parse_generator(const std::string& s) {
  if (s == "enumerated") return ftl::GeneratorKind::Enumerated;
  if (s == "vns") return ftl::GeneratorKind::Vns;
  if (s == "ga") return ftl::GeneratorKind::Ga;
  if (s == "random") return ftl::GeneratorKind::RandomAblation;
  throw CLI::ValidationError("--generator", "expected enumerated|vns|ga|random");
}

ftl::InitKind parse_init(const std::string& s) {
  if (s == "simple") return ftl::InitKind::Simple;
  if (s == "insertion") return ftl::InitKind::Insertion;
  throw CLI::ValidationError("--init", "expected simple|insertion");
}

std::string stats_csv(const ftl::RunStats& stats) {
  std::ostringstream out;
  out << "iteration,relaxed_objective,columns_added,min_estimated_reduced_cost,wall_ms\n";
  for (size_t i = 0; i < stats.iterations.size(); ++i) {
    const auto& it = stats.iterations[i];
    out << (i + 1) << "," << it.relaxed_objective << "," << it.columns_added << ","
        << it.min_estimated_reduced_cost << "," << it.wall_ms << "\n";
  }
  out << "totals,objective=" << stats.objective << ",columns=" << stats.columns_generated
      << ",cuts=" << stats.cuts_added << ",solve_s=" << stats.solve_seconds
      << ",total_s=" << stats.total_seconds << ",stop=" << stats.stop_reason << "\n";
  return out.str();
}

int cmd_generate(const ftl::GeneratorConfig& cfg, const std::string& out_path) {
  const ftl::Instance inst = ftl::generate_instance(cfg);
  const std::string text = ftl::serialize_instance(inst);
  if (out_path.empty())
    std::cout << text;
  else
    ftl::write_text_file(out_path, text);
  return kExitOk;
}

int cmd_solve(const std::string& instance_path, ftl::ColGenConfig cfg, const std::string& out_path,
              const std::string& stats_path) {
  const auto t0 = std::chrono::steady_clock::now();
  const ftl::Instance inst = ftl::parse_instance(ftl::read_text_file(instance_path));
  ftl::SolveResult result = ftl::solve(inst, cfg);
  result.stats.total_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::cout << "outcome: " << to_string(result.outcome) << "\n";
  std::cout << "objective_km: " << result.stats.objective << "\n";
  std::cout << "columns: " << result.stats.columns_generated << "\n";
  std::cout << "cut_rounds: " << result.stats.cut_rounds << " cuts: " << result.stats.cuts_added << "\n";
  std::cout << "time_s: " << result.stats.total_seconds << " (solve " << result.stats.solve_seconds << ")\n";
  std::cout << "stop: " << result.stats.stop_reason << "\n";
  if (!result.diagnostics.empty()) std::cout << result.diagnostics;
  for (const auto& v : result.simulation.violations)
    std::cout << "violation: commodity " << (v.commodity >= 0 ? inst.commodities[v.commodity].id : "-")
              << " shift " << v.shift << " " << v.kind << " at " << v.delivery << " limit " << v.deadline
              << "\n";

  if (!out_path.empty()) ftl::write_text_file(out_path, ftl::serialize_schedule(result.schedule, inst));
  if (!stats_path.empty()) ftl::write_text_file(stats_path, stats_csv(result.stats));

  switch (result.outcome) {
    case ftl::SolveOutcome::Success: return kExitOk;
    case ftl::SolveOutcome::Infeasible: return kExitInfeasible;
    case ftl::SolveOutcome::Incomplete: return kExitIncomplete;
  }
  return kExitError;
}

int cmd_enumerate(const std::string& instance_path, const ftl::EnumerationOptions& opts,
                  const std::string& out_path) {
  const ftl::Instance inst = ftl::parse_instance(ftl::read_text_file(instance_path));
  const auto routes = ftl::enumerate_routes(inst, opts);
  const std::string text = ftl::serialize_route_set(routes);
  if (out_path.empty())
    std::cout << text;
  else
    ftl::write_text_file(out_path, text);
  std::cerr << routes.size() << " routes\n";
  return kExitOk;
}

int cmd_check(const std::string& instance_path, const std::string& schedule_path) {
  const ftl::Instance inst = ftl::parse_instance(ftl::read_text_file(instance_path));
  const ftl::Schedule schedule = ftl::parse_schedule(ftl::read_text_file(schedule_path), inst);
  const auto structural = ftl::validate_schedule(schedule, inst, false);
  for (const auto& v : structural) std::cout << "structural: " << v.code << " " << v.detail << "\n";
  const auto report = ftl::simulate_schedule(schedule, inst);
  for (const auto& v : report.violations)
    std::cout << "violation: commodity " << (v.commodity >= 0 ? inst.commodities[v.commodity].id : "-")
              << " shift " << v.shift << " truck " << v.truck << " " << v.kind << " at " << v.delivery
              << " limit " << v.deadline << "\n";
  if (report.clean() && structural.empty()) {
    std::cout << "clean\n";
    return kExitOk;
  }
  return kExitInfeasible;
}

int cmd_bench(const std::string& config_path, const std::string& csv_path) {
  const json doc = json::parse(ftl::read_text_file(config_path));
  std::vector<std::pair<std::string, ftl::Instance>> instances;
  for (const auto& p : doc.at("instances")) {
    const std::string path = p.get<std::string>();
    instances.push_back({path, ftl::parse_instance(ftl::read_text_file(path))});
  }
  std::vector<ftl::BenchRun> runs;
  for (const auto& r : doc.at("runs")) {
    ftl::BenchRun run;
    run.name = r.at("name").get<std::string>();
    if (r.contains("pricing")) run.cfg.pricing = parse_pricing(r["pricing"].get<std::string>());
    if (r.contains("generator")) run.cfg.generator = parse_generator(r["generator"].get<std::string>());
    if (r.contains("init")) run.cfg.init = parse_init(r["init"].get<std::string>());
    if (r.contains("max_columns")) run.cfg.max_columns = r["max_columns"].get<int>();
    if (r.contains("max_iterations")) run.cfg.max_iterations = r["max_iterations"].get<int>();
    if (r.contains("max_legs")) run.cfg.enumeration.max_legs = r["max_legs"].get<int>();
    if (r.contains("ga_population")) run.cfg.ga.population_size = r["ga_population"].get<int>();
    if (r.contains("ga_generations")) run.cfg.ga.generations = r["ga_generations"].get<int>();
    if (r.contains("seeds")) run.seeds = r["seeds"].get<std::vector<uint64_t>>();
    runs.push_back(std::move(run));
  }
  const ftl::BenchReport report = ftl::run_bench(instances, runs);
  std::cout << report.table();
  if (!csv_path.empty()) ftl::write_text_file(csv_path, report.csv());
  bool any_failed = false;
  for (const auto& c : report.cells) any_failed |= !c.ok;
  return any_failed ? kExitError : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-shift full-truckload routing solver"};
  app.require_subcommand(1);

  // generate
  auto* generate = app.add_subcommand("generate", "write a random instance file");
  ftl::GeneratorConfig gen_cfg;
  std::string gen_out;
  uint64_t gen_seed = 1;
  generate->add_option("--nodes", gen_cfg.node_count, "terminal count including the depot");
  generate->add_option("--shifts", gen_cfg.shift_count, "shifts in the planning horizon");
  generate->add_option("--shift-duration", gen_cfg.shift_duration, "shift length in minutes");
  generate->add_option("--commodities-min", gen_cfg.commodity_count.first, "");
  generate->add_option("--commodities-max", gen_cfg.commodity_count.second, "");
  generate->add_option("--units-min", gen_cfg.unit_total.first, "");
  generate->add_option("--units-max", gen_cfg.unit_total.second, "");
  generate->add_option("--available-at-start", gen_cfg.fraction_available_at_start,
                       "fraction of commodities available immediately");
  generate->add_option("--emergency", gen_cfg.emergency_fraction, "fraction with a window under 10h");
  generate->add_option("--distance-min", gen_cfg.distance_range.first, "km");
  generate->add_option("--distance-max", gen_cfg.distance_range.second, "km");
  generate->add_option("--speed", gen_cfg.speed_km_per_min, "km per minute");
  generate->add_option("--service-time", gen_cfg.service_time, "minutes per terminal");
  generate->add_option("--fleet", gen_cfg.fleet_size, "trucks per shift (0 = derive)");
  generate->add_option("--seed", gen_seed, "generator seed");
  generate->add_option("--out", gen_out, "output file (default stdout)");

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "run the column-generation solver");
  std::string solve_instance, solve_out, solve_stats;
  std::string pricing = "p2", generator = "vns", init = "insertion";
  ftl::ColGenConfig solve_cfg;
  solve_cmd->add_option("instance", solve_instance, "instance file")->required();
  solve_cmd->add_option("--pricing", pricing, "p1|p2|enum|random");
  solve_cmd->add_option("--generator", generator, "enumerated|vns|ga|random");
  solve_cmd->add_option("--init", init, "simple|insertion");
  solve_cmd->add_option("--max-columns", solve_cfg.max_columns, "columns admitted per iteration");
  solve_cmd->add_option("--max-iterations", solve_cfg.max_iterations, "column generation iterations");
  solve_cmd->add_option("--seed", solve_cfg.seed, "seed for stochastic generators");
  solve_cmd->add_option("--cut-rounds", solve_cfg.cut_round_limit, "cut-repair round limit");
  solve_cmd->add_option("--time-limit", solve_cfg.time_limit_s, "overall wall-clock budget in seconds");
  solve_cmd->add_option("--mip-time-limit", solve_cfg.mip.time_limit_s, "per integral solve, seconds");
  solve_cmd->add_option("--max-legs", solve_cfg.enumeration.max_legs, "service arcs per enumerated route");
  solve_cmd->add_option("--enum-budget", solve_cfg.enumeration.budget, "enumeration work budget");
  solve_cmd->add_option("--ga-population", solve_cfg.ga.population_size, "");
  solve_cmd->add_option("--ga-generations", solve_cfg.ga.generations, "");
  solve_cmd->add_option("--ga-mutation", solve_cfg.ga.mutation_rate, "");
  solve_cmd->add_option("--ga-tournament", solve_cfg.ga.tournament_rate, "");
  solve_cmd->add_flag("--keep-fleet-during-colgen",
                      [&solve_cfg](int64_t) { solve_cfg.fleet_relaxed_during_colgen = false; },
                      "enforce the fleet rows while generating columns");
  solve_cmd->add_flag("--reprice-after-cuts",
                      [&solve_cfg](int64_t) { solve_cfg.reprice_after_cuts = true; },
                      "one extra pricing round after the cut loop");
  solve_cmd->add_option("--out", solve_out, "schedule file");
  solve_cmd->add_option("--stats", solve_stats, "per-iteration stats CSV");

  // enumerate
  auto* enum_cmd = app.add_subcommand("enumerate", "write the distance-feasible route set");
  std::string enum_instance, enum_out;
  ftl::EnumerationOptions enum_opts;
  enum_cmd->add_option("instance", enum_instance, "instance file")->required();
  enum_cmd->add_option("--max-legs", enum_opts.max_legs, "service arcs per route");
  enum_cmd->add_option("--budget", enum_opts.budget, "candidate extensions explored");
  enum_cmd->add_option("--out", enum_out, "route cache file (default stdout)");

  // check
  auto* check_cmd = app.add_subcommand("check", "replay a schedule against an instance");
  std::string check_instance, check_schedule;
  check_cmd->add_option("instance", check_instance, "instance file")->required();
  check_cmd->add_option("schedule", check_schedule, "schedule file")->required();

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "run a config matrix over instances");
  std::string bench_config, bench_csv;
  bench_cmd->add_option("config", bench_config, "JSON config matrix")->required();
  bench_cmd->add_option("--csv", bench_csv, "CSV report path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) {
      gen_cfg.seed = gen_seed;
      return cmd_generate(gen_cfg, gen_out);
    }
    if (solve_cmd->parsed()) {
      solve_cfg.pricing = parse_pricing(pricing);
      solve_cfg.generator = parse_generator(generator);
      solve_cfg.init = parse_init(init);
      if (solve_cfg.pricing == ftl::PricingVariant::RandomAblation)
        solve_cfg.generator = ftl::GeneratorKind::RandomAblation;
      const bool heuristic_gen =
          solve_cfg.generator == ftl::GeneratorKind::Vns || solve_cfg.generator == ftl::GeneratorKind::Ga;
      if (heuristic_gen && (solve_cfg.pricing == ftl::PricingVariant::Enumeration ||
                            solve_cfg.pricing == ftl::PricingVariant::RandomAblation)) {
        std::cerr << "vns/ga generators need the p1 or p2 pricing estimate\n";
        return kExitError;
      }
      return cmd_solve(solve_instance, solve_cfg, solve_out, solve_stats);
    }
    if (enum_cmd->parsed()) return cmd_enumerate(enum_instance, enum_opts, enum_out);
    if (check_cmd->parsed()) return cmd_check(check_instance, check_schedule);
    if (bench_cmd->parsed()) return cmd_bench(bench_config, bench_csv);
  } catch (const ftl::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
