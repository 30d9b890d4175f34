#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace ftl {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class RowSense { LessEqual, Equal, GreaterEqual };

enum class SolveStatus { Optimal, Infeasible, Unbounded, IterationLimit };

const char* to_string(SolveStatus s);

// Minimisation model over bounded variables. Row duals follow the convention
// reduced_cost(j) = obj(j) - dual . column(j), so duals of <= rows are
// non-positive, >= rows non-negative, = rows free.
struct LinearModel {
  struct Row {
    std::string name;
    RowSense sense = RowSense::LessEqual;
    double rhs = 0;
    std::vector<std::pair<int, double>> terms;  // (variable, coefficient)
  };

  std::vector<std::string> var_names;
  std::vector<double> objective;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<bool> is_integer;
  std::vector<Row> rows;

  int add_variable(std::string name, double lb, double ub, double obj, bool integer);
  int add_row(std::string name, RowSense sense, double rhs, std::vector<std::pair<int, double>> terms);
  int num_vars() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }
};

struct SimplexBasis {
  std::vector<int> basic;       // one column index per row
  std::vector<uint8_t> status;  // per column (structural then auxiliary)
  bool valid() const { return !basic.empty(); }
};

struct LPConfig {
  int64_t iteration_limit = 0;  // 0 = derived from the model size
  const SimplexBasis* warm_start = nullptr;
  const std::vector<double>* lower_override = nullptr;  // per-variable bound replacements
  const std::vector<double>* upper_override = nullptr;
};

struct LPSolution {
  SolveStatus status = SolveStatus::IterationLimit;
  double objective = 0;
  std::vector<double> primal;
  std::vector<double> dual;          // per row
  std::vector<double> reduced_cost;  // per variable
  int64_t iterations = 0;
  SimplexBasis basis;

  // branch-and-bound extras
  double best_bound = -kInf;
  int64_t nodes = 0;
};

// Bounded-variable primal simplex with a composite phase one; Bland's rule is
// engaged after a streak of degenerate pivots. Integrality flags are ignored.
// Each call owns its working arrays; distinct solves may run concurrently.
LPSolution solve_lp(const LinearModel& model, const LPConfig& config = {});

struct MipConfig {
  double gap_tolerance = 1e-9;
  int64_t node_limit = 1'000'000;
  double time_limit_s = 0;  // 0 = none
  // known feasible point used as the starting incumbent; ignored unless it
  // satisfies every bound and row
  const std::vector<double>* initial_primal = nullptr;
};

// Best-first branch and bound with depth-first plunging; branches on the most
// fractional integer variable, ties by lowest variable id. Deterministic.
LPSolution solve_mip(const LinearModel& model, const MipConfig& config = {});

// Plain-text model dump (vars / rows / rhs sections) for external debugging.
std::string dump_model(const LinearModel& model);

}  // namespace ftl
