#include "ftl/lp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace ftl {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Unbounded: return "unbounded";
    case SolveStatus::IterationLimit: return "iteration-limit";
  }
  return "?";
}

int LinearModel::add_variable(std::string name, double lb, double ub, double obj, bool integer) {
  if (!(lb <= ub + 1e-12)) throw std::invalid_argument("variable " + name + " has lb > ub");
  if (std::isnan(obj) || std::isinf(obj)) throw std::invalid_argument("variable " + name + " has a bad objective");
  var_names.push_back(std::move(name));
  objective.push_back(obj);
  lower.push_back(lb);
  upper.push_back(ub);
  is_integer.push_back(integer);
  return num_vars() - 1;
}

int LinearModel::add_row(std::string name, RowSense sense, double rhs,
                         std::vector<std::pair<int, double>> terms) {
  for (const auto& [v, c] : terms) {
    if (v < 0 || v >= num_vars()) throw std::invalid_argument("row " + name + " references unknown variable");
    if (std::isnan(c) || std::isinf(c)) throw std::invalid_argument("row " + name + " has a bad coefficient");
  }
  rows.push_back({std::move(name), sense, rhs, std::move(terms)});
  return num_rows() - 1;
}

namespace {

enum VStat : uint8_t { kAtLower = 0, kAtUpper = 1, kBasic = 2, kFreeNB = 3 };

constexpr double kFeasLoose = 5e-8;
constexpr double kFeasTol = 1e-9;
constexpr double kPivotTol = 1e-8;
constexpr double kZeroTol = 1e-11;
constexpr int kDegenerateStreakForBland = 64;

struct SparseEntry {
  int row;
  double coef;
};

// Bounded-variable primal simplex over the system A x - w = 0 with the row
// senses folded into the auxiliary bounds. The engine keeps its basis and
// inverse alive between runs so branch-and-bound dives resume where the
// parent solve stopped.
class Simplex {
 public:
  explicit Simplex(const LinearModel& model) : model_(model) {
    n_ = model.num_vars();
    m_ = model.num_rows();
    total_ = n_ + m_;
    cols_.resize(n_);
    for (int r = 0; r < m_; ++r)
      for (const auto& [v, c] : model.rows[r].terms)
        if (c != 0.0) cols_[v].push_back({r, c});
    cost_.assign(total_, 0.0);
    for (int j = 0; j < n_; ++j) cost_[j] = model.objective[j];
    lb_.assign(total_, 0.0);
    ub_.assign(total_, 0.0);
    for (int r = 0; r < m_; ++r) {
      const auto& row = model.rows[r];
      switch (row.sense) {
        case RowSense::LessEqual: lb_[n_ + r] = -kInf; ub_[n_ + r] = row.rhs; break;
        case RowSense::Equal: lb_[n_ + r] = row.rhs; ub_[n_ + r] = row.rhs; break;
        case RowSense::GreaterEqual: lb_[n_ + r] = row.rhs; ub_[n_ + r] = kInf; break;
      }
    }
    set_structural_bounds(nullptr, nullptr);
    cold_start();
  }

  void set_structural_bounds(const std::vector<double>* lb, const std::vector<double>* ub) {
    for (int j = 0; j < n_; ++j) {
      lb_[j] = lb ? (*lb)[j] : model_.lower[j];
      ub_[j] = ub ? (*ub)[j] : model_.upper[j];
    }
    bounds_ok_ = true;
    for (int j = 0; j < total_; ++j)
      if (lb_[j] > ub_[j] + 1e-9) bounds_ok_ = false;
  }

  void cold_start() {
    stat_.assign(total_, kAtLower);
    basis_.resize(m_);
    for (int r = 0; r < m_; ++r) {
      basis_[r] = n_ + r;
      stat_[n_ + r] = kBasic;
    }
    binv_.assign(static_cast<size_t>(m_) * m_, 0.0);
    for (int i = 0; i < m_; ++i) binv_[static_cast<size_t>(i) * m_ + i] = -1.0;
    has_state_ = true;
  }

  bool load_basis(const SimplexBasis& basis) {
    if (static_cast<int>(basis.basic.size()) != m_ || static_cast<int>(basis.status.size()) != total_)
      return false;
    int basics = 0;
    for (int j = 0; j < total_; ++j)
      if (basis.status[j] == kBasic) ++basics;
    if (basics != m_) return false;
    for (int i = 0; i < m_; ++i) {
      const int b = basis.basic[i];
      if (b < 0 || b >= total_ || basis.status[b] != kBasic) return false;
    }
    const auto saved_basis = basis_;
    const auto saved_stat = stat_;
    basis_ = basis.basic;
    stat_.assign(total_, kAtLower);
    for (int j = 0; j < total_; ++j) stat_[j] = static_cast<VStat>(basis.status[j]);
    if (!refactor()) {
      basis_ = saved_basis;
      stat_ = saved_stat;
      if (!refactor()) cold_start();
      return false;
    }
    has_state_ = true;
    return true;
  }

  LPSolution run(int64_t iteration_limit) {
    LPSolution sol;
    if (!bounds_ok_) {
      sol.status = SolveStatus::Infeasible;
      return sol;
    }
    snap_nonbasic_values();
    compute_basic_values();

    const int64_t limit = iteration_limit > 0 ? iteration_limit : 10000 + 20 * static_cast<int64_t>(total_);
    int64_t iterations = 0;
    int degen_streak = 0;
    bool bland = false;
    int cleanups = 0;

    while (true) {
      if (iterations >= limit) {
        sol.status = SolveStatus::IterationLimit;
        break;
      }
      const bool phase1 = total_infeasibility() > kFeasLoose;
      compute_duals(phase1);

      int entering = -1;
      double best_score = 0.0;
      for (int j = 0; j < total_; ++j) {
        if (stat_[j] == kBasic) continue;
        if (ub_[j] - lb_[j] <= kFeasTol && stat_[j] != kFreeNB) continue;  // fixed
        const double d = reduced_cost(j, phase1);
        const double eps = 1e-9 * (1.0 + std::fabs(phase1 ? 0.0 : cost_[j]));
        double score = 0.0;
        if (stat_[j] == kAtLower && d < -eps) score = -d;
        else if (stat_[j] == kAtUpper && d > eps) score = d;
        else if (stat_[j] == kFreeNB && std::fabs(d) > eps) score = std::fabs(d);
        if (score <= 0.0) continue;
        if (bland) {
          entering = j;
          break;
        }
        if (score > best_score + kZeroTol) {
          best_score = score;
          entering = j;
        }
      }

      if (entering < 0) {
        if (phase1) {
          sol.status = SolveStatus::Infeasible;
          break;
        }
        compute_basic_values();
        if (total_infeasibility() > kFeasLoose && cleanups < 3) {
          ++cleanups;
          refactor();
          compute_basic_values();
          continue;
        }
        sol.status = SolveStatus::Optimal;
        break;
      }

      const double d_enter = reduced_cost(entering, phase1);
      const int dir = (stat_[entering] == kAtUpper) ? -1 : (stat_[entering] == kFreeNB && d_enter > 0) ? -1 : 1;

      ftran(entering);

      double best_t = kInf;
      int leave_slot = -1;
      bool leave_at_upper = false;
      double leave_pivot = 0.0;
      for (int i = 0; i < m_; ++i) {
        const double alpha = y_[i];
        if (std::fabs(alpha) <= kPivotTol) continue;
        const int bj = basis_[i];
        const double v = xval_[bj];
        const double rate = -dir * alpha;  // dv/dt
        const bool below = v < lb_[bj] - kFeasLoose;
        const bool above = v > ub_[bj] + kFeasLoose;
        double t = kInf;
        bool hits_upper = false;
        if (phase1 && below) {
          if (rate > 0) { t = (lb_[bj] - v) / rate; hits_upper = false; }
        } else if (phase1 && above) {
          if (rate < 0) { t = (v - ub_[bj]) / (-rate); hits_upper = true; }
        } else if (rate > 0) {
          if (ub_[bj] < kInf) { t = (ub_[bj] - v) / rate; hits_upper = true; }
        } else {
          if (lb_[bj] > -kInf) { t = (v - lb_[bj]) / (-rate); hits_upper = false; }
        }
        if (t >= kInf) continue;
        if (t < 0) t = 0;
        bool better = false;
        if (leave_slot < 0) better = true;
        else if (t < best_t - kZeroTol) better = true;
        else if (t <= best_t + kZeroTol) {
          if (bland) better = basis_[i] < basis_[leave_slot];
          else if (std::fabs(alpha) > std::fabs(leave_pivot) + kZeroTol) better = true;
          else if (std::fabs(std::fabs(alpha) - std::fabs(leave_pivot)) <= kZeroTol)
            better = basis_[i] < basis_[leave_slot];
        }
        if (better) {
          best_t = t;
          leave_slot = i;
          leave_at_upper = hits_upper;
          leave_pivot = alpha;
        }
      }

      const double span = (stat_[entering] == kFreeNB) ? kInf : ub_[entering] - lb_[entering];

      if (leave_slot < 0 && span >= kInf) {
        if (phase1) {
          refactor();
          compute_basic_values();
          if (++cleanups > 3) {
            sol.status = SolveStatus::IterationLimit;
            break;
          }
          continue;
        }
        sol.status = SolveStatus::Unbounded;
        break;
      }

      ++iterations;
      if (span < best_t) {
        // bound flip, basis unchanged
        for (int i = 0; i < m_; ++i)
          if (std::fabs(y_[i]) > kZeroTol) xval_[basis_[i]] -= dir * span * y_[i];
        xval_[entering] = (stat_[entering] == kAtLower) ? ub_[entering] : lb_[entering];
        stat_[entering] = (stat_[entering] == kAtLower) ? kAtUpper : kAtLower;
        if (span <= 1e-10) ++degen_streak; else degen_streak = 0;
      } else {
        const double t = best_t;
        for (int i = 0; i < m_; ++i)
          if (std::fabs(y_[i]) > kZeroTol) xval_[basis_[i]] -= dir * t * y_[i];
        xval_[entering] += dir * t;
        const int leaving = basis_[leave_slot];
        xval_[leaving] = leave_at_upper ? ub_[leaving] : lb_[leaving];
        stat_[leaving] = leave_at_upper ? kAtUpper : kAtLower;
        basis_[leave_slot] = entering;
        stat_[entering] = kBasic;
        update_binv(leave_slot);
        if (t <= 1e-10) ++degen_streak; else degen_streak = 0;
      }
      bland = degen_streak > kDegenerateStreakForBland;
      if (iterations % 16384 == 0) compute_basic_values();
    }

    sol.iterations = iterations;
    sol.primal.assign(n_, 0.0);
    for (int j = 0; j < n_; ++j) sol.primal[j] = xval_[j];
    sol.objective = 0.0;
    for (int j = 0; j < n_; ++j) sol.objective += cost_[j] * xval_[j];
    if (sol.status == SolveStatus::Optimal || sol.status == SolveStatus::IterationLimit) {
      compute_duals(false);
      sol.dual.assign(lambda_.begin(), lambda_.end());
      sol.reduced_cost.assign(n_, 0.0);
      for (int j = 0; j < n_; ++j)
        sol.reduced_cost[j] = stat_[j] == kBasic ? 0.0 : reduced_cost(j, false);
      sol.basis.basic = basis_;
      sol.basis.status.assign(stat_.begin(), stat_.end());
    }
    return sol;
  }

 private:
  void snap_nonbasic_values() {
    xval_.assign(total_, 0.0);
    for (int j = 0; j < total_; ++j) {
      if (stat_[j] == kBasic) continue;
      if (stat_[j] == kAtUpper && ub_[j] < kInf) xval_[j] = ub_[j];
      else if (stat_[j] == kAtLower && lb_[j] > -kInf) xval_[j] = lb_[j];
      else {
        // the recorded side no longer exists under these bounds
        if (lb_[j] > -kInf) { stat_[j] = kAtLower; xval_[j] = lb_[j]; }
        else if (ub_[j] < kInf) { stat_[j] = kAtUpper; xval_[j] = ub_[j]; }
        else { stat_[j] = kFreeNB; xval_[j] = 0.0; }
      }
    }
  }

  void ftran(int j) {
    y_.assign(m_, 0.0);
    if (j < n_) {
      for (const auto& e : cols_[j]) {
        const double c = e.coef;
        const double* col = binv_.data() + e.row;
        for (int i = 0; i < m_; ++i) y_[i] += c * col[static_cast<size_t>(i) * m_];
      }
    } else {
      const int r = j - n_;
      const double* col = binv_.data() + r;
      for (int i = 0; i < m_; ++i) y_[i] -= col[static_cast<size_t>(i) * m_];
    }
  }

  void compute_duals(bool phase1) {
    lambda_.assign(m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      double c;
      if (phase1) {
        const int bj = basis_[i];
        const double v = xval_[bj];
        if (v > ub_[bj] + kFeasLoose) c = 1.0;
        else if (v < lb_[bj] - kFeasLoose) c = -1.0;
        else continue;
      } else {
        c = cost_[basis_[i]];
        if (c == 0.0) continue;
      }
      const double* row = binv_.data() + static_cast<size_t>(i) * m_;
      for (int r = 0; r < m_; ++r) lambda_[r] += c * row[r];
    }
  }

  double reduced_cost(int j, bool phase1) const {
    double d = phase1 ? 0.0 : cost_[j];
    if (j < n_) {
      for (const auto& e : cols_[j]) d -= lambda_[e.row] * e.coef;
    } else {
      d += lambda_[j - n_];
    }
    return d;
  }

  void update_binv(int pivot_slot) {
    const double piv = y_[pivot_slot];
    double* prow = binv_.data() + static_cast<size_t>(pivot_slot) * m_;
    const double inv = 1.0 / piv;
    for (int k = 0; k < m_; ++k) prow[k] *= inv;
    for (int i = 0; i < m_; ++i) {
      if (i == pivot_slot) continue;
      const double f = y_[i];
      if (std::fabs(f) <= kZeroTol) continue;
      double* row = binv_.data() + static_cast<size_t>(i) * m_;
      for (int k = 0; k < m_; ++k) row[k] -= f * prow[k];
    }
  }

  void compute_basic_values() {
    // B x_B = -N x_N  (the assembled system has a zero right-hand side);
    // sweep binv by columns since the right-hand side is usually very sparse
    std::vector<double> rhs(m_, 0.0);
    for (int j = 0; j < total_; ++j) {
      if (stat_[j] == kBasic) continue;
      const double v = xval_[j];
      if (v == 0.0) continue;
      if (j < n_) {
        for (const auto& e : cols_[j]) rhs[e.row] -= e.coef * v;
      } else {
        rhs[j - n_] += v;
      }
    }
    xb_scratch_.assign(m_, 0.0);
    for (int r = 0; r < m_; ++r) {
      const double v = rhs[r];
      if (v == 0.0) continue;
      const double* col = binv_.data() + r;
      for (int i = 0; i < m_; ++i) xb_scratch_[i] += v * col[static_cast<size_t>(i) * m_];
    }
    for (int i = 0; i < m_; ++i) xval_[basis_[i]] = xb_scratch_[i];
  }

  double total_infeasibility() const {
    double s = 0.0;
    for (int i = 0; i < m_; ++i) {
      const int bj = basis_[i];
      const double v = xval_[bj];
      if (v > ub_[bj]) s += v - ub_[bj];
      else if (v < lb_[bj]) s += lb_[bj] - v;
    }
    return s;
  }

  // rebuilds binv from the basis columns; false when the basis is singular
  bool refactor() {
    std::vector<double> mat(static_cast<size_t>(m_) * m_, 0.0);
    binv_.assign(static_cast<size_t>(m_) * m_, 0.0);
    for (int i = 0; i < m_; ++i) binv_[static_cast<size_t>(i) * m_ + i] = 1.0;
    for (int s = 0; s < m_; ++s) {
      const int j = basis_[s];
      if (j < n_) {
        for (const auto& e : cols_[j]) mat[static_cast<size_t>(e.row) * m_ + s] = e.coef;
      } else {
        mat[static_cast<size_t>(j - n_) * m_ + s] = -1.0;
      }
    }
    for (int c = 0; c < m_; ++c) {
      int piv = -1;
      double best = kPivotTol;
      for (int r = c; r < m_; ++r) {
        const double a = std::fabs(mat[static_cast<size_t>(r) * m_ + c]);
        if (a > best) { best = a; piv = r; }
      }
      if (piv < 0) return false;
      if (piv != c) {
        for (int k = 0; k < m_; ++k) {
          std::swap(mat[static_cast<size_t>(piv) * m_ + k], mat[static_cast<size_t>(c) * m_ + k]);
          std::swap(binv_[static_cast<size_t>(piv) * m_ + k], binv_[static_cast<size_t>(c) * m_ + k]);
        }
      }
      const double inv = 1.0 / mat[static_cast<size_t>(c) * m_ + c];
      for (int k = 0; k < m_; ++k) {
        mat[static_cast<size_t>(c) * m_ + k] *= inv;
        binv_[static_cast<size_t>(c) * m_ + k] *= inv;
      }
      for (int r = 0; r < m_; ++r) {
        if (r == c) continue;
        const double f = mat[static_cast<size_t>(r) * m_ + c];
        if (std::fabs(f) <= kZeroTol) continue;
        for (int k = 0; k < m_; ++k) {
          mat[static_cast<size_t>(r) * m_ + k] -= f * mat[static_cast<size_t>(c) * m_ + k];
          binv_[static_cast<size_t>(r) * m_ + k] -= f * binv_[static_cast<size_t>(c) * m_ + k];
        }
      }
    }
    return true;
  }

  const LinearModel& model_;
  int n_ = 0, m_ = 0, total_ = 0;
  std::vector<std::vector<SparseEntry>> cols_;
  std::vector<double> cost_, lb_, ub_;
  bool bounds_ok_ = true;
  bool has_state_ = false;
  std::vector<int> basis_;
  std::vector<VStat> stat_;
  std::vector<double> binv_;
  std::vector<double> xval_;
  std::vector<double> y_;
  std::vector<double> lambda_;
  std::vector<double> xb_scratch_;
};

}  // namespace

LPSolution solve_lp(const LinearModel& model, const LPConfig& config) {
  Simplex s(model);
  s.set_structural_bounds(config.lower_override, config.upper_override);
  if (config.warm_start && config.warm_start->valid()) s.load_basis(*config.warm_start);
  return s.run(config.iteration_limit);
}

namespace {

struct BranchDecision {
  int var;
  bool is_upper;
  double value;
};

struct BBNode {
  std::vector<BranchDecision> decisions;
  double parent_bound = -kInf;
  int64_t seq = 0;
};

struct NodeOrder {
  bool operator()(const BBNode& a, const BBNode& b) const {
    if (a.parent_bound != b.parent_bound) return a.parent_bound > b.parent_bound;
    return a.seq > b.seq;
  }
};

}  // namespace

LPSolution solve_mip(const LinearModel& model, const MipConfig& config) {
  const int n = model.num_vars();
  const auto t_start = std::chrono::steady_clock::now();
  const auto out_of_time = [&]() {
    if (config.time_limit_s <= 0) return false;
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count() >
           config.time_limit_s;
  };

  bool integral_objective = true;
  for (int j = 0; j < n && integral_objective; ++j) {
    if (model.objective[j] == 0.0) continue;
    if (!model.is_integer[j] || std::fabs(model.objective[j] - std::llround(model.objective[j])) > 1e-12)
      integral_objective = false;
  }

  Simplex engine(model);

  std::vector<double> lb_scratch, ub_scratch;
  const auto evaluate = [&](const BBNode& node) {
    lb_scratch.assign(model.lower.begin(), model.lower.end());
    ub_scratch.assign(model.upper.begin(), model.upper.end());
    for (const auto& d : node.decisions) {
      if (d.is_upper) ub_scratch[d.var] = std::min(ub_scratch[d.var], d.value);
      else lb_scratch[d.var] = std::max(lb_scratch[d.var], d.value);
    }
    // the engine's live basis warm-starts every node: dives continue in
    // place and revisited nodes are repaired by the feasibility phase
    engine.set_structural_bounds(&lb_scratch, &ub_scratch);
    return engine.run(0);
  };

  const auto fractional_var = [&](const std::vector<double>& primal) {
    int var = -1;
    double best = 1e-6;
    for (int j = 0; j < n; ++j) {
      if (!model.is_integer[j]) continue;
      const double f = primal[j] - std::floor(primal[j]);
      const double dist = std::min(f, 1.0 - f);
      if (dist > best + 1e-12) {
        best = dist;
        var = j;
      }
    }
    return var;
  };

  const auto strengthen = [&](double bound) {
    return integral_objective ? std::ceil(bound - 1e-6) : bound;
  };

  LPSolution result;
  result.status = SolveStatus::Infeasible;
  double incumbent = kInf;
  std::vector<double> incumbent_primal;
  if (config.initial_primal && static_cast<int>(config.initial_primal->size()) == n) {
    const auto& p = *config.initial_primal;
    bool ok = true;
    for (int j = 0; j < n && ok; ++j) {
      if (p[j] < model.lower[j] - 1e-6 || p[j] > model.upper[j] + 1e-6) ok = false;
      if (model.is_integer[j] && std::fabs(p[j] - std::llround(p[j])) > 1e-6) ok = false;
    }
    for (int r = 0; r < model.num_rows() && ok; ++r) {
      double act = 0.0;
      for (const auto& [v, c] : model.rows[r].terms) act += c * p[v];
      switch (model.rows[r].sense) {
        case RowSense::LessEqual: ok = act <= model.rows[r].rhs + 1e-6; break;
        case RowSense::Equal: ok = std::fabs(act - model.rows[r].rhs) <= 1e-6; break;
        case RowSense::GreaterEqual: ok = act >= model.rows[r].rhs - 1e-6; break;
      }
    }
    if (ok) {
      incumbent = 0.0;
      for (int j = 0; j < n; ++j) incumbent += model.objective[j] * p[j];
      incumbent_primal = p;
    }
  }
  int64_t seq = 0;
  int64_t branches = 0;
  int64_t evals = 0;
  bool limits_hit = false;
  double root_bound = -kInf;
  bool root_solved = false;

  const auto cutoff = [&]() {
    if (incumbent >= kInf) return kInf;
    return incumbent - std::max(config.gap_tolerance * std::max(1.0, std::fabs(incumbent)), 1e-9);
  };

  std::priority_queue<BBNode, std::vector<BBNode>, NodeOrder> open;
  BBNode current{{}, -kInf, seq++};
  bool have_current = true;

  while (true) {
    if (!have_current) {
      if (open.empty()) break;
      if (evals >= config.node_limit || out_of_time()) { limits_hit = true; break; }
      current = open.top();
      open.pop();
      if (current.parent_bound >= cutoff()) continue;
      have_current = true;
      continue;
    }
    if (evals >= config.node_limit || out_of_time()) { limits_hit = true; break; }

    LPSolution lp = evaluate(current);
    ++evals;
    if (!root_solved) {
      root_solved = true;
      if (lp.status == SolveStatus::Unbounded) {
        result.status = SolveStatus::Unbounded;
        return result;
      }
      if (lp.status == SolveStatus::Optimal) root_bound = lp.objective;
    }
    if (lp.status != SolveStatus::Optimal) {
      have_current = false;
      continue;
    }
    const double bound = strengthen(lp.objective);
    if (bound >= cutoff()) {
      have_current = false;
      continue;
    }
    const int var = fractional_var(lp.primal);
    if (var < 0) {
      if (lp.objective < incumbent) {
        incumbent = lp.objective;
        incumbent_primal = lp.primal;
      }
      have_current = false;
      continue;
    }
    const double v = lp.primal[var];
    const double frac = v - std::floor(v);
    ++branches;
    BBNode down{current.decisions, bound, seq++};
    down.decisions.push_back({var, true, std::floor(v)});
    BBNode up{current.decisions, bound, seq++};
    up.decisions.push_back({var, false, std::ceil(v)});
    if (frac <= 0.5) {
      open.push(std::move(up));
      current = std::move(down);
    } else {
      open.push(std::move(down));
      current = std::move(up);
    }
  }

  double open_bound = incumbent < kInf ? incumbent : kInf;
  if (limits_hit) {
    open_bound = have_current ? current.parent_bound : kInf;
    if (!open.empty()) open_bound = std::min(open_bound, open.top().parent_bound);
    if (open_bound >= kInf) open_bound = root_bound;
  }

  if (incumbent < kInf) {
    result.status = limits_hit ? SolveStatus::IterationLimit : SolveStatus::Optimal;
    result.objective = incumbent;
    result.primal = incumbent_primal;
    result.best_bound = limits_hit ? std::min(open_bound, incumbent) : incumbent;
  } else if (limits_hit) {
    result.status = SolveStatus::IterationLimit;
    result.best_bound = open_bound;
  } else {
    result.status = SolveStatus::Infeasible;
  }
  result.nodes = branches;
  result.iterations = evals;
  return result;
}

std::string dump_model(const LinearModel& model) {
  std::ostringstream out;
  out << "minimize\n";
  out << "vars " << model.num_vars() << "\n";
  for (int j = 0; j < model.num_vars(); ++j) {
    out << model.var_names[j] << " " << model.lower[j] << " " << model.upper[j] << " " << model.objective[j]
        << " " << (model.is_integer[j] ? "I" : "C") << "\n";
  }
  out << "rows " << model.num_rows() << "\n";
  for (const auto& row : model.rows) {
    out << row.name << " "
        << (row.sense == RowSense::LessEqual ? "<=" : row.sense == RowSense::Equal ? "=" : ">=") << " " << row.rhs
        << " :";
    for (const auto& [v, c] : row.terms) out << " " << model.var_names[v] << ":" << c;
    out << "\n";
  }
  return out.str();
}

}  // namespace ftl
