#pragma once

// Small exact integer-linear-programming toolkit: a dense two-phase simplex
// for the relaxations, branch and bound on top, and a plain-text model format
// so instances can be exported, inspected, and fed back in.
//
// The solver is deliberately deterministic: Bland's rule in the simplex,
// best-bound node selection with ids as tie-breaker, and most-fractional
// branching with the lowest variable index winning ties. Solving the same
// model twice yields byte-identical solutions.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <string>
#include <string_view>
#include <vector>

#include "jamsched/errors.hpp"

namespace jamsched {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense { Minimize, Maximize };
enum class Relation { LessEqual, GreaterEqual, Equal };
enum class SolveStatus { Optimal, Infeasible, Unbounded };

struct LinearTerm {
  int var = 0;
  double coeff = 0;
};

struct Constraint {
  std::string name;
  std::vector<LinearTerm> terms;
  Relation relation = Relation::LessEqual;
  double rhs = 0;
};

namespace detail {

inline bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char ch : s)
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_')) return false;
  return true;
}

inline std::string format_number(double v) {
  if (v == 0) return "0";  // also normalises -0
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw ModelError("cannot format number");
  return std::string(buf, end);
}

inline std::optional<double> parse_number(std::string_view tok) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) return std::nullopt;
  return v;
}

}  // namespace detail

struct Model {
  Sense sense = Sense::Minimize;
  std::vector<std::string> names;
  std::vector<double> objective;
  double objective_constant = 0;  // added to the objective value, e.g. fixed gains
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<char> integer;
  std::vector<Constraint> rows;

  int add_variable(std::string name, double lb = 0, double ub = kInf, bool is_integer = false) {
    if (!detail::is_identifier(name)) throw ModelError("bad variable name '" + name + "'");
    if (find_variable(name)) throw ModelError("duplicate variable '" + name + "'");
    if (std::isnan(lb) || std::isnan(ub) || lb == kInf || ub == -kInf)
      throw ModelError("bad bounds for '" + name + "'");
    names.push_back(std::move(name));
    objective.push_back(0);
    lower.push_back(lb);
    upper.push_back(ub);
    integer.push_back(is_integer ? 1 : 0);
    return static_cast<int>(names.size()) - 1;
  }

  void set_objective(int var, double coeff) {
    check_var(var);
    if (!std::isfinite(coeff)) throw ModelError("non-finite objective coefficient");
    objective[var] = coeff;
  }

  void add_constraint(std::string name, std::vector<LinearTerm> terms, Relation rel, double rhs) {
    if (!detail::is_identifier(name)) throw ModelError("bad constraint name '" + name + "'");
    for (const Constraint& r : rows)
      if (r.name == name) throw ModelError("duplicate constraint '" + name + "'");
    for (const LinearTerm& t : terms) {
      check_var(t.var);
      if (!std::isfinite(t.coeff)) throw ModelError("non-finite coefficient in '" + name + "'");
    }
    if (!std::isfinite(rhs)) throw ModelError("non-finite right-hand side in '" + name + "'");
    rows.push_back(Constraint{std::move(name), std::move(terms), rel, rhs});
  }

  int variable_count() const { return static_cast<int>(names.size()); }

  std::optional<int> find_variable(std::string_view name) const {
    for (int i = 0; i < variable_count(); ++i)
      if (names[i] == name) return i;
    return std::nullopt;
  }

 private:
  void check_var(int var) const {
    if (var < 0 || var >= variable_count()) throw ModelError("variable index out of range");
  }
};

struct Solution {
  SolveStatus status = SolveStatus::Infeasible;
  double objective = 0;
  std::vector<double> values;     // one entry per model variable
  long long nodes_explored = 0;   // branch-and-bound only
};

struct SolveOptions {
  long long node_limit = 1'000'000;
};

namespace detail {

// Bounded LP in tableau form. Variables are rewritten so everything is
// non-negative: a finite lower bound shifts the variable, an upper-only bound
// mirrors it, and a doubly-free variable is split into a difference.
struct LpResult {
  SolveStatus status = SolveStatus::Infeasible;
  std::vector<double> values;  // original variable space
  double objective = 0;        // w.r.t. minimisation of the given costs
};

inline constexpr double kPivotEps = 1e-9;
inline constexpr double kCostEps = 1e-9;

class SimplexTableau {
 public:
  SimplexTableau(int cols) : cols_(cols) {}

  void add_row(std::vector<double> coeffs, double rhs) {
    rows_.push_back(std::move(coeffs));
    rhs_.push_back(rhs);
    basis_.push_back(-1);
  }

  int row_count() const { return static_cast<int>(rows_.size()); }
  int col_count() const { return cols_; }
  double& at(int i, int j) { return rows_[i][j]; }
  double rhs(int i) const { return rhs_[i]; }
  int basis(int i) const { return basis_[i]; }
  void set_basis(int i, int col) { basis_[i] = col; }

  void grow_columns(int extra) {
    cols_ += extra;
    for (auto& r : rows_) r.resize(cols_, 0.0);
  }

  void shrink_columns(int keep) {
    cols_ = keep;
    for (auto& r : rows_) r.resize(cols_);
  }

  void drop_row(int i) {
    rows_.erase(rows_.begin() + i);
    rhs_.erase(rhs_.begin() + i);
    basis_.erase(basis_.begin() + i);
  }

  void pivot(int pr, int pc) {
    double inv = 1.0 / rows_[pr][pc];
    for (double& v : rows_[pr]) v *= inv;
    rhs_[pr] *= inv;
    rows_[pr][pc] = 1.0;  // kill residual error on the pivot itself
    for (int i = 0; i < row_count(); ++i) {
      if (i == pr) continue;
      double f = rows_[i][pc];
      if (f == 0) continue;
      for (int j = 0; j < cols_; ++j) rows_[i][j] -= f * rows_[pr][j];
      rows_[i][pc] = 0.0;
      rhs_[i] -= f * rhs_[pr];
    }
    basis_[pr] = pc;
  }

  // Reduced costs of `costs` relative to the current basis.
  std::vector<double> reduced_costs(const std::vector<double>& costs) const {
    std::vector<double> r = costs;
    for (int i = 0; i < row_count(); ++i) {
      double cb = costs[basis_[i]];
      if (cb == 0) continue;
      for (int j = 0; j < cols_; ++j) r[j] -= cb * rows_[i][j];
    }
    return r;
  }

  // Runs Bland-rule simplex on the stored rows. Returns false on
  // unboundedness. Reduced costs are updated in place.
  bool iterate(std::vector<double>& r) {
    long long budget = 10000 + 200LL * (row_count() + cols_);
    while (true) {
      int enter = -1;
      for (int j = 0; j < cols_; ++j)
        if (r[j] < -kCostEps) {
          enter = j;
          break;
        }
      if (enter < 0) return true;

      int leave = -1;
      double best = kInf;
      for (int i = 0; i < row_count(); ++i) {
        double a = rows_[i][enter];
        if (a <= kPivotEps) continue;
        double ratio = rhs_[i] / a;
        if (ratio < best - 1e-12 || (ratio < best + 1e-12 && (leave < 0 || basis_[i] < basis_[leave]))) {
          best = ratio;
          leave = i;
        }
      }
      if (leave < 0) return false;

      double f = r[enter];
      pivot(leave, enter);
      for (int j = 0; j < cols_; ++j) r[j] -= f * rows_[leave][j];
      r[enter] = 0.0;
      if (--budget < 0) throw ModelError("simplex failed to converge");
    }
  }

 private:
  int cols_;
  std::vector<std::vector<double>> rows_;
  std::vector<double> rhs_;
  std::vector<int> basis_;
};

// Minimises costs subject to the model's rows under explicit bounds
// (branch-and-bound passes tightened copies of the model's own bounds).
inline LpResult solve_lp_bounded(const Model& m, const std::vector<double>& costs,
                                 const std::vector<double>& lb, const std::vector<double>& ub) {
  int n = m.variable_count();
  LpResult out;
  for (int j = 0; j < n; ++j)
    if (lb[j] > ub[j] + 1e-12) return out;  // empty box

  // Variable rewrite bookkeeping.
  enum class Mode { Shift, Mirror, Split };
  struct VarMap {
    Mode mode;
    int col = -1;
    int col2 = -1;  // negative part of a split variable
  };
  std::vector<VarMap> vmap(n);
  int ny = 0;
  for (int j = 0; j < n; ++j) {
    if (lb[j] > -kInf) {
      vmap[j] = {Mode::Shift, ny++};
    } else if (ub[j] < kInf) {
      vmap[j] = {Mode::Mirror, ny++};
    } else {
      vmap[j] = {Mode::Split, ny, ny + 1};
      ny += 2;
    }
  }

  // Row coefficients in rewritten space: a.x rel b becomes a'.y rel b'.
  struct RawRow {
    std::vector<double> a;
    Relation rel;
    double b;
  };
  std::vector<RawRow> raw;
  raw.reserve(m.rows.size() + n);
  auto rewrite = [&](const std::vector<LinearTerm>& terms, Relation rel, double rhs) {
    RawRow rr{std::vector<double>(ny, 0.0), rel, rhs};
    for (const LinearTerm& t : terms) {
      const VarMap& vm = vmap[t.var];
      switch (vm.mode) {
        case Mode::Shift:
          rr.a[vm.col] += t.coeff;
          rr.b -= t.coeff * lb[t.var];
          break;
        case Mode::Mirror:  // x = ub - y
          rr.a[vm.col] -= t.coeff;
          rr.b -= t.coeff * ub[t.var];
          break;
        case Mode::Split:  // x = y+ - y-
          rr.a[vm.col] += t.coeff;
          rr.a[vm.col2] -= t.coeff;
          break;
      }
    }
    raw.push_back(std::move(rr));
  };
  for (const Constraint& c : m.rows) rewrite(c.terms, c.relation, c.rhs);
  for (int j = 0; j < n; ++j)  // box width as an explicit row where finite on both sides
    if (vmap[j].mode == Mode::Shift && ub[j] < kInf)
      rewrite({{j, 1.0}}, Relation::LessEqual, ub[j]);

  // Scale rows, discard trivial ones, reject inconsistent ones.
  std::vector<RawRow> kept;
  for (RawRow& rr : raw) {
    double mag = 0;
    for (double v : rr.a) mag = std::max(mag, std::abs(v));
    if (mag <= kPivotEps) {
      bool ok = rr.rel == Relation::LessEqual    ? rr.b >= -1e-9
                : rr.rel == Relation::GreaterEqual ? rr.b <= 1e-9
                                                   : std::abs(rr.b) <= 1e-9;
      if (!ok) return out;  // 0 rel b fails
      continue;
    }
    // Fold the rhs into the scale so every scaled |b| is at most 1; otherwise
    // one loose row with a huge bound (say budget 1e4) inflates the phase-1
    // feasibility tolerance enough to mask real violations in tightly-scaled
    // rows alongside it.
    double inv = 1.0 / std::max(mag, std::abs(rr.b));
    for (double& v : rr.a) v *= inv;
    rr.b *= inv;
    kept.push_back(std::move(rr));
  }

  int mrows = static_cast<int>(kept.size());
  int nslack = 0;
  for (const RawRow& rr : kept)
    if (rr.rel != Relation::Equal) ++nslack;

  SimplexTableau tab(ny + nslack);
  double rhs_sum = 0;
  {
    int slack = ny;
    for (RawRow& rr : kept) {
      std::vector<double> row(ny + nslack, 0.0);
      std::copy(rr.a.begin(), rr.a.end(), row.begin());
      double b = rr.b;
      double sdir = rr.rel == Relation::LessEqual ? 1.0 : rr.rel == Relation::GreaterEqual ? -1.0 : 0.0;
      int scol = -1;
      if (sdir != 0) {
        scol = slack++;
        row[scol] = sdir;
      }
      if (b < 0) {
        for (double& v : row) v = -v;
        b = -b;
      }
      tab.add_row(std::move(row), b);
      int i = tab.row_count() - 1;
      if (scol >= 0 && tab.at(i, scol) > 0.5) tab.set_basis(i, scol);
      rhs_sum += b;
    }
  }

  // Phase 1: artificial columns wherever no slack landed in the basis.
  std::vector<int> art_rows;
  for (int i = 0; i < mrows; ++i)
    if (tab.basis(i) < 0) art_rows.push_back(i);
  int art_start = tab.col_count();
  if (!art_rows.empty()) {
    tab.grow_columns(static_cast<int>(art_rows.size()));
    for (std::size_t k = 0; k < art_rows.size(); ++k) {
      tab.at(art_rows[k], art_start + static_cast<int>(k)) = 1.0;
      tab.set_basis(art_rows[k], art_start + static_cast<int>(k));
    }
    std::vector<double> c1(tab.col_count(), 0.0);
    for (int j = art_start; j < tab.col_count(); ++j) c1[j] = 1.0;
    std::vector<double> r = tab.reduced_costs(c1);
    if (!tab.iterate(r)) throw ModelError("phase-1 relaxation unbounded");

    double art_sum = 0;
    for (int i = 0; i < tab.row_count(); ++i)
      if (tab.basis(i) >= art_start) art_sum += tab.rhs(i);
    if (art_sum > 1e-7 * (1 + rhs_sum)) return out;  // infeasible

    // Drive artificials out of the basis; rows that cannot release one are
    // redundant and get dropped.
    for (int i = tab.row_count() - 1; i >= 0; --i) {
      if (tab.basis(i) < art_start) continue;
      int col = -1;
      for (int j = 0; j < art_start; ++j)
        if (std::abs(tab.at(i, j)) > kPivotEps) {
          col = j;
          break;
        }
      if (col >= 0)
        tab.pivot(i, col);
      else
        tab.drop_row(i);
    }
    tab.shrink_columns(art_start);
  }

  // Phase 2 with the real costs mapped into rewritten space.
  std::vector<double> c2(tab.col_count(), 0.0);
  for (int j = 0; j < n; ++j) {
    const VarMap& vm = vmap[j];
    switch (vm.mode) {
      case Mode::Shift: c2[vm.col] = costs[j]; break;
      case Mode::Mirror: c2[vm.col] = -costs[j]; break;
      case Mode::Split:
        c2[vm.col] = costs[j];
        c2[vm.col2] = -costs[j];
        break;
    }
  }
  std::vector<double> r = tab.reduced_costs(c2);
  if (!tab.iterate(r)) {
    out.status = SolveStatus::Unbounded;
    return out;
  }

  std::vector<double> y(ny, 0.0);
  for (int i = 0; i < tab.row_count(); ++i)
    if (tab.basis(i) < ny) y[tab.basis(i)] = std::max(0.0, tab.rhs(i));

  out.values.assign(n, 0.0);
  for (int j = 0; j < n; ++j) {
    const VarMap& vm = vmap[j];
    double x = 0;
    switch (vm.mode) {
      case Mode::Shift: x = lb[j] + y[vm.col]; break;
      case Mode::Mirror: x = ub[j] - y[vm.col]; break;
      case Mode::Split: x = y[vm.col] - y[vm.col2]; break;
    }
    out.values[j] = std::clamp(x, lb[j], ub[j]);
  }
  out.objective = 0;
  for (int j = 0; j < n; ++j) out.objective += costs[j] * out.values[j];
  out.status = SolveStatus::Optimal;
  return out;
}

inline std::vector<double> minimized_costs(const Model& m) {
  std::vector<double> c = m.objective;
  if (m.sense == Sense::Maximize)
    for (double& v : c) v = -v;
  return c;
}

}  // namespace detail

// Solves the continuous relaxation (integrality dropped).
inline Solution solve_lp(const Model& m) {
  if (m.variable_count() == 0) throw ModelError("model has no variables");
  detail::LpResult lp = detail::solve_lp_bounded(m, detail::minimized_costs(m), m.lower, m.upper);
  Solution s;
  s.status = lp.status;
  s.values = lp.values;
  if (lp.status == SolveStatus::Optimal)
    s.objective = (m.sense == Sense::Maximize ? -lp.objective : lp.objective) + m.objective_constant;
  return s;
}

inline Solution solve_rounded(const Model& m);

// Exact mixed-integer solve: best-bound branch and bound over the simplex
// relaxation. Deterministic; throws ResourceError when the node budget runs
// out before the tree is exhausted. Every integer variable must carry finite
// bounds so the search tree is finite.
inline Solution solve_ilp(const Model& m, const SolveOptions& opts = {}) {
  if (m.variable_count() == 0) throw ModelError("model has no variables");
  int n = m.variable_count();
  for (int j = 0; j < n; ++j)
    if (m.integer[j] && (m.lower[j] == -kInf || m.upper[j] == kInf))
      throw ModelError("integer variable '" + m.names[j] + "' needs finite bounds");
  std::vector<double> costs = detail::minimized_costs(m);

  // With an all-integer objective over integer variables, every feasible
  // objective value is integral and fractional bounds can be rounded up.
  bool integral_obj = true;
  for (int j = 0; j < n; ++j)
    if (costs[j] != 0 && (!m.integer[j] || costs[j] != std::round(costs[j]))) integral_obj = false;
  auto tighten = [&](double bound) {
    return integral_obj ? std::ceil(bound - 1e-6) : bound;
  };

  struct NodeRec {
    int parent = -1;
    int var = -1;
    double value = 0;
    bool is_upper = false;
    double bound = -kInf;
  };
  std::vector<NodeRec> pool;
  pool.push_back({});

  using HeapItem = std::pair<double, long long>;  // (bound, node id)
  std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>> heap;
  heap.push({-kInf, 0});

  std::vector<double> lb(n), ub(n);
  auto load_bounds = [&](long long id) {
    lb = m.lower;
    ub = m.upper;
    std::vector<long long> chain;
    for (long long cur = id; cur > 0; cur = pool[cur].parent) chain.push_back(cur);
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      const NodeRec& nr = pool[*it];
      if (nr.is_upper)
        ub[nr.var] = std::min(ub[nr.var], nr.value);
      else
        lb[nr.var] = std::max(lb[nr.var], nr.value);
    }
  };

  bool root_seen = false;
  bool have_incumbent = false;
  double inc_obj = kInf;
  std::vector<double> inc_values;
  long long explored = 0;

  // Seed the incumbent with the rounding heuristic. Best-bound search prunes
  // nothing until it holds some integral solution, so on covering models with
  // many near-tied optima this one extra LP shrinks the explored tree by
  // orders of magnitude. The candidate is re-verified against the rows at the
  // solver's own tolerance before it is trusted, and the exhaustive search
  // below still runs to prove whatever it finds optimal.
  try {
    Solution warm = solve_rounded(m);
    if (warm.status == SolveStatus::Optimal) {
      bool ok = true;
      for (int j = 0; j < n && ok; ++j) {
        if (warm.values[j] < m.lower[j] - 1e-9 || warm.values[j] > m.upper[j] + 1e-9) ok = false;
        if (m.integer[j] && warm.values[j] != std::round(warm.values[j])) ok = false;
      }
      for (const Constraint& c : m.rows) {
        if (!ok) break;
        double lhs = 0;
        for (const LinearTerm& t : c.terms) lhs += t.coeff * warm.values[t.var];
        double tol = 1e-9 * (1 + std::abs(c.rhs));
        if (c.relation == Relation::LessEqual ? lhs > c.rhs + tol
            : c.relation == Relation::GreaterEqual ? lhs < c.rhs - tol
                                                   : std::abs(lhs - c.rhs) > tol)
          ok = false;
      }
      if (ok) {
        have_incumbent = true;
        inc_obj = 0;
        for (int j = 0; j < n; ++j) inc_obj += costs[j] * warm.values[j];
        inc_values = warm.values;
      }
    }
  } catch (const Error&) {
    // The heuristic never gets to block the exact solve.
  }

  while (!heap.empty()) {
    auto [bound, id] = heap.top();
    heap.pop();
    if (have_incumbent && bound >= inc_obj - 1e-9) continue;  // cannot strictly improve

    if (explored >= opts.node_limit) {
      std::string msg = "node limit " + std::to_string(opts.node_limit) + " exhausted";
      if (have_incumbent) {
        double shown = (m.sense == Sense::Maximize ? -inc_obj : inc_obj) + m.objective_constant;
        msg += "; best solution so far has objective " + detail::format_number(shown);
      } else {
        msg += "; no feasible solution found";
      }
      throw ResourceError(msg);
    }
    ++explored;

    load_bounds(id);
    detail::LpResult lp = detail::solve_lp_bounded(m, costs, lb, ub);
    if (lp.status == SolveStatus::Infeasible) {
      if (id == 0) root_seen = true;
      continue;
    }
    if (lp.status == SolveStatus::Unbounded) {
      Solution s;
      s.status = SolveStatus::Unbounded;
      s.nodes_explored = explored;
      return s;
    }
    root_seen = true;
    double node_bound = tighten(lp.objective);
    if (have_incumbent && node_bound >= inc_obj - 1e-9) continue;

    // Most-fractional integer variable; lowest index wins ties.
    int branch_var = -1;
    double branch_frac = 0;
    for (int j = 0; j < n; ++j) {
      if (!m.integer[j]) continue;
      double f = lp.values[j] - std::floor(lp.values[j]);
      double dist = std::min(f, 1 - f);
      if (dist > 1e-6 && dist > branch_frac + 1e-12) {
        branch_frac = dist;
        branch_var = j;
      }
    }

    if (branch_var < 0) {
      std::vector<double> cand = lp.values;
      for (int j = 0; j < n; ++j)
        if (m.integer[j]) cand[j] = std::round(cand[j]);
      double obj = 0;
      for (int j = 0; j < n; ++j) obj += costs[j] * cand[j];
      if (!have_incumbent || obj < inc_obj - 1e-9) {
        have_incumbent = true;
        inc_obj = obj;
        inc_values = std::move(cand);
      }
      continue;
    }

    double v = lp.values[branch_var];
    pool.push_back({static_cast<int>(id), branch_var, std::floor(v), true, node_bound});
    heap.push({node_bound, static_cast<long long>(pool.size()) - 1});
    pool.push_back({static_cast<int>(id), branch_var, std::ceil(v), false, node_bound});
    heap.push({node_bound, static_cast<long long>(pool.size()) - 1});
  }

  Solution s;
  s.nodes_explored = explored;
  if (!have_incumbent) {
    s.status = SolveStatus::Infeasible;
    (void)root_seen;
    return s;
  }
  s.status = SolveStatus::Optimal;
  s.values = std::move(inc_values);
  s.objective = (m.sense == Sense::Maximize ? -inc_obj : inc_obj) + m.objective_constant;
  return s;
}

// Cheap alternative to the exact solve: round the relaxation down on integer
// variables, then take greedy unit steps to patch constraint violations. The
// result is feasible-but-maybe-suboptimal; status Infeasible means the repair
// loop got stuck, not that the model is infeasible.
inline Solution solve_rounded(const Model& m) {
  if (m.variable_count() == 0) throw ModelError("model has no variables");
  int n = m.variable_count();
  for (int j = 0; j < n; ++j)
    if (m.integer[j] && (m.lower[j] == -kInf || m.upper[j] == kInf))
      throw ModelError("integer variable '" + m.names[j] + "' needs finite bounds");

  Solution lp = solve_lp(m);
  if (lp.status != SolveStatus::Optimal) return lp;

  std::vector<double> x = lp.values;
  for (int j = 0; j < n; ++j)
    if (m.integer[j]) x[j] = std::clamp(std::floor(x[j] + 1e-9), m.lower[j], m.upper[j]);

  auto violation = [&](const std::vector<double>& v) {
    double total = 0;
    for (const Constraint& c : m.rows) {
      double lhs = 0;
      for (const LinearTerm& t : c.terms) lhs += t.coeff * v[t.var];
      double tol = 1e-7 * (1 + std::abs(c.rhs));
      if (c.relation == Relation::LessEqual)
        total += std::max(0.0, lhs - c.rhs - tol);
      else if (c.relation == Relation::GreaterEqual)
        total += std::max(0.0, c.rhs - lhs - tol);
      else
        total += std::max(0.0, std::abs(lhs - c.rhs) - tol);
    }
    return total;
  };

  double cur = violation(x);
  // Each pass moves one integer variable by one unit, picking the step that
  // sheds the most violation (ties: lowest index, +1 before -1).
  for (long long pass = 0; cur > 0 && pass < 1000LL * n + 1000; ++pass) {
    int best_var = -1;
    double best_step = 0;
    double best_total = cur;
    for (int j = 0; j < n; ++j) {
      if (!m.integer[j]) continue;
      for (double step : {1.0, -1.0}) {
        double nv = x[j] + step;
        if (nv < m.lower[j] - 1e-9 || nv > m.upper[j] + 1e-9) continue;
        x[j] = nv;
        double t = violation(x);
        x[j] = nv - step;
        if (t < best_total - 1e-12) {
          best_total = t;
          best_var = j;
          best_step = step;
        }
      }
    }
    if (best_var < 0) break;  // no single step helps
    x[best_var] += best_step;
    cur = best_total;
  }

  Solution s;
  if (cur > 0) {
    s.status = SolveStatus::Infeasible;
    return s;
  }
  s.status = SolveStatus::Optimal;
  s.values = std::move(x);
  s.objective = m.objective_constant;
  for (int j = 0; j < n; ++j) s.objective += m.objective[j] * s.values[j];
  return s;
}

// ---------------------------------------------------------------------------
// Plain-text model format. Canonical output: terms in variable order with
// explicit coefficients, one bounds line per variable, sections in a fixed
// order. export_model(parse_model(text)) reproduces canonical text exactly.

inline std::string export_model(const Model& m) {
  std::string out;
  out += m.sense == Sense::Maximize ? "maximize\n" : "minimize\n";

  auto emit_terms = [&out](const std::vector<double>& dense, const std::vector<std::string>& names) {
    bool first = true;
    for (std::size_t j = 0; j < dense.size(); ++j) {
      double c = dense[j];
      if (c == 0) continue;
      if (first) {
        out += ' ';
        out += detail::format_number(c);
      } else {
        out += c < 0 ? " - " : " + ";
        out += detail::format_number(std::abs(c));
      }
      out += ' ';
      out += names[j];
      first = false;
    }
  };

  out += "obj:";
  emit_terms(m.objective, m.names);
  if (m.objective_constant != 0) {
    bool alone = true;
    for (double c : m.objective)
      if (c != 0) alone = false;
    if (alone) {
      out += ' ';
      out += detail::format_number(m.objective_constant);
    } else {
      out += m.objective_constant < 0 ? " - " : " + ";
      out += detail::format_number(std::abs(m.objective_constant));
    }
  }
  out += '\n';
  if (!m.rows.empty()) {
    out += "subject to\n";
    std::vector<double> dense(m.names.size());
    for (const Constraint& c : m.rows) {
      std::fill(dense.begin(), dense.end(), 0.0);
      for (const LinearTerm& t : c.terms) dense[t.var] += t.coeff;
      out += c.name;
      out += ':';
      emit_terms(dense, m.names);
      out += c.relation == Relation::LessEqual ? " <= " : c.relation == Relation::GreaterEqual ? " >= " : " = ";
      out += detail::format_number(c.rhs);
      out += '\n';
    }
  }
  out += "bounds\n";
  for (std::size_t j = 0; j < m.names.size(); ++j) {
    double lb = m.lower[j], ub = m.upper[j];
    if (lb == -kInf && ub == kInf) {
      out += m.names[j] + " free\n";
    } else if (ub == kInf) {
      out += m.names[j] + " >= " + detail::format_number(lb) + "\n";
    } else if (lb == -kInf) {
      out += m.names[j] + " <= " + detail::format_number(ub) + "\n";
    } else {
      out += detail::format_number(lb) + " <= " + m.names[j] + " <= " + detail::format_number(ub) + "\n";
    }
  }
  bool any_int = false;
  for (char f : m.integer) any_int |= f != 0;
  if (any_int) {
    out += "integers\n";
    bool first = true;
    for (std::size_t j = 0; j < m.names.size(); ++j) {
      if (!m.integer[j]) continue;
      if (!first) out += ' ';
      out += m.names[j];
      first = false;
    }
    out += '\n';
  }
  out += "end\n";
  return out;
}

namespace detail {

inline std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> toks;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) toks.emplace_back(line.substr(start, i - start));
  }
  return toks;
}

// Parses "[-]c name + c name - name ..." into terms, creating variables on
// first sight. With `constant` non-null (objective lines), numbers that are
// not attached to a variable accumulate there instead of being an error.
inline std::vector<LinearTerm> parse_terms(const std::vector<std::string>& toks, std::size_t begin,
                                           std::size_t end, Model& m, double* constant = nullptr) {
  std::vector<LinearTerm> terms;
  double sign = 1;
  std::optional<double> coeff;
  auto spill = [&](const char* next_tok) {
    if (!coeff) return;
    if (!constant) throw ModelError(std::string("number without a variable near '") + next_tok + "'");
    *constant += *coeff;
    coeff.reset();
  };
  for (std::size_t i = begin; i < end; ++i) {
    const std::string& tok = toks[i];
    if (tok == "+" || tok == "-") {
      spill(tok.c_str());
      sign = tok == "-" ? -1 : 1;
      continue;
    }
    if (auto num = parse_number(tok)) {
      spill(tok.c_str());
      coeff = sign * *num;
      sign = 1;
      continue;
    }
    if (!is_identifier(tok)) throw ModelError("unexpected token '" + tok + "'");
    int var = m.find_variable(tok).value_or(-1);
    if (var < 0) var = m.add_variable(tok);
    terms.push_back({var, coeff.value_or(sign)});
    coeff.reset();
    sign = 1;
  }
  spill("end of line");
  return terms;
}

}  // namespace detail

inline Model parse_model(std::string_view text) {
  std::vector<std::string> lines;
  {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t nl = text.find('\n', pos);
      if (nl == std::string_view::npos) nl = text.size();
      std::string_view raw = text.substr(pos, nl - pos);
      pos = nl + 1;
      auto toks = detail::tokenize(raw);
      if (!toks.empty()) {
        std::string joined;
        for (std::size_t i = 0; i < toks.size(); ++i) {
          if (i) joined += ' ';
          joined += toks[i];
        }
        lines.push_back(std::move(joined));
      }
      if (nl == text.size()) break;
    }
  }

  Model m;

  // The bounds section names every variable in canonical order; registering
  // them up front keeps variable indices stable across a round trip even when
  // early sections mention only a subset.
  {
    bool in_bounds = false;
    for (const std::string& line : lines) {
      if (line == "bounds") {
        in_bounds = true;
        continue;
      }
      if (line == "integers" || line == "end") break;
      if (!in_bounds) continue;
      auto toks = detail::tokenize(line);
      std::string_view id;
      if (toks.size() == 2 || toks.size() == 3)
        id = toks[0];
      else if (toks.size() == 5)
        id = toks[2];
      if (detail::is_identifier(id) && !m.find_variable(id)) m.add_variable(std::string(id));
    }
  }

  std::size_t li = 0;
  auto need = [&](const char* what) -> const std::string& {
    if (li >= lines.size()) throw ModelError(std::string("unexpected end of model, expected ") + what);
    return lines[li];
  };

  const std::string& sense_line = need("sense");
  if (sense_line == "minimize")
    m.sense = Sense::Minimize;
  else if (sense_line == "maximize")
    m.sense = Sense::Maximize;
  else
    throw ModelError("expected 'minimize' or 'maximize', got '" + sense_line + "'");
  ++li;

  {
    const std::string& obj = need("objective");
    auto toks = detail::tokenize(obj);
    if (toks.empty() || toks[0] != "obj:") throw ModelError("expected 'obj:' line");
    auto terms = detail::parse_terms(toks, 1, toks.size(), m, &m.objective_constant);
    for (const LinearTerm& t : terms) m.objective[t.var] += t.coeff;
    ++li;
  }

  // Constraint-free models skip the whole section.
  bool has_rows = need("'subject to' or 'bounds'") == "subject to";
  if (has_rows)
    ++li;
  else if (lines[li] != "bounds")
    throw ModelError("expected 'subject to' or 'bounds', got '" + lines[li] + "'");

  while (has_rows && need("constraint or 'bounds'") != "bounds") {
    auto toks = detail::tokenize(lines[li]);
    if (toks.empty()) throw ModelError("empty constraint line");
    std::string name = toks[0];
    if (name.empty() || name.back() != ':') throw ModelError("constraint missing name: '" + lines[li] + "'");
    name.pop_back();
    std::size_t rel_at = 0;
    Relation rel = Relation::Equal;
    for (std::size_t i = 1; i < toks.size(); ++i) {
      if (toks[i] == "<=" || toks[i] == ">=" || toks[i] == "=") {
        rel_at = i;
        rel = toks[i] == "<=" ? Relation::LessEqual : toks[i] == ">=" ? Relation::GreaterEqual : Relation::Equal;
        break;
      }
    }
    if (rel_at == 0) throw ModelError("constraint '" + name + "' lacks a relation");
    if (rel_at + 2 != toks.size()) throw ModelError("constraint '" + name + "' needs a single right-hand side");
    auto rhs = detail::parse_number(toks[rel_at + 1]);
    if (!rhs) throw ModelError("bad right-hand side in '" + name + "'");
    auto terms = detail::parse_terms(toks, 1, rel_at, m);
    if (terms.empty()) throw ModelError("constraint '" + name + "' has no terms");
    m.add_constraint(std::move(name), std::move(terms), rel, *rhs);
    ++li;
  }
  ++li;  // past 'bounds'

  while (true) {
    const std::string& line = need("bounds line, 'integers' or 'end'");
    if (line == "integers" || line == "end") break;
    auto toks = detail::tokenize(line);
    auto var_of = [&](const std::string& tok) {
      if (!detail::is_identifier(tok)) throw ModelError("bad variable in bounds: '" + tok + "'");
      int v = m.find_variable(tok).value_or(-1);
      return v >= 0 ? v : m.add_variable(tok);
    };
    if (toks.size() == 2 && toks[1] == "free") {
      int v = var_of(toks[0]);
      m.lower[v] = -kInf;
      m.upper[v] = kInf;
    } else if (toks.size() == 3 && (toks[1] == ">=" || toks[1] == "<=" || toks[1] == "=")) {
      int v = var_of(toks[0]);
      auto num = detail::parse_number(toks[2]);
      if (!num) throw ModelError("bad bound number in '" + line + "'");
      if (toks[1] == ">=") {
        m.lower[v] = *num;
        m.upper[v] = kInf;
      } else if (toks[1] == "<=") {
        m.lower[v] = -kInf;
        m.upper[v] = *num;
      } else {
        m.lower[v] = m.upper[v] = *num;
      }
    } else if (toks.size() == 5 && toks[1] == "<=" && toks[3] == "<=") {
      auto lo = detail::parse_number(toks[0]);
      auto hi = detail::parse_number(toks[4]);
      if (!lo || !hi) throw ModelError("bad bound numbers in '" + line + "'");
      int v = var_of(toks[2]);
      m.lower[v] = *lo;
      m.upper[v] = *hi;
    } else {
      throw ModelError("unrecognised bounds line: '" + line + "'");
    }
    ++li;
  }

  if (need("'integers' or 'end'") == "integers") {
    ++li;
    while (need("integer names or 'end'") != "end") {
      for (const std::string& tok : detail::tokenize(lines[li])) {
        if (!detail::is_identifier(tok)) throw ModelError("bad integer variable '" + tok + "'");
        int v = m.find_variable(tok).value_or(-1);
        if (v < 0) v = m.add_variable(tok);
        m.integer[v] = 1;
      }
      ++li;
    }
  }
  if (need("'end'") != "end") throw ModelError("expected 'end'");
  ++li;
  if (li != lines.size()) throw ModelError("unexpected content after 'end'");
  if (m.variable_count() == 0) throw ModelError("model has no variables");
  return m;
}

}  // namespace jamsched
