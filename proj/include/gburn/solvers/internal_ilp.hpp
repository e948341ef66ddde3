#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "gburn/formulations.hpp"
#include "gburn/solvers/coverage_search.hpp"

namespace gburn {

enum class IlpStatus { optimal, infeasible };

struct IlpOptions {
  std::size_t binary_limit = 40;  // generic branch and bound only
  std::uint64_t node_budget = kDefaultNodeBudget;
  bool force_generic = false;     // skip the structure-exploiting paths
};

struct IlpResult {
  IlpStatus status = IlpStatus::infeasible;
  Assignment assignment;
  std::uint64_t nodes = 0;
  std::string path;  // which solver path ran
};

namespace detail {

/// covers[j-1][k] = coverage rows hit by x_{k,j}, for columns first..last.
struct ColumnCoverage {
  std::size_t rows = 0;
  std::vector<std::uint32_t> row_vertex;
  std::vector<std::vector<VertexSet>> covers;
};

inline ColumnCoverage column_coverage(const LinearModel& m, std::size_t first, std::size_t last) {
  ColumnCoverage cc;
  std::vector<const Constraint*> rows;
  for (const auto& c : m.constraints)
    if (c.role == RowRole::coverage) rows.push_back(&c);
  cc.rows = rows.size();
  cc.covers.assign(m.columns, std::vector<VertexSet>(m.n, VertexSet(cc.rows)));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    cc.row_vertex.push_back(rows[r]->vertex);
    for (const auto& t : rows[r]->terms) {
      const auto& v = m.variables[t.var];
      if (v.role != VarRole::x || v.column < first || v.column > last) continue;
      cc.covers[v.column - 1][v.vertex].set(r);
    }
  }
  return cc;
}

/// Columns hi, hi-1, ..., lo (largest radius first), vertices ascending.
inline CoverageProblem column_problem(const ColumnCoverage& cc, std::size_t lo, std::size_t hi) {
  CoverageProblem p;
  p.num_targets = cc.rows;
  for (std::size_t j = hi; j >= lo && j >= 1; --j) {
    std::vector<CoverageCandidate> col;
    for (std::size_t k = 0; k < cc.covers[j - 1].size(); ++k)
      col.push_back({static_cast<Vertex>(k), cc.covers[j - 1][k]});
    p.columns.push_back(std::move(col));
    if (j == lo) break;
  }
  return p;
}

inline IlpResult finish(const LinearModel& m, std::vector<double> values, std::uint64_t nodes, std::string path) {
  IlpResult r;
  r.status = IlpStatus::optimal;
  r.nodes = nodes;
  r.path = std::move(path);
  auto bad = violated_rows(m, values);
  if (!bad.empty()) throw BackendError("internal solver produced an infeasible assignment (row " + bad.front() + ")");
  r.assignment.objective = evaluate_objective(m, values);
  r.assignment.values = std::move(values);
  return r;
}

inline IlpResult solve_cov_csp(const LinearModel& m, const IlpOptions& opt) {
  auto cc = column_coverage(m, 1, m.columns);
  CoverageSearchOptions so{cc.rows, opt.node_budget};
  auto res = search_max_coverage(column_problem(cc, 1, m.columns), so);
  if (res.covered < cc.rows) {
    IlpResult r;
    r.status = IlpStatus::infeasible;
    r.nodes = res.nodes;
    r.path = "column-coverage";
    return r;
  }
  std::vector<double> values(m.variables.size(), 0.0);
  for (std::size_t c = 0; c < res.choice.size(); ++c) values[m.var_id(VarRole::x, res.choice[c], m.columns - c)] = 1.0;
  return finish(m, std::move(values), res.nodes, "column-coverage");
}

inline IlpResult solve_cov_ilp(const LinearModel& m, const IlpOptions& opt) {
  auto cc = column_coverage(m, 2, m.columns);
  std::vector<double> values(m.variables.size(), 0.0);
  VertexSet covered(cc.rows);
  std::uint64_t nodes = 0;
  if (m.columns >= 2) {
    CoverageSearchOptions so{cc.rows, opt.node_budget};
    auto res = search_max_coverage(column_problem(cc, 2, m.columns), so);
    nodes = res.nodes;
    for (std::size_t c = 0; c < res.choice.size(); ++c) {
      std::size_t j = m.columns - c;
      values[m.var_id(VarRole::x, res.choice[c], j)] = 1.0;
      covered |= cc.covers[j - 1][res.choice[c]];
    }
  }
  covered.for_each([&](std::size_t r) { values[m.var_id(VarRole::x, cc.row_vertex[r], 1)] = 1.0; });
  return finish(m, std::move(values), nodes, "column-coverage");
}

inline IlpResult solve_gbp_ilp(const LinearModel& m, const IlpOptions& opt) {
  auto cc = column_coverage(m, 1, m.columns);
  std::vector<double> values(m.variables.size(), 0.0);
  if (cc.rows == 0) return finish(m, std::move(values), 0, "column-coverage");
  std::uint64_t nodes = 0;
  for (std::size_t k = 1; k <= m.columns; ++k) {
    CoverageSearchOptions so{cc.rows, opt.node_budget};
    auto res = search_max_coverage(column_problem(cc, 1, k), so);
    nodes += res.nodes;
    if (res.covered == cc.rows) {
      for (std::size_t c = 0; c < res.choice.size(); ++c) values[m.var_id(VarRole::x, res.choice[c], k - c)] = 1.0;
      return finish(m, std::move(values), nodes, "column-coverage");
    }
  }
  IlpResult r;
  r.status = IlpStatus::infeasible;
  r.nodes = nodes;
  r.path = "column-coverage";
  return r;
}

/// Enumerates s columns; b is the exact propagation and z the worst
/// per-vertex count of unburned rounds.
inline IlpResult solve_prop_milp(const LinearModel& m, const IlpOptions& opt) {
  const std::size_t n = m.n, U = m.columns;
  // Closed neighborhoods from the j = 2 propagation rows.
  std::vector<std::vector<Vertex>> closed(n);
  for (const auto& c : m.constraints) {
    if (c.role != RowRole::propagation || c.column != 2) continue;
    for (const auto& t : c.terms) {
      const auto& v = m.variables[t.var];
      if (v.role == VarRole::b && v.column == 1) closed[c.vertex].push_back(v.vertex);
    }
  }
  for (Vertex i = 0; i < n; ++i)
    if (closed[i].empty()) closed[i].push_back(i);

  std::vector<std::vector<char>> burned(U + 1, std::vector<char>(n, 0));
  std::vector<std::vector<std::uint32_t>> late(U + 1, std::vector<std::uint32_t>(n, 0));
  std::vector<Vertex> choice(U, 0), best_choice;
  std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
  std::size_t best_rounds = 0;
  std::uint64_t nodes = 0;

  auto dfs = [&](auto&& self, std::size_t j) -> void {
    if (++nodes > opt.node_budget) throw CapacityError("PROP-MILP enumeration exceeded its node budget");
    std::uint32_t worst = *std::max_element(late[j].begin(), late[j].end());
    if (worst >= best) return;
    bool all = std::all_of(burned[j].begin(), burned[j].end(), [](char b) { return b != 0; });
    if (j == U || (j > 0 && all)) {
      best = worst;
      best_choice.assign(choice.begin(), choice.begin() + static_cast<std::ptrdiff_t>(j));
      best_rounds = j;
      return;
    }
    std::vector<char> spread(n, 0);
    for (Vertex i = 0; i < n; ++i)
      for (Vertex k : closed[i])
        if (burned[j][k]) {
          spread[i] = 1;
          break;
        }
    for (Vertex v = 0; v < n; ++v) {
      burned[j + 1] = spread;
      burned[j + 1][v] = 1;
      for (Vertex i = 0; i < n; ++i) late[j + 1][i] = late[j][i] + (burned[j + 1][i] ? 0 : 1);
      choice[j] = v;
      self(self, j + 1);
    }
  };
  if (n == 0) return finish(m, std::vector<double>(m.variables.size(), 0.0), 0, "sequence-enumeration");
  dfs(dfs, 0);

  std::vector<double> values(m.variables.size(), 0.0);
  std::vector<char> state(n, 0);
  for (std::size_t j = 1; j <= U; ++j) {
    Vertex s = j <= best_rounds ? best_choice[j - 1] : 0;
    values[m.var_id(VarRole::s, s, j)] = 1.0;
    std::vector<char> next(n, 0);
    for (Vertex i = 0; i < n; ++i)
      for (Vertex k : closed[i])
        if (state[k]) {
          next[i] = 1;
          break;
        }
    next[s] = 1;
    for (Vertex i = 0; i < n; ++i)
      if (next[i]) values[m.var_id(VarRole::b, i, j)] = 1.0;
    state = std::move(next);
  }
  values[m.z_id()] = static_cast<double>(best);
  return finish(m, std::move(values), nodes, "sequence-enumeration");
}

/// Depth-first branch and bound over binaries in id order with activity
/// bounds. Pure binary models only.
inline IlpResult solve_generic(const LinearModel& m, const IlpOptions& opt) {
  const std::size_t nv = m.variables.size();
  for (const auto& v : m.variables)
    if (v.kind != VarKind::binary)
      throw CapacityError("generic internal path handles pure binary models only");
  if (nv > opt.binary_limit)
    throw CapacityError("model has " + std::to_string(nv) + " binaries; internal generic limit is " +
                        std::to_string(opt.binary_limit));

  const std::size_t nc = m.constraints.size();
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> occurs(nv);
  std::vector<std::int64_t> act(nc, 0), minrest(nc, 0), maxrest(nc, 0);
  for (std::size_t c = 0; c < nc; ++c)
    for (const auto& t : m.constraints[c].terms) {
      occurs[t.var].emplace_back(c, t.coef);
      minrest[c] += std::min<std::int64_t>(0, t.coef);
      maxrest[c] += std::max<std::int64_t>(0, t.coef);
    }
  // Minimize sign * objective.
  const std::int64_t sign = m.sense == Sense::maximize ? -1 : 1;
  std::vector<std::int64_t> obj(nv, 0);
  if (m.sense != Sense::none)
    for (const auto& t : m.objective) obj[t.var] += sign * t.coef;
  std::vector<std::int64_t> obj_rest(nv + 1, 0);
  for (std::size_t k = nv; k-- > 0;) obj_rest[k] = obj_rest[k + 1] + std::min<std::int64_t>(0, obj[k]);

  auto ok = [&](std::size_t c) {
    const auto& row = m.constraints[c];
    std::int64_t lo = act[c] + minrest[c], hi = act[c] + maxrest[c];
    switch (row.relation) {
      case Relation::less_equal: return lo <= row.rhs;
      case Relation::greater_equal: return hi >= row.rhs;
      case Relation::equal: return lo <= row.rhs && hi >= row.rhs;
    }
    return false;
  };
  for (std::size_t c = 0; c < nc; ++c)
    if (!ok(c)) return IlpResult{IlpStatus::infeasible, {}, 0, "generic-branch-and-bound"};

  std::vector<double> cur(nv, 0.0), best_values;
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  bool found = false;
  std::uint64_t nodes = 0;
  auto dfs = [&](auto&& self, std::size_t k, std::int64_t value) -> void {
    if (++nodes > opt.node_budget) throw CapacityError("generic branch and bound exceeded its node budget");
    if (found && (m.sense == Sense::none || value + obj_rest[k] >= best)) return;
    if (k == nv) {
      found = true;
      best = value;
      best_values = cur;
      return;
    }
    for (int bit = 0; bit <= 1; ++bit) {
      bool feasible = true;
      for (auto [c, coef] : occurs[k]) {
        act[c] += coef * bit;
        minrest[c] -= std::min<std::int64_t>(0, coef);
        maxrest[c] -= std::max<std::int64_t>(0, coef);
      }
      for (auto [c, coef] : occurs[k])
        if (!ok(c)) {
          feasible = false;
          break;
        }
      cur[k] = bit;
      if (feasible) self(self, k + 1, value + obj[k] * bit);
      for (auto [c, coef] : occurs[k]) {
        act[c] -= coef * bit;
        minrest[c] += std::min<std::int64_t>(0, coef);
        maxrest[c] += std::max<std::int64_t>(0, coef);
      }
      cur[k] = 0;
    }
  };
  dfs(dfs, 0, 0);
  if (!found) return IlpResult{IlpStatus::infeasible, {}, nodes, "generic-branch-and-bound"};
  return finish(m, std::move(best_values), nodes, "generic-branch-and-bound");
}

}  // namespace detail

/// Exact optimum of a model produced by the formulation builders. COV/GBP
/// models are solved as one-vertex-per-column coverage searches read off the
/// model's own coverage rows; PROP-MILP by sequence enumeration; anything
/// else by generic branch and bound.
inline IlpResult internal_ilp_solve(const LinearModel& m, const IlpOptions& opt = {}) {
  if (opt.force_generic) return detail::solve_generic(m, opt);
  switch (m.formulation) {
    case Formulation::cov_csp: return detail::solve_cov_csp(m, opt);
    case Formulation::cov_ilp: return detail::solve_cov_ilp(m, opt);
    case Formulation::gbp_ilp: return detail::solve_gbp_ilp(m, opt);
    case Formulation::prop_milp: return detail::solve_prop_milp(m, opt);
  }
  return detail::solve_generic(m, opt);
}

}  // namespace gburn
