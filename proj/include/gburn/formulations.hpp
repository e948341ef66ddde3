#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "gburn/burning.hpp"
#include "gburn/graph.hpp"

namespace gburn {

enum class Formulation { prop_milp, cov_csp, cov_ilp, gbp_ilp };

inline const char* to_string(Formulation f) {
  switch (f) {
    case Formulation::prop_milp: return "prop-milp";
    case Formulation::cov_csp: return "cov-csp";
    case Formulation::cov_ilp: return "cov-ilp";
    case Formulation::gbp_ilp: return "gbp-ilp";
  }
  return "?";
}

enum class VarKind { binary, continuous };
/// s: sequence, b: burned, x: cover/selection, z: delay bound.
enum class VarRole { s, b, x, z };
enum class Sense { minimize, maximize, none };
enum class Relation { less_equal, equal, greater_equal };
enum class RowRole { propagation, one_per_column, delay, coverage, chain, cap };

struct Variable {
  std::string name;
  VarKind kind = VarKind::binary;
  double lower = 0.0;
  double upper = 1.0;
  VarRole role = VarRole::x;
  std::uint32_t vertex = 0;  // 0-based; unused for z
  std::uint32_t column = 0;  // 1-based column j; unused for z
};

struct Term {
  std::size_t var;
  std::int64_t coef;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  Relation relation = Relation::less_equal;
  std::int64_t rhs = 0;
  RowRole role = RowRole::coverage;
  std::uint32_t vertex = 0;  // coverage/propagation/delay rows
  std::uint32_t column = 0;  // column-indexed rows
};

/// Solver-agnostic linear model. Structured variables are laid out
/// vertex-major per role block: id = block_offset + i * columns + (j - 1).
struct LinearModel {
  Formulation formulation = Formulation::cov_csp;
  std::size_t n = 0;        // vertices
  std::size_t columns = 0;  // g or U
  std::vector<Label> labels;
  std::vector<Variable> variables;
  Sense sense = Sense::none;
  std::vector<Term> objective;
  std::vector<Constraint> constraints;

  std::size_t num_binaries() const {
    return static_cast<std::size_t>(std::count_if(variables.begin(), variables.end(),
                                                  [](const Variable& v) { return v.kind == VarKind::binary; }));
  }

  /// Flat id of s/b/x (vertex i 0-based, column j 1-based).
  std::size_t var_id(VarRole role, std::size_t i, std::size_t j) const {
    std::size_t block = 0;
    if (formulation == Formulation::prop_milp && role == VarRole::b) block = n * columns;
    return block + i * columns + (j - 1);
  }
  std::size_t z_id() const { return 2 * n * columns; }

  std::optional<std::size_t> find(const std::string& name) const {
    if (name_index_.empty() && !variables.empty()) {
      for (std::size_t k = 0; k < variables.size(); ++k) name_index_.emplace(variables[k].name, k);
    }
    auto it = name_index_.find(name);
    if (it == name_index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t count_rows(RowRole role) const {
    return static_cast<std::size_t>(
        std::count_if(constraints.begin(), constraints.end(), [&](const Constraint& c) { return c.role == role; }));
  }

 private:
  mutable std::unordered_map<std::string, std::size_t> name_index_;
};

struct Assignment {
  std::vector<double> values;
  double objective = 0.0;
};

inline constexpr double kIntegralityTolerance = 1e-6;

namespace detail {

inline std::string var_name(char prefix, std::size_t i, std::size_t j) {
  return std::string(1, prefix) + "_" + std::to_string(i + 1) + "_" + std::to_string(j);
}

inline void add_grid_vars(LinearModel& m, VarRole role, char prefix) {
  for (std::size_t i = 0; i < m.n; ++i)
    for (std::size_t j = 1; j <= m.columns; ++j)
      m.variables.push_back(Variable{var_name(prefix, i, j), VarKind::binary, 0.0, 1.0, role,
                                     static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
}

inline LinearModel skeleton(const Graph& g, Formulation f, std::size_t columns) {
  LinearModel m;
  m.formulation = f;
  m.n = g.num_vertices();
  m.columns = columns;
  m.labels = g.labels();
  return m;
}

/// Terms x_{k,j} for k in N_{j-1}[v_i], j in [first, last], ascending by id.
inline std::vector<Term> coverage_terms(const Graph& g, const LinearModel& m, Vertex vi, std::size_t first,
                                        std::size_t last, std::int64_t coef) {
  std::vector<Term> terms;
  if (last < first) return terms;
  auto dist = bfs_distances(g, vi, static_cast<std::uint32_t>(last - 1));
  for (Vertex k = 0; k < g.num_vertices(); ++k) {
    if (dist[k] == kUnreachable) continue;
    for (std::size_t j = std::max<std::size_t>(first, dist[k] + 1); j <= last; ++j)
      terms.push_back(Term{m.var_id(VarRole::x, k, j), coef});
  }
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.var < b.var; });
  return terms;
}

inline std::vector<Term> column_terms(const LinearModel& m, std::size_t j, std::int64_t coef) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < m.n; ++i) terms.push_back(Term{m.var_id(VarRole::x, i, j), coef});
  return terms;
}

inline void require_columns(std::size_t c, const char* what) {
  if (c < 1) throw ParameterError(std::string(what) + " must be at least 1");
}

}  // namespace detail

/// Propagation MILP with upper bound U: binaries s_{i,j}, b_{i,j}; continuous z >= 0.
inline LinearModel build_prop_milp(const Graph& g, std::size_t U) {
  detail::require_columns(U, "U");
  auto m = detail::skeleton(g, Formulation::prop_milp, U);
  detail::add_grid_vars(m, VarRole::s, 's');
  detail::add_grid_vars(m, VarRole::b, 'b');
  m.variables.push_back(Variable{"z", VarKind::continuous, 0.0, std::numeric_limits<double>::infinity(),
                                 VarRole::z, 0, 0});
  m.sense = Sense::minimize;
  m.objective = {Term{m.z_id(), 1}};

  // b_{i,j} - s_{i,j} - sum_{k in N[v_i]} b_{k,j-1} <= 0, with b_{k,0} = 0
  for (Vertex i = 0; i < m.n; ++i) {
    std::vector<Vertex> closed{i};
    for (Vertex k : g.neighbors(i)) closed.push_back(k);
    std::sort(closed.begin(), closed.end());
    for (std::size_t j = 1; j <= U; ++j) {
      Constraint c;
      c.name = "prop_" + std::to_string(i + 1) + "_" + std::to_string(j);
      c.role = RowRole::propagation;
      c.vertex = i;
      c.column = static_cast<std::uint32_t>(j);
      c.terms.push_back(Term{m.var_id(VarRole::s, i, j), -1});
      if (j > 1)
        for (Vertex k : closed) c.terms.push_back(Term{m.var_id(VarRole::b, k, j - 1), -1});
      c.terms.push_back(Term{m.var_id(VarRole::b, i, j), 1});
      std::sort(c.terms.begin(), c.terms.end(), [](const Term& a, const Term& b) { return a.var < b.var; });
      m.constraints.push_back(std::move(c));
    }
  }
  for (std::size_t j = 1; j <= U; ++j) {
    Constraint c;
    c.name = "col_" + std::to_string(j);
    c.role = RowRole::one_per_column;
    c.column = static_cast<std::uint32_t>(j);
    for (std::size_t i = 0; i < m.n; ++i) c.terms.push_back(Term{m.var_id(VarRole::s, i, j), 1});
    c.relation = Relation::equal;
    c.rhs = 1;
    m.constraints.push_back(std::move(c));
  }
  // sum_j (1 - b_{i,j}) <= z  <=>  -sum_j b_{i,j} - z <= -U
  for (Vertex i = 0; i < m.n; ++i) {
    Constraint c;
    c.name = "delay_" + std::to_string(i + 1);
    c.role = RowRole::delay;
    c.vertex = i;
    for (std::size_t j = 1; j <= U; ++j) c.terms.push_back(Term{m.var_id(VarRole::b, i, j), -1});
    c.terms.push_back(Term{m.z_id(), -1});
    c.rhs = -static_cast<std::int64_t>(U);
    m.constraints.push_back(std::move(c));
  }
  return m;
}

/// Coverage satisfaction problem for a guess g.
inline LinearModel build_cov_csp(const Graph& g, std::size_t guess) {
  detail::require_columns(guess, "g");
  auto m = detail::skeleton(g, Formulation::cov_csp, guess);
  detail::add_grid_vars(m, VarRole::x, 'x');
  m.sense = Sense::none;
  for (std::size_t j = 1; j <= guess; ++j)
    m.constraints.push_back(Constraint{"col_" + std::to_string(j), detail::column_terms(m, j, 1), Relation::equal,
                                       1, RowRole::one_per_column, 0, static_cast<std::uint32_t>(j)});
  for (Vertex i = 0; i < m.n; ++i)
    m.constraints.push_back(Constraint{"cover_" + std::to_string(i + 1),
                                       detail::coverage_terms(g, m, i, 1, guess, 1), Relation::greater_equal, 1,
                                       RowRole::coverage, i, 0});
  return m;
}

/// Coverage ILP for a guess g: maximize the burned-vertex count sum_i x_{i,1}.
inline LinearModel build_cov_ilp(const Graph& g, std::size_t guess) {
  detail::require_columns(guess, "g");
  auto m = detail::skeleton(g, Formulation::cov_ilp, guess);
  detail::add_grid_vars(m, VarRole::x, 'x');
  m.sense = Sense::maximize;
  for (std::size_t i = 0; i < m.n; ++i) m.objective.push_back(Term{m.var_id(VarRole::x, i, 1), 1});
  for (std::size_t j = 2; j <= guess; ++j)
    m.constraints.push_back(Constraint{"col_" + std::to_string(j), detail::column_terms(m, j, 1), Relation::equal,
                                       1, RowRole::one_per_column, 0, static_cast<std::uint32_t>(j)});
  for (Vertex i = 0; i < m.n; ++i) {
    auto terms = detail::coverage_terms(g, m, i, 2, guess, -1);
    terms.insert(terms.begin(), Term{m.var_id(VarRole::x, i, 1), 1});
    m.constraints.push_back(Constraint{"cover_" + std::to_string(i + 1), std::move(terms), Relation::less_equal, 0,
                                       RowRole::coverage, i, 0});
  }
  return m;
}

/// GBP ILP with upper bound U. `coverage_rows` restricts the coverage rows to
/// the listed vertices (row generation); nullopt builds all n rows.
///
/// The compound column-usage chain is materialized as U - 1 links
/// (sum_i x_{i,j} - sum_i x_{i,j-1} <= 0, j = 2..U) plus U unit caps
/// (sum_i x_{i,j} <= 1, j = 1..U), i.e. 2U - 1 rows.
inline LinearModel build_gbp_ilp(const Graph& g, std::size_t U,
                                 std::optional<std::span<const Vertex>> coverage_rows = std::nullopt) {
  detail::require_columns(U, "U");
  auto m = detail::skeleton(g, Formulation::gbp_ilp, U);
  detail::add_grid_vars(m, VarRole::x, 'x');
  m.sense = Sense::minimize;
  for (std::size_t k = 0; k < m.variables.size(); ++k) m.objective.push_back(Term{k, 1});
  for (std::size_t j = 2; j <= U; ++j) {
    auto terms = detail::column_terms(m, j, 1);
    auto prev = detail::column_terms(m, j - 1, -1);
    terms.insert(terms.end(), prev.begin(), prev.end());
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.var < b.var; });
    m.constraints.push_back(Constraint{"chain_" + std::to_string(j), std::move(terms), Relation::less_equal, 0,
                                       RowRole::chain, 0, static_cast<std::uint32_t>(j)});
  }
  for (std::size_t j = 1; j <= U; ++j)
    m.constraints.push_back(Constraint{"cap_" + std::to_string(j), detail::column_terms(m, j, 1),
                                       Relation::less_equal, 1, RowRole::cap, 0, static_cast<std::uint32_t>(j)});
  auto add_cover = [&](Vertex i) {
    m.constraints.push_back(Constraint{"cover_" + std::to_string(i + 1), detail::coverage_terms(g, m, i, 1, U, 1),
                                       Relation::greater_equal, 1, RowRole::coverage, i, 0});
  };
  if (coverage_rows) {
    for (Vertex i : *coverage_rows) {
      if (i >= m.n) throw ParameterError("coverage row vertex out of range");
      add_cover(i);
    }
  } else {
    for (Vertex i = 0; i < m.n; ++i) add_cover(i);
  }
  return m;
}

/// Appends a coverage row for vertex `i` to a GBP-ILP model.
inline void add_gbp_coverage_row(LinearModel& m, const Graph& g, Vertex i) {
  if (m.formulation != Formulation::gbp_ilp) throw ParameterError("coverage rows can only be added to GBP-ILP");
  m.constraints.push_back(Constraint{"cover_" + std::to_string(i + 1), detail::coverage_terms(g, m, i, 1, m.columns, 1),
                                     Relation::greater_equal, 1, RowRole::coverage, i, 0});
}

// ---------------------------------------------------------------------------
// Evaluation helpers

inline double row_activity(const Constraint& c, std::span<const double> values) {
  double a = 0.0;
  for (const auto& t : c.terms) a += static_cast<double>(t.coef) * values[t.var];
  return a;
}

inline double evaluate_objective(const LinearModel& m, std::span<const double> values) {
  double o = 0.0;
  for (const auto& t : m.objective) o += static_cast<double>(t.coef) * values[t.var];
  return o;
}

/// Names of rows violated by more than `tol`.
inline std::vector<std::string> violated_rows(const LinearModel& m, std::span<const double> values,
                                              double tol = kIntegralityTolerance) {
  std::vector<std::string> out;
  for (const auto& c : m.constraints) {
    double a = row_activity(c, values);
    auto rhs = static_cast<double>(c.rhs);
    bool ok = c.relation == Relation::less_equal ? a <= rhs + tol
              : c.relation == Relation::greater_equal ? a >= rhs - tol
                                                      : std::abs(a - rhs) <= tol;
    if (!ok) out.push_back(c.name);
  }
  for (std::size_t k = 0; k < m.variables.size(); ++k) {
    const auto& v = m.variables[k];
    if (values[k] < v.lower - tol || values[k] > v.upper + tol) out.push_back(v.name + " (bounds)");
  }
  return out;
}

// ---------------------------------------------------------------------------
// LP file

namespace detail {

inline void write_terms(std::ostream& out, const LinearModel& m, const std::vector<Term>& terms) {
  bool first = true;
  for (const auto& t : terms) {
    if (t.coef == 0) continue;
    std::int64_t mag = t.coef < 0 ? -t.coef : t.coef;
    if (first)
      out << (t.coef < 0 ? "- " : "");
    else
      out << (t.coef < 0 ? " - " : " + ");
    if (mag != 1) out << mag << ' ';
    out << m.variables[t.var].name;
    first = false;
  }
  if (first) out << "0 " << m.variables.front().name;
}

inline const char* relation_token(Relation r) {
  switch (r) {
    case Relation::less_equal: return "<=";
    case Relation::equal: return "=";
    case Relation::greater_equal: return ">=";
  }
  return "?";
}

}  // namespace detail

/// CPLEX LP text. Satisfaction models get a zero objective.
inline void write_lp(std::ostream& out, const LinearModel& m) {
  out << "\\ " << to_string(m.formulation) << " n=" << m.n << " columns=" << m.columns << '\n';
  out << (m.sense == Sense::maximize ? "Maximize" : "Minimize") << '\n';
  out << " obj: ";
  if (m.sense == Sense::none || m.objective.empty())
    out << "0 " << m.variables.front().name;
  else
    detail::write_terms(out, m, m.objective);
  out << "\nSubject To\n";
  for (const auto& c : m.constraints) {
    out << ' ' << c.name << ": ";
    detail::write_terms(out, m, c.terms);
    out << ' ' << detail::relation_token(c.relation) << ' ' << c.rhs << '\n';
  }
  out << "Bounds\n";
  for (const auto& v : m.variables)
    if (v.kind == VarKind::continuous) {
      if (std::isinf(v.upper))
        out << ' ' << v.name << " >= " << v.lower << '\n';
      else
        out << ' ' << v.lower << " <= " << v.name << " <= " << v.upper << '\n';
    }
  out << "Binaries\n";
  std::size_t on_line = 0;
  for (const auto& v : m.variables) {
    if (v.kind != VarKind::binary) continue;
    out << (on_line == 0 ? " " : " ") << v.name;
    if (++on_line == 10) {
      out << '\n';
      on_line = 0;
    }
  }
  if (on_line) out << '\n';
  out << "End\n";
}

inline void write_lp(const LinearModel& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  write_lp(out, m);
  if (!out) throw Error("write failed: " + path.string());
}

// ---------------------------------------------------------------------------
// Decoding

struct DecodeResult {
  /// Empty when the assignment encodes no burning sequence (COV-ILP with
  /// objective below n - 1).
  std::optional<BurningSequence> sequence;
  std::string note;
};

namespace detail {

inline bool as_bit(double v) {
  double r = std::round(v);
  if (std::abs(v - r) > kIntegralityTolerance || (r != 0.0 && r != 1.0))
    throw DecodeError("non-binary value " + std::to_string(v));
  return r == 1.0;
}

/// The unique vertex set in column j of `role`, nullopt if the column is empty.
inline std::optional<Vertex> column_choice(const LinearModel& m, const Assignment& a, VarRole role, std::size_t j) {
  std::optional<Vertex> found;
  for (std::size_t i = 0; i < m.n; ++i)
    if (as_bit(a.values[m.var_id(role, i, j)])) {
      if (found) throw DecodeError("column " + std::to_string(j) + " selects more than one vertex");
      found = static_cast<Vertex>(i);
    }
  return found;
}

}  // namespace detail

/// Column j carries radius j - 1, so it lands at sequence position g - j + 1.
inline DecodeResult decode(const LinearModel& m, const Assignment& a) {
  if (a.values.size() != m.variables.size()) throw DecodeError("assignment size does not match model");
  DecodeResult r;
  switch (m.formulation) {
    case Formulation::prop_milp: {
      double z = a.values[m.z_id()];
      double zr = std::round(z);
      if (std::abs(z - zr) > kIntegralityTolerance || zr < 0) throw DecodeError("z is not a non-negative integer");
      auto len = static_cast<std::size_t>(zr) + 1;
      if (len > m.columns) throw DecodeError("z + 1 exceeds U");
      BurningSequence s;
      for (std::size_t j = 1; j <= len; ++j) {
        auto v = detail::column_choice(m, a, VarRole::s, j);
        if (!v) throw DecodeError("sequence column " + std::to_string(j) + " is empty");
        s.vertices.push_back(*v);
      }
      for (std::size_t j = len + 1; j <= m.columns; ++j) detail::column_choice(m, a, VarRole::s, j);
      r.sequence = std::move(s);
      break;
    }
    case Formulation::cov_csp: {
      BurningSequence s;
      s.vertices.resize(m.columns);
      for (std::size_t j = 1; j <= m.columns; ++j) {
        auto v = detail::column_choice(m, a, VarRole::x, j);
        if (!v) throw DecodeError("column " + std::to_string(j) + " is empty");
        s.vertices[m.columns - j] = *v;
      }
      r.sequence = std::move(s);
      break;
    }
    case Formulation::cov_ilp: {
      std::size_t burned = 0;
      std::optional<Vertex> missing;
      for (std::size_t i = 0; i < m.n; ++i) {
        if (detail::as_bit(a.values[m.var_id(VarRole::x, i, 1)]))
          ++burned;
        else if (!missing)
          missing = static_cast<Vertex>(i);
      }
      if (burned + 1 < m.n) {
        r.note = "objective " + std::to_string(burned) + " < n - 1: no burning sequence of length " +
                 std::to_string(m.columns);
        break;
      }
      BurningSequence s;
      s.vertices.resize(m.columns);
      for (std::size_t j = 2; j <= m.columns; ++j) {
        auto v = detail::column_choice(m, a, VarRole::x, j);
        if (!v) throw DecodeError("column " + std::to_string(j) + " is empty");
        s.vertices[m.columns - j] = *v;
      }
      s.vertices[m.columns - 1] = missing.value_or(0);
      r.sequence = std::move(s);
      break;
    }
    case Formulation::gbp_ilp: {
      std::vector<Vertex> used;
      bool ended = false;
      for (std::size_t j = 1; j <= m.columns; ++j) {
        auto v = detail::column_choice(m, a, VarRole::x, j);
        if (!v) {
          ended = true;
          continue;
        }
        if (ended) throw DecodeError("used columns are not a prefix");
        used.push_back(*v);
      }
      BurningSequence s;
      s.vertices.assign(used.rbegin(), used.rend());
      r.sequence = std::move(s);
      break;
    }
  }
  return r;
}

}  // namespace gburn
