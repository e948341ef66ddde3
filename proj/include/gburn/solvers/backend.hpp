#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "gburn/solvers/annealing.hpp"
#include "gburn/solvers/coverage_search.hpp"
#include "gburn/solvers/external.hpp"
#include "gburn/solvers/internal_ilp.hpp"
#include "gburn/solvers/qubo_exact.hpp"
#include "gburn/solvers/report.hpp"

namespace gburn {

enum class BackendKind { internal_exhaustive, external_command, simulated_annealing };

inline const char* to_string(BackendKind k) {
  switch (k) {
    case BackendKind::internal_exhaustive: return "internal-exhaustive";
    case BackendKind::external_command: return "external-command";
    case BackendKind::simulated_annealing: return "simulated-annealing";
  }
  return "?";
}

struct Backend {
  BackendKind kind = BackendKind::internal_exhaustive;
  std::uint64_t node_budget = kDefaultNodeBudget;
  std::size_t ilp_binary_limit = 40;
  std::size_t exhaustive_dim_limit = kDefaultExhaustiveDimLimit;
  ExternalProfile external;
  SaParams sa;

  IlpOptions ilp_options() const {
    IlpOptions o;
    o.binary_limit = ilp_binary_limit;
    o.node_budget = node_budget;
    return o;
  }

  UquboSearchOptions uqubo_options() const {
    UquboSearchOptions o;
    o.node_budget = node_budget;
    o.exhaustive_dim_limit = std::min<std::size_t>(exhaustive_dim_limit, 22);
    return o;
  }

  Json to_json() const {
    Json j;
    j["kind"] = to_string(kind);
    switch (kind) {
      case BackendKind::internal_exhaustive:
        j["node_budget"] = node_budget;
        j["ilp_binary_limit"] = ilp_binary_limit;
        j["exhaustive_dim_limit"] = exhaustive_dim_limit;
        break;
      case BackendKind::external_command:
        j["profile"] = external.name;
        j["command"] = external.command;
        j["infeasible_marker"] = external.infeasible_marker;
        break;
      case BackendKind::simulated_annealing:
        j["initial_temperature"] = sa.initial_temperature;
        j["final_temperature"] = sa.final_temperature;
        j["cooling"] = sa.cooling;
        j["steps_per_temperature"] = sa.steps_per_temperature;
        j["restarts"] = sa.restarts;
        j["seed"] = sa.seed;
        break;
    }
    return j;
  }
};

/// Outcome of solving one LinearModel with a linear backend.
struct LinearSolve {
  bool infeasible = false;
  Assignment assignment;
  std::string path;
};

inline LinearSolve solve_linear(const LinearModel& m, const Backend& b) {
  LinearSolve s;
  if (b.kind == BackendKind::internal_exhaustive) {
    auto r = internal_ilp_solve(m, b.ilp_options());
    s.infeasible = r.status == IlpStatus::infeasible;
    s.assignment = std::move(r.assignment);
    s.path = r.path;
  } else if (b.kind == BackendKind::external_command) {
    auto r = external_solve(m, b.external);
    s.infeasible = r.infeasible;
    s.assignment = std::move(r.assignment);
    s.path = b.external.name;
    if (!s.infeasible) {
      auto bad = violated_rows(m, s.assignment.values);
      if (!bad.empty()) throw BackendError("external solution violates row " + bad.front());
    }
  } else {
    throw ParameterError("linear models need the internal or an external backend");
  }
  return s;
}

}  // namespace gburn
