#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "gburn/burning.hpp"
#include "gburn/formulations.hpp"
#include "gburn/solvers/backend.hpp"

namespace gburn {

/// GBP-ILP with lazily added coverage rows. Starts from the first 2U
/// vertices of greedy_permutation(G, v_1, 2U); after each solve, if some
/// vertex is left unburned, adds rows for greedy_permutation(G, w, U) with w
/// the lowest-index unburned vertex, and solves again.
inline SolveReport row_generation_solve(const Graph& G, std::size_t U, const Backend& b) {
  if (b.kind == BackendKind::simulated_annealing) throw ParameterError("row generation needs a linear backend");
  if (U < 1) throw ParameterError("U must be at least 1");
  Stopwatch total;
  SolveReport rep;
  rep.method = "row-generation";
  rep.backend = b.to_json();
  rep.initial_upper_bound = U;
  const std::size_t n = G.num_vertices();
  if (n == 0) {
    rep.coverage_rows = 0;
    return rep;
  }

  std::vector<bool> has_row(n, false);
  std::vector<Vertex> initial;
  for (auto v : greedy_permutation(G, 0, 2 * U)) {
    has_row[v] = true;
    initial.push_back(v);
  }
  auto m = build_gbp_ilp(G, U, std::span<const Vertex>(initial));
  std::size_t cc = initial.size();

  for (std::size_t round = 1;; ++round) {
    Stopwatch sw;
    LinearSolve s;
    try {
      s = solve_linear(m, b);
    } catch (const CapacityError& ex) {
      throw CapacityError("row generation round " + std::to_string(round) + ": " + ex.what());
    } catch (const BackendError& ex) {
      throw BackendError("row generation round " + std::to_string(round) + ": " + ex.what());
    }
    if (s.infeasible)
      throw ParameterError("GBP-ILP with U = " + std::to_string(U) + " is infeasible, so U < b(G)");
    auto d = decode(m, s.assignment);
    if (!d.sequence) throw BackendError("GBP-ILP solution does not decode: " + d.note);
    auto uncovered = uncovered_vertices(G, *d.sequence);

    IterationRecord it;
    it.guess = U;
    it.round = round;
    it.backend = to_string(b.kind);
    it.sizes = {{"variables", m.variables.size()}, {"constraints", m.constraints.size()}, {"cc", cc}};
    it.objective = std::llround(s.assignment.objective);
    it.violated = uncovered;
    it.success = uncovered.empty();
    it.detail = s.path;

    if (uncovered.empty()) {
      it.seconds = sw.seconds();
      rep.iterations.push_back(std::move(it));
      rep.witness = *d.sequence;
      rep.burning_number = d.sequence->length();
      break;
    }
    Vertex seed = *std::min_element(uncovered.begin(), uncovered.end());
    std::size_t before = cc;
    for (auto v : greedy_permutation(G, seed, U))
      if (!has_row[v]) {
        has_row[v] = true;
        add_gbp_coverage_row(m, G, v);
        ++cc;
      }
    if (cc == before) throw BackendError("row generation stalled: no new coverage rows");
    it.seconds = sw.seconds();
    rep.iterations.push_back(std::move(it));
  }
  rep.coverage_rows = cc;
  rep.status = SolveStatus::optimal;
  rep.total_seconds = total.seconds();
  return rep;
}

}  // namespace gburn
