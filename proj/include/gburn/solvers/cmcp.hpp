#pragma once

#include <cstddef>
#include <cstdint>

#include "gburn/burning.hpp"
#include "gburn/solvers/coverage_search.hpp"

namespace gburn {

struct CmcpOptions {
  bool stop_when_full = false;  // decision mode: stop at the first full cover
  std::uint64_t node_budget = kDefaultNodeBudget;
};

struct CmcpResult {
  std::size_t covered = 0;
  BurningSequence selection;  // u_1 (radius g-1) ... u_g (radius 0)
  std::uint64_t nodes = 0;
};

/// Clustered maximum coverage for guess g: pick one vertex per radius
/// g-1, ..., 0 to maximize |N_{g-1}[u_1] U ... U N_0[u_g]|.
inline CmcpResult solve_cmcp_exhaustive(const Graph& g, std::size_t guess, const CmcpOptions& opt = {}) {
  if (guess < 1) throw ParameterError("g must be at least 1");
  const std::size_t n = g.num_vertices();
  if (n == 0) return {};
  auto balls = radius_balls(g, static_cast<std::uint32_t>(guess - 1));
  CoverageProblem p;
  p.num_targets = n;
  for (std::size_t pos = 0; pos < guess; ++pos) {
    const auto& layer = balls[guess - 1 - pos];
    std::vector<CoverageCandidate> col;
    col.reserve(n);
    for (Vertex v = 0; v < n; ++v) col.push_back({v, layer[v]});
    p.columns.push_back(std::move(col));
  }
  CoverageSearchOptions so;
  so.node_budget = opt.node_budget;
  if (opt.stop_when_full) so.stop_at = n;
  auto r = search_max_coverage(p, so);
  return {r.covered, BurningSequence{r.choice}, r.nodes};
}

}  // namespace gburn
