#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "gburn/errors.hpp"
#include "gburn/graph.hpp"
#include "gburn/vertex_set.hpp"

namespace gburn {

inline constexpr std::uint64_t kDefaultNodeBudget = 100'000'000;

/// One selectable vertex of a column and the targets it covers.
struct CoverageCandidate {
  Vertex vertex = 0;
  VertexSet covers;
};

/// Choose exactly one candidate per column to maximize covered targets.
struct CoverageProblem {
  std::size_t num_targets = 0;
  std::vector<std::vector<CoverageCandidate>> columns;  // candidates in preference order
};

struct CoverageSearchOptions {
  /// Stop as soon as this many targets are covered.
  std::optional<std::size_t> stop_at;
  std::uint64_t node_budget = kDefaultNodeBudget;
};

struct CoverageSearchResult {
  std::size_t covered = 0;
  std::vector<Vertex> choice;  // one vertex per column
  std::uint64_t nodes = 0;
};

namespace detail {

/// Drops candidates whose cover set is contained in that of an earlier
/// candidate. The earlier one is never worse and comes first in preference
/// order, so the first optimum found is unchanged.
inline std::vector<CoverageCandidate> drop_dominated(std::vector<CoverageCandidate> cands) {
  if (cands.size() > 4096) return cands;
  std::vector<CoverageCandidate> kept;
  for (auto& c : cands) {
    bool dominated = false;
    for (const auto& k : kept)
      if (c.covers.is_subset_of(k.covers)) {
        dominated = true;
        break;
      }
    if (!dominated) kept.push_back(std::move(c));
  }
  return kept;
}

class CoverageSearch {
 public:
  CoverageSearch(const CoverageProblem& p, const CoverageSearchOptions& opt) : opt_(opt) {
    num_targets_ = p.num_targets;
    for (const auto& col : p.columns) {
      if (col.empty()) throw ParameterError("coverage column without candidates");
      columns_.push_back(drop_dominated(col));
    }
    const std::size_t depth = columns_.size();
    suffix_max_.assign(depth + 1, 0);
    for (std::size_t c = depth; c-- > 0;) {
      std::size_t mx = 0;
      for (const auto& cand : columns_[c]) mx = std::max(mx, cand.covers.count());
      suffix_max_[c] = suffix_max_[c + 1] + mx;
    }
    uncovered_.assign(depth + 1, VertexSet::full(num_targets_));
    current_.assign(depth, 0);
  }

  CoverageSearchResult run() {
    dfs(0, 0);
    CoverageSearchResult r;
    r.covered = best_ < 0 ? 0 : static_cast<std::size_t>(best_);
    r.choice = best_choice_;
    r.nodes = nodes_;
    return r;
  }

 private:
  /// Upper bound on the targets the remaining columns can still add.
  std::size_t remaining_gain(std::size_t depth) const {
    const auto& unc = uncovered_[depth];
    std::size_t total = 0;
    for (std::size_t c = depth; c < columns_.size(); ++c) {
      std::size_t mx = 0;
      for (const auto& cand : columns_[c]) mx = std::max(mx, cand.covers.intersection_count(unc));
      total += mx;
    }
    return total;
  }

  bool done() const { return opt_.stop_at && best_ >= static_cast<std::int64_t>(*opt_.stop_at); }

  void dfs(std::size_t depth, std::size_t covered) {
    if (++nodes_ > opt_.node_budget)
      throw CapacityError("coverage search exceeded its node budget of " + std::to_string(opt_.node_budget) +
                          "; use the row-generation path for larger instances");
    if (depth == columns_.size()) {
      if (static_cast<std::int64_t>(covered) > best_) {
        best_ = static_cast<std::int64_t>(covered);
        best_choice_ = current_;
      }
      return;
    }
    auto cap = [&](std::size_t x) { return std::min(x, num_targets_); };
    if (static_cast<std::int64_t>(cap(covered + suffix_max_[depth])) <= best_) return;
    if (static_cast<std::int64_t>(cap(covered + remaining_gain(depth))) <= best_) return;

    const auto& unc = uncovered_[depth];
    bool tried_empty = false;
    for (const auto& cand : columns_[depth]) {
      std::size_t gain = cand.covers.intersection_count(unc);
      if (gain == 0) {
        // Any zero-gain choice is interchangeable with the first one tried.
        if (tried_empty) continue;
        tried_empty = true;
      }
      uncovered_[depth + 1] = unc;
      uncovered_[depth + 1].subtract(cand.covers);
      current_[depth] = cand.vertex;
      dfs(depth + 1, covered + gain);
      if (done()) return;
    }
  }

  CoverageSearchOptions opt_;
  std::size_t num_targets_ = 0;
  std::vector<std::vector<CoverageCandidate>> columns_;
  std::vector<std::size_t> suffix_max_;
  std::vector<VertexSet> uncovered_;
  std::vector<Vertex> current_;
  std::vector<Vertex> best_choice_;
  std::int64_t best_ = -1;
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

/// Depth-first branch and bound over one candidate per column, columns in the
/// given order, candidates in preference order. Returns the first optimum in
/// that order (lexicographically smallest), or the first selection reaching
/// `stop_at`.
inline CoverageSearchResult search_max_coverage(const CoverageProblem& p, const CoverageSearchOptions& opt = {}) {
  if (p.columns.empty()) return {};
  return detail::CoverageSearch(p, opt).run();
}

/// Ball bitsets per radius: balls[r][v] = N_r[v], r = 0..max_radius.
inline std::vector<std::vector<VertexSet>> radius_balls(const Graph& g, std::uint32_t max_radius) {
  const std::size_t n = g.num_vertices();
  std::vector<std::vector<VertexSet>> balls(max_radius + 1, std::vector<VertexSet>(n, VertexSet(n)));
  for (Vertex v = 0; v < n; ++v) {
    auto dist = bfs_distances(g, v, max_radius);
    for (Vertex w = 0; w < n; ++w)
      if (dist[w] != kUnreachable)
        for (std::uint32_t r = dist[w]; r <= max_radius; ++r) balls[r][v].set(w);
  }
  return balls;
}

}  // namespace gburn
