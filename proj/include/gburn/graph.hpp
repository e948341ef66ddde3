#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gburn/errors.hpp"

namespace gburn {

using Vertex = std::uint32_t;
using Label = std::int64_t;
using Edge = std::pair<Vertex, Vertex>;

inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

/// Immutable undirected simple graph in CSR form.
///
/// Vertices are dense indices 0..n-1. Every vertex carries an external label
/// (the id used in input files and in all user-facing output); generated
/// graphs use labels 1..n so that vertex v_i prints as `i`.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph over `n` vertices. Self-loops and duplicate edges (in
  /// either orientation) are dropped. `labels` defaults to 1..n.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges,
                          std::vector<Label> labels = {}) {
    Graph g;
    if (labels.empty()) {
      labels.resize(n);
      for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<Label>(i + 1);
    }
    if (labels.size() != n) throw ParameterError("label count does not match vertex count");

    std::vector<Edge> canon;
    canon.reserve(edges.size());
    for (auto [u, v] : edges) {
      if (u >= n || v >= n) throw ParameterError("edge endpoint out of range");
      if (u == v) continue;
      canon.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(canon.begin(), canon.end());
    canon.erase(std::unique(canon.begin(), canon.end()), canon.end());

    g.offsets_.assign(n + 1, 0);
    for (auto [u, v] : canon) {
      ++g.offsets_[u + 1];
      ++g.offsets_[v + 1];
    }
    for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
    g.targets_.resize(2 * canon.size());
    std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    for (auto [u, v] : canon) {
      g.targets_[fill[u]++] = v;
      g.targets_[fill[v]++] = u;
    }
    for (std::size_t i = 0; i < n; ++i)
      std::sort(g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i]),
                g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i + 1]));

    g.labels_ = std::move(labels);
    g.index_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!g.index_.emplace(g.labels_[i], static_cast<Vertex>(i)).second)
        throw ParameterError("duplicate vertex label " + std::to_string(g.labels_[i]));
    }
    return g;
  }

  std::size_t num_vertices() const { return labels_.size(); }
  std::size_t num_edges() const { return targets_.size() / 2; }
  bool empty() const { return labels_.empty(); }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {targets_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  Label label(Vertex v) const { return labels_[v]; }
  const std::vector<Label>& labels() const { return labels_; }
  std::optional<Vertex> find_label(Label l) const {
    auto it = index_.find(l);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Edges as (u, v) with u < v in ascending order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(num_edges());
    for (Vertex u = 0; u < num_vertices(); ++u)
      for (Vertex v : neighbors(u))
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.offsets_ == b.offsets_ && a.targets_ == b.targets_ && a.labels_ == b.labels_;
  }

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> targets_;
  std::vector<Label> labels_;
  std::unordered_map<Label, Vertex> index_;
};

/// Multi-source BFS truncated at `max_depth`. Entries beyond the depth, or in
/// other components, are kUnreachable.
inline std::vector<std::uint32_t> bfs_distances(const Graph& g, std::span<const Vertex> sources,
                                                std::uint32_t max_depth = kUnreachable) {
  std::vector<std::uint32_t> dist(g.num_vertices(), kUnreachable);
  std::vector<Vertex> frontier;
  for (Vertex s : sources) {
    if (dist[s] != 0) {
      dist[s] = 0;
      frontier.push_back(s);
    }
  }
  std::vector<Vertex> next;
  for (std::uint32_t depth = 0; depth < max_depth && !frontier.empty(); ++depth) {
    next.clear();
    for (Vertex u : frontier)
      for (Vertex w : g.neighbors(u))
        if (dist[w] == kUnreachable) {
          dist[w] = depth + 1;
          next.push_back(w);
        }
    frontier.swap(next);
  }
  return dist;
}

inline std::vector<std::uint32_t> bfs_distances(const Graph& g, Vertex source,
                                                std::uint32_t max_depth = kUnreachable) {
  return bfs_distances(g, std::span<const Vertex>(&source, 1), max_depth);
}

/// Closed r-neighborhood N_r[v], ascending. Never explores beyond depth r.
inline std::vector<Vertex> neighborhood(const Graph& g, Vertex v, std::uint32_t r) {
  if (v >= g.num_vertices()) throw ParameterError("vertex out of range");
  std::vector<Vertex> ball{v};
  std::vector<Vertex> frontier{v};
  std::vector<Vertex> next;
  std::vector<char> seen(g.num_vertices(), 0);
  seen[v] = 1;
  for (std::uint32_t depth = 0; depth < r && !frontier.empty(); ++depth) {
    next.clear();
    for (Vertex u : frontier)
      for (Vertex w : g.neighbors(u))
        if (!seen[w]) {
          seen[w] = 1;
          next.push_back(w);
          ball.push_back(w);
        }
    frontier.swap(next);
  }
  std::sort(ball.begin(), ball.end());
  return ball;
}

using NeighborhoodTable = std::vector<std::vector<Vertex>>;

inline constexpr std::size_t kDefaultTableBudget = std::size_t{1} << 26;  // entries

/// N_r[v] for every v. `budget` caps the total number of stored entries.
inline NeighborhoodTable all_pairs_within(const Graph& g, std::uint32_t r,
                                          std::size_t budget = kDefaultTableBudget) {
  NeighborhoodTable table(g.num_vertices());
  std::size_t used = 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    table[v] = neighborhood(g, v, r);
    used += table[v].size();
    if (used > budget)
      throw CapacityError("radius-" + std::to_string(r) +
                          " neighborhood table exceeds the memory budget; query neighborhoods on demand");
  }
  return table;
}

struct Components {
  std::vector<std::uint32_t> id;  // per vertex, numbered by lowest member
  std::size_t count = 0;
};

inline Components connected_components(const Graph& g) {
  Components c;
  c.id.assign(g.num_vertices(), kUnreachable);
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < g.num_vertices(); ++s) {
    if (c.id[s] != kUnreachable) continue;
    auto cid = static_cast<std::uint32_t>(c.count++);
    c.id[s] = cid;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbors(u))
        if (c.id[w] == kUnreachable) {
          c.id[w] = cid;
          stack.push_back(w);
        }
    }
  }
  return c;
}

/// Farthest-first traversal: order[0] = start, each next vertex maximizes
/// its distance to the vertices already chosen. Unreachable counts as
/// infinitely far; ties go to the lowest index. Stops after k vertices, or
/// once every vertex has been chosen.
inline std::vector<Vertex> greedy_permutation(const Graph& g, Vertex start, std::size_t k) {
  if (start >= g.num_vertices()) throw ParameterError("start vertex out of range");
  if (k == 0) throw ParameterError("greedy permutation length must be at least 1");
  k = std::min(k, g.num_vertices());
  std::vector<Vertex> order{start};
  std::vector<char> chosen(g.num_vertices(), 0);
  chosen[start] = 1;
  while (order.size() < k) {
    auto dist = bfs_distances(g, order);
    Vertex best = 0;
    std::uint32_t best_d = 0;
    bool found = false;
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      if (chosen[v]) continue;
      if (!found || dist[v] > best_d) {
        best = v;
        best_d = dist[v];
        found = true;
      }
    }
    if (!found) break;
    chosen[best] = 1;
    order.push_back(best);
  }
  return order;
}

}  // namespace gburn
