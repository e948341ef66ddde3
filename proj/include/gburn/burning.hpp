#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "gburn/graph.hpp"
#include "gburn/vertex_set.hpp"

namespace gburn {

/// Ordered fire sources (u_1, ..., u_g). Position p (0-based) burns with
/// radius g - 1 - p. Repeated vertices are allowed.
struct BurningSequence {
  std::vector<Vertex> vertices;

  std::size_t length() const { return vertices.size(); }
  std::uint32_t radius_at(std::size_t pos) const {
    return static_cast<std::uint32_t>(vertices.size() - 1 - pos);
  }
  friend bool operator==(const BurningSequence&, const BurningSequence&) = default;
};

/// rounds[j] holds the burned vertices after step j + 1, ascending.
struct PropagationTrace {
  std::vector<std::vector<Vertex>> rounds;
};

struct FireSourceCounts {
  std::vector<std::uint32_t> counts;  // l_i per vertex
  BurningSequence sequence;

  std::uint32_t min() const {
    return counts.empty() ? 0 : *std::min_element(counts.begin(), counts.end());
  }
};

namespace detail {

inline void check_sequence(const Graph& g, const BurningSequence& s) {
  for (Vertex v : s.vertices)
    if (v >= g.num_vertices()) throw ParameterError("burning sequence vertex out of range");
}

/// Remaining burn budget per vertex: max over j of (g - j) - d(v, u_j), or
/// -1 when no source reaches v. Bucketed multi-source BFS, O(g + n + m).
inline std::vector<std::int64_t> coverage_slack(const Graph& g, const BurningSequence& s) {
  check_sequence(g, s);
  const std::size_t n = g.num_vertices();
  std::vector<std::int64_t> slack(n, -1);
  const std::size_t len = s.length();
  if (len == 0) return slack;
  std::vector<std::vector<Vertex>> bucket(len);
  for (std::size_t p = 0; p < len; ++p) {
    Vertex u = s.vertices[p];
    auto r = static_cast<std::int64_t>(s.radius_at(p));
    if (r > slack[u]) {
      slack[u] = r;
      bucket[static_cast<std::size_t>(r)].push_back(u);
    }
  }
  for (std::size_t r = len - 1; r >= 1; --r) {
    for (Vertex u : bucket[r]) {
      if (slack[u] != static_cast<std::int64_t>(r)) continue;  // superseded
      for (Vertex w : g.neighbors(u))
        if (slack[w] < static_cast<std::int64_t>(r) - 1) {
          slack[w] = static_cast<std::int64_t>(r) - 1;
          bucket[r - 1].push_back(w);
        }
    }
  }
  return slack;
}

}  // namespace detail

/// Vertices no source reaches in time, ascending.
inline std::vector<Vertex> uncovered_vertices(const Graph& g, const BurningSequence& s) {
  auto slack = detail::coverage_slack(g, s);
  std::vector<Vertex> out;
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (slack[v] < 0) out.push_back(v);
  return out;
}

/// True iff N_{g-1}[u_1] U ... U N_0[u_g] = V.
inline bool validate(const Graph& g, const BurningSequence& s) {
  auto slack = detail::coverage_slack(g, s);
  return std::all_of(slack.begin(), slack.end(), [](std::int64_t x) { return x >= 0; });
}

inline PropagationTrace simulate(const Graph& g, const BurningSequence& s) {
  detail::check_sequence(g, s);
  PropagationTrace trace;
  std::vector<char> burned(g.num_vertices(), 0);
  std::vector<Vertex> current;
  for (Vertex u : s.vertices) {
    std::vector<Vertex> spread;
    for (Vertex v : current)
      for (Vertex w : g.neighbors(v))
        if (!burned[w]) {
          burned[w] = 1;
          spread.push_back(w);
        }
    if (!burned[u]) {
      burned[u] = 1;
      spread.push_back(u);
    }
    current.insert(current.end(), spread.begin(), spread.end());
    std::sort(current.begin(), current.end());
    trace.rounds.push_back(current);
  }
  return trace;
}

/// l_i = |{ j : d(v_i, u_j) <= g - j }|.
inline FireSourceCounts fire_sources(const Graph& g, const BurningSequence& s) {
  detail::check_sequence(g, s);
  FireSourceCounts out;
  out.sequence = s;
  out.counts.assign(g.num_vertices(), 0);
  for (std::size_t p = 0; p < s.length(); ++p)
    for (Vertex v : neighborhood(g, s.vertices[p], s.radius_at(p))) ++out.counts[v];
  return out;
}

/// Max-coverage greedy: for g = 1, 2, ..., fill radii g-1 down to 0 with the
/// vertex whose ball covers the most uncovered vertices (lowest index on
/// ties); return the first g whose pass covers everything.
inline BurningSequence greedy_heuristic(const Graph& g) {
  const std::size_t n = g.num_vertices();
  if (n == 0) return {};
  // Balls are recomputed per radius; cache by radius as g grows.
  std::vector<std::vector<VertexSet>> balls;
  auto ball = [&](std::uint32_t r) -> const std::vector<VertexSet>& {
    while (balls.size() <= r) {
      auto rr = static_cast<std::uint32_t>(balls.size());
      std::vector<VertexSet> layer(n, VertexSet(n));
      for (Vertex v = 0; v < n; ++v)
        for (Vertex w : neighborhood(g, v, rr)) layer[v].set(w);
      balls.push_back(std::move(layer));
    }
    return balls[r];
  };
  for (std::size_t len = 1;; ++len) {
    VertexSet uncovered = VertexSet::full(n);
    BurningSequence seq;
    for (std::size_t p = 0; p < len && !uncovered.none(); ++p) {
      auto r = static_cast<std::uint32_t>(len - 1 - p);
      const auto& layer = ball(r);
      Vertex best = 0;
      std::size_t best_gain = 0;
      for (Vertex v = 0; v < n; ++v) {
        std::size_t gain = layer[v].intersection_count(uncovered);
        if (gain > best_gain) {
          best_gain = gain;
          best = v;
        }
      }
      seq.vertices.push_back(best);
      uncovered.subtract(layer[best]);
    }
    if (uncovered.none()) {
      // Pad if the pass finished early; the padding sources have radius >= 0.
      while (seq.length() < len) seq.vertices.push_back(seq.vertices.back());
      return seq;
    }
  }
}

/// ceil((sqrt(12n + 64) + 8) / 3), valid for connected graphs.
inline std::size_t bonato_kamali_bound(std::size_t n) {
  // Integer ceil: smallest k with 3k - 8 >= sqrt(12n + 64).
  const std::uint64_t t = 12 * static_cast<std::uint64_t>(n) + 64;
  std::size_t k = 0;
  while (true) {
    std::int64_t lhs = 3 * static_cast<std::int64_t>(k) - 8;
    if (lhs >= 0 && static_cast<std::uint64_t>(lhs) * static_cast<std::uint64_t>(lhs) >= t) return k;
    ++k;
  }
}

struct UpperBound {
  std::size_t value = 0;
  BurningSequence witness;        // greedy sequence; its length may exceed value
  bool from_closed_form = false;  // value came from the connected-graph bound
};

inline UpperBound upper_bound(const Graph& g) {
  UpperBound ub;
  ub.witness = greedy_heuristic(g);
  ub.value = ub.witness.length();
  if (g.num_vertices() > 0 && connected_components(g).count == 1) {
    std::size_t bk = bonato_kamali_bound(g.num_vertices());
    if (bk < ub.value) {
      ub.value = bk;
      ub.from_closed_form = true;
    }
  }
  return ub;
}

struct OracleResult {
  std::size_t burning_number = 0;
  BurningSequence witness;
};

inline constexpr std::size_t kDefaultOracleLimit = 16;

/// Exact b(G) by enumerating one vertex per radius for g = 1, 2, ...
/// Deliberately independent of the solver engines: plain vectors of balls and
/// a single counting bound.
inline OracleResult brute_force_burning_number(const Graph& g,
                                               std::size_t limit = kDefaultOracleLimit) {
  const std::size_t n = g.num_vertices();
  if (n == 0) return {};
  if (n > limit)
    throw CapacityError("brute-force oracle limited to " + std::to_string(limit) + " vertices (graph has " +
                        std::to_string(n) + ")");

  std::vector<std::vector<std::vector<Vertex>>> balls;  // [r][v]
  std::vector<std::size_t> max_ball;                    // [r]
  auto ensure = [&](std::uint32_t r) {
    while (balls.size() <= r) {
      auto rr = static_cast<std::uint32_t>(balls.size());
      std::vector<std::vector<Vertex>> layer(n);
      std::size_t mx = 0;
      for (Vertex v = 0; v < n; ++v) {
        layer[v] = neighborhood(g, v, rr);
        mx = std::max(mx, layer[v].size());
      }
      balls.push_back(std::move(layer));
      max_ball.push_back(mx);
    }
  };

  for (std::size_t len = 1; len <= n; ++len) {
    ensure(static_cast<std::uint32_t>(len - 1));
    std::vector<int> cover_count(n, 0);
    std::size_t covered = 0;
    std::vector<Vertex> chosen;
    // suffix[p] = sum of max ball sizes for positions p..len-1
    std::vector<std::size_t> suffix(len + 1, 0);
    for (std::size_t p = len; p-- > 0;) suffix[p] = suffix[p + 1] + max_ball[len - 1 - p];

    auto recurse = [&](auto&& self, std::size_t pos) -> bool {
      if (covered == n) return true;
      if (pos == len || covered + suffix[pos] < n) return false;
      const auto& layer = balls[len - 1 - pos];
      for (Vertex v = 0; v < n; ++v) {
        for (Vertex w : layer[v])
          if (cover_count[w]++ == 0) ++covered;
        chosen.push_back(v);
        if (self(self, pos + 1)) return true;
        chosen.pop_back();
        for (Vertex w : layer[v])
          if (--cover_count[w] == 0) --covered;
      }
      return false;
    };
    if (recurse(recurse, 0)) {
      while (chosen.size() < len) chosen.push_back(chosen.empty() ? 0 : chosen.back());
      return {len, BurningSequence{chosen}};
    }
  }
  return {n, BurningSequence{}};  // unreachable: g = n always succeeds
}

}  // namespace gburn
