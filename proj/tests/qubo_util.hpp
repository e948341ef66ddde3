#pragma once

#include "gburn/qubo.hpp"
#include "test_util.hpp"

namespace gburn::testing {

// x bits for a sequence; position p has radius g-1-p, i.e. column g-p.
inline BitVector encode_sequence(const QuboModel& m, const BurningSequence& s) {
  BitVector a(m.dim(), 0);
  for (std::size_t p = 0; p < s.length(); ++p) a[m.x_id(s.vertices[p], m.g - p)] = 1;
  return a;
}

// sQUBO slack completion: slack of vertex i holds l_i - 1.
inline BitVector encode_with_slack(const Graph& G, const QuboModel& m, const BurningSequence& s) {
  auto a = encode_sequence(m, s);
  auto fs = fire_sources(G, s);
  for (std::size_t i = 0; i < m.n; ++i) {
    std::uint32_t v = fs.counts[i] - 1;
    for (std::size_t l = 1; l <= m.slack_bits; ++l) a[m.slack_id(i, l)] = (v >> (l - 1)) & 1U;
  }
  return a;
}

// cov_i straight from the graph, independent of the model's bookkeeping.
inline std::vector<std::int64_t> coverage_counts(const Graph& G, const QuboModel& m, const BitVector& a) {
  std::vector<std::int64_t> cov(m.n, 0);
  for (std::size_t i = 0; i < m.n; ++i)
    for (std::size_t j = 1; j <= m.g; ++j)
      for (auto k : neighborhood(G, static_cast<Vertex>(i), static_cast<std::uint32_t>(j - 1)))
        cov[i] += a[m.x_id(k, j)];
  return cov;
}

inline Rational one_hot_block(const QuboModel& m, const BitVector& a, std::size_t j) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < m.n; ++i) s += a[m.x_id(i, j)];
  // 1 - sum + 2 sum_{i<k} = (1 - sum)^2 for binaries
  return Rational((1 - s) * (1 - s));
}

// Un-expanded objectives.
inline Rational direct_squbo(const Graph& G, const QuboModel& m, const BitVector& a) {
  Rational e(0);
  for (std::size_t j = 1; j <= m.g; ++j) e += one_hot_block(m, a, j);
  auto cov = coverage_counts(G, m, a);
  for (std::size_t i = 0; i < m.n; ++i) {
    std::int64_t slack = 0;
    for (std::size_t l = 1; l <= m.slack_bits; ++l) slack += static_cast<std::int64_t>(a[m.slack_id(i, l)]) << (l - 1);
    std::int64_t r = 1 - cov[i] + slack;
    e += Rational(r * r);
  }
  return e;
}

inline Rational direct_uqubo(const Graph& G, const QuboModel& m, const BitVector& a) {
  const auto& pc = *m.penalties;
  Rational e(0);
  for (std::size_t j = 1; j <= m.g; ++j) e += pc.P * one_hot_block(m, a, j);
  auto cov = coverage_counts(G, m, a);
  for (std::size_t i = 0; i < m.n; ++i) e += penalty_curve(pc.lambda1, pc.lambda2[i], Rational(1 - cov[i]));
  return e;
}

inline BitVector bits_of(std::uint64_t mask, std::size_t dim) {
  BitVector a(dim);
  for (std::size_t i = 0; i < dim; ++i) a[i] = (mask >> i) & 1U;
  return a;
}

// Every graph on n labelled vertices, indexed by an edge mask over the C(n,2) pairs.
inline Graph graph_from_mask(std::size_t n, std::uint64_t mask) {
  std::vector<Edge> e;
  std::size_t bit = 0;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v, ++bit)
      if ((mask >> bit) & 1U) e.emplace_back(u, v);
  return Graph::from_edges(n, e);
}

}  // namespace gburn::testing
