#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "gburn/graph.hpp"
#include "gburn/random.hpp"

namespace gburn {

inline Graph gen_path(std::size_t n) {
  if (n == 0) throw ParameterError("path needs at least one vertex");
  std::vector<Edge> e;
  for (std::size_t i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph::from_edges(n, e);
}

inline Graph gen_cycle(std::size_t n) {
  if (n < 3) throw ParameterError("cycle needs at least three vertices");
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph::from_edges(n, e);
}

inline Graph gen_complete(std::size_t n) {
  if (n == 0) throw ParameterError("complete graph needs at least one vertex");
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph::from_edges(n, e);
}

/// K_{1,leaves}; the center is vertex 0.
inline Graph gen_star(std::size_t leaves) {
  if (leaves == 0) throw ParameterError("star needs at least one leaf");
  std::vector<Edge> e;
  for (std::size_t i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return Graph::from_edges(leaves + 1, e);
}

/// rows x cols grid, row-major numbering.
inline Graph gen_grid(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) throw ParameterError("grid dimensions must be positive");
  std::vector<Edge> e;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      auto v = static_cast<Vertex>(r * cols + c);
      if (c + 1 < cols) e.emplace_back(v, v + 1);
      if (r + 1 < rows) e.emplace_back(v, static_cast<Vertex>(v + cols));
    }
  return Graph::from_edges(rows * cols, e);
}

/// G(n, p): each pair (i, j), i < j, visited in lexicographic order and kept
/// with probability p.
inline Graph gen_erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  if (n == 0) throw ParameterError("Erdos-Renyi graph needs at least one vertex");
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("edge probability must lie in [0, 1]");
  Rng rng(seed);
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (uniform01(rng) < p) e.emplace_back(i, j);
  return Graph::from_edges(n, e);
}

/// Random geometric graph on the unit square: edge iff Euclidean distance <= r.
inline Graph gen_geometric(std::size_t n, double r, std::uint64_t seed) {
  if (n == 0) throw ParameterError("geometric graph needs at least one vertex");
  if (!(r > 0.0)) throw ParameterError("connection radius must be positive");
  Rng rng(seed);
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = uniform01(rng);
    y[i] = uniform01(rng);
  }
  std::vector<Edge> e;
  const double r2 = r * r;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double dx = x[i] - x[j], dy = y[i] - y[j];
      if (dx * dx + dy * dy <= r2) e.emplace_back(i, j);
    }
  return Graph::from_edges(n, e);
}

}  // namespace gburn
