#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "metasc/graph.hpp"
#include "metasc/rng.hpp"

namespace testutil {

inline metasc::WeightedGraph triangle() {
  const std::vector<metasc::Edge> e{{0, 1, 1}, {1, 2, 1}, {0, 2, 1}};
  return metasc::WeightedGraph(3, e);
}

inline metasc::WeightedGraph two_triangles() {
  const std::vector<metasc::Edge> e{{0, 1, 1}, {1, 2, 1}, {0, 2, 1}, {3, 4, 1}, {4, 5, 1}, {3, 5, 1}};
  return metasc::WeightedGraph(6, e);
}

inline metasc::WeightedGraph cycle(std::size_t n) {
  std::vector<metasc::Edge> e;
  for (std::size_t i = 0; i < n; ++i) e.push_back({std::min(i, (i + 1) % n), std::max(i, (i + 1) % n), 1.0});
  return metasc::WeightedGraph(n, e);
}

inline metasc::WeightedGraph single_edge() {
  const std::vector<metasc::Edge> e{{0, 1, 1}};
  return metasc::WeightedGraph(2, e);
}

inline metasc::WeightedGraph cliques(std::size_t k, std::size_t size) {
  std::vector<metasc::Edge> e;
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t a = 0; a < size; ++a) {
      for (std::size_t b = a + 1; b < size; ++b) e.push_back({c * size + a, c * size + b, 1.0});
    }
  }
  return metasc::WeightedGraph(k * size, e);
}

// Connected random graph: a random spanning tree plus extra edges with
// probability p, weights uniform in [0.5, 2).
inline metasc::WeightedGraph random_connected(std::size_t n, double p, std::uint64_t seed, bool weighted = true) {
  metasc::Rng rng(seed);
  std::vector<std::vector<char>> has(n, std::vector<char>(n, 0));
  std::vector<metasc::Edge> e;
  auto add = [&](std::size_t u, std::size_t v) {
    if (u > v) std::swap(u, v);
    if (has[u][v]) return;
    has[u][v] = 1;
    e.push_back({u, v, weighted ? rng.uniform(0.5, 2.0) : 1.0});
  };
  for (std::size_t v = 1; v < n; ++v) add(static_cast<std::size_t>(rng.below(v)), v);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (rng.bernoulli(p)) add(u, v);
    }
  }
  return metasc::WeightedGraph(n, e);
}

inline std::vector<std::size_t> random_labels(std::size_t n, std::size_t k, metasc::Rng& rng) {
  // every label used at least once
  std::vector<std::size_t> labels(n);
  for (std::size_t u = 0; u < n; ++u) labels[u] = u < k ? u : static_cast<std::size_t>(rng.below(k));
  for (std::size_t u = n; u > 1; --u) std::swap(labels[u - 1], labels[static_cast<std::size_t>(rng.below(u))]);
  return labels;
}

}  // namespace testutil
