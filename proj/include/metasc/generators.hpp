#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "metasc/clustering.hpp"
#include "metasc/graph.hpp"

namespace metasc {

enum class TemplateKind { Cycle, Grid, Complete, Path, Custom };

/// Unit-weight connected pattern graph on k >= 2 meta-vertices.
struct MetaTemplate {
  TemplateKind kind;
  std::size_t k;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // i < j, sorted
  std::string name;                                        // e.g. "cycle(10)"

  bool adjacent(std::size_t i, std::size_t j) const;
  std::vector<std::size_t> meta_degrees() const;
};

/// Named templates. Grid vertices are numbered row-major.
MetaTemplate cycle_template(std::size_t k);
MetaTemplate grid_template(std::size_t rows, std::size_t cols);
MetaTemplate complete_template(std::size_t k);
MetaTemplate path_template(std::size_t k);
MetaTemplate custom_template(std::size_t k, std::vector<std::pair<std::size_t, std::size_t>> edges);

/// Parses "cycle:10", "grid:4x4", "complete:4", "path:5".
MetaTemplate parse_template(const std::string& spec);

struct SbmInstance {
  WeightedGraph graph;
  Clustering truth;
  /// Vertices that had no neighbour after sampling and were given one
  /// intra-cluster edge.
  std::size_t repaired_vertices = 0;
};

/// Random graph with k clusters of `n_per_cluster` vertices: intra-cluster
/// pairs appear with probability p, pairs across clusters i, j with
/// probability q when (i, j) is a template edge and never otherwise.
/// Cluster i holds vertices [i*n, (i+1)*n).
SbmInstance sbm_meta(const MetaTemplate& tmpl, std::size_t n_per_cluster, double p, double q, std::uint64_t seed);

}  // namespace metasc
