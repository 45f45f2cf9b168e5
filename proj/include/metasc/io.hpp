#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "metasc/clustering.hpp"
#include "metasc/graph.hpp"
#include "metasc/metagraph.hpp"
#include "metasc/similarity.hpp"
#include "metasc/theory.hpp"

namespace metasc::io {

// Edge list: one `u<TAB>v<TAB>w` line per edge, 0-based ids, `#` comments,
// optional `n=<int>` header line. Parse errors carry the 1-based line number.
WeightedGraph read_edge_list(std::istream& in);
WeightedGraph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const WeightedGraph& g);
void write_edge_list_file(const std::string& path, const WeightedGraph& g);

// Labels: one integer per line, line index = vertex id.
std::vector<std::size_t> read_labels(std::istream& in);
Clustering read_labels_file(const std::string& path);
void write_labels(std::ostream& out, const Clustering& c);
void write_labels_file(const std::string& path, const Clustering& c);

// Meta-graph dump: k on the first line, then k rows of TSV reals.
void write_meta_graph(std::ostream& out, const MetaGraph& m);
MetaGraph read_meta_graph(std::istream& in);

// Feature CSV: header row `f1,...,fd[,label]`.
FeatureTable read_feature_csv(std::istream& in);
FeatureTable read_feature_csv_file(const std::string& path);

/// Rows as CSV with header `u,x1,...,xd`.
void write_embedding_csv(std::ostream& out, const Eigen::MatrixXd& points);

/// {"n","k","l","seed","statements":[{"id","lhs","bound","slack","status"}]},
/// infinite values written as the string "inf".
std::string report_to_json(const TheoryReport& report, int indent = 2);

}  // namespace metasc::io
