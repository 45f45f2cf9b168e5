#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace metasc {

/// Assignment of n vertices into k disjoint, non-empty clusters with labels 0..k-1.
class Clustering {
 public:
  /// Validates that every label is below `k` and every cluster is non-empty.
  Clustering(std::size_t k, std::vector<std::size_t> labels);

  /// Infers k as max label + 1.
  static Clustering from_labels(std::vector<std::size_t> labels);

  std::size_t k() const { return k_; }
  std::size_t size() const { return labels_.size(); }
  std::size_t label(std::size_t u) const { return labels_[u]; }
  std::span<const std::size_t> labels() const { return labels_; }

  /// Vertices of cluster i in increasing order.
  const std::vector<std::size_t>& members(std::size_t i) const { return members_[i]; }
  std::size_t cluster_size(std::size_t i) const { return members_[i].size(); }

  /// Same partition with cluster ids permuted: new label of vertex u is perm[label(u)].
  Clustering relabeled(std::span<const std::size_t> perm) const;

  bool operator==(const Clustering& other) const { return k_ == other.k_ && labels_ == other.labels_; }

 private:
  std::size_t k_;
  std::vector<std::size_t> labels_;
  std::vector<std::vector<std::size_t>> members_;
};

}  // namespace metasc
