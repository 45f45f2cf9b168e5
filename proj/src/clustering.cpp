#include "metasc/clustering.hpp"

#include <algorithm>
#include <string>

#include "metasc/error.hpp"

namespace metasc {

Clustering::Clustering(std::size_t k, std::vector<std::size_t> labels)
    : k_(k), labels_(std::move(labels)), members_(k) {
  if (k_ == 0) throw Error(ErrorCode::InvalidK, "clustering needs k >= 1");
  for (std::size_t u = 0; u < labels_.size(); ++u) {
    if (labels_[u] >= k_) {
      throw Error(ErrorCode::LabelOutOfRange,
                  "vertex " + std::to_string(u) + " has label " + std::to_string(labels_[u]) + " >= k=" +
                      std::to_string(k_));
    }
    members_[labels_[u]].push_back(u);
  }
  for (std::size_t i = 0; i < k_; ++i) {
    if (members_[i].empty()) throw Error(ErrorCode::EmptyCluster, "cluster " + std::to_string(i) + " is empty");
  }
}

Clustering Clustering::from_labels(std::vector<std::size_t> labels) {
  if (labels.empty()) throw Error(ErrorCode::InvalidArgument, "empty label vector");
  const std::size_t k = *std::max_element(labels.begin(), labels.end()) + 1;
  return Clustering(k, std::move(labels));
}

Clustering Clustering::relabeled(std::span<const std::size_t> perm) const {
  if (perm.size() != k_) throw Error(ErrorCode::KMismatch, "permutation size differs from k");
  std::vector<std::size_t> out(labels_.size());
  for (std::size_t u = 0; u < labels_.size(); ++u) out[u] = perm[labels_[u]];
  return Clustering(k_, std::move(out));
}

}  // namespace metasc
