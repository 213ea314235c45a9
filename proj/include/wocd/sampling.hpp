#pragma once

#include <cstdint>
#include <vector>

#include "wocd/cover.hpp"

namespace wocd {

/// Nodes whose full ground-truth membership row is revealed for training.
struct SampledLabels {
  std::vector<NodeId> node_ids;                 // ascending, unique
  std::vector<std::vector<CommunityId>> rows;   // rows[i] belongs to node_ids[i]
  CommunityId n_communities = 0;

  bool empty() const { return node_ids.empty(); }
  std::size_t size() const { return node_ids.size(); }
  /// Per-node flag vector of length n_nodes.
  std::vector<bool> mask(NodeId n_nodes) const;
};

/// Equal-per-community sampling: each community contributes
/// ceil(ratio * N / K) of its members (all of them if it is smaller),
/// drawn uniformly without replacement.
SampledLabels sample_labels(const Cover& truth, double ratio, std::uint64_t seed);

}  // namespace wocd
