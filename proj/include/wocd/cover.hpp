#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wocd/graph.hpp"

namespace wocd {

using CommunityId = std::int32_t;

/// Binary node-by-community affiliation matrix, stored sparsely as one sorted
/// community list per node. Nodes may belong to zero, one or many communities.
class Cover {
 public:
  Cover() = default;
  Cover(NodeId n_nodes, CommunityId n_communities);

  /// Validates ids, sorts and deduplicates each row.
  static Cover from_rows(CommunityId n_communities,
                         std::vector<std::vector<CommunityId>> rows);
  /// Inverse of members(): builds a cover from per-community node lists.
  static Cover from_communities(NodeId n_nodes,
                                std::span<const std::vector<NodeId>> communities);

  NodeId n_nodes() const { return static_cast<NodeId>(rows_.size()); }
  CommunityId n_communities() const { return n_communities_; }

  std::span<const CommunityId> row(NodeId v) const { return rows_[v]; }
  bool contains(NodeId v, CommunityId c) const;
  /// Replaces one node's membership; ids are validated, sorted, deduplicated.
  void set_row(NodeId v, std::vector<CommunityId> communities);

  /// Member lists indexed by community id (ascending node ids).
  std::vector<std::vector<NodeId>> members() const;
  /// Number of nodes with at least one community.
  NodeId n_assigned() const;

  friend bool operator==(const Cover&, const Cover&) = default;

 private:
  CommunityId n_communities_ = 0;
  std::vector<std::vector<CommunityId>> rows_;
};

}  // namespace wocd
