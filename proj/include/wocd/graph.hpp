#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace wocd {

using NodeId = std::int32_t;

/// Undirected, unweighted simple graph in compressed adjacency form.
///
/// Every undirected edge is stored in both endpoint rows. Rows are strictly
/// ascending, contain no self-loops and no duplicates.
class Graph {
 public:
  Graph() = default;

  /// Builds from an arbitrary edge list. Self-loops are dropped, duplicates
  /// and reversed duplicates are collapsed. Throws DimensionError if any id
  /// falls outside [0, n_nodes).
  static Graph from_edges(NodeId n_nodes,
                          std::span<const std::pair<NodeId, NodeId>> edges);

  NodeId n_nodes() const { return static_cast<NodeId>(offsets_.empty() ? 0 : offsets_.size() - 1); }
  std::int64_t n_edges() const { return static_cast<std::int64_t>(targets_.size() / 2); }

  std::span<const NodeId> neighbors(NodeId u) const {
    return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
  }
  NodeId degree(NodeId u) const { return static_cast<NodeId>(offsets_[u + 1] - offsets_[u]); }
  bool has_edge(NodeId u, NodeId v) const;

  /// Canonical edge list with u < v, sorted lexicographically.
  std::vector<std::pair<NodeId, NodeId>> edges() const;

  std::span<const std::int64_t> offsets() const { return offsets_; }
  std::span<const NodeId> targets() const { return targets_; }

  /// Checks symmetry, ordering and self-loop freedom by full scan.
  bool is_valid() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::int64_t> offsets_{0};
  std::vector<NodeId> targets_;
};

/// Size of the intersection of two ascending id lists.
std::int64_t count_common(std::span<const NodeId> a, std::span<const NodeId> b);

}  // namespace wocd
