#pragma once

#include <cstdint>
#include <vector>

#include "wocd/graph.hpp"
#include "wocd/matrix.hpp"

namespace wocd {

/// Symmetric-normalised adjacency with self-loops, D^-1/2 (A + I) D^-1/2,
/// in compressed row form. Entry (u, v) is 1 / sqrt((d_u + 1)(d_v + 1)).
class PropagationMatrix {
 public:
  PropagationMatrix() = default;
  explicit PropagationMatrix(const Graph& graph);

  NodeId size() const { return static_cast<NodeId>(offsets_.size() - 1); }
  std::int64_t nnz() const { return static_cast<std::int64_t>(cols_.size()); }

  /// Returns P * dense. Rows are reduced in ascending column order.
  Matrix multiply(const Matrix& dense) const;
  /// Dense copy, for tests and small graphs.
  Matrix to_dense() const;

  double at(NodeId u, NodeId v) const;

 private:
  std::vector<std::int64_t> offsets_{0};
  std::vector<NodeId> cols_;
  std::vector<double> values_;
};

inline PropagationMatrix gcn_norm(const Graph& graph) { return PropagationMatrix(graph); }

}  // namespace wocd
