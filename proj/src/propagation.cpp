#include "wocd/propagation.hpp"

#include <algorithm>
#include <cmath>

namespace wocd {

PropagationMatrix::PropagationMatrix(const Graph& graph) {
  const NodeId n = graph.n_nodes();
  offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  cols_.reserve(graph.targets().size() + static_cast<std::size_t>(n));
  values_.reserve(cols_.capacity());
  auto scale = [&](NodeId u) { return static_cast<double>(graph.degree(u) + 1); };
  for (NodeId u = 0; u < n; ++u) {
    bool self_done = false;
    auto emit = [&](NodeId v) {
      cols_.push_back(v);
      values_.push_back(1.0 / std::sqrt(scale(u) * scale(v)));
    };
    for (NodeId v : graph.neighbors(u)) {
      if (!self_done && v > u) {
        emit(u);
        self_done = true;
      }
      emit(v);
    }
    if (!self_done) emit(u);
    offsets_[u + 1] = static_cast<std::int64_t>(cols_.size());
  }
}

Matrix PropagationMatrix::multiply(const Matrix& dense) const {
  Matrix out = Matrix::Zero(dense.rows(), dense.cols());
  for (NodeId u = 0; u < size(); ++u) {
    auto row = out.row(u);
    for (std::int64_t s = offsets_[u]; s < offsets_[u + 1]; ++s) {
      row.noalias() += values_[s] * dense.row(cols_[s]);
    }
  }
  return out;
}

Matrix PropagationMatrix::to_dense() const {
  Matrix out = Matrix::Zero(size(), size());
  for (NodeId u = 0; u < size(); ++u) {
    for (std::int64_t s = offsets_[u]; s < offsets_[u + 1]; ++s) out(u, cols_[s]) = values_[s];
  }
  return out;
}

double PropagationMatrix::at(NodeId u, NodeId v) const {
  auto first = cols_.begin() + offsets_[u];
  auto last = cols_.begin() + offsets_[u + 1];
  auto it = std::lower_bound(first, last, v);
  return (it != last && *it == v) ? values_[it - cols_.begin()] : 0.0;
}

}  // namespace wocd
