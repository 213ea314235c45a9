#include "wocd/graph.hpp"

#include <algorithm>
#include <string>

#include "wocd/error.hpp"

namespace wocd {

Graph Graph::from_edges(NodeId n_nodes, std::span<const std::pair<NodeId, NodeId>> edges) {
  if (n_nodes < 0) throw DimensionError("negative node count");
  std::vector<std::int64_t> degree(static_cast<std::size_t>(n_nodes) + 1, 0);
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n_nodes || v >= n_nodes) {
      throw DimensionError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                           ") outside node range [0, " + std::to_string(n_nodes) + ")");
    }
    if (u == v) continue;
    ++degree[u + 1];
    ++degree[v + 1];
  }
  Graph g;
  g.offsets_.assign(degree.begin(), degree.end());
  for (NodeId u = 0; u < n_nodes; ++u) g.offsets_[u + 1] += g.offsets_[u];
  std::vector<NodeId> raw(static_cast<std::size_t>(g.offsets_.back()));
  std::vector<std::int64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    if (u == v) continue;
    raw[cursor[u]++] = v;
    raw[cursor[v]++] = u;
  }

  // sort + dedup each row, then compact
  std::vector<std::int64_t> offsets(static_cast<std::size_t>(n_nodes) + 1, 0);
  std::int64_t out = 0;
  for (NodeId u = 0; u < n_nodes; ++u) {
    auto first = raw.begin() + g.offsets_[u];
    auto last = raw.begin() + g.offsets_[u + 1];
    std::sort(first, last);
    last = std::unique(first, last);
    for (auto it = first; it != last; ++it) raw[out++] = *it;
    offsets[u + 1] = out;
  }
  raw.resize(static_cast<std::size_t>(out));
  g.offsets_ = std::move(offsets);
  g.targets_ = std::move(raw);
  return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  if (u < 0 || v < 0 || u >= n_nodes() || v >= n_nodes()) return false;
  auto row = neighbors(u);
  return std::binary_search(row.begin(), row.end(), v);
}

std::vector<std::pair<NodeId, NodeId>> Graph::edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(static_cast<std::size_t>(n_edges()));
  for (NodeId u = 0; u < n_nodes(); ++u) {
    for (NodeId v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

bool Graph::is_valid() const {
  if (offsets_.empty() || offsets_.front() != 0) return false;
  if (offsets_.back() != static_cast<std::int64_t>(targets_.size())) return false;
  if (targets_.size() % 2 != 0) return false;
  const NodeId n = n_nodes();
  for (NodeId u = 0; u < n; ++u) {
    if (offsets_[u + 1] < offsets_[u]) return false;
    auto row = neighbors(u);
    for (std::size_t i = 0; i < row.size(); ++i) {
      NodeId v = row[i];
      if (v < 0 || v >= n || v == u) return false;
      if (i > 0 && row[i - 1] >= v) return false;
      auto back = neighbors(v);
      if (!std::binary_search(back.begin(), back.end(), u)) return false;
    }
  }
  return true;
}

std::int64_t count_common(std::span<const NodeId> a, std::span<const NodeId> b) {
  if (a.size() > b.size()) std::swap(a, b);
  std::int64_t common = 0;
  // Galloping pays off once the lists are badly unbalanced.
  if (a.size() * 16 < b.size()) {
    auto lo = b.begin();
    for (NodeId x : a) {
      lo = std::lower_bound(lo, b.end(), x);
      if (lo == b.end()) break;
      if (*lo == x) ++common;
    }
    return common;
  }
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return common;
}

}  // namespace wocd
