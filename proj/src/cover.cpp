#include "wocd/cover.hpp"

#include <algorithm>
#include <string>

#include "wocd/error.hpp"

namespace wocd {
namespace {

void normalize_row(std::vector<CommunityId>& row, CommunityId k) {
  for (CommunityId c : row) {
    if (c < 0 || c >= k) {
      throw DimensionError("community id " + std::to_string(c) + " outside [0, " +
                           std::to_string(k) + ")");
    }
  }
  std::sort(row.begin(), row.end());
  row.erase(std::unique(row.begin(), row.end()), row.end());
}

}  // namespace

Cover::Cover(NodeId n_nodes, CommunityId n_communities)
    : n_communities_(n_communities), rows_(static_cast<std::size_t>(n_nodes)) {
  if (n_nodes < 0 || n_communities < 0) throw DimensionError("negative cover dimensions");
}

Cover Cover::from_rows(CommunityId n_communities, std::vector<std::vector<CommunityId>> rows) {
  Cover cover(static_cast<NodeId>(rows.size()), n_communities);
  for (auto& row : rows) normalize_row(row, n_communities);
  cover.rows_ = std::move(rows);
  return cover;
}

Cover Cover::from_communities(NodeId n_nodes, std::span<const std::vector<NodeId>> communities) {
  Cover cover(n_nodes, static_cast<CommunityId>(communities.size()));
  for (std::size_t c = 0; c < communities.size(); ++c) {
    for (NodeId v : communities[c]) {
      if (v < 0 || v >= n_nodes) throw DimensionError("node id " + std::to_string(v) + " out of range");
      cover.rows_[v].push_back(static_cast<CommunityId>(c));
    }
  }
  for (auto& row : cover.rows_) normalize_row(row, cover.n_communities_);
  return cover;
}

bool Cover::contains(NodeId v, CommunityId c) const {
  const auto& r = rows_[v];
  return std::binary_search(r.begin(), r.end(), c);
}

void Cover::set_row(NodeId v, std::vector<CommunityId> communities) {
  if (v < 0 || v >= n_nodes()) throw DimensionError("node id " + std::to_string(v) + " out of range");
  normalize_row(communities, n_communities_);
  rows_[v] = std::move(communities);
}

std::vector<std::vector<NodeId>> Cover::members() const {
  std::vector<std::vector<NodeId>> out(static_cast<std::size_t>(n_communities_));
  for (NodeId v = 0; v < n_nodes(); ++v) {
    for (CommunityId c : rows_[v]) out[c].push_back(v);
  }
  return out;
}

NodeId Cover::n_assigned() const {
  return static_cast<NodeId>(
      std::count_if(rows_.begin(), rows_.end(), [](const auto& r) { return !r.empty(); }));
}

}  // namespace wocd
