#include "wocd/synth.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_set>

namespace wocd {

void SynthConfig::validate() const {
  if (n_nodes < 1 || n_communities < 1 || dims_per_community < 1) {
    throw std::invalid_argument("synth: node, community and dimension counts must be >= 1");
  }
  if (n_communities > n_nodes) throw std::invalid_argument("synth: more communities than nodes");
  if (!(overlap_fraction >= 0.0 && overlap_fraction <= 1.0)) {
    throw std::invalid_argument("synth: overlap_fraction must lie in [0, 1]");
  }
  if (overlap_fraction > 0.0 && n_communities < 2) {
    throw std::invalid_argument("synth: overlap requires at least two communities");
  }
  if (!(p_out >= 0.0 && p_out < p_in && p_in <= 1.0)) {
    throw std::invalid_argument("synth: need 0 <= p_out < p_in <= 1");
  }
  for (double p : {feature_signal, feature_noise}) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("synth: feature probabilities must lie in [0, 1]");
  }
}

SynthGraph synth_graph(const SynthConfig& config) {
  config.validate();
  const NodeId n = config.n_nodes;
  const CommunityId k = config.n_communities;
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<NodeId> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<std::vector<CommunityId>> rows(static_cast<std::size_t>(n));
  for (NodeId i = 0; i < n; ++i) {
    rows[order[i]].push_back(static_cast<CommunityId>(static_cast<std::int64_t>(i) * k / n));
  }

  const auto n_overlap = static_cast<NodeId>(std::llround(config.overlap_fraction * n));
  std::shuffle(order.begin(), order.end(), rng);
  for (NodeId i = 0; i < n_overlap; ++i) {
    auto& row = rows[order[i]];
    std::uniform_int_distribution<CommunityId> other(0, k - 2);
    CommunityId c = other(rng);
    if (c >= row.front()) ++c;
    row.push_back(c);
  }
  Cover cover = Cover::from_rows(k, rows);

  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId u = 0; u < n; ++u) {
    auto ru = cover.row(u);
    for (NodeId v = u + 1; v < n; ++v) {
      bool shared = false;
      for (CommunityId c : ru) shared = shared || cover.contains(v, c);
      if (unit(rng) < (shared ? config.p_in : config.p_out)) edges.emplace_back(u, v);
    }
  }

  const int dpc = config.dims_per_community;
  FeatureMatrix features(n, static_cast<Eigen::Index>(k) * dpc);
  for (NodeId v = 0; v < n; ++v) {
    for (CommunityId c = 0; c < k; ++c) {
      const double p = cover.contains(v, c) ? config.feature_signal : config.feature_noise;
      for (int j = 0; j < dpc; ++j) features(v, c * dpc + j) = unit(rng) < p ? 1.0 : 0.0;
    }
  }

  return {Graph::from_edges(n, edges), std::move(features), std::move(cover)};
}

Graph random_graph(NodeId n_nodes, std::int64_t n_edges, std::uint64_t seed) {
  const std::int64_t max_edges = static_cast<std::int64_t>(n_nodes) * (n_nodes - 1) / 2;
  if (n_nodes < 0 || n_edges < 0 || n_edges > max_edges) {
    throw std::invalid_argument("random_graph: edge count out of range");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<NodeId> pick(0, std::max<NodeId>(n_nodes - 1, 0));
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(static_cast<std::size_t>(n_edges) * 2);
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(static_cast<std::size_t>(n_edges));
  while (static_cast<std::int64_t>(edges.size()) < n_edges) {
    NodeId u = pick(rng), v = pick(rng);
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    auto key = (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
    if (seen.insert(key).second) edges.emplace_back(u, v);
  }
  return Graph::from_edges(n_nodes, edges);
}

}  // namespace wocd
