#pragma once

#include <cstdint>

#include "wocd/cover.hpp"
#include "wocd/graph.hpp"
#include "wocd/matrix.hpp"

namespace wocd {

/// Planted overlapping partition with block-structured binary attributes.
struct SynthConfig {
  NodeId n_nodes = 500;
  CommunityId n_communities = 4;
  double overlap_fraction = 0.15;  // share of nodes given a second community
  double p_in = 0.08;              // edge probability for pairs sharing a community
  double p_out = 0.002;            // background edge probability
  int dims_per_community = 16;
  double feature_signal = 0.25;  // activation probability on own-community dims
  double feature_noise = 0.05;   // activation probability elsewhere
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

struct SynthGraph {
  Graph graph;
  FeatureMatrix features;
  Cover cover;
};

SynthGraph synth_graph(const SynthConfig& config);

/// Uniform random simple graph with exactly n_edges edges (G(n, m)).
Graph random_graph(NodeId n_nodes, std::int64_t n_edges, std::uint64_t seed);

}  // namespace wocd
