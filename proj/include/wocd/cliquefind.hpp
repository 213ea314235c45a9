#pragma once

#include <vector>

#include "wocd/graph.hpp"

namespace wocd {

/// A weak clique seeded by the adjacent pair (seed_u, seed_v): the two seeds
/// plus every node adjacent to both.
struct CliqueRecord {
  NodeId seed_u = 0;
  NodeId seed_v = 0;
  std::vector<NodeId> members;  // ascending

  friend bool operator==(const CliqueRecord&, const CliqueRecord&) = default;
};

/// Weak cliques in discovery order. Records with equal member sets are kept.
struct CliqueSet {
  std::vector<CliqueRecord> cliques;
  std::vector<std::vector<std::size_t>> member_index;  // node -> clique indices

  std::size_t size() const { return cliques.size(); }
  friend bool operator==(const CliqueSet&, const CliqueSet&) = default;
};

/// Number of edges among the neighbours of u (triangles through u).
std::int64_t neighbor_edge_count(const Graph& graph, NodeId u);

/// (m_u + d_u) / (d_u + 1); zero for isolated nodes.
double node_priority(const Graph& graph, NodeId u);

/// |n_u ∩ n_v| / sqrt(d_u d_v); zero if either node is isolated.
double salton_index(const Graph& graph, NodeId u, NodeId v);

/// Throws std::invalid_argument when (u, v) is not an edge.
CliqueRecord weak_clique(const Graph& graph, NodeId u, NodeId v);

/// Greedy extraction: repeatedly take the remaining node with the highest
/// priority, pair it with its most Salton-similar neighbour (any neighbour,
/// consumed or not), emit their weak clique and retire both seeds.
/// Priorities are computed once. Ties go to the smaller node id.
CliqueSet identify_weak_cliques(const Graph& graph);

/// Rebuilds member_index from cliques.
void index_members(CliqueSet& set, NodeId n_nodes);

}  // namespace wocd
