#include "wocd/cliquefind.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace wocd {
namespace {

void check_node(const Graph& graph, NodeId u) {
  if (u < 0 || u >= graph.n_nodes()) {
    throw std::out_of_range("node id " + std::to_string(u) + " outside [0, " +
                            std::to_string(graph.n_nodes()) + ")");
  }
}

std::vector<NodeId> clique_members(std::span<const NodeId> nu, std::span<const NodeId> nv,
                                   NodeId u, NodeId v) {
  std::vector<NodeId> common;
  std::set_intersection(nu.begin(), nu.end(), nv.begin(), nv.end(), std::back_inserter(common));
  // u and v are never common neighbours of themselves, so a sorted insert suffices
  std::vector<NodeId> out;
  out.reserve(common.size() + 2);
  const NodeId lo = std::min(u, v), hi = std::max(u, v);
  auto it = std::lower_bound(common.begin(), common.end(), lo);
  out.insert(out.end(), common.begin(), it);
  out.push_back(lo);
  auto it2 = std::lower_bound(it, common.end(), hi);
  out.insert(out.end(), it, it2);
  out.push_back(hi);
  out.insert(out.end(), it2, common.end());
  return out;
}

}  // namespace

std::int64_t neighbor_edge_count(const Graph& graph, NodeId u) {
  check_node(graph, u);
  std::int64_t twice = 0;
  for (NodeId v : graph.neighbors(u)) twice += count_common(graph.neighbors(u), graph.neighbors(v));
  return twice / 2;
}

double node_priority(const Graph& graph, NodeId u) {
  const auto d = graph.degree(u);
  const auto m = neighbor_edge_count(graph, u);
  if (d == 0) return 0.0;
  return static_cast<double>(m + d) / static_cast<double>(d + 1);
}

double salton_index(const Graph& graph, NodeId u, NodeId v) {
  check_node(graph, u);
  check_node(graph, v);
  if (u == v) throw std::invalid_argument("salton_index: u and v must differ");
  const auto du = graph.degree(u), dv = graph.degree(v);
  if (du == 0 || dv == 0) return 0.0;
  const auto common = count_common(graph.neighbors(u), graph.neighbors(v));
  return static_cast<double>(common) / std::sqrt(static_cast<double>(du) * static_cast<double>(dv));
}

CliqueRecord weak_clique(const Graph& graph, NodeId u, NodeId v) {
  check_node(graph, u);
  check_node(graph, v);
  if (!graph.has_edge(u, v)) {
    throw std::invalid_argument("weak_clique: (" + std::to_string(u) + ", " + std::to_string(v) +
                                ") is not an edge");
  }
  return {u, v, clique_members(graph.neighbors(u), graph.neighbors(v), u, v)};
}

void index_members(CliqueSet& set, NodeId n_nodes) {
  set.member_index.assign(static_cast<std::size_t>(n_nodes), {});
  for (std::size_t i = 0; i < set.cliques.size(); ++i) {
    for (NodeId v : set.cliques[i].members) set.member_index[v].push_back(i);
  }
}

CliqueSet identify_weak_cliques(const Graph& graph) {
  const NodeId n = graph.n_nodes();
  const auto offsets = graph.offsets();
  const auto targets = graph.targets();

  // Common-neighbour count of every adjacency slot, computed once per edge.
  std::vector<std::int64_t> common(targets.size(), 0);
  std::vector<std::int64_t> triangles(static_cast<std::size_t>(n), 0);
  for (NodeId u = 0; u < n; ++u) {
    for (std::int64_t s = offsets[u]; s < offsets[u + 1]; ++s) {
      const NodeId v = targets[s];
      if (v < u) continue;
      const auto c = count_common(graph.neighbors(u), graph.neighbors(v));
      common[s] = c;
      auto row_v = graph.neighbors(v);
      auto mirror = std::lower_bound(row_v.begin(), row_v.end(), u) - row_v.begin();
      common[offsets[v] + mirror] = c;
      triangles[u] += c;
      triangles[v] += c;
    }
  }
  // each triangle at u is seen through both of its other corners
  for (auto& t : triangles) t /= 2;

  // Priority (m + d) / (d + 1) compared exactly by cross-multiplication.
  std::vector<NodeId> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    const __int128 da = graph.degree(a), db = graph.degree(b);
    const __int128 lhs = (triangles[a] + da) * (db + 1);
    const __int128 rhs = (triangles[b] + db) * (da + 1);
    if (lhs != rhs) return lhs > rhs;
    return a < b;
  });

  CliqueSet result;
  std::vector<bool> retired(static_cast<std::size_t>(n), false);
  for (NodeId u : order) {
    if (retired[u]) continue;
    retired[u] = true;
    const auto du = graph.degree(u);
    if (du == 0) continue;

    // argmax over all neighbours of c^2 / d_v, equivalent to c / sqrt(d_u d_v)
    std::int64_t best_slot = offsets[u];
    for (std::int64_t s = offsets[u] + 1; s < offsets[u + 1]; ++s) {
      const __int128 c_new = common[s], c_best = common[best_slot];
      const __int128 d_new = graph.degree(targets[s]);
      const __int128 d_best = graph.degree(targets[best_slot]);
      if (c_new * c_new * d_best > c_best * c_best * d_new) best_slot = s;
    }
    const NodeId v = targets[best_slot];
    retired[v] = true;
    result.cliques.push_back({u, v, clique_members(graph.neighbors(u), graph.neighbors(v), u, v)});
  }
  index_members(result, n);
  return result;
}

}  // namespace wocd
