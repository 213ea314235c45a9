#include "wocd/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "wocd/error.hpp"

namespace wocd {

std::vector<bool> SampledLabels::mask(NodeId n_nodes) const {
  std::vector<bool> out(static_cast<std::size_t>(n_nodes), false);
  for (NodeId v : node_ids) {
    if (v < 0 || v >= n_nodes) throw DimensionError("sampled node " + std::to_string(v) + " out of range");
    out[v] = true;
  }
  return out;
}

SampledLabels sample_labels(const Cover& truth, double ratio, std::uint64_t seed) {
  if (!(ratio >= 0.0 && ratio <= 1.0)) throw std::invalid_argument("sampling ratio must lie in [0, 1]");
  SampledLabels out;
  out.n_communities = truth.n_communities();
  const CommunityId k = truth.n_communities();
  if (ratio == 0.0 || k == 0) return out;

  const auto quota = static_cast<std::size_t>(std::ceil(ratio * truth.n_nodes() / k));
  std::mt19937_64 rng(seed);
  std::vector<bool> picked(static_cast<std::size_t>(truth.n_nodes()), false);
  for (auto& members : truth.members()) {
    // partial Fisher-Yates: first `take` slots become a uniform sample
    const std::size_t take = std::min(quota, members.size());
    for (std::size_t i = 0; i < take; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, members.size() - 1);
      std::swap(members[i], members[pick(rng)]);
      picked[members[i]] = true;
    }
  }
  for (NodeId v = 0; v < truth.n_nodes(); ++v) {
    if (!picked[v]) continue;
    out.node_ids.push_back(v);
    auto row = truth.row(v);
    out.rows.emplace_back(row.begin(), row.end());
  }
  return out;
}

}  // namespace wocd
