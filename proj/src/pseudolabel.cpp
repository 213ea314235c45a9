#include "wocd/pseudolabel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "wocd/error.hpp"

namespace wocd {

void PseudoConfig::validate(CommunityId n_communities) const {
  if (retained_communities < 1 || retained_communities > std::max<CommunityId>(n_communities, 1)) {
    throw std::invalid_argument("r_c must lie in [1, K]");
  }
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::invalid_argument("pseudo-label confidence must lie in (0, 1)");
  }
}

Cover construct_pseudo_labels(const CliqueSet& cliques, const SampledLabels& sampled,
                              NodeId n_nodes, CommunityId n_communities, int retained) {
  if (retained < 1) throw std::invalid_argument("r_c must be >= 1");
  const auto k = static_cast<std::size_t>(n_communities);

  std::vector<std::int32_t> sampled_row(static_cast<std::size_t>(n_nodes), -1);
  for (std::size_t i = 0; i < sampled.node_ids.size(); ++i) {
    const NodeId v = sampled.node_ids[i];
    if (v < 0 || v >= n_nodes) {
      throw DimensionError("sampled node " + std::to_string(v) + " outside the cover");
    }
    for (CommunityId c : sampled.rows[i]) {
      if (c < 0 || c >= n_communities) {
        throw DimensionError("sampled community " + std::to_string(c) + " outside [0, K)");
      }
    }
    sampled_row[v] = static_cast<std::int32_t>(i);
  }

  std::vector<std::uint8_t> assigned(static_cast<std::size_t>(n_nodes) * k, 0);
  std::vector<std::int64_t> votes(k, 0);
  std::vector<CommunityId> voted;
  for (const auto& clique : cliques.cliques) {
    voted.clear();
    for (NodeId u : clique.members) {
      if (u < 0 || u >= n_nodes) throw DimensionError("clique member outside the cover");
      if (sampled_row[u] < 0) continue;
      for (CommunityId c : sampled.rows[sampled_row[u]]) {
        if (votes[c]++ == 0) voted.push_back(c);
      }
    }
    if (voted.empty()) continue;

    const auto keep = std::min<std::size_t>(static_cast<std::size_t>(retained), voted.size());
    std::partial_sort(voted.begin(), voted.begin() + static_cast<std::ptrdiff_t>(keep), voted.end(),
                      [&](CommunityId a, CommunityId b) {
                        return votes[a] != votes[b] ? votes[a] > votes[b] : a < b;
                      });
    for (NodeId u : clique.members) {
      for (std::size_t i = 0; i < keep; ++i) assigned[static_cast<std::size_t>(u) * k + voted[i]] = 1;
    }
    for (CommunityId c : voted) votes[c] = 0;
  }

  std::vector<std::vector<CommunityId>> rows(static_cast<std::size_t>(n_nodes));
  for (NodeId v = 0; v < n_nodes; ++v) {
    for (std::size_t c = 0; c < k; ++c) {
      if (assigned[static_cast<std::size_t>(v) * k + c]) rows[v].push_back(static_cast<CommunityId>(c));
    }
  }
  return Cover::from_rows(n_communities, std::move(rows));
}

Cover refresh_pseudo_labels(const Matrix& predictions, const SampledLabels& sampled,
                            double confidence) {
  const auto n = static_cast<NodeId>(predictions.rows());
  const auto k = static_cast<CommunityId>(predictions.cols());
  const auto is_sampled = sampled.mask(n);
  std::vector<std::vector<CommunityId>> rows(static_cast<std::size_t>(n));
  for (NodeId v = 0; v < n; ++v) {
    for (CommunityId c = 0; c < k; ++c) {
      const double p = predictions(v, c);
      if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("prediction (" + std::to_string(v) + ", " + std::to_string(c) +
                                    ") outside [0, 1]");
      }
      if (!is_sampled[v] && p >= confidence) rows[v].push_back(c);
    }
  }
  return Cover::from_rows(k, std::move(rows));
}

NodeId pseudo_coverage(const Cover& pseudo, const SampledLabels& sampled) {
  const auto is_sampled = sampled.mask(pseudo.n_nodes());
  NodeId count = 0;
  for (NodeId v = 0; v < pseudo.n_nodes(); ++v) {
    if (!is_sampled[v] && !pseudo.row(v).empty()) ++count;
  }
  return count;
}

Cover union_cover(const Cover& a, const Cover& b) {
  if (a.n_nodes() != b.n_nodes() || a.n_communities() != b.n_communities()) {
    throw DimensionError("union_cover: shapes differ");
  }
  Cover out = a;
  for (NodeId v = 0; v < a.n_nodes(); ++v) {
    std::vector<CommunityId> row(a.row(v).begin(), a.row(v).end());
    row.insert(row.end(), b.row(v).begin(), b.row(v).end());
    out.set_row(v, std::move(row));
  }
  return out;
}

}  // namespace wocd
