#pragma once

#include "wocd/cliquefind.hpp"
#include "wocd/cover.hpp"
#include "wocd/matrix.hpp"
#include "wocd/sampling.hpp"

namespace wocd {

struct PseudoConfig {
  int retained_communities = 1;  // r_c
  double confidence = 0.9;       // tau

  void validate(CommunityId n_communities) const;
};

/// Clique voting: each clique sums the true rows of its sampled members,
/// keeps the top `retained` communities with a positive vote (ties to the
/// smaller id) and hands them to every member. The result is the union over
/// all cliques.
Cover construct_pseudo_labels(const CliqueSet& cliques, const SampledLabels& sampled,
                              NodeId n_nodes, CommunityId n_communities, int retained);

/// Thresholds model predictions for every non-sampled node. Sampled nodes get
/// empty rows.
Cover refresh_pseudo_labels(const Matrix& predictions, const SampledLabels& sampled,
                            double confidence);

/// Non-sampled nodes carrying at least one pseudo community.
NodeId pseudo_coverage(const Cover& pseudo, const SampledLabels& sampled);

/// Row-wise union of two covers of equal shape.
Cover union_cover(const Cover& a, const Cover& b);

}  // namespace wocd
