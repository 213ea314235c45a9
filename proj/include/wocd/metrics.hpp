#pragma once

#include "wocd/cover.hpp"

namespace wocd {

enum class OnmiNormalization {
  kMax,      // I(X:Y) / max(H(X), H(Y))
  kAverage,  // 1 - [H(X|Y)_norm + H(Y|X)_norm] / 2
};

/// Overlapping normalised mutual information between two covers of the same
/// node set. Every community is a binary variable over nodes; each one is
/// matched to the community of the other cover that leaves the least
/// conditional entropy, subject to the lack-of-information constraint.
/// Empty communities are ignored. Returns 0 when either cover has none left.
/// Throws DimensionError when the node counts differ.
double onmi(const Cover& x, const Cover& y, OnmiNormalization norm = OnmiNormalization::kMax);

struct MetricReport {
  double onmi = 0.0;
  CommunityId n_pred_communities = 0;  // non-empty communities in the prediction
  NodeId n_unassigned = 0;             // prediction rows with no community
};

MetricReport evaluate(const Cover& predicted, const Cover& truth);

}  // namespace wocd
