#include "wocd/loss.hpp"

#include <algorithm>
#include <cmath>

#include "wocd/error.hpp"

namespace wocd {
namespace {

Matrix dense_rows(const std::vector<std::vector<CommunityId>>& rows, CommunityId k) {
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(rows.size()), k);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (CommunityId c : rows[i]) out(static_cast<Eigen::Index>(i), c) = 1.0;
  }
  return out;
}

// Mean clamped BCE over the given rows; adds weight * dBCE/dlogit into dlogits.
double bce_group(const Matrix& probs, const std::vector<NodeId>& nodes, const Matrix& targets,
                 double weight, Matrix& dlogits) {
  if (nodes.empty()) return 0.0;
  const auto k = probs.cols();
  const double scale = 1.0 / (static_cast<double>(nodes.size()) * static_cast<double>(k));
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const NodeId v = nodes[i];
    for (Eigen::Index c = 0; c < k; ++c) {
      const double raw = probs(v, c);
      const double p = std::clamp(raw, kProbClamp, 1.0 - kProbClamp);
      const double y = targets(static_cast<Eigen::Index>(i), c);
      sum -= y * std::log(p) + (1.0 - y) * std::log(1.0 - p);
      // d/dlogit of BCE(logistic(z)) is p - y; zero where the clamp is active
      if (raw > kProbClamp && raw < 1.0 - kProbClamp) dlogits(v, c) += weight * scale * (raw - y);
    }
  }
  return sum * scale;
}

}  // namespace

LossTargets make_targets(const SampledLabels& sampled, const Cover& pseudo) {
  LossTargets t;
  const CommunityId k = std::max(sampled.n_communities, pseudo.n_communities());
  t.true_nodes = sampled.node_ids;
  t.true_rows = dense_rows(sampled.rows, k);

  std::vector<std::vector<CommunityId>> rows;
  if (pseudo.n_nodes() > 0) {
    const auto is_sampled = sampled.mask(pseudo.n_nodes());
    for (NodeId v = 0; v < pseudo.n_nodes(); ++v) {
      if (is_sampled[v] || pseudo.row(v).empty()) continue;
      t.pseudo_nodes.push_back(v);
      rows.emplace_back(pseudo.row(v).begin(), pseudo.row(v).end());
    }
  }
  t.pseudo_rows = dense_rows(rows, k);
  return t;
}

LossValue bce_loss(const Matrix& probs, const LossTargets& targets, const LossWeights& weights) {
  for (const auto* rows : {&targets.true_rows, &targets.pseudo_rows}) {
    if (rows->rows() > 0 && rows->cols() != probs.cols()) {
      throw DimensionError("loss targets and predictions disagree on K");
    }
  }
  for (const auto* nodes : {&targets.true_nodes, &targets.pseudo_nodes}) {
    for (NodeId v : *nodes) {
      if (v < 0 || v >= probs.rows()) throw DimensionError("loss target node out of range");
    }
  }
  LossValue out;
  out.dlogits = Matrix::Zero(probs.rows(), probs.cols());
  out.sampled_term = bce_group(probs, targets.true_nodes, targets.true_rows, weights.sampled, out.dlogits);
  out.pseudo_term = bce_group(probs, targets.pseudo_nodes, targets.pseudo_rows, weights.pseudo, out.dlogits);
  out.total = weights.sampled * out.sampled_term + weights.pseudo * out.pseudo_term;
  return out;
}

GradientResult gradients(const ModelParams& params, const FusionParams& fusion,
                         const PropagationMatrix& prop, const Matrix& features,
                         const LossTargets& targets, const LossWeights& weights) {
  const ForwardCache cache = forward(params, fusion, prop, features);
  GradientResult out;
  out.loss = bce_loss(cache.probs, targets, weights);
  if (!std::isfinite(out.loss.total)) throw NumericalError("loss is not finite");
  out.grads = backward(params, fusion, prop, features, cache, out.loss.dlogits);
  return out;
}

}  // namespace wocd
