#pragma once

#include <vector>

#include "wocd/cover.hpp"
#include "wocd/matrix.hpp"
#include "wocd/model.hpp"
#include "wocd/sampling.hpp"

namespace wocd {

inline constexpr double kProbClamp = 1e-7;

/// Dense targets for the two supervised row groups of the loss.
struct LossTargets {
  std::vector<NodeId> true_nodes;     // sampled nodes
  Matrix true_rows;                   // |true_nodes| x K
  std::vector<NodeId> pseudo_nodes;   // pseudo-labelled, non-sampled nodes
  Matrix pseudo_rows;                 // |pseudo_nodes| x K
};

/// Pseudo rows of sampled nodes and all-zero pseudo rows are dropped.
LossTargets make_targets(const SampledLabels& sampled, const Cover& pseudo);

struct LossWeights {
  double sampled = 1.0;  // lambda_1
  double pseudo = 1.0;   // lambda_2
};

struct LossValue {
  double total = 0.0;
  double sampled_term = 0.0;  // unweighted mean BCE over sampled rows
  double pseudo_term = 0.0;   // unweighted mean BCE over pseudo rows
  Matrix dlogits;             // gradient with respect to the pre-logistic outputs
};

/// lambda_1 * BCE(sampled rows) + lambda_2 * BCE(pseudo rows), each a mean
/// over its own node x K grid, probabilities clamped to [eps, 1 - eps].
/// An empty group contributes 0.
LossValue bce_loss(const Matrix& probs, const LossTargets& targets, const LossWeights& weights);

struct GradientResult {
  LossValue loss;
  ModelParams grads;
};

GradientResult gradients(const ModelParams& params, const FusionParams& fusion,
                         const PropagationMatrix& prop, const Matrix& features,
                         const LossTargets& targets, const LossWeights& weights);

}  // namespace wocd
