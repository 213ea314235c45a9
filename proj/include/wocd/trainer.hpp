#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wocd/cliquefind.hpp"
#include "wocd/cover.hpp"
#include "wocd/loss.hpp"
#include "wocd/matrix.hpp"
#include "wocd/model.hpp"
#include "wocd/pseudolabel.hpp"
#include "wocd/sampling.hpp"

namespace wocd {

struct TrainConfig {
  double lambda1 = 1.0;
  double lambda2 = 1.0;
  int epochs_initial = 150;
  int epochs_refined = 150;
  double lr = 1e-3;
  std::uint64_t seed = 0;
  FusionParams fusion;
  PseudoConfig pseudo;
  double binarize_threshold = 0.5;
  double rho = 0.10;
  int hidden = 256;
  bool final_gcn_activation = false;
  // Keep the lowest-training-loss parameters of each phase instead of the last.
  bool keep_best = false;
  // Union the refreshed pseudo cover with the clique cover instead of replacing it.
  bool union_refresh = false;

  void validate() const;
};

struct RunReport {
  double onmi = 0.0;
  double onmi_initial = 0.0;  // C_final computed from the initial-phase model
  std::size_t n_sampled = 0;
  std::size_t n_cliques = 0;
  NodeId n_pseudo_initial = 0;
  NodeId n_pseudo_refined = 0;
  CommunityId n_pred_communities = 0;
  NodeId n_unassigned = 0;
  std::vector<double> loss_trace_initial;
  std::vector<double> loss_trace_refined;
  double seconds_pseudo_init = 0.0;
  double seconds_initial = 0.0;
  double seconds_pseudo_update = 0.0;
  double seconds_refined = 0.0;
};

struct PhaseResult {
  ModelParams params;
  std::vector<double> loss_trace;
};

/// Membership iff probability >= threshold.
Cover binarize(const Matrix& probs, double threshold);

/// Full-batch Adam on the dual BCE loss from `start` for `epochs` epochs.
/// loss_trace[e] is the loss at the parameters entering epoch e.
PhaseResult train_phase(ModelParams start, const PropagationMatrix& prop,
                        const Matrix& features, const LossTargets& targets,
                        const TrainConfig& config, int epochs);

/// Fresh parameters from config.seed, trained for epochs_initial epochs.
PhaseResult initial_training(const Graph& graph, const Matrix& features,
                             const SampledLabels& sampled, const Cover& pseudo,
                             const TrainConfig& config);

struct RefinedResult {
  ModelParams params;
  Cover pseudo;        // refreshed pseudo cover used in this phase
  Cover final_cover;
  std::vector<double> loss_trace;
  NodeId n_pseudo = 0;
  double seconds_refresh = 0.0;
};

/// Regenerates pseudo labels from the initial model and keeps training the
/// same parameters. `clique_pseudo` is only consulted when union_refresh is set.
RefinedResult refined_training(const Graph& graph, const Matrix& features,
                               const SampledLabels& sampled, const ModelParams& initial,
                               const TrainConfig& config, const Cover& clique_pseudo = {});

/// Every intermediate product of a pipeline run.
struct PipelineResult {
  RunReport report;
  SampledLabels sampled;
  CliqueSet cliques;
  Cover pseudo_initial;
  Cover pseudo_refined;
  Cover initial_cover;
  Cover final_cover;
  ModelParams params;
};

/// sample -> weak cliques -> clique pseudo labels -> initial training ->
/// pseudo update -> refined training -> ONMI against `truth`.
/// Errors are rethrown with the failing stage name prefixed.
PipelineResult run_pipeline(const Graph& graph, const Matrix& features, const Cover& truth,
                            const TrainConfig& config);

}  // namespace wocd
