#include "wocd/trainer.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

#include "wocd/adam.hpp"
#include "wocd/error.hpp"
#include "wocd/metrics.hpp"

namespace wocd {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Runs fn, re-throwing any failure with the stage name prefixed while keeping its type.
template <typename F>
auto stage(const char* name, F&& fn) -> decltype(fn()) {
  const std::string tag = std::string("[") + name + "] ";
  try {
    return fn();
  } catch (const ParseError& e) {
    throw ParseError(tag + e.what());
  } catch (const DimensionError& e) {
    throw DimensionError(tag + e.what());
  } catch (const NumericalError& e) {
    throw NumericalError(tag + e.what());
  } catch (const IoError& e) {
    throw IoError(tag + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(tag + e.what());
  } catch (const std::exception& e) {
    throw std::runtime_error(tag + e.what());
  }
}

LossWeights weights_of(const TrainConfig& config) { return {config.lambda1, config.lambda2}; }

}  // namespace

void TrainConfig::validate() const {
  if (!(lambda1 >= 0.0) || !(lambda2 >= 0.0)) throw std::invalid_argument("lambda1 and lambda2 must be >= 0");
  if (epochs_initial < 1 || epochs_refined < 0) {
    throw std::invalid_argument("epochs_initial must be >= 1 and epochs_refined >= 0");
  }
  if (!(lr > 0.0)) throw std::invalid_argument("learning rate must be positive");
  if (!(binarize_threshold > 0.0 && binarize_threshold < 1.0)) {
    throw std::invalid_argument("binarize_threshold must lie in (0, 1)");
  }
  if (!(rho >= 0.0 && rho <= 1.0)) throw std::invalid_argument("rho must lie in [0, 1]");
  if (hidden < 1) throw std::invalid_argument("hidden width must be >= 1");
  fusion.validate();
}

Cover binarize(const Matrix& probs, double threshold) {
  std::vector<std::vector<CommunityId>> rows(static_cast<std::size_t>(probs.rows()));
  for (Eigen::Index v = 0; v < probs.rows(); ++v) {
    for (Eigen::Index c = 0; c < probs.cols(); ++c) {
      if (probs(v, c) >= threshold) rows[v].push_back(static_cast<CommunityId>(c));
    }
  }
  return Cover::from_rows(static_cast<CommunityId>(probs.cols()), std::move(rows));
}

PhaseResult train_phase(ModelParams start, const PropagationMatrix& prop, const Matrix& features,
                        const LossTargets& targets, const TrainConfig& config, int epochs) {
  PhaseResult out;
  out.params = std::move(start);
  out.loss_trace.reserve(static_cast<std::size_t>(epochs));
  AdamState state = AdamState::zeros_like(out.params);
  const AdamConfig adam{config.lr};
  ModelParams best;
  double best_loss = std::numeric_limits<double>::infinity();
  for (int epoch = 0; epoch < epochs; ++epoch) {
    GradientResult step = gradients(out.params, config.fusion, prop, features, targets, weights_of(config));
    if (!std::isfinite(step.loss.total)) {
      throw NumericalError("loss diverged at epoch " + std::to_string(epoch));
    }
    out.loss_trace.push_back(step.loss.total);
    if (config.keep_best && step.loss.total < best_loss) {
      best_loss = step.loss.total;
      best = out.params;
    }
    adam_step(out.params, step.grads, state, adam);
    if (!out.params.all_finite()) {
      throw NumericalError("parameters became non-finite at epoch " + std::to_string(epoch));
    }
  }
  if (config.keep_best && epochs > 0) {
    // the parameters after the last update have not been scored yet
    const Matrix probs = predict(out.params, config.fusion, prop, features);
    if (bce_loss(probs, targets, weights_of(config)).total >= best_loss) out.params = std::move(best);
  }
  return out;
}

PhaseResult initial_training(const Graph& graph, const Matrix& features, const SampledLabels& sampled,
                             const Cover& pseudo, const TrainConfig& config) {
  config.validate();
  if (features.rows() != graph.n_nodes()) throw DimensionError("feature rows differ from node count");
  const ModelShape shape{static_cast<int>(features.cols()), config.hidden,
                         std::max(sampled.n_communities, pseudo.n_communities())};
  ModelParams params = init_params(shape, config.seed);
  params.final_gcn_activation = config.final_gcn_activation;
  const PropagationMatrix prop(graph);
  return train_phase(std::move(params), prop, features, make_targets(sampled, pseudo), config,
                     config.epochs_initial);
}

RefinedResult refined_training(const Graph& graph, const Matrix& features, const SampledLabels& sampled,
                               const ModelParams& initial, const TrainConfig& config,
                               const Cover& clique_pseudo) {
  config.validate();
  const PropagationMatrix prop(graph);
  RefinedResult out;
  const auto t0 = Clock::now();
  const Matrix probs = predict(initial, config.fusion, prop, features);
  out.pseudo = refresh_pseudo_labels(probs, sampled, config.pseudo.confidence);
  if (config.union_refresh && clique_pseudo.n_nodes() > 0) out.pseudo = union_cover(out.pseudo, clique_pseudo);
  out.n_pseudo = pseudo_coverage(out.pseudo, sampled);
  out.seconds_refresh = seconds_since(t0);

  PhaseResult phase = train_phase(initial, prop, features, make_targets(sampled, out.pseudo), config,
                                  config.epochs_refined);
  out.params = std::move(phase.params);
  out.loss_trace = std::move(phase.loss_trace);
  out.final_cover = binarize(predict(out.params, config.fusion, prop, features), config.binarize_threshold);
  return out;
}

PipelineResult run_pipeline(const Graph& graph, const Matrix& features, const Cover& truth,
                            const TrainConfig& config) {
  stage("config", [&] {
    config.validate();
    config.pseudo.validate(truth.n_communities());
    if (features.rows() != graph.n_nodes() || truth.n_nodes() != graph.n_nodes()) {
      throw DimensionError("graph, features and cover disagree on the node count");
    }
    return 0;
  });
  PipelineResult r;
  const CommunityId k = truth.n_communities();

  auto t0 = Clock::now();
  r.sampled = stage("sample", [&] { return sample_labels(truth, config.rho, config.seed); });
  r.cliques = stage("cliques", [&] { return identify_weak_cliques(graph); });
  r.pseudo_initial = stage("pseudo-init", [&] {
    return construct_pseudo_labels(r.cliques, r.sampled, graph.n_nodes(), k,
                                   config.pseudo.retained_communities);
  });
  r.report.seconds_pseudo_init = seconds_since(t0);

  t0 = Clock::now();
  PhaseResult initial = stage("initial-training", [&] {
    return initial_training(graph, features, r.sampled, r.pseudo_initial, config);
  });
  r.report.seconds_initial = seconds_since(t0);

  const PropagationMatrix prop(graph);
  r.initial_cover = stage("initial-eval", [&] {
    return binarize(predict(initial.params, config.fusion, prop, features), config.binarize_threshold);
  });

  t0 = Clock::now();
  RefinedResult refined = stage("refined-training", [&] {
    return refined_training(graph, features, r.sampled, initial.params, config, r.pseudo_initial);
  });
  r.report.seconds_pseudo_update = refined.seconds_refresh;
  r.report.seconds_refined = seconds_since(t0) - refined.seconds_refresh;

  r.pseudo_refined = std::move(refined.pseudo);
  r.final_cover = std::move(refined.final_cover);
  r.params = std::move(refined.params);

  const MetricReport metrics = stage("evaluate", [&] { return evaluate(r.final_cover, truth); });
  r.report.onmi = metrics.onmi;
  r.report.onmi_initial = stage("evaluate", [&] { return onmi(r.initial_cover, truth); });
  r.report.n_pred_communities = metrics.n_pred_communities;
  r.report.n_unassigned = metrics.n_unassigned;
  r.report.n_sampled = r.sampled.size();
  r.report.n_cliques = r.cliques.size();
  r.report.n_pseudo_initial = pseudo_coverage(r.pseudo_initial, r.sampled);
  r.report.n_pseudo_refined = refined.n_pseudo;
  r.report.loss_trace_initial = std::move(initial.loss_trace);
  r.report.loss_trace_refined = std::move(refined.loss_trace);
  return r;
}

}  // namespace wocd
