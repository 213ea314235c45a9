#include "wocd/config.hpp"

#include <cstdio>
#include <set>
#include <string>

#include "wocd/error.hpp"

namespace wocd {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (!known.contains(key)) throw ParseError(where + ": unknown key '" + key + "'");
  }
}

template <typename T>
void read(const json& j, const char* key, T& field) {
  if (!j.contains(key)) return;
  try {
    field = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("config key '") + key + "': " + e.what());
  }
}

}  // namespace

json to_json(const TrainConfig& c) {
  return {{"lambda1", c.lambda1},
          {"lambda2", c.lambda2},
          {"epochs_initial", c.epochs_initial},
          {"epochs_refined", c.epochs_refined},
          {"lr", c.lr},
          {"seed", c.seed},
          {"fusion", {{"alpha", c.fusion.alpha}, {"beta", c.fusion.beta}, {"gamma", c.fusion.gamma}}},
          {"pseudo", {{"r_c", c.pseudo.retained_communities}, {"tau", c.pseudo.confidence}}},
          {"binarize_threshold", c.binarize_threshold},
          {"rho", c.rho},
          {"hidden", c.hidden},
          {"final_gcn_activation", c.final_gcn_activation},
          {"keep_best", c.keep_best},
          {"union_refresh", c.union_refresh}};
}

TrainConfig train_config_from_json(const json& j, TrainConfig c) {
  reject_unknown(j,
                 {"lambda1", "lambda2", "epochs_initial", "epochs_refined", "lr", "seed", "fusion", "pseudo",
                  "binarize_threshold", "rho", "hidden", "final_gcn_activation", "keep_best",
                  "union_refresh"},
                 "train config");
  read(j, "lambda1", c.lambda1);
  read(j, "lambda2", c.lambda2);
  read(j, "epochs_initial", c.epochs_initial);
  read(j, "epochs_refined", c.epochs_refined);
  read(j, "lr", c.lr);
  read(j, "seed", c.seed);
  read(j, "binarize_threshold", c.binarize_threshold);
  read(j, "rho", c.rho);
  read(j, "hidden", c.hidden);
  read(j, "final_gcn_activation", c.final_gcn_activation);
  read(j, "keep_best", c.keep_best);
  read(j, "union_refresh", c.union_refresh);
  if (j.contains("fusion")) {
    const auto& f = j.at("fusion");
    reject_unknown(f, {"alpha", "beta", "gamma"}, "fusion");
    read(f, "alpha", c.fusion.alpha);
    read(f, "beta", c.fusion.beta);
    read(f, "gamma", c.fusion.gamma);
  }
  if (j.contains("pseudo")) {
    const auto& p = j.at("pseudo");
    reject_unknown(p, {"r_c", "tau"}, "pseudo");
    read(p, "r_c", c.pseudo.retained_communities);
    read(p, "tau", c.pseudo.confidence);
  }
  return c;
}

json to_json(const SynthConfig& c) {
  return {{"n_nodes", c.n_nodes},
          {"n_communities", c.n_communities},
          {"overlap_fraction", c.overlap_fraction},
          {"p_in", c.p_in},
          {"p_out", c.p_out},
          {"dims_per_community", c.dims_per_community},
          {"feature_signal", c.feature_signal},
          {"feature_noise", c.feature_noise},
          {"seed", c.seed}};
}

SynthConfig synth_config_from_json(const json& j, SynthConfig c) {
  reject_unknown(j,
                 {"n_nodes", "n_communities", "overlap_fraction", "p_in", "p_out", "dims_per_community",
                  "feature_signal", "feature_noise", "seed"},
                 "synth config");
  read(j, "n_nodes", c.n_nodes);
  read(j, "n_communities", c.n_communities);
  read(j, "overlap_fraction", c.overlap_fraction);
  read(j, "p_in", c.p_in);
  read(j, "p_out", c.p_out);
  read(j, "dims_per_community", c.dims_per_community);
  read(j, "feature_signal", c.feature_signal);
  read(j, "feature_noise", c.feature_noise);
  read(j, "seed", c.seed);
  return c;
}

json to_json(const RunReport& r) {
  return {{"onmi", r.onmi},
          {"onmi_initial", r.onmi_initial},
          {"n_sampled", r.n_sampled},
          {"n_cliques", r.n_cliques},
          {"n_pseudo_initial", r.n_pseudo_initial},
          {"n_pseudo_refined", r.n_pseudo_refined},
          {"n_pred_communities", r.n_pred_communities},
          {"n_unassigned", r.n_unassigned},
          {"loss_trace_initial", r.loss_trace_initial},
          {"loss_trace_refined", r.loss_trace_refined},
          {"wall_time",
           {{"pseudo_init", r.seconds_pseudo_init},
            {"initial", r.seconds_initial},
            {"pseudo_update", r.seconds_pseudo_update},
            {"refined", r.seconds_refined}}}};
}

std::string report_csv_header() {
  return "onmi_pct,onmi_initial_pct,n_sampled,n_cliques,n_pseudo_initial,n_pseudo_refined,"
         "n_pred_communities,n_unassigned,final_loss";
}

std::string report_csv_row(const RunReport& r) {
  const double final_loss = !r.loss_trace_refined.empty()   ? r.loss_trace_refined.back()
                            : !r.loss_trace_initial.empty() ? r.loss_trace_initial.back()
                                                            : 0.0;
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%.1f,%.1f,%zu,%zu,%d,%d,%d,%d,%.6g", 100.0 * r.onmi, 100.0 * r.onmi_initial,
                r.n_sampled, r.n_cliques, r.n_pseudo_initial, r.n_pseudo_refined, r.n_pred_communities,
                r.n_unassigned, final_loss);
  return buf;
}

}  // namespace wocd
