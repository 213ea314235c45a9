#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "wocd/checkpoint.hpp"
#include "wocd/cliquefind.hpp"
#include "wocd/config.hpp"
#include "wocd/error.hpp"
#include "wocd/graphio.hpp"
#include "wocd/metrics.hpp"
#include "wocd/pseudolabel.hpp"
#include "wocd/sampling.hpp"
#include "wocd/synth.hpp"
#include "wocd/trainer.hpp"

namespace wocd::cli {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text_file(path, text);
  }
}

std::string format_cliques(const CliqueSet& set) {
  std::string out;
  for (const auto& c : set.cliques) {
    out += std::to_string(c.seed_u) + " " + std::to_string(c.seed_v) + ":";
    for (NodeId m : c.members) out += " " + std::to_string(m);
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// synth

struct SynthArgs {
  SynthConfig config;
  std::string out_dir;
};

void add_synth(CLI::App& app, SynthArgs& a) {
  auto* cmd = app.add_subcommand("synth", "Generate a planted overlapping benchmark graph");
  cmd->add_option("--nodes", a.config.n_nodes, "Number of nodes")->required();
  cmd->add_option("--communities", a.config.n_communities, "Number of planted communities")->required();
  cmd->add_option("--overlap", a.config.overlap_fraction, "Fraction of nodes with a second community")
      ->capture_default_str();
  cmd->add_option("--p-in", a.config.p_in, "Edge probability inside a shared community")->capture_default_str();
  cmd->add_option("--p-out", a.config.p_out, "Background edge probability")->capture_default_str();
  cmd->add_option("--dims-per-community", a.config.dims_per_community, "Feature columns per community")
      ->capture_default_str();
  cmd->add_option("--feature-signal", a.config.feature_signal, "Activation probability on own dims")
      ->capture_default_str();
  cmd->add_option("--feature-noise", a.config.feature_noise, "Activation probability elsewhere")
      ->capture_default_str();
  cmd->add_option("--seed", a.config.seed, "Random seed")->capture_default_str();
  cmd->add_option("--out-dir", a.out_dir, "Directory receiving edges.tsv, features.csv, cover.txt, manifest.json")
      ->required();
}

int run_synth(const SynthArgs& a) {
  const SynthGraph g = synth_graph(a.config);
  const fs::path dir(a.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  write_edge_list(g.graph, dir / "edges.tsv");
  write_features(g.features, dir / "features.csv");
  write_cover(g.cover, dir / "cover.txt");
  json manifest = {{"config", to_json(a.config)},
                   {"files", {{"edges", "edges.tsv"}, {"features", "features.csv"}, {"cover", "cover.txt"}}},
                   {"n_edges", g.graph.n_edges()},
                   {"feature_dims", g.features.cols()}};
  write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");
  return kOk;
}

// ---------------------------------------------------------------------------
// cliques

struct CliquesArgs {
  std::string edges;
  std::string out;
  std::string id_map;
};

void add_cliques(CLI::App& app, CliquesArgs& a) {
  auto* cmd = app.add_subcommand("cliques", "Extract weak cliques; one 'u v: members...' line each");
  cmd->add_option("--edges", a.edges, "Edge list")->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", a.out, "Output path (default: stdout)");
  cmd->add_option("--id-map", a.id_map,
                  "Treat edge-list tokens as arbitrary labels; write the label->id map here");
}

int run_cliques(const CliquesArgs& a) {
  Graph graph;
  if (!a.id_map.empty()) {
    LabeledGraph labeled = load_labeled_edge_list(a.edges);
    write_id_map(labeled.labels, a.id_map);
    graph = std::move(labeled.graph);
  } else {
    graph = load_edge_list(a.edges);
  }
  emit(format_cliques(identify_weak_cliques(graph)), a.out);
  return kOk;
}

// ---------------------------------------------------------------------------
// pseudo

struct PseudoArgs {
  std::string edges, cover, out;
  double rho = 0.10;
  std::uint64_t seed = 0;
  int retained = 1;
};

void add_pseudo(CLI::App& app, PseudoArgs& a) {
  auto* cmd = app.add_subcommand("pseudo", "Build clique-vote pseudo labels from sampled ground truth");
  cmd->add_option("--edges", a.edges, "Edge list")->required()->check(CLI::ExistingFile);
  cmd->add_option("--cover", a.cover, "Ground-truth cover to sample from")->required()->check(CLI::ExistingFile);
  cmd->add_option("--rho", a.rho, "Sampling ratio")->capture_default_str();
  cmd->add_option("--seed", a.seed, "Sampling seed")->capture_default_str();
  cmd->add_option("--r-c", a.retained, "Communities retained per clique")->capture_default_str();
  cmd->add_option("--out", a.out, "Pseudo cover output path")->required();
}

int run_pseudo(const PseudoArgs& a) {
  const Graph graph = load_edge_list(a.edges);
  const Cover truth = load_cover(a.cover);
  if (truth.n_nodes() != graph.n_nodes()) throw DimensionError("cover and graph disagree on the node count");
  PseudoConfig{a.retained, 0.9}.validate(truth.n_communities());
  const SampledLabels sampled = sample_labels(truth, a.rho, a.seed);
  const CliqueSet cliques = identify_weak_cliques(graph);
  const Cover pseudo = construct_pseudo_labels(cliques, sampled, graph.n_nodes(), truth.n_communities(), a.retained);
  write_cover(pseudo, a.out);

  const auto is_sampled = sampled.mask(graph.n_nodes());
  std::size_t used = 0;
  for (const auto& c : cliques.cliques) {
    if (std::any_of(c.members.begin(), c.members.end(), [&](NodeId v) { return is_sampled[v]; })) ++used;
  }
  json stats = {{"n_pseudo", pseudo_coverage(pseudo, sampled)},
                {"n_cliques", cliques.size()},
                {"n_cliques_used", used},
                {"n_sampled", sampled.size()}};
  std::cout << stats.dump() << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// train / ablate share the data and config flags

struct DataArgs {
  std::string edges, features, cover;
  bool features_header = false;
};

void add_data_flags(CLI::App* cmd, DataArgs& d) {
  cmd->add_option("--edges", d.edges, "Edge list")->required()->check(CLI::ExistingFile);
  cmd->add_option("--features", d.features, "Feature CSV")->required()->check(CLI::ExistingFile);
  cmd->add_option("--cover", d.cover, "Ground-truth cover")->required()->check(CLI::ExistingFile);
  cmd->add_flag("--features-header", d.features_header, "Feature CSV has a header line");
}

struct LoadedData {
  Graph graph;
  FeatureMatrix features;
  Cover truth;
};

LoadedData load_data(const DataArgs& d) {
  LoadedData out{load_edge_list(d.edges), load_features(d.features, d.features_header), load_cover(d.cover)};
  if (out.features.rows() != out.graph.n_nodes() || out.truth.n_nodes() != out.graph.n_nodes()) {
    throw DimensionError("edges (" + std::to_string(out.graph.n_nodes()) + " nodes), features (" +
                         std::to_string(out.features.rows()) + " rows) and cover (" +
                         std::to_string(out.truth.n_nodes()) + " nodes) disagree");
  }
  return out;
}

// Config-file values, overridden by any flag given on the command line.
struct ConfigArgs {
  std::string config_path;
  TrainConfig flags;
  std::optional<int> epochs_total;
  CLI::App* cmd = nullptr;
};

void add_config_flags(CLI::App* cmd, ConfigArgs& c) {
  c.cmd = cmd;
  auto& f = c.flags;
  cmd->add_option("--config", c.config_path, "JSON training config")->check(CLI::ExistingFile);
  cmd->add_option("--lambda1", f.lambda1, "Weight of the sampled-label loss")->capture_default_str();
  cmd->add_option("--lambda2", f.lambda2, "Weight of the pseudo-label loss")->capture_default_str();
  cmd->add_option("--epochs", c.epochs_total, "Total epochs, split evenly between the two phases");
  cmd->add_option("--epochs-initial", f.epochs_initial, "Initial-phase epochs")->capture_default_str();
  cmd->add_option("--epochs-refined", f.epochs_refined, "Refined-phase epochs")->capture_default_str();
  cmd->add_option("--lr", f.lr, "Adam learning rate")->capture_default_str();
  cmd->add_option("--seed", f.seed, "Seed for sampling and initialisation")->capture_default_str();
  cmd->add_option("--alpha", f.fusion.alpha, "GCN branch weight")->capture_default_str();
  cmd->add_option("--beta", f.fusion.beta, "Attention branch weight")->capture_default_str();
  cmd->add_option("--gamma", f.fusion.gamma, "Attention residual coefficient")->capture_default_str();
  cmd->add_option("--r-c", f.pseudo.retained_communities, "Communities retained per clique")->capture_default_str();
  cmd->add_option("--tau", f.pseudo.confidence, "Pseudo-label confidence threshold")->capture_default_str();
  cmd->add_option("--threshold", f.binarize_threshold, "Membership probability threshold")->capture_default_str();
  cmd->add_option("--rho", f.rho, "Sampling ratio")->capture_default_str();
  cmd->add_option("--hidden", f.hidden, "Hidden width")->capture_default_str();
  cmd->add_flag("--final-gcn-activation", f.final_gcn_activation, "Rectify the last GCN layer");
  cmd->add_flag("--keep-best", f.keep_best, "Keep lowest-loss parameters of each phase");
  cmd->add_flag("--union-refresh", f.union_refresh, "Union refreshed pseudo labels with clique labels");
}

TrainConfig resolve_config(const ConfigArgs& c) {
  TrainConfig config;
  if (!c.config_path.empty()) {
    json j;
    try {
      j = json::parse(read_text_file(c.config_path));
    } catch (const json::parse_error& e) {
      throw ParseError(c.config_path + ": " + e.what());
    }
    config = train_config_from_json(j);
  }
  auto given = [&](const char* flag) { return c.cmd->count(flag) > 0; };
  const auto& f = c.flags;
  if (given("--lambda1")) config.lambda1 = f.lambda1;
  if (given("--lambda2")) config.lambda2 = f.lambda2;
  if (c.epochs_total) {
    config.epochs_initial = (*c.epochs_total + 1) / 2;
    config.epochs_refined = *c.epochs_total / 2;
  }
  if (given("--epochs-initial")) config.epochs_initial = f.epochs_initial;
  if (given("--epochs-refined")) config.epochs_refined = f.epochs_refined;
  if (given("--lr")) config.lr = f.lr;
  if (given("--seed")) config.seed = f.seed;
  if (given("--alpha")) config.fusion.alpha = f.fusion.alpha;
  if (given("--beta")) config.fusion.beta = f.fusion.beta;
  if (given("--gamma")) config.fusion.gamma = f.fusion.gamma;
  if (given("--r-c")) config.pseudo.retained_communities = f.pseudo.retained_communities;
  if (given("--tau")) config.pseudo.confidence = f.pseudo.confidence;
  if (given("--threshold")) config.binarize_threshold = f.binarize_threshold;
  if (given("--rho")) config.rho = f.rho;
  if (given("--hidden")) config.hidden = f.hidden;
  if (given("--final-gcn-activation")) config.final_gcn_activation = true;
  if (given("--keep-best")) config.keep_best = true;
  if (given("--union-refresh")) config.union_refresh = true;
  config.validate();
  return config;
}

// ---------------------------------------------------------------------------
// train

struct TrainArgs {
  DataArgs data;
  ConfigArgs config;
  std::string report = "report.json";
  std::string out_cover = "final_cover.txt";
  std::string csv;
  std::string save_model;
  std::string artifacts;
};

void add_train(CLI::App& app, TrainArgs& a) {
  auto* cmd = app.add_subcommand("train", "Run the full two-phase pipeline and score it with ONMI");
  add_data_flags(cmd, a.data);
  add_config_flags(cmd, a.config);
  cmd->add_option("--report", a.report, "RunReport JSON path")->capture_default_str();
  cmd->add_option("--out-cover", a.out_cover, "Final cover path")->capture_default_str();
  cmd->add_option("--csv", a.csv, "Also write a one-row CSV summary here");
  cmd->add_option("--save-model", a.save_model, "Write the final model checkpoint here");
  cmd->add_option("--artifacts", a.artifacts, "Directory for intermediate stage outputs");
}

int run_train(const TrainArgs& a) {
  const TrainConfig config = resolve_config(a.config);
  const LoadedData data = load_data(a.data);
  const PipelineResult result = run_pipeline(data.graph, data.features, data.truth, config);

  json report = to_json(result.report);
  report["config"] = to_json(config);
  write_text_file(a.report, report.dump(2) + "\n");
  write_cover(result.final_cover, a.out_cover);
  if (!a.csv.empty()) {
    write_text_file(a.csv, report_csv_header() + "\n" + report_csv_row(result.report) + "\n");
  }
  if (!a.save_model.empty()) save_checkpoint({result.params, config.seed}, a.save_model);
  if (!a.artifacts.empty()) {
    const fs::path dir(a.artifacts);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
    std::vector<std::vector<CommunityId>> rows(static_cast<std::size_t>(data.graph.n_nodes()));
    for (std::size_t i = 0; i < result.sampled.size(); ++i) rows[result.sampled.node_ids[i]] = result.sampled.rows[i];
    std::string sampled_text = "# sampled nodes only\n#communities=" + std::to_string(data.truth.n_communities()) + "\n";
    for (std::size_t i = 0; i < result.sampled.size(); ++i) {
      sampled_text += std::to_string(result.sampled.node_ids[i]) + ":";
      for (CommunityId c : result.sampled.rows[i]) sampled_text += " " + std::to_string(c);
      sampled_text += "\n";
    }
    write_text_file(dir / "sampled.txt", sampled_text);
    write_text_file(dir / "cliques.txt", format_cliques(result.cliques));
    write_cover(result.pseudo_initial, dir / "pseudo_initial.txt");
    write_cover(result.pseudo_refined, dir / "pseudo_refined.txt");
    write_cover(result.initial_cover, dir / "initial_cover.txt");
  }
  std::cout << "onmi=" << result.report.onmi << " onmi_initial=" << result.report.onmi_initial
            << " n_pseudo_initial=" << result.report.n_pseudo_initial
            << " n_pseudo_refined=" << result.report.n_pseudo_refined << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// eval

struct EvalArgs {
  std::string predicted, truth, out;
};

void add_eval(CLI::App& app, EvalArgs& a) {
  auto* cmd = app.add_subcommand("eval", "Score a predicted cover against ground truth (ONMI)");
  cmd->add_option("predicted", a.predicted, "Predicted cover")->required()->check(CLI::ExistingFile);
  cmd->add_option("truth", a.truth, "Ground-truth cover")->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", a.out, "Output path (default: stdout)");
}

int run_eval(const EvalArgs& a) {
  const MetricReport r = evaluate(load_cover(a.predicted), load_cover(a.truth));
  json j = {{"onmi", r.onmi}, {"n_pred_communities", r.n_pred_communities}, {"n_unassigned", r.n_unassigned}};
  emit(j.dump(2) + "\n", a.out);
  return kOk;
}

// ---------------------------------------------------------------------------
// ablate

struct AblateArgs {
  DataArgs data;
  ConfigArgs config;
  std::vector<double> rhos{0.05, 0.10, 0.15, 0.20};
  std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4};
  std::vector<std::string> arms{"full"};
  int jobs = 1;
  std::string out;
};

void add_ablate(CLI::App& app, AblateArgs& a) {
  auto* cmd = app.add_subcommand("ablate", "Sweep arms x sampling ratios x seeds; CSV with per-cell means");
  add_data_flags(cmd, a.data);
  add_config_flags(cmd, a.config);
  cmd->add_option("--rhos", a.rhos, "Sampling ratios")->delimiter(',')->capture_default_str();
  cmd->add_option("--seeds", a.seeds, "Seeds")->delimiter(',')->capture_default_str();
  cmd->add_option("--arms", a.arms, "Arms: full, no-pseudo, gcn-only")
      ->delimiter(',')
      ->check(CLI::IsMember({"full", "no-pseudo", "gcn-only"}))
      ->capture_default_str();
  cmd->add_option("--jobs", a.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--out", a.out, "CSV output path (default: stdout)");
}

TrainConfig arm_config(TrainConfig config, const std::string& arm) {
  if (arm == "no-pseudo") {
    // ground truth only, no second round
    config.lambda2 = 0.0;
    config.epochs_refined = 0;
  } else if (arm == "gcn-only") {
    config.fusion.beta = 0.0;
  }
  return config;
}

std::string fixed(double x, int digits) {
  std::ostringstream ss;
  ss.setf(std::ios::fixed);
  ss.precision(digits);
  ss << x;
  return ss.str();
}

int run_ablate(const AblateArgs& a) {
  const TrainConfig base = resolve_config(a.config);
  const LoadedData data = load_data(a.data);

  struct Cell {
    std::string arm;
    double rho;
    std::uint64_t seed;
  };
  std::vector<Cell> grid;
  for (const auto& arm : a.arms) {
    for (double rho : a.rhos) {
      for (auto seed : a.seeds) grid.push_back({arm, rho, seed});
    }
  }

  std::vector<std::optional<RunReport>> reports(grid.size());
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      try {
        TrainConfig config = arm_config(base, grid[i].arm);
        config.rho = grid[i].rho;
        config.seed = grid[i].seed;
        reports[i] = run_pipeline(data.graph, data.features, data.truth, config).report;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const int n_workers = std::max(1, std::min<int>(a.jobs, static_cast<int>(grid.size())));
  for (int t = 1; t < n_workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  std::string csv = "kind,arm,rho,seed,onmi_pct,onmi_std_pct,onmi_display,onmi_initial_pct,n_pseudo_initial,"
                    "n_pseudo_refined,final_loss\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const RunReport& r = *reports[i];
    const double final_loss = !r.loss_trace_refined.empty() ? r.loss_trace_refined.back()
                                                            : r.loss_trace_initial.back();
    csv += "run," + grid[i].arm + "," + fixed(grid[i].rho, 2) + "," + std::to_string(grid[i].seed) + "," +
           fixed(100.0 * r.onmi, 1) + ",," + fixed(100.0 * r.onmi, 1) + "," + fixed(100.0 * r.onmi_initial, 1) +
           "," + std::to_string(r.n_pseudo_initial) + "," + std::to_string(r.n_pseudo_refined) + "," +
           fixed(final_loss, 6) + "\n";
  }
  // one aggregate row per (arm, rho), in grid order
  const std::size_t per_cell = a.seeds.size();
  for (std::size_t start = 0; start < grid.size(); start += per_cell) {
    double mean = 0, mean_init = 0, mean_pi = 0, mean_pr = 0, mean_loss = 0;
    for (std::size_t i = start; i < start + per_cell; ++i) {
      const RunReport& r = *reports[i];
      mean += r.onmi;
      mean_init += r.onmi_initial;
      mean_pi += r.n_pseudo_initial;
      mean_pr += r.n_pseudo_refined;
      mean_loss += !r.loss_trace_refined.empty() ? r.loss_trace_refined.back() : r.loss_trace_initial.back();
    }
    const double n = static_cast<double>(per_cell);
    mean /= n;
    double var = 0;
    for (std::size_t i = start; i < start + per_cell; ++i) var += std::pow(reports[i]->onmi - mean, 2);
    const double sd = per_cell > 1 ? std::sqrt(var / (n - 1)) : 0.0;
    csv += "mean," + grid[start].arm + "," + fixed(grid[start].rho, 2) + ",all," + fixed(100.0 * mean, 1) + "," +
           fixed(100.0 * sd, 1) + "," + fixed(100.0 * mean, 1) + " ± " + fixed(100.0 * sd, 1) + "," +
           fixed(100.0 * mean_init / n, 1) + "," + fixed(mean_pi / n, 1) + "," + fixed(mean_pr / n, 1) + "," +
           fixed(mean_loss / n, 6) + "\n";
  }
  emit(csv, a.out);
  return kOk;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Semi-supervised overlapping community detection with weak-clique pseudo labels"};
  app.require_subcommand(1);
  SynthArgs synth;
  CliquesArgs cliques;
  PseudoArgs pseudo;
  TrainArgs train;
  EvalArgs eval;
  AblateArgs ablate;
  add_synth(app, synth);
  add_cliques(app, cliques);
  add_pseudo(app, pseudo);
  add_train(app, train);
  add_eval(app, eval);
  add_ablate(app, ablate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (app.got_subcommand("synth")) return run_synth(synth);
    if (app.got_subcommand("cliques")) return run_cliques(cliques);
    if (app.got_subcommand("pseudo")) return run_pseudo(pseudo);
    if (app.got_subcommand("train")) return run_train(train);
    if (app.got_subcommand("eval")) return run_eval(eval);
    if (app.got_subcommand("ablate")) return run_ablate(ablate);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}

}  // namespace wocd::cli
