// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails that was not listed with --known-red.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#if defined(__GLIBC__)
#include <malloc.h>
#endif

#include <CLI11.hpp>

#include "oracles/oracles.hpp"
#include "wocd/cliquefind.hpp"
#include "wocd/metrics.hpp"
#include "wocd/pseudolabel.hpp"
#include "wocd/synth.hpp"
#include "wocd/trainer.hpp"

using namespace wocd;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

struct Line {
  std::string id;
  std::string title;
  bool pass = false;
  std::string detail;
};

Graph gnp(NodeId n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (coin(rng)) edges.emplace_back(u, v);
  return Graph::from_edges(n, edges);
}

// --- 1 and 2 ----------------------------------------------------------------

std::vector<Line> weak_cliques() {
  const auto start = Clock::now();
  std::mt19937_64 rng(2024);
  const double probs[] = {0.1, 0.3, 0.5};
  int mismatched = 0, violations = 0;
  std::size_t records = 0;
  for (int i = 0; i < 200; ++i) {
    const NodeId n = std::uniform_int_distribution<NodeId>(2, 30)(rng);
    const Graph g = gnp(n, probs[i % 3], rng);
    oracle::Edges edges;
    for (auto [u, v] : g.edges()) edges.emplace_back(u, v);
    const auto want = oracle::weak_cliques(n, edges);
    const auto got = identify_weak_cliques(g);

    bool same = got.size() == want.size();
    for (std::size_t r = 0; same && r < want.size(); ++r) {
      const auto& c = got.cliques[r];
      same = c.seed_u == want[r].u && c.seed_v == want[r].v &&
             std::equal(c.members.begin(), c.members.end(), want[r].members.begin(), want[r].members.end());
    }
    mismatched += !same;

    for (const auto& c : got.cliques) {
      ++records;
      std::vector<NodeId> expect;
      for (NodeId w = 0; w < n; ++w) {
        if (w == c.seed_u || w == c.seed_v || (g.has_edge(w, c.seed_u) && g.has_edge(w, c.seed_v))) expect.push_back(w);
      }
      violations += !(g.has_edge(c.seed_u, c.seed_v) && expect == c.members);
    }
  }
  const double secs = seconds_since(start);
  return {
      {"1", "weak-clique oracle equivalence", mismatched == 0 && secs < 5.0,
       std::to_string(200 - mismatched) + "/200 graphs match, " + fmt("%.2f s", secs) + " (limit 5 s)"},
      {"2", "weak-clique member invariant", violations == 0,
       std::to_string(violations) + " violations in " + std::to_string(records) + " records"},
  };
}

// --- 3 ----------------------------------------------------------------------

Line pseudo_labels() {
  std::mt19937_64 rng(77);
  int mismatched = 0;
  for (int i = 0; i < 200; ++i) {
    const NodeId n = std::uniform_int_distribution<NodeId>(4, 30)(rng);
    const CommunityId k = std::uniform_int_distribution<CommunityId>(3, 5)(rng);
    const int retained = 1 + i % 3;
    const Graph g = gnp(n, 0.3, rng);
    const auto cliques = identify_weak_cliques(g);

    std::bernoulli_distribution member(0.35), pick(0.4);
    std::vector<std::vector<CommunityId>> rows(n);
    for (auto& row : rows)
      for (CommunityId c = 0; c < k; ++c)
        if (member(rng)) row.push_back(c);
    SampledLabels sampled{{}, {}, k};
    std::vector<std::vector<int>> dense(n, std::vector<int>(k, 0));
    for (NodeId v = 0; v < n; ++v) {
      if (!pick(rng)) continue;
      sampled.node_ids.push_back(v);
      sampled.rows.push_back(rows[v]);
      for (CommunityId c : rows[v]) dense[v][c] = 1;
    }
    std::vector<std::vector<int>> members;
    for (const auto& c : cliques.cliques) members.emplace_back(c.members.begin(), c.members.end());

    const Cover got = construct_pseudo_labels(cliques, sampled, n, k, retained);
    const auto want = oracle::pseudo_labels(members, dense, retained);
    bool same = true;
    for (NodeId v = 0; v < n; ++v)
      for (CommunityId c = 0; c < k; ++c) same = same && got.contains(v, c) == (want[v][c] == 1);
    mismatched += !same;
  }
  return {"3", "pseudo-label oracle equivalence", mismatched == 0,
          std::to_string(200 - mismatched) + "/200 instances match"};
}

// --- 4 ----------------------------------------------------------------------

Line gradient_check() {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t coords = 0, bad = 0;
  int accepted = 0, redrawn = 0;
  double worst_rel = 0;
  // Draws whose +-step stencil flips a rectifier somewhere are redrawn: across
  // a kink the central difference is not a derivative of either piece.
  for (int draw = 0; accepted < 20 && draw < 200; ++draw) {
    const NodeId n = 12;
    const int d = 7, k = 3, h = 8;
    const Graph g = gnp(n, 0.3, rng);
    const Matrix x = Matrix::NullaryExpr(n, d, [&] { return normal(rng); });
    ModelParams params = init_params({d, h, k}, 1000 + draw);
    params.final_gcn_activation = draw % 2 == 1;
    params.for_each_tensor([&](const std::string& name, Matrix& t) {
      if (name.ends_with(".bias")) t = Matrix::NullaryExpr(t.rows(), t.cols(), [&] { return 0.1 * normal(rng); });
    });
    const FusionParams fusion{0.2 + unit(rng), 0.2 + unit(rng), unit(rng)};
    const LossWeights weights{1 + 4 * unit(rng), 1 + 4 * unit(rng)};

    std::bernoulli_distribution coin(0.5);
    SampledLabels sampled{{}, {}, k};
    std::vector<std::vector<CommunityId>> pseudo(n);
    for (NodeId v = 0; v < n; ++v) {
      std::vector<CommunityId> row;
      for (CommunityId c = 0; c < k; ++c)
        if (coin(rng)) row.push_back(c);
      if (v % 3 == 0) {
        sampled.node_ids.push_back(v);
        sampled.rows.push_back(row);
      } else {
        pseudo[v] = row;
      }
    }
    const auto targets = make_targets(sampled, Cover::from_rows(k, pseudo));

    oracle::Edges edges;
    for (auto [u, v] : g.edges()) edges.emplace_back(u, v);
    const auto fd = oracle::finite_difference(params, fusion, oracle::propagation(n, edges), x, targets, weights, 1e-4);
    bool crossed = false;
    fd.crossed.for_each_tensor([&](const std::string&, const Matrix& m) { crossed = crossed || m.sum() > 0; });
    if (crossed) {
      ++redrawn;
      continue;
    }
    ++accepted;
    const auto analytic = gradients(params, fusion, gcn_norm(g), x, targets, weights).grads;

    std::vector<const Matrix*> a, b;
    analytic.for_each_tensor([&](const std::string&, const Matrix& m) { a.push_back(&m); });
    fd.grads.for_each_tensor([&](const std::string&, const Matrix& m) { b.push_back(&m); });
    for (std::size_t t = 0; t < a.size(); ++t) {
      for (Eigen::Index j = 0; j < a[t]->size(); ++j) {
        const double ga = a[t]->data()[j], gb = b[t]->data()[j];
        ++coords;
        if (std::abs(gb) < 1e-6) {
          bad += std::abs(ga - gb) > 1e-8;
        } else {
          const double rel = std::abs(ga - gb) / std::abs(gb);
          worst_rel = std::max(worst_rel, rel);
          bad += rel > 1e-4;
        }
      }
    }
  }
  return {"4", "analytic gradients vs central differences", bad == 0 && accepted == 20,
          std::to_string(coords - bad) + "/" + std::to_string(coords) + " coordinates over " +
              std::to_string(accepted) + " instances, worst rel " + fmt("%.2e", worst_rel) + ", " +
              std::to_string(redrawn) + " draws redrawn for kink crossings"};
}

// --- 5 ----------------------------------------------------------------------

Line attention_check() {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal(0.0, 1.0);
  double worst = 0;
  int cases = 0;
  for (NodeId n : {1, 5, 64}) {
    for (double gamma : {0.0, 0.5, 1.0}) {
      for (int rep = 0; rep < 5; ++rep) {
        const int d = 6, h = 10;
        const Matrix x = Matrix::NullaryExpr(n, d, [&] { return normal(rng); });
        ModelParams params = init_params({d, h, 3}, rng());
        params.for_each_tensor([&](const std::string&, Matrix& t) {
          t = Matrix::NullaryExpr(t.rows(), t.cols(), [&] { return normal(rng); });
        });
        const Matrix got = gt_forward(params, x, gamma);
        const oracle::Dense want = oracle::attention(params, x, gamma);
        worst = std::max(worst, (oracle::Dense(got) - want).cwiseAbs().maxCoeff());
        ++cases;
      }
    }
  }
  return {"5", "linear attention vs naive N x N form", worst <= 1e-8,
          std::to_string(cases) + " cases, max abs diff " + fmt("%.2e", worst) + " (limit 1e-8)"};
}

// --- 6 ----------------------------------------------------------------------

Line onmi_check() {
  std::mt19937_64 rng(6);
  auto random_cover = [&](NodeId n, CommunityId k) {
    std::bernoulli_distribution coin(std::uniform_real_distribution<double>(0.1, 0.6)(rng));
    std::vector<std::vector<CommunityId>> rows(n);
    for (auto& row : rows)
      for (CommunityId c = 0; c < k; ++c)
        if (coin(rng)) row.push_back(c);
    return Cover::from_rows(k, rows);
  };
  auto lists = [](const Cover& c) {
    std::vector<std::vector<int>> out;
    for (const auto& m : c.members()) out.emplace_back(m.begin(), m.end());
    return out;
  };
  double worst_sym = 0, worst_id = 0, worst_oracle = 0;
  bool in_range = true;
  for (int i = 0; i < 100; ++i) {
    const NodeId n = std::uniform_int_distribution<NodeId>(2, 20)(rng);
    const Cover x = random_cover(n, std::uniform_int_distribution<CommunityId>(1, 4)(rng));
    const Cover y = random_cover(n, std::uniform_int_distribution<CommunityId>(1, 4)(rng));
    const double xy = onmi(x, y), yx = onmi(y, x);
    worst_sym = std::max(worst_sym, std::abs(xy - yx));
    in_range = in_range && xy >= 0 && xy <= 1 && yx >= 0 && yx <= 1;
    if (x.n_assigned() > 0) worst_id = std::max(worst_id, std::abs(onmi(x, x) - 1.0));
    worst_oracle = std::max(worst_oracle, std::abs(xy - oracle::onmi(lists(x), lists(y), n)));
  }
  const bool pass = worst_sym <= 1e-12 && worst_id <= 1e-12 && in_range && worst_oracle <= 1e-10;
  return {"6", "ONMI properties and oracle agreement", pass,
          "symmetry " + fmt("%.1e", worst_sym) + ", identity " + fmt("%.1e", worst_id) + ", range " +
              (in_range ? "ok" : "violated") + ", oracle " + fmt("%.1e", worst_oracle) + " over 100 pairs"};
}

// --- 7, 8, 9 ----------------------------------------------------------------

struct ArmStats {
  std::vector<RunReport> runs;
  double mean(double RunReport::*field) const {
    double s = 0;
    for (const auto& r : runs) s += r.*field;
    return s / static_cast<double>(runs.size());
  }
  double mean_count(NodeId RunReport::*field) const {
    double s = 0;
    for (const auto& r : runs) s += r.*field;
    return s / static_cast<double>(runs.size());
  }
  std::string onmis() const {
    std::string s;
    for (const auto& r : runs) s += (s.empty() ? "" : " ") + fmt("%.3f", r.onmi);
    return s;
  }
};

SynthGraph benchmark(std::uint64_t seed) {
  SynthConfig cfg;  // N=500, K=4, overlap 0.15, p_in 0.08, p_out 0.002
  cfg.seed = seed;
  return synth_graph(cfg);
}

ArmStats run_arm(const std::vector<SynthGraph>& graphs, TrainConfig config, bool verbose, const char* label) {
  ArmStats stats;
  for (std::size_t s = 0; s < graphs.size(); ++s) {
    config.seed = s;
    const auto start = Clock::now();
    stats.runs.push_back(run_pipeline(graphs[s].graph, graphs[s].features, graphs[s].cover, config).report);
    if (verbose) {
      std::printf("      %-9s seed %zu  onmi %.3f  initial %.3f  pseudo %d -> %d  (%.1f s)\n", label, s,
                  stats.runs.back().onmi, stats.runs.back().onmi_initial, stats.runs.back().n_pseudo_initial,
                  stats.runs.back().n_pseudo_refined, seconds_since(start));
      std::fflush(stdout);
    }
  }
  return stats;
}

std::vector<Line> end_to_end(bool verbose) {
  std::vector<SynthGraph> graphs;
  for (std::uint64_t s = 0; s < 5; ++s) graphs.push_back(benchmark(s));

  const TrainConfig base;  // rho 0.10, defaults throughout
  const auto start = Clock::now();
  const ArmStats full = run_arm(graphs, base, verbose, "full");
  TrainConfig no_pseudo = base;
  no_pseudo.lambda2 = 0.0;
  no_pseudo.epochs_refined = 0;
  const ArmStats nop = run_arm(graphs, no_pseudo, verbose, "no-pseudo");
  TrainConfig gcn_only = base;
  gcn_only.fusion.beta = 0.0;
  const ArmStats gcn = run_arm(graphs, gcn_only, verbose, "gcn-only");
  const double secs7 = seconds_since(start);

  TrainConfig low = base, high = base;
  low.rho = 0.05;
  high.rho = 0.20;
  const ArmStats at_low = run_arm(graphs, low, verbose, "rho=0.05");
  const ArmStats at_high = run_arm(graphs, high, verbose, "rho=0.20");

  const double m_full = full.mean(&RunReport::onmi);
  const double m_nop = nop.mean(&RunReport::onmi);
  const double m_gcn = gcn.mean(&RunReport::onmi);
  const double m_init = full.mean(&RunReport::onmi_initial);
  const double p_init = full.mean_count(&RunReport::n_pseudo_initial);
  const double p_ref = full.mean_count(&RunReport::n_pseudo_refined);
  const double m_low = at_low.mean(&RunReport::onmi), m_high = at_high.mean(&RunReport::onmi);

  return {
      {"7a", "full model mean ONMI >= 0.5", m_full >= 0.5,
       fmt("mean %.3f", m_full) + " [" + full.onmis() + "]"},
      {"7b", "full model >= no-pseudo arm", m_full >= m_nop,
       fmt("full %.3f", m_full) + fmt(" vs no-pseudo %.3f", m_nop) + " [" + nop.onmis() + "]"},
      {"7c", "default fusion >= GCN-only arm", m_full >= m_gcn,
       fmt("full %.3f", m_full) + fmt(" vs gcn-only %.3f", m_gcn) + " [" + gcn.onmis() + "]"},
      {"7t", "criterion 7 runtime < 10 min", secs7 < 600, fmt("%.0f s for 15 runs", secs7)},
      {"8", "refined round >= initial round", p_ref >= p_init && m_full >= m_init,
       fmt("pseudo %.1f", p_init) + fmt(" -> %.1f", p_ref) + fmt(", onmi %.3f", m_init) + fmt(" -> %.3f", m_full)},
      {"9", "mean ONMI at rho 0.20 >= rho 0.05", m_high >= m_low,
       fmt("rho 0.05: %.3f", m_low) + fmt(", rho 0.20: %.3f", m_high)},
  };
}

// --- 10 ---------------------------------------------------------------------

Line scaling() {
  const double avg_degree = 10.0;
  std::vector<double> times;
  std::string detail;
  double worst = 0;
  for (std::int64_t m = 10000; m <= 160000; m *= 2) {
    const auto n = static_cast<NodeId>(2.0 * static_cast<double>(m) / avg_degree);
    const Graph g = random_graph(n, m, static_cast<std::uint64_t>(m));
    double best = 1e30;
    for (int rep = 0; rep < 7; ++rep) {
      const auto start = Clock::now();
      const auto set = identify_weak_cliques(g);
      best = std::min(best, seconds_since(start));
      if (set.size() == 0) best = 1e30;  // keeps the call observable
    }
    if (!times.empty()) worst = std::max(worst, best / times.back());
    times.push_back(best);
    detail += (detail.empty() ? "" : ", ") + std::string("M=") + std::to_string(m) + fmt(" %.1f ms", best * 1e3);
  }
  return {"10", "weak-clique time per doubling of M <= 3x", worst <= 3.0,
          fmt("worst ratio %.2f; ", worst) + detail};
}

}  // namespace

int main(int argc, char** argv) {
#if defined(__GLIBC__)
  mallopt(M_MMAP_THRESHOLD, 1 << 30);
  mallopt(M_TRIM_THRESHOLD, 1 << 30);
#endif
  CLI::App app{"Acceptance criteria"};
  std::vector<std::string> known_red;
  bool skip_training = false, verbose = false;
  app.add_option("--known-red", known_red, "Criteria reported as FAIL without failing the run")->delimiter(',');
  app.add_flag("--skip-training", skip_training, "Skip criteria 7-9");
  app.add_flag("-v,--verbose", verbose, "Print every training run");
  CLI11_PARSE(app, argc, argv);

  std::vector<Line> lines;
  auto report = [&](std::vector<Line> batch) {
    for (auto& l : batch) {
      std::printf("%s  %-3s %-44s %s\n", l.pass ? "PASS" : "FAIL", l.id.c_str(), l.title.c_str(), l.detail.c_str());
      std::fflush(stdout);
      lines.push_back(std::move(l));
    }
  };
  report(weak_cliques());
  report({pseudo_labels()});
  report({gradient_check()});
  report({attention_check()});
  report({onmi_check()});
  if (!skip_training) report(end_to_end(verbose));
  report({scaling()});

  int failed = 0, tolerated = 0;
  for (const auto& l : lines) {
    if (l.pass) continue;
    if (std::find(known_red.begin(), known_red.end(), l.id) != known_red.end()) {
      ++tolerated;
    } else {
      ++failed;
    }
  }
  std::printf("%zu criteria: %zu pass, %d fail", lines.size(), lines.size() - failed - tolerated, failed + tolerated);
  if (tolerated) std::printf(" (%d listed as known red)", tolerated);
  std::printf("\n");
  return failed == 0 ? 0 : 1;
}
