#include "wocd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "wocd/error.hpp"

namespace wocd {
namespace {

double h(double count, double n) {
  if (count <= 0.0) return 0.0;
  const double p = count / n;
  return -p * std::log(p);
}

struct Side {
  std::vector<CommunityId> ids;    // original ids of non-empty communities
  std::vector<double> sizes;
  std::vector<double> entropy;     // H(X_i)
};

Side describe(const Cover& cover, double n) {
  Side s;
  std::vector<double> sizes(static_cast<std::size_t>(cover.n_communities()), 0.0);
  for (NodeId v = 0; v < cover.n_nodes(); ++v) {
    for (CommunityId c : cover.row(v)) sizes[c] += 1.0;
  }
  for (CommunityId c = 0; c < cover.n_communities(); ++c) {
    if (sizes[c] == 0.0) continue;
    s.ids.push_back(c);
    s.sizes.push_back(sizes[c]);
    s.entropy.push_back(h(sizes[c], n) + h(n - sizes[c], n));
  }
  return s;
}

// H(X_i | Y) for every i, given joint counts overlap[i][j] = |X_i ∩ Y_j|.
std::vector<double> conditional(const Side& x, const Side& y,
                                const std::vector<std::vector<double>>& overlap, double n,
                                bool transpose) {
  std::vector<double> out(x.ids.size());
  for (std::size_t i = 0; i < x.ids.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < y.ids.size(); ++j) {
      const double d = transpose ? overlap[j][i] : overlap[i][j];
      const double c = x.sizes[i] - d;  // in X_i only
      const double b = y.sizes[j] - d;  // in Y_j only
      const double a = n - b - c - d;   // in neither
      // lack-of-information constraint: Y_j must agree with X_i more than it disagrees
      if (h(a, n) + h(d, n) < h(b, n) + h(c, n)) continue;
      const double joint = h(a, n) + h(b, n) + h(c, n) + h(d, n);
      const double value = joint - (h(b + d, n) + h(a + c, n));
      best = std::min(best, std::max(value, 0.0));
    }
    out[i] = std::isfinite(best) ? best : x.entropy[i];
  }
  return out;
}

double sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

double normalized_mean(const std::vector<double>& cond, const std::vector<double>& entropy) {
  double s = 0.0;
  for (std::size_t i = 0; i < cond.size(); ++i) {
    if (entropy[i] > 0.0) s += cond[i] / entropy[i];
  }
  return s / static_cast<double>(cond.size());
}

}  // namespace

double onmi(const Cover& x, const Cover& y, OnmiNormalization norm) {
  if (x.n_nodes() != y.n_nodes()) {
    throw DimensionError("onmi: covers have " + std::to_string(x.n_nodes()) + " and " +
                         std::to_string(y.n_nodes()) + " nodes");
  }
  const double n = static_cast<double>(x.n_nodes());
  const Side sx = describe(x, n);
  const Side sy = describe(y, n);
  if (sx.ids.empty() || sy.ids.empty()) return 0.0;

  // position of each original id among the non-empty communities
  auto positions = [](const Cover& cover, const Side& side) {
    std::vector<std::int32_t> pos(static_cast<std::size_t>(cover.n_communities()), -1);
    for (std::size_t i = 0; i < side.ids.size(); ++i) pos[side.ids[i]] = static_cast<std::int32_t>(i);
    return pos;
  };
  const auto px = positions(x, sx);
  const auto py = positions(y, sy);
  std::vector<std::vector<double>> overlap(sx.ids.size(), std::vector<double>(sy.ids.size(), 0.0));
  for (NodeId v = 0; v < x.n_nodes(); ++v) {
    for (CommunityId cx : x.row(v)) {
      for (CommunityId cy : y.row(v)) overlap[px[cx]][py[cy]] += 1.0;
    }
  }

  const auto x_given_y = conditional(sx, sy, overlap, n, false);
  const auto y_given_x = conditional(sy, sx, overlap, n, true);

  double score = 0.0;
  if (norm == OnmiNormalization::kMax) {
    const double hx = sum(sx.entropy), hy = sum(sy.entropy);
    const double denom = std::max(hx, hy);
    // only communities spanning every node; all such covers carry the same information
    if (denom <= 0.0) return 1.0;
    const double mutual = 0.5 * ((hx + hy) - (sum(x_given_y) + sum(y_given_x)));
    score = mutual / denom;
  } else {
    score = 1.0 - 0.5 * (normalized_mean(x_given_y, sx.entropy) + normalized_mean(y_given_x, sy.entropy));
  }
  return std::clamp(score, 0.0, 1.0);
}

MetricReport evaluate(const Cover& predicted, const Cover& truth) {
  MetricReport r;
  r.onmi = onmi(predicted, truth);
  for (const auto& members : predicted.members()) {
    if (!members.empty()) ++r.n_pred_communities;
  }
  r.n_unassigned = predicted.n_nodes() - predicted.n_assigned();
  return r;
}

}  // namespace wocd
