#include "oracles.hpp"

namespace oracle {

std::vector<std::vector<int>> pseudo_labels(const std::vector<std::vector<int>>& cliques,
                                            const std::vector<std::vector<int>>& labels,
                                            int retained) {
  const std::size_t n = labels.size();
  const std::size_t k = n ? labels[0].size() : 0;
  std::vector<std::vector<int>> acc(n, std::vector<int>(k, 0));
  for (const auto& clique : cliques) {
    std::vector<int> votes(k, 0);
    for (int u : clique)
      for (std::size_t c = 0; c < k; ++c) votes[c] += labels[u][c];

    std::vector<int> keep(k, 0);
    for (int round = 0; round < retained; ++round) {
      int pick = -1;
      for (std::size_t c = 0; c < k; ++c) {
        if (keep[c] || votes[c] == 0) continue;
        if (pick < 0 || votes[c] > votes[pick]) pick = static_cast<int>(c);
      }
      if (pick < 0) break;
      keep[pick] = 1;
    }
    for (int u : clique)
      for (std::size_t c = 0; c < k; ++c) acc[u][c] += keep[c];
  }
  for (auto& row : acc)
    for (int& x : row) x = x > 0 ? 1 : 0;
  return acc;
}

}  // namespace oracle
