#include <string>

#include "oracles.hpp"

namespace oracle {

FiniteDifference finite_difference(const wocd::ModelParams& params, const wocd::FusionParams& fusion,
                                   const Dense& prop, const Dense& features,
                                   const wocd::LossTargets& targets, const wocd::LossWeights& weights,
                                   double step) {
  wocd::ModelParams probe = params;
  FiniteDifference out{params.zeros_like(), params.zeros_like()};
  std::vector<wocd::Matrix*> probe_t, grad_t, crossed_t;
  probe.for_each_tensor([&](const std::string&, wocd::Matrix& m) { probe_t.push_back(&m); });
  out.grads.for_each_tensor([&](const std::string&, wocd::Matrix& m) { grad_t.push_back(&m); });
  out.crossed.for_each_tensor([&](const std::string&, wocd::Matrix& m) { crossed_t.push_back(&m); });

  for (std::size_t t = 0; t < probe_t.size(); ++t) {
    wocd::Matrix& w = *probe_t[t];
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      const double saved = w.data()[i];
      w.data()[i] = saved + step;
      const double up = loss(probe, fusion, prop, features, targets, weights);
      const auto up_signs = relu_pattern(probe, prop, features);
      w.data()[i] = saved - step;
      const double down = loss(probe, fusion, prop, features, targets, weights);
      const auto down_signs = relu_pattern(probe, prop, features);
      w.data()[i] = saved;
      grad_t[t]->data()[i] = (up - down) / (2 * step);
      crossed_t[t]->data()[i] = up_signs != down_signs ? 1.0 : 0.0;
    }
  }
  return out;
}

}  // namespace oracle
