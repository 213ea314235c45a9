#include "wocd/adam.hpp"

#include <cmath>
#include <vector>

#include "wocd/error.hpp"

namespace wocd {
namespace {

template <typename P>
auto tensors(P& params) {
  using T = std::conditional_t<std::is_const_v<P>, const Matrix*, Matrix*>;
  std::vector<T> out;
  params.for_each_tensor([&](const std::string&, auto& t) { out.push_back(&t); });
  return out;
}

}  // namespace

AdamState AdamState::zeros_like(const ModelParams& params) {
  return {params.zeros_like(), params.zeros_like(), 0};
}

void adam_step(ModelParams& params, const ModelParams& grads, AdamState& state,
               const AdamConfig& config) {
  auto p = tensors(params);
  auto g = tensors(grads);
  auto m = tensors(state.m);
  auto v = tensors(state.v);
  if (g.size() != p.size() || m.size() != p.size() || v.size() != p.size()) {
    throw DimensionError("adam: tensor lists differ");
  }
  ++state.step;
  const double t = static_cast<double>(state.step);
  const double correct1 = 1.0 - std::pow(config.beta1, t);
  const double correct2 = 1.0 - std::pow(config.beta2, t);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (g[i]->rows() != p[i]->rows() || g[i]->cols() != p[i]->cols() ||
        m[i]->rows() != p[i]->rows() || m[i]->cols() != p[i]->cols()) {
      throw DimensionError("adam: gradient or state shape mismatch");
    }
    auto pa = p[i]->array();
    auto ga = g[i]->array();
    auto ma = m[i]->array();
    auto va = v[i]->array();
    ma = config.beta1 * ma + (1.0 - config.beta1) * ga;
    va = config.beta2 * va + (1.0 - config.beta2) * ga.square();
    pa -= config.lr * (ma / correct1) / ((va / correct2).sqrt() + config.eps);
  }
}

}  // namespace wocd
