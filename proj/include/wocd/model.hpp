#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "wocd/matrix.hpp"
#include "wocd/propagation.hpp"

namespace wocd {

/// Affine map x W + b; the bias is stored as a 1 x out matrix.
struct Linear {
  Matrix weight;
  Matrix bias;

  Matrix apply(const Matrix& input) const;
  friend bool operator==(const Linear& a, const Linear& b) {
    return a.weight == b.weight && a.bias == b.bias;
  }
};

inline constexpr int kGcnLayers = 3;

struct ModelShape {
  int in_dims = 0;       // D
  int hidden = 256;      // h
  int communities = 0;   // K

  friend bool operator==(const ModelShape&, const ModelShape&) = default;
};

/// Learnable weights of the GCN + linear-attention predictor. Also used as
/// the container for gradients and Adam moments.
struct ModelParams {
  Linear input_proj;                     // D -> h, feeds the attention branch
  std::array<Linear, kGcnLayers> gcn;    // D -> h, h -> h, h -> h
  Linear query, key, value;              // h -> h
  Linear head;                           // h -> K
  bool final_gcn_activation = false;     // rectify the last GCN layer too

  ModelShape shape() const;
  ModelParams zeros_like() const;
  std::size_t n_scalars() const;
  bool all_finite() const;

  /// Visits (name, tensor) pairs in a fixed order.
  template <typename F>
  void for_each_tensor(F&& f) {
    visit_impl(*this, f);
  }
  template <typename F>
  void for_each_tensor(F&& f) const {
    visit_impl(*this, f);
  }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;

 private:
  template <typename Self, typename F>
  static void visit_impl(Self& self, F& f) {
    auto linear = [&f](std::string_view name, auto& layer) {
      f(std::string(name) + ".weight", layer.weight);
      f(std::string(name) + ".bias", layer.bias);
    };
    linear("input_proj", self.input_proj);
    linear("gcn0", self.gcn[0]);
    linear("gcn1", self.gcn[1]);
    linear("gcn2", self.gcn[2]);
    linear("query", self.query);
    linear("key", self.key);
    linear("value", self.value);
    linear("head", self.head);
  }
};

/// Weights are U(-1/sqrt(fan_in), 1/sqrt(fan_in)); biases start at zero.
ModelParams init_params(const ModelShape& shape, std::uint64_t seed);

/// Mixing weights of the two branches and the attention residual.
struct FusionParams {
  double alpha = 0.5;  // GCN branch
  double beta = 0.5;   // attention branch
  double gamma = 0.5;  // attention vs. residual

  void validate() const;
};

/// Three stacked graph convolutions P Z W + b; rectifier between layers.
Matrix gcn_forward(const ModelParams& params, const PropagationMatrix& prop, const Matrix& features);

/// Single-head linear attention over all nodes, evaluated as Q (K^T V) so the
/// N x N score matrix is never formed. Throws NumericalError if Q or K is zero.
Matrix gt_forward(const ModelParams& params, const Matrix& features, double gamma);

/// Intermediate values kept for the backward pass.
struct ForwardCache {
  std::array<Matrix, kGcnLayers> gcn_in;   // input of each layer
  std::array<Matrix, kGcnLayers> gcn_pre;  // pre-activation of each layer
  Matrix z_gcn;

  Matrix z0, q, k, v;
  double q_norm = 0.0, k_norm = 0.0;
  Matrix q_unit, k_unit;   // Frobenius-normalised Q and K
  RowVector key_sum;       // 1^T K~
  Matrix kv;               // K~^T V, h x h
  Matrix numer;            // V + Q~ (K~^T V) / N
  Vector denom;            // 1 + Q~ (K~^T 1) / N
  Matrix z_gt;

  Matrix fused;
  Matrix logits;
  Matrix probs;
};

ForwardCache forward(const ModelParams& params, const FusionParams& fusion,
                     const PropagationMatrix& prop, const Matrix& features);

/// Membership probabilities: logistic(head(alpha Z_gcn + beta Z_gt)).
Matrix predict(const ModelParams& params, const FusionParams& fusion,
               const PropagationMatrix& prop, const Matrix& features);

/// Reverse pass from dLoss/dLogits to gradients for every parameter.
ModelParams backward(const ModelParams& params, const FusionParams& fusion,
                     const PropagationMatrix& prop, const Matrix& features,
                     const ForwardCache& cache, const Matrix& dlogits);

}  // namespace wocd
