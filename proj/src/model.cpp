#include "wocd/model.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "wocd/error.hpp"

namespace wocd {
namespace {

Linear zero_linear(Eigen::Index in, Eigen::Index out) {
  return {Matrix::Zero(in, out), Matrix::Zero(1, out)};
}

Matrix relu(const Matrix& x) { return x.cwiseMax(0.0); }

Matrix relu_mask(const Matrix& pre) {
  return (pre.array() > 0.0).cast<double>().matrix();
}

Matrix logistic(const Matrix& x) {
  return x.unaryExpr([](double t) {
    if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
    const double e = std::exp(t);
    return e / (1.0 + e);
  });
}

void check_shapes(const ModelParams& params, const Matrix& features) {
  if (features.cols() != params.gcn[0].weight.rows() ||
      features.cols() != params.input_proj.weight.rows()) {
    throw DimensionError("feature width " + std::to_string(features.cols()) +
                         " does not match model input width " +
                         std::to_string(params.gcn[0].weight.rows()));
  }
}

void run_gcn(const ModelParams& params, const PropagationMatrix& prop, const Matrix& features,
             ForwardCache& c) {
  if (prop.size() != features.rows()) throw DimensionError("propagation matrix and features disagree on N");
  Matrix h = features;
  for (int l = 0; l < kGcnLayers; ++l) {
    c.gcn_in[l] = h;
    Matrix pre = prop.multiply(h * params.gcn[l].weight);
    pre.rowwise() += params.gcn[l].bias.row(0);
    const bool rectify = l + 1 < kGcnLayers || params.final_gcn_activation;
    h = rectify ? relu(pre) : pre;
    c.gcn_pre[l] = std::move(pre);
  }
  c.z_gcn = std::move(h);
}

void run_gt(const ModelParams& params, const Matrix& features, double gamma, ForwardCache& c) {
  const double n = static_cast<double>(features.rows());
  c.z0 = params.input_proj.apply(features);
  c.q = params.query.apply(c.z0);
  c.k = params.key.apply(c.z0);
  c.v = params.value.apply(c.z0);
  c.q_norm = c.q.norm();
  c.k_norm = c.k.norm();
  if (!(c.q_norm > 0.0) || !(c.k_norm > 0.0)) {
    throw NumericalError("linear attention: query or key projection has zero Frobenius norm");
  }
  c.q_unit = c.q / c.q_norm;
  c.k_unit = c.k / c.k_norm;
  c.key_sum = c.k_unit.colwise().sum();
  c.kv = c.k_unit.transpose() * c.v;
  c.numer = c.v + (c.q_unit * c.kv) / n;
  c.denom = Vector::Ones(features.rows()) + (c.q_unit * c.key_sum.transpose()) / n;
  if ((c.denom.array() <= 0.0).any()) {
    throw NumericalError("linear attention: non-positive normaliser");
  }
  c.z_gt = gamma * (c.numer.array().colwise() / c.denom.array()).matrix() + (1.0 - gamma) * c.z0;
}

}  // namespace

Matrix Linear::apply(const Matrix& input) const {
  Matrix out = input * weight;
  out.rowwise() += bias.row(0);
  return out;
}

ModelShape ModelParams::shape() const {
  return {static_cast<int>(gcn[0].weight.rows()), static_cast<int>(gcn[0].weight.cols()),
          static_cast<int>(head.weight.cols())};
}

ModelParams ModelParams::zeros_like() const {
  ModelParams out = *this;
  out.for_each_tensor([](const std::string&, Matrix& t) { t.setZero(); });
  return out;
}

std::size_t ModelParams::n_scalars() const {
  std::size_t total = 0;
  for_each_tensor([&](const std::string&, const Matrix& t) { total += static_cast<std::size_t>(t.size()); });
  return total;
}

bool ModelParams::all_finite() const {
  bool ok = true;
  for_each_tensor([&](const std::string&, const Matrix& t) { ok = ok && t.allFinite(); });
  return ok;
}

ModelParams init_params(const ModelShape& shape, std::uint64_t seed) {
  if (shape.in_dims < 1 || shape.hidden < 1 || shape.communities < 1) {
    throw std::invalid_argument("init_params: dimensions must be positive");
  }
  const Eigen::Index d = shape.in_dims, h = shape.hidden, k = shape.communities;
  ModelParams p;
  p.input_proj = zero_linear(d, h);
  p.gcn[0] = zero_linear(d, h);
  p.gcn[1] = zero_linear(h, h);
  p.gcn[2] = zero_linear(h, h);
  p.query = zero_linear(h, h);
  p.key = zero_linear(h, h);
  p.value = zero_linear(h, h);
  p.head = zero_linear(h, k);

  std::mt19937_64 rng(seed);
  p.for_each_tensor([&](const std::string& name, Matrix& t) {
    if (name.ends_with(".bias")) return;
    const double bound = 1.0 / std::sqrt(static_cast<double>(t.rows()));
    std::uniform_real_distribution<double> dist(-bound, bound);
    for (Eigen::Index i = 0; i < t.size(); ++i) t.data()[i] = dist(rng);
  });
  return p;
}

void FusionParams::validate() const {
  if (!(alpha >= 0.0) || !(beta >= 0.0)) throw std::invalid_argument("alpha and beta must be >= 0");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw std::invalid_argument("gamma must lie in [0, 1]");
}

Matrix gcn_forward(const ModelParams& params, const PropagationMatrix& prop, const Matrix& features) {
  check_shapes(params, features);
  ForwardCache c;
  run_gcn(params, prop, features, c);
  if (!c.z_gcn.allFinite()) throw NumericalError("GCN produced non-finite embeddings");
  return c.z_gcn;
}

Matrix gt_forward(const ModelParams& params, const Matrix& features, double gamma) {
  check_shapes(params, features);
  ForwardCache c;
  run_gt(params, features, gamma, c);
  if (!c.z_gt.allFinite()) throw NumericalError("attention produced non-finite embeddings");
  return c.z_gt;
}

ForwardCache forward(const ModelParams& params, const FusionParams& fusion,
                     const PropagationMatrix& prop, const Matrix& features) {
  check_shapes(params, features);
  const Eigen::Index n = features.rows();
  const Eigen::Index h = params.head.weight.rows();
  ForwardCache c;
  // A branch with zero weight is skipped; its contribution is exactly zero.
  if (fusion.alpha != 0.0) {
    run_gcn(params, prop, features, c);
  } else {
    c.z_gcn = Matrix::Zero(n, h);
  }
  if (fusion.beta != 0.0) {
    run_gt(params, features, fusion.gamma, c);
  } else {
    c.z_gt = Matrix::Zero(n, h);
  }
  c.fused = fusion.alpha * c.z_gcn + fusion.beta * c.z_gt;
  c.logits = params.head.apply(c.fused);
  if (!c.logits.allFinite()) throw NumericalError("forward pass produced non-finite logits");
  c.probs = logistic(c.logits);
  return c;
}

Matrix predict(const ModelParams& params, const FusionParams& fusion,
               const PropagationMatrix& prop, const Matrix& features) {
  return forward(params, fusion, prop, features).probs;
}

ModelParams backward(const ModelParams& params, const FusionParams& fusion,
                     const PropagationMatrix& prop, const Matrix& features,
                     const ForwardCache& c, const Matrix& dlogits) {
  ModelParams g = params.zeros_like();
  g.head.weight.noalias() = c.fused.transpose() * dlogits;
  g.head.bias = dlogits.colwise().sum();
  const Matrix dfused = dlogits * params.head.weight.transpose();

  if (fusion.alpha != 0.0) {
    Matrix ds = fusion.alpha * dfused;
    if (params.final_gcn_activation) ds = ds.cwiseProduct(relu_mask(c.gcn_pre[kGcnLayers - 1]));
    for (int l = kGcnLayers - 1; l >= 0; --l) {
      // P is symmetric, so P^T ds = P ds
      const Matrix pds = prop.multiply(ds);
      g.gcn[l].weight.noalias() = c.gcn_in[l].transpose() * pds;
      g.gcn[l].bias = ds.colwise().sum();
      if (l > 0) {
        Matrix dh = pds * params.gcn[l].weight.transpose();
        ds = dh.cwiseProduct(relu_mask(c.gcn_pre[l - 1]));
      }
    }
  }

  if (fusion.beta != 0.0) {
    const double gamma = fusion.gamma;
    const double inv_n = 1.0 / static_cast<double>(features.rows());
    const Matrix dz = fusion.beta * dfused;
    Matrix dz0 = (1.0 - gamma) * dz;

    // Z = gamma * diag(1/denom) numer + (1 - gamma) Z0
    const Matrix dnumer = gamma * (dz.array().colwise() / c.denom.array()).matrix();
    const Vector ddenom =
        -gamma * (dz.cwiseProduct(c.numer).rowwise().sum().array() / c.denom.array().square()).matrix();

    // numer = V + Q~ KV / N,  KV = K~^T V
    Matrix dv = dnumer;
    Matrix dq_unit = inv_n * dnumer * c.kv.transpose();
    const Matrix dkv = inv_n * c.q_unit.transpose() * dnumer;
    Matrix dk_unit = c.v * dkv.transpose();
    dv.noalias() += c.k_unit * dkv;

    // denom = 1 + Q~ (K~^T 1) / N
    dq_unit.noalias() += inv_n * ddenom * c.key_sum;
    const RowVector dkey_sum = inv_n * (ddenom.transpose() * c.q_unit);
    dk_unit.rowwise() += dkey_sum;

    // X~ = X / ||X||_F
    auto unnormalize = [](const Matrix& dunit, const Matrix& unit, double norm) -> Matrix {
      return (dunit - unit * unit.cwiseProduct(dunit).sum()) / norm;
    };
    const Matrix dq = unnormalize(dq_unit, c.q_unit, c.q_norm);
    const Matrix dk = unnormalize(dk_unit, c.k_unit, c.k_norm);

    auto linear_back = [&](const Linear& layer, Linear& grad, const Matrix& dout) {
      grad.weight.noalias() = c.z0.transpose() * dout;
      grad.bias = dout.colwise().sum();
      dz0.noalias() += dout * layer.weight.transpose();
    };
    linear_back(params.query, g.query, dq);
    linear_back(params.key, g.key, dk);
    linear_back(params.value, g.value, dv);

    g.input_proj.weight.noalias() = features.transpose() * dz0;
    g.input_proj.bias = dz0.colwise().sum();
  }
  return g;
}

}  // namespace wocd
