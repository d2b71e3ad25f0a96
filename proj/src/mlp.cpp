/*
 * Copyright 2026 The tunebench Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "mlp.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <string>

#include "errors.hpp"
#include "logistic.hpp"
#include "rng.hpp"

namespace tunebench {
namespace {

constexpr double kLossTolerance = 1e-4;
constexpr int kNoImprovementEpochs = 10;
constexpr std::size_t kMaxBatch = 200;

double softplus(double z) {
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double activate(Activation a, double z) {
  switch (a) {
    case Activation::kIdentity:
      return z;
    case Activation::kLogistic:
      return sigmoid(z);
    case Activation::kTanh:
      return std::tanh(z);
    case Activation::kRelu:
      return z > 0.0 ? z : 0.0;
  }
  return z;
}

// Derivative expressed through the activation output.
double activation_slope(Activation a, double out) {
  switch (a) {
    case Activation::kIdentity:
      return 1.0;
    case Activation::kLogistic:
      return out * (1.0 - out);
    case Activation::kTanh:
      return 1.0 - out * out;
    case Activation::kRelu:
      return out > 0.0 ? 1.0 : 0.0;
  }
  return 1.0;
}

void check_shapes(std::span<const DenseLayer> layers, std::size_t n_features) {
  if (layers.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "network has no layers");
  }
  std::size_t expected_inputs = n_features;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const auto& layer = layers[l];
    if (layer.inputs != expected_inputs ||
        layer.weights.size() != layer.inputs * layer.outputs ||
        layer.biases.size() != layer.outputs || layer.outputs == 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "layer " + std::to_string(l) + " shape mismatch: expects " +
                      std::to_string(expected_inputs) + " inputs, has " +
                      std::to_string(layer.inputs) + "x" +
                      std::to_string(layer.outputs));
    }
    expected_inputs = layer.outputs;
  }
  if (layers.back().outputs != 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "output layer must have exactly one unit");
  }
}

std::vector<DenseLayer> zeros_like(std::span<const DenseLayer> layers) {
  std::vector<DenseLayer> out(layers.begin(), layers.end());
  for (auto& l : out) {
    std::fill(l.weights.begin(), l.weights.end(), 0.0);
    std::fill(l.biases.begin(), l.biases.end(), 0.0);
  }
  return out;
}

std::vector<double> flatten(std::span<const DenseLayer> layers) {
  std::vector<double> out;
  for (const auto& l : layers) {
    out.insert(out.end(), l.weights.begin(), l.weights.end());
    out.insert(out.end(), l.biases.begin(), l.biases.end());
  }
  return out;
}

void unflatten(std::span<const double> flat, std::vector<DenseLayer>& layers) {
  std::size_t pos = 0;
  for (auto& l : layers) {
    std::copy_n(flat.begin() + static_cast<std::ptrdiff_t>(pos), l.weights.size(),
                l.weights.begin());
    pos += l.weights.size();
    std::copy_n(flat.begin() + static_cast<std::ptrdiff_t>(pos), l.biases.size(),
                l.biases.begin());
    pos += l.biases.size();
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

MlpFit fit_lbfgs(const MlpSpec& spec, const LabeledData& train,
                 std::vector<DenseLayer> layers) {
  constexpr std::size_t kMemory = 10;
  constexpr double kGradTolerance = 1e-5;
  MlpFit fit;
  auto evaluate = [&](std::span<const double> flat, std::vector<double>& grad) {
    unflatten(flat, layers);
    const auto lg = mlp_forward_backward(layers, spec.activation, train, spec.alpha);
    grad = flatten(lg.gradients);
    return lg.loss;
  };

  std::vector<double> x = flatten(layers);
  std::vector<double> g;
  double f = evaluate(x, g);
  std::deque<std::vector<double>> s_hist, y_hist;
  std::deque<double> rho_hist;

  for (int iter = 0; iter < spec.max_epochs; ++iter) {
    fit.epochs = iter + 1;
    double gmax = 0.0;
    for (double v : g) gmax = std::max(gmax, std::fabs(v));
    if (gmax <= kGradTolerance) {
      fit.converged = true;
      break;
    }
    // Two-loop recursion for the search direction.
    std::vector<double> q = g;
    std::vector<double> alphas(s_hist.size());
    for (std::size_t k = s_hist.size(); k-- > 0;) {
      alphas[k] = rho_hist[k] * dot(s_hist[k], q);
      for (std::size_t i = 0; i < q.size(); ++i) q[i] -= alphas[k] * y_hist[k][i];
    }
    double gamma = 1.0;
    if (!s_hist.empty()) {
      gamma = dot(s_hist.back(), y_hist.back()) / dot(y_hist.back(), y_hist.back());
    } else {
      double gnorm = std::sqrt(dot(g, g));
      gamma = gnorm > 0.0 ? std::min(1.0, 1.0 / gnorm) : 1.0;
    }
    for (auto& v : q) v *= gamma;
    for (std::size_t k = 0; k < s_hist.size(); ++k) {
      const double beta = rho_hist[k] * dot(y_hist[k], q);
      for (std::size_t i = 0; i < q.size(); ++i) q[i] += s_hist[k][i] * (alphas[k] - beta);
    }
    std::vector<double> direction(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) direction[i] = -q[i];
    double slope = dot(g, direction);
    if (slope >= 0.0) {
      // Not a descent direction; restart from steepest descent.
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      for (std::size_t i = 0; i < g.size(); ++i) direction[i] = -g[i];
      slope = dot(g, direction);
    }

    double step = 1.0;
    std::vector<double> x_next(x.size());
    std::vector<double> g_next;
    double f_next = f;
    bool accepted = false;
    for (int tries = 0; tries < 60; ++tries) {
      for (std::size_t i = 0; i < x.size(); ++i) x_next[i] = x[i] + step * direction[i];
      f_next = evaluate(x_next, g_next);
      if (std::isfinite(f_next) && f_next <= f + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      fit.converged = true;  // no further decrease available
      break;
    }
    std::vector<double> s(x.size()), yv(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      s[i] = x_next[i] - x[i];
      yv[i] = g_next[i] - g[i];
    }
    const double sy = dot(s, yv);
    if (sy > 1e-12) {
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(yv));
      rho_hist.push_back(1.0 / sy);
      if (s_hist.size() > kMemory) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }
    const double decrease = f - f_next;
    x.swap(x_next);
    g.swap(g_next);
    f = f_next;
    if (decrease <= kLossTolerance * 1e-3 * std::max({std::fabs(f), 1.0})) {
      fit.converged = true;
      break;
    }
  }
  unflatten(x, layers);
  fit.layers = std::move(layers);
  fit.final_loss = f;
  return fit;
}

MlpFit fit_stochastic(const MlpSpec& spec, const LabeledData& train,
                      std::vector<DenseLayer> layers, std::uint64_t seed) {
  constexpr double kBeta1 = 0.9;
  constexpr double kBeta2 = 0.999;
  constexpr double kEpsilon = 1e-8;
  constexpr double kMomentum = 0.9;
  const bool adam = spec.solver == MlpSolver::kAdam;

  MlpFit fit;
  const std::size_t n = train.rows();
  const std::size_t batch_size = std::min(kMaxBatch, n);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(mix_seed(seed, "mlp-batches"));

  std::vector<double> params = flatten(layers);
  std::vector<double> m(params.size(), 0.0), v(params.size(), 0.0);
  long step_count = 0;
  double best_loss = std::numeric_limits<double>::infinity();
  int no_improvement = 0;

  for (int epoch = 0; epoch < spec.max_epochs; ++epoch) {
    fit.epochs = epoch + 1;
    rng.shuffle(std::span<std::size_t>(order));
    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < n; start += batch_size) {
      const std::size_t end = std::min(n, start + batch_size);
      const std::span<const std::size_t> batch(order.data() + start, end - start);
      unflatten(params, layers);
      const auto lg =
          mlp_forward_backward(layers, spec.activation, train, batch, spec.alpha);
      epoch_loss += lg.loss * static_cast<double>(batch.size());
      const auto grad = flatten(lg.gradients);
      ++step_count;
      if (adam) {
        const double lr = spec.learning_rate *
                          std::sqrt(1.0 - std::pow(kBeta2, static_cast<double>(step_count))) /
                          (1.0 - std::pow(kBeta1, static_cast<double>(step_count)));
        for (std::size_t i = 0; i < params.size(); ++i) {
          m[i] = kBeta1 * m[i] + (1.0 - kBeta1) * grad[i];
          v[i] = kBeta2 * v[i] + (1.0 - kBeta2) * grad[i] * grad[i];
          params[i] -= lr * m[i] / (std::sqrt(v[i]) + kEpsilon);
        }
      } else {
        for (std::size_t i = 0; i < params.size(); ++i) {
          m[i] = kMomentum * m[i] - spec.learning_rate * grad[i];
          params[i] += m[i];
        }
      }
    }
    epoch_loss /= static_cast<double>(n);
    fit.final_loss = epoch_loss;
    if (!std::isfinite(epoch_loss)) break;
    if (epoch_loss > best_loss - kLossTolerance) {
      ++no_improvement;
    } else {
      no_improvement = 0;
    }
    best_loss = std::min(best_loss, epoch_loss);
    if (no_improvement >= kNoImprovementEpochs) {
      fit.converged = true;
      break;
    }
  }
  unflatten(params, layers);
  fit.layers = std::move(layers);
  return fit;
}

}  // namespace

MlpLossAndGradients mlp_forward_backward(std::span<const DenseLayer> layers,
                                         Activation activation,
                                         const LabeledData& data,
                                         std::span<const std::size_t> batch,
                                         double alpha) {
  check_shapes(layers, data.n_features);
  if (batch.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty batch");
  }
  const std::size_t depth = layers.size();
  MlpLossAndGradients out;
  out.gradients = zeros_like(layers);

  std::vector<std::vector<double>> acts(depth + 1);
  std::vector<double> delta, prev_delta;
  for (auto s : batch) {
    const auto x = data.row(s);
    acts[0].assign(x.begin(), x.end());
    double z_out = 0.0;
    for (std::size_t l = 0; l < depth; ++l) {
      const auto& layer = layers[l];
      auto& next = acts[l + 1];
      next.resize(layer.outputs);
      for (std::size_t o = 0; o < layer.outputs; ++o) {
        double z = layer.biases[o];
        const double* w = layer.weights.data() + o * layer.inputs;
        for (std::size_t i = 0; i < layer.inputs; ++i) z += w[i] * acts[l][i];
        if (l + 1 < depth) {
          next[o] = activate(activation, z);
        } else {
          z_out = z;
          next[o] = sigmoid(z);
        }
      }
    }
    const double y = data.labels[s];
    out.loss += softplus(z_out) - y * z_out;

    delta.assign(1, acts[depth][0] - y);
    for (std::size_t l = depth; l-- > 0;) {
      const auto& layer = layers[l];
      auto& grad = out.gradients[l];
      for (std::size_t o = 0; o < layer.outputs; ++o) {
        double* gw = grad.weights.data() + o * layer.inputs;
        for (std::size_t i = 0; i < layer.inputs; ++i) gw[i] += delta[o] * acts[l][i];
        grad.biases[o] += delta[o];
      }
      if (l == 0) break;
      prev_delta.assign(layer.inputs, 0.0);
      for (std::size_t o = 0; o < layer.outputs; ++o) {
        const double* w = layer.weights.data() + o * layer.inputs;
        for (std::size_t i = 0; i < layer.inputs; ++i) prev_delta[i] += w[i] * delta[o];
      }
      for (std::size_t i = 0; i < layer.inputs; ++i) {
        prev_delta[i] *= activation_slope(activation, acts[l][i]);
      }
      delta.swap(prev_delta);
    }
  }

  const double m = static_cast<double>(batch.size());
  out.loss /= m;
  double squared = 0.0;
  for (std::size_t l = 0; l < depth; ++l) {
    auto& grad = out.gradients[l];
    for (std::size_t k = 0; k < grad.weights.size(); ++k) {
      const double w = layers[l].weights[k];
      squared += w * w;
      grad.weights[k] = grad.weights[k] / m + alpha * w / m;
    }
    for (auto& b : grad.biases) b /= m;
  }
  out.loss += alpha * squared / (2.0 * m);
  return out;
}

MlpLossAndGradients mlp_forward_backward(std::span<const DenseLayer> layers,
                                         Activation activation,
                                         const LabeledData& data, double alpha) {
  std::vector<std::size_t> all(data.rows());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return mlp_forward_backward(layers, activation, data, all, alpha);
}

double mlp_probability(std::span<const DenseLayer> layers, Activation activation,
                       std::span<const double> x) {
  std::vector<double> current(x.begin(), x.end()), next;
  double z_out = 0.0;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const auto& layer = layers[l];
    next.resize(layer.outputs);
    for (std::size_t o = 0; o < layer.outputs; ++o) {
      double z = layer.biases[o];
      const double* w = layer.weights.data() + o * layer.inputs;
      for (std::size_t i = 0; i < layer.inputs; ++i) z += w[i] * current[i];
      if (l + 1 < layers.size()) {
        next[o] = activate(activation, z);
      } else {
        z_out = z;
      }
    }
    current.swap(next);
  }
  return sigmoid(z_out);
}

std::vector<DenseLayer> init_mlp_layers(std::size_t n_inputs,
                                        std::span<const int> hidden_layers,
                                        std::uint64_t seed) {
  Rng rng(mix_seed(seed, "mlp-init"));
  std::vector<DenseLayer> layers;
  std::size_t inputs = n_inputs;
  auto add_layer = [&](std::size_t outputs) {
    DenseLayer layer;
    layer.inputs = inputs;
    layer.outputs = outputs;
    const double bound =
        std::sqrt(6.0 / static_cast<double>(inputs + outputs));
    layer.weights.resize(inputs * outputs);
    for (auto& w : layer.weights) w = rng.uniform(-bound, bound);
    layer.biases.resize(outputs);
    for (auto& b : layer.biases) b = rng.uniform(-bound, bound);
    layers.push_back(std::move(layer));
    inputs = outputs;
  };
  for (int width : hidden_layers) {
    if (width <= 0) {
      throw Error(ErrorCode::kInvalidArgument, "hidden layer widths must be positive");
    }
    add_layer(static_cast<std::size_t>(width));
  }
  add_layer(1);
  return layers;
}

MlpFit fit_mlp(const MlpSpec& spec, const LabeledData& train, std::uint64_t seed) {
  require_both_classes(train);
  auto layers = init_mlp_layers(train.n_features, spec.hidden_layers, seed);
  if (spec.solver == MlpSolver::kLbfgs) return fit_lbfgs(spec, train, std::move(layers));
  return fit_stochastic(spec, train, std::move(layers), seed);
}

}  // namespace tunebench
