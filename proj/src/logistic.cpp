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

#include "logistic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tunebench {
namespace {

// log(1 + exp(z)) without overflow.
double softplus(double z) {
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double penalty_weight(const LabeledData& train, double cost) {
  return 1.0 / (cost * static_cast<double>(train.rows()));
}

// Smooth part only: mean NLL (+ L2 term when requested).
double smooth_loss(std::span<const double> w, double b, const LabeledData& train,
                   double l2_weight) {
  double loss = 0.0;
  for (std::size_t i = 0; i < train.rows(); ++i) {
    const double z = dot(w, train.row(i)) + b;
    loss += softplus(z) - train.labels[i] * z;
  }
  loss /= static_cast<double>(train.rows());
  if (l2_weight > 0.0) loss += 0.5 * l2_weight * dot(w, w);
  return loss;
}

double soft_threshold(double v, double t) {
  if (v > t) return v - t;
  if (v < -t) return v + t;
  return 0.0;
}

double l1_norm(std::span<const double> w) {
  double s = 0.0;
  for (double v : w) s += std::fabs(v);
  return s;
}

}  // namespace

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  // Keep sigma(z) >= 0.5 exactly when z >= 0 so thresholding the
  // probability and the sign of z always agree.
  return std::min(e / (1.0 + e), std::nextafter(0.5, 0.0));
}

LossAndGradient logreg_objective_and_gradient(std::span<const double> weights,
                                              double bias,
                                              const LabeledData& train,
                                              Penalty penalty, double cost) {
  const std::size_t n = train.rows();
  const std::size_t d = train.n_features;
  LossAndGradient out;
  out.weight_gradient.assign(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = train.row(i);
    const double z = dot(weights, x) + bias;
    out.loss += softplus(z) - train.labels[i] * z;
    const double residual = sigmoid(z) - train.labels[i];
    for (std::size_t j = 0; j < d; ++j) out.weight_gradient[j] += residual * x[j];
    out.bias_gradient += residual;
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  out.loss *= inv_n;
  out.bias_gradient *= inv_n;
  for (auto& g : out.weight_gradient) g *= inv_n;

  const double lambda = penalty_weight(train, cost);
  if (lambda > 0.0) {
    if (penalty == Penalty::kL2) {
      out.loss += 0.5 * lambda * dot(weights, weights);
      for (std::size_t j = 0; j < d; ++j) out.weight_gradient[j] += lambda * weights[j];
    } else {
      out.loss += lambda * l1_norm(weights);
      for (std::size_t j = 0; j < d; ++j) {
        if (weights[j] > 0.0) out.weight_gradient[j] += lambda;
        if (weights[j] < 0.0) out.weight_gradient[j] -= lambda;
      }
    }
  }
  return out;
}

LogisticFit fit_logistic(const LogisticRegressionSpec& spec,
                         const LabeledData& train) {
  require_both_classes(train);
  const std::size_t n = train.rows();
  const std::size_t d = train.n_features;
  const double lambda = penalty_weight(train, spec.cost);
  const bool l1 = spec.penalty == Penalty::kL1;

  // Optimize over v = w * s, c = b + w . m on centered, scaled columns. The
  // objective is unchanged; only its conditioning is. Constant columns keep
  // s = 1.
  std::vector<double> mean(d, 0.0), scale(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = train.row(i);
    for (std::size_t j = 0; j < d; ++j) mean[j] += x[j];
  }
  for (auto& m : mean) m /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = train.row(i);
    for (std::size_t j = 0; j < d; ++j) scale[j] += (x[j] - mean[j]) * (x[j] - mean[j]);
  }
  for (auto& s : scale) {
    s = std::sqrt(s / static_cast<double>(n));
    if (!(s > 0.0)) s = 1.0;
  }
  LabeledData z = train;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      double& x = z.values[i * d + j];
      x = (x - mean[j]) / scale[j];
    }
  }
  // Per-coordinate penalty in v: lambda/2 (v/s)^2 or lambda |v| / s. Both go
  // through the proximal step so tiny columns cannot force tiny steps.
  std::vector<double> penalty(d);
  for (std::size_t j = 0; j < d; ++j) {
    penalty[j] = l1 ? lambda / scale[j] : lambda / (scale[j] * scale[j]);
  }
  const auto prox = [&](double v, double step, std::size_t j) {
    return l1 ? soft_threshold(v, step * penalty[j]) : v / (1.0 + step * penalty[j]);
  };
  const double inf = std::numeric_limits<double>::infinity();

  LogisticFit fit;
  std::vector<double> v(d, 0.0), v_next(d);
  // Start from the class log-odds.
  const double p1 = static_cast<double>(train.count(1)) / static_cast<double>(n);
  double c = std::log(p1 / (1.0 - p1));
  double step = 1.0;

  for (int iter = 0; iter < spec.max_iterations; ++iter) {
    fit.iterations = iter + 1;
    const auto lg = logreg_objective_and_gradient(v, c, z, Penalty::kL2, inf);
    const double f = lg.loss;

    if (!l1) {
      // Gradient in the caller's coordinates (w, b).
      double gmax = std::fabs(lg.bias_gradient);
      for (std::size_t j = 0; j < d; ++j) {
        const double gv = lg.weight_gradient[j] + penalty[j] * v[j];
        gmax = std::max(gmax, std::fabs(scale[j] * gv + mean[j] * lg.bias_gradient));
      }
      if (gmax <= spec.tolerance) {
        fit.converged = true;
        break;
      }
    }

    // Backtracking: start from twice the last accepted step.
    step = std::min(step * 2.0, 1e6);
    double c_next = 0.0;
    while (true) {
      for (std::size_t j = 0; j < d; ++j) {
        v_next[j] = prox(v[j] - step * lg.weight_gradient[j], step, j);
      }
      c_next = c - step * lg.bias_gradient;
      const double f_next = smooth_loss(v_next, c_next, z, 0.0);
      // Sufficient decrease for proximal gradient steps.
      double linear = lg.bias_gradient * (c_next - c);
      double quad = (c_next - c) * (c_next - c);
      for (std::size_t j = 0; j < d; ++j) {
        linear += lg.weight_gradient[j] * (v_next[j] - v[j]);
        quad += (v_next[j] - v[j]) * (v_next[j] - v[j]);
      }
      if (f_next <= f + linear + quad / (2.0 * step) || step < 1e-300) break;
      step *= 0.5;
    }

    double move = std::fabs(c_next - c);
    for (std::size_t j = 0; j < d; ++j) move = std::max(move, std::fabs(v_next[j] - v[j]));
    v.swap(v_next);
    c = c_next;
    if (l1 && move / step <= spec.tolerance) {
      fit.converged = true;
      break;
    }
    if (move == 0.0) break;  // step underflow, no further progress
  }

  fit.model.weights.resize(d);
  fit.model.bias = c;
  for (std::size_t j = 0; j < d; ++j) {
    fit.model.weights[j] = v[j] / scale[j];
    fit.model.bias -= fit.model.weights[j] * mean[j];
  }
  return fit;
}

double logistic_probability(const LogisticModel& model,
                            std::span<const double> x) {
  return sigmoid(dot(model.weights, x) + model.bias);
}

}  // namespace tunebench
