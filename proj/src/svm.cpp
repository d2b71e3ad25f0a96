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

#include "svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "rng.hpp"

namespace tunebench {
namespace {

constexpr double kTau = 1e-12;

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

SmoResult smo_solve(const LabeledData& train, double cost, double kkt_tolerance,
                    int max_passes, std::uint64_t seed) {
  require_both_classes(train);
  const std::size_t n = train.rows();
  const std::size_t d = train.n_features;

  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = train.labels[i] == 1 ? 1.0 : -1.0;
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = dot(train.row(i), train.row(i));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  rng.shuffle(std::span<std::size_t>(order));

  SmoResult result;
  auto& alpha = result.alpha;
  auto& w = result.weights;
  alpha.assign(n, 0.0);
  w.assign(d, 0.0);
  std::vector<double> grad(n, -1.0);

  auto upper = [&](std::size_t t) { return alpha[t] >= cost; };
  auto lower = [&](std::size_t t) { return alpha[t] <= 0.0; };

  const long budget = std::max<long>(1, static_cast<long>(max_passes)) *
                      static_cast<long>(std::max<std::size_t>(n, 1));
  for (long iter = 0;; ++iter) {
    for (std::size_t t = 0; t < n; ++t) {
      grad[t] = y[t] * dot(w, train.row(t)) - 1.0;
    }

    // i: maximal -y G over the "up" set.
    double gmax = -std::numeric_limits<double>::infinity();
    std::size_t i = n;
    for (auto t : order) {
      if (y[t] > 0 ? !upper(t) : !lower(t)) {
        const double v = -y[t] * grad[t];
        if (v > gmax) {
          gmax = v;
          i = t;
        }
      }
    }
    // j: second-order choice over the "low" set; gmax2 tracks the gap.
    double gmax2 = -std::numeric_limits<double>::infinity();
    double best_obj = std::numeric_limits<double>::infinity();
    std::size_t j = n;
    for (auto t : order) {
      const bool in_low = y[t] > 0 ? !lower(t) : !upper(t);
      if (!in_low) continue;
      const double v = y[t] * grad[t];
      gmax2 = std::max(gmax2, v);
      if (i == n) continue;
      const double grad_diff = gmax + v;
      if (grad_diff > 0.0) {
        double quad = diag[i] + diag[t] - 2.0 * dot(train.row(i), train.row(t));
        if (quad <= 0.0) quad = kTau;
        const double obj = -(grad_diff * grad_diff) / quad;
        if (obj < best_obj) {
          best_obj = obj;
          j = t;
        }
      }
    }
    if (i == n || j == n || gmax + gmax2 < kkt_tolerance) {
      result.converged = true;
      break;
    }
    if (iter >= budget) break;
    result.iterations = iter + 1;

    const double old_i = alpha[i];
    const double old_j = alpha[j];
    const double k_ij = dot(train.row(i), train.row(j));
    if (y[i] != y[j]) {
      double quad = diag[i] + diag[j] + 2.0 * (y[i] * y[j] * k_ij);
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0.0) {
        if (alpha[j] < 0.0) {
          alpha[j] = 0.0;
          alpha[i] = diff;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = -diff;
      }
      if (diff > 0.0) {
        if (alpha[i] > cost) {
          alpha[i] = cost;
          alpha[j] = cost - diff;
        }
      } else if (alpha[j] > cost) {
        alpha[j] = cost;
        alpha[i] = cost + diff;
      }
    } else {
      double quad = diag[i] + diag[j] - 2.0 * (y[i] * y[j] * k_ij);
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > cost) {
        if (alpha[i] > cost) {
          alpha[i] = cost;
          alpha[j] = sum - cost;
        }
      } else if (alpha[j] < 0.0) {
        alpha[j] = 0.0;
        alpha[i] = sum;
      }
      if (sum > cost) {
        if (alpha[j] > cost) {
          alpha[j] = cost;
          alpha[i] = sum - cost;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = sum;
      }
    }

    const double di = (alpha[i] - old_i) * y[i];
    const double dj = (alpha[j] - old_j) * y[j];
    const auto xi = train.row(i);
    const auto xj = train.row(j);
    for (std::size_t k = 0; k < d; ++k) w[k] += di * xi[k] + dj * xj[k];
  }

  // Rebuild w from alpha to drop accumulated drift.
  std::fill(w.begin(), w.end(), 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    if (alpha[t] == 0.0) continue;
    const auto x = train.row(t);
    for (std::size_t k = 0; k < d; ++k) w[k] += alpha[t] * y[t] * x[k];
  }

  // Bias: average over free vectors, else the middle of the feasible range.
  double upper_bound = std::numeric_limits<double>::infinity();
  double lower_bound = -std::numeric_limits<double>::infinity();
  double free_sum = 0.0;
  std::size_t free_count = 0;
  for (std::size_t t = 0; t < n; ++t) {
    // b must satisfy b >= y_t - w.x_t for "up" points, <= for "low" points.
    const double candidate = y[t] - dot(w, train.row(t));
    if (alpha[t] > 0.0 && alpha[t] < cost) {
      free_sum += candidate;
      ++free_count;
      continue;
    }
    const bool in_up = y[t] > 0 ? !upper(t) : !lower(t);
    if (in_up) {
      lower_bound = std::max(lower_bound, candidate);
    } else {
      upper_bound = std::min(upper_bound, candidate);
    }
  }
  if (free_count > 0) {
    result.bias = free_sum / static_cast<double>(free_count);
  } else if (std::isfinite(upper_bound) && std::isfinite(lower_bound)) {
    result.bias = 0.5 * (upper_bound + lower_bound);
  } else {
    result.bias = std::isfinite(upper_bound)   ? upper_bound
                  : std::isfinite(lower_bound) ? lower_bound
                                               : 0.0;
  }
  return result;
}

double svm_margin(std::span<const double> weights, double bias,
                  std::span<const double> x) {
  return dot(weights, x) + bias;
}

std::vector<double> kkt_residuals(const LabeledData& train,
                                  const SmoResult& result, double cost) {
  std::vector<double> out(train.rows());
  for (std::size_t t = 0; t < train.rows(); ++t) {
    const double y = train.labels[t] == 1 ? 1.0 : -1.0;
    const double m = y * svm_margin(result.weights, result.bias, train.row(t));
    const double a = result.alpha[t];
    if (a <= 0.0) {
      out[t] = std::max(0.0, 1.0 - m);
    } else if (a >= cost) {
      out[t] = std::max(0.0, m - 1.0);
    } else {
      out[t] = std::fabs(m - 1.0);
    }
  }
  return out;
}

}  // namespace tunebench
