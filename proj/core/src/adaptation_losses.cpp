/* Copyright 2026 The ssvep-sfda Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "sfda/adaptation_losses.hpp"

#include <algorithm>
#include <cmath>

#include "sfda/errors.hpp"

namespace sfda {

namespace {

void check_common(const Architecture& arch, std::span<const SubBandTensor> target, std::span<const int> labels) {
  if (target.empty()) throw GatingError("empty target set");
  if (labels.size() != target.size()) throw ArgumentError("label count does not match target set");
  for (const int y : labels) {
    if (y < 0 || y >= arch.n_classes) throw ArgumentError("pseudo-label " + std::to_string(y) + " out of range");
  }
}

void check_neighbors(std::span<const NeighborSet> neighbors, std::size_t n) {
  if (neighbors.size() != n) throw ArgumentError("neighbor set count does not match target set");
  for (const auto& s : neighbors) {
    if (s.k < 1 || s.k > static_cast<int>(s.order.size())) throw ArgumentError("invalid neighbor count");
    for (const int j : s.neighbors()) {
      if (j < 0 || static_cast<std::size_t>(j) >= n) throw ArgumentError("neighbor index out of range");
    }
  }
}

double log_prob(const SoftResponse& r, int cls) { return std::log(r.probs[static_cast<std::size_t>(cls)]); }

}  // namespace

std::vector<int> pseudo_labels(const NetworkParams& params, std::span<const SubBandTensor> target) {
  if (target.empty()) throw ArgumentError("empty target set");
  return predict_batch(params, target);
}

int InstanceGating::active_count() const {
  return static_cast<int>(std::count(active.begin(), active.end(), char{1}));
}

InstanceGating uniform_gating(double lambda, int n) {
  InstanceGating g;
  g.lambda.assign(static_cast<std::size_t>(n), lambda);
  g.active.assign(static_cast<std::size_t>(n), 1);
  g.trusted.assign(static_cast<std::size_t>(n), 1);
  return g;
}

InstanceGating instance_lambdas(double lambda, const SilhouetteReport& report,
                                std::span<const NeighborSet> neighbors) {
  const std::size_t n = report.per_instance.size();
  check_neighbors(neighbors, n);
  InstanceGating g = uniform_gating(lambda, static_cast<int>(n));
  for (std::size_t i = 0; i < n; ++i) g.trusted[i] = report.per_instance[i] >= 0.0 ? 1 : 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto nb = neighbors[i].neighbors();
    const bool local_ok = std::any_of(nb.begin(), nb.end(), [&](int j) { return g.trusted[static_cast<std::size_t>(j)]; });
    const bool self_ok = g.trusted[i] != 0;
    if (!self_ok && !local_ok) {
      g.active[i] = 0;
      g.lambda[i] = 0.0;
    } else if (!self_ok) {
      g.lambda[i] = 0.0;
    } else if (!local_ok) {
      g.lambda[i] = 1.0;
    }
  }
  return g;
}

LossResult self_adaptation_loss(const Architecture& arch, std::span<const double> weights,
                                std::span<const SubBandTensor> target, std::span<const int> labels,
                                const DropoutSpec& dropout) {
  check_common(arch, target, labels);
  const auto responses = forward_batch(arch, weights, target, dropout);
  double sum = 0.0;
  for (std::size_t i = 0; i < target.size(); ++i) sum += log_prob(responses[i], labels[i]);

  std::vector<std::vector<ClassTarget>> targets(target.size());
  for (std::size_t i = 0; i < target.size(); ++i) targets[i] = {{labels[i], 1.0}};
  LossResult r = weighted_nll(arch, weights, target, targets, static_cast<double>(target.size()), 0.0, dropout);
  r.loss = -sum / static_cast<double>(target.size());
  return r;
}

LossResult self_adaptation_loss(const NetworkParams& params, std::span<const SubBandTensor> target,
                                std::span<const int> labels, const DropoutSpec& dropout) {
  const auto w = params.to_double();
  return self_adaptation_loss(params.arch(), w, target, labels, dropout);
}

LossResult local_regularity_loss(const Architecture& arch, std::span<const double> weights,
                                 std::span<const SubBandTensor> target, std::span<const int> labels,
                                 std::span<const NeighborSet> neighbors, const DropoutSpec& dropout) {
  check_common(arch, target, labels);
  check_neighbors(neighbors, target.size());
  const auto responses = forward_batch(arch, weights, target, dropout);
  double sum = 0.0;
  for (std::size_t i = 0; i < target.size(); ++i) {
    double inner = 0.0;
    for (const int j : neighbors[i].neighbors()) inner += log_prob(responses[i], labels[static_cast<std::size_t>(j)]);
    sum += inner / neighbors[i].k;
  }

  std::vector<std::vector<ClassTarget>> targets(target.size());
  for (std::size_t i = 0; i < target.size(); ++i) {
    const double w = 1.0 / neighbors[i].k;
    for (const int j : neighbors[i].neighbors()) targets[i].push_back({labels[static_cast<std::size_t>(j)], w});
  }
  LossResult r = weighted_nll(arch, weights, target, targets, static_cast<double>(target.size()), 0.0, dropout);
  r.loss = -sum / static_cast<double>(target.size());
  return r;
}

LossResult local_regularity_loss(const NetworkParams& params, std::span<const SubBandTensor> target,
                                 std::span<const int> labels, std::span<const NeighborSet> neighbors,
                                 const DropoutSpec& dropout) {
  const auto w = params.to_double();
  return local_regularity_loss(params.arch(), w, target, labels, neighbors, dropout);
}

LossResult total_loss(const Architecture& arch, std::span<const double> weights,
                      std::span<const SubBandTensor> target, std::span<const int> labels,
                      std::span<const NeighborSet> neighbors, const InstanceGating& gating, double beta,
                      const DropoutSpec& dropout) {
  check_common(arch, target, labels);
  check_neighbors(neighbors, target.size());
  const std::size_t n = target.size();
  if (gating.lambda.size() != n || gating.active.size() != n || gating.trusted.size() != n) {
    throw ArgumentError("gating does not match target set");
  }
  if (gating.active_count() == 0) throw GatingError("gating left no usable instance");

  std::vector<std::vector<ClassTarget>> targets(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!gating.active[i]) continue;
    const double lam = gating.lambda[i];
    if (lam > 0.0) targets[i].push_back({labels[i], lam});
    if (lam < 1.0) {
      int usable = 0;
      for (const int j : neighbors[i].neighbors()) usable += gating.trusted[static_cast<std::size_t>(j)] ? 1 : 0;
      if (usable == 0) continue;
      const double w = (1.0 - lam) / usable;
      for (const int j : neighbors[i].neighbors()) {
        if (gating.trusted[static_cast<std::size_t>(j)]) targets[i].push_back({labels[static_cast<std::size_t>(j)], w});
      }
    }
  }
  return weighted_nll(arch, weights, target, targets, static_cast<double>(n), beta, dropout);
}

LossResult total_loss(const NetworkParams& params, std::span<const SubBandTensor> target,
                      std::span<const int> labels, std::span<const NeighborSet> neighbors,
                      const InstanceGating& gating, double beta, const DropoutSpec& dropout) {
  const auto w = params.to_double();
  return total_loss(params.arch(), w, target, labels, neighbors, gating, beta, dropout);
}

}  // namespace sfda
