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

#ifndef SFDA_ADAPTATION_LOSSES_HPP_
#define SFDA_ADAPTATION_LOSSES_HPP_

#include <span>
#include <vector>

#include "sfda/filter_bank.hpp"
#include "sfda/neighbors.hpp"
#include "sfda/network.hpp"
#include "sfda/silhouette.hpp"

namespace sfda {

/// Inference-mode predictions used as pseudo-labels.
std::vector<int> pseudo_labels(const NetworkParams& params, std::span<const SubBandTensor> target);

/// Per-instance weighting of the self and local terms.
struct InstanceGating {
  std::vector<double> lambda;  // lambda_i
  std::vector<char> active;    // instance contributes to the loss at all
  std::vector<char> trusted;   // m_i >= 0: its pseudo-label may serve as a neighbor target

  int active_count() const;
};

/// Global lambda for every instance, nothing masked.
InstanceGating uniform_gating(double lambda, int n);

/// lambda_i = 0 when m_i < 0, 1 when every neighbor has m_j < 0, lambda
/// otherwise; an instance meeting both conditions is masked out.
InstanceGating instance_lambdas(double lambda, const SilhouetteReport& report,
                                std::span<const NeighborSet> neighbors);

/// -(1/N) sum_i log s_{i, y_i}, dropout per `dropout`.
LossResult self_adaptation_loss(const Architecture& arch, std::span<const double> weights,
                                std::span<const SubBandTensor> target, std::span<const int> labels,
                                const DropoutSpec& dropout);
LossResult self_adaptation_loss(const NetworkParams& params, std::span<const SubBandTensor> target,
                                std::span<const int> labels, const DropoutSpec& dropout);

/// -(1/N) sum_i (1/k_i) sum_{j <= k_i} log s_{i, y_{I_i(j)}}.
LossResult local_regularity_loss(const Architecture& arch, std::span<const double> weights,
                                 std::span<const SubBandTensor> target, std::span<const int> labels,
                                 std::span<const NeighborSet> neighbors, const DropoutSpec& dropout);
LossResult local_regularity_loss(const NetworkParams& params, std::span<const SubBandTensor> target,
                                 std::span<const int> labels, std::span<const NeighborSet> neighbors,
                                 const DropoutSpec& dropout);

/// Gated combination over active instances, still normalized by the full N:
///
///   -(1/N) sum_i [ lambda_i log s_{i,y_i}
///                  + (1 - lambda_i)/k'_i sum_{trusted j in I_i} log s_{i,y_j} ]
///     + beta ||w||^2
///
/// where k'_i counts the trusted neighbors. GatingError if no instance is
/// active.
LossResult total_loss(const Architecture& arch, std::span<const double> weights,
                      std::span<const SubBandTensor> target, std::span<const int> labels,
                      std::span<const NeighborSet> neighbors, const InstanceGating& gating, double beta,
                      const DropoutSpec& dropout);
LossResult total_loss(const NetworkParams& params, std::span<const SubBandTensor> target,
                      std::span<const int> labels, std::span<const NeighborSet> neighbors,
                      const InstanceGating& gating, double beta, const DropoutSpec& dropout);

}  // namespace sfda

#endif  // SFDA_ADAPTATION_LOSSES_HPP_
