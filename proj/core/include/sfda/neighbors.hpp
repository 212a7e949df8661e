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

#ifndef SFDA_NEIGHBORS_HPP_
#define SFDA_NEIGHBORS_HPP_

#include <span>
#include <vector>

#include "sfda/signal_ops.hpp"
#include "sfda/types.hpp"

namespace sfda {

/// Instances ranked by correlation to one instance, most similar first.
struct NeighborSet {
  std::vector<int> order;  // every other index, descending correlation (ties by index)
  int k = 0;               // neighborhood size

  std::span<const int> neighbors() const { return std::span<const int>(order).first(static_cast<std::size_t>(k)); }
};

/// Pairwise correlations [N x N] of w_c^T x_i. Throws DegenerateInputError
/// naming the first instance whose combined signal has zero variance.
MatrixD combined_correlations(std::span<const MatrixD> collapsed, const ChannelCombination& w_c);

/// Variable neighborhood size for one descending correlation profile: the
/// smallest rank k with (rho_k - rho_{k+1}) / |rho_k| >= delta. Falls back
/// to min(k_max, len) when no drop qualifies or the drop lies beyond k_max.
/// A zero rho_k qualifies only on a strictly positive drop.
int neighbor_count(std::span<const double> descending, double delta, int k_max);

std::vector<NeighborSet> neighbor_sets_from_correlations(const MatrixD& rho, double delta, int k_max);

/// Neighbor sets after collapsing channels with w_c; requires >= 2 instances
/// of equal length.
std::vector<NeighborSet> neighbor_sets(std::span<const MatrixD> collapsed, const ChannelCombination& w_c,
                                       double delta, int k_max);

}  // namespace sfda

#endif  // SFDA_NEIGHBORS_HPP_
