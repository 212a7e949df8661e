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

#ifndef SFDA_SILHOUETTE_HPP_
#define SFDA_SILHOUETTE_HPP_

#include <span>
#include <vector>

#include "sfda/network.hpp"
#include "sfda/signal_ops.hpp"
#include "sfda/types.hpp"

namespace sfda {

struct SilhouetteReport {
  std::vector<double> per_instance;  // m_i in [-1, 1]
  std::vector<double> tightness;     // a_i
  std::vector<double> separation;    // b_i (NaN when no other cluster exists)
  double overall = 0.0;              // mean of per_instance
  std::vector<int> cluster_sizes;    // q_k, length M
  bool single_cluster = false;       // every m_i forced to 0
};

/// Silhouette of a labeling under distance d = 1 - rho.
///
/// a_i is the mean distance to the rest of i's cluster (1 for a singleton);
/// b_i the smallest mean distance to another non-empty cluster; m_i =
/// (b_i - a_i) / max(a_i, b_i), or 0 if both are zero. With a single
/// non-empty cluster every m_i is 0 and single_cluster is set.
SilhouetteReport silhouette_from_correlations(const MatrixD& rho, std::span<const int> labels, int n_classes);

SilhouetteReport silhouette(std::span<const MatrixD> collapsed, std::span<const int> labels,
                            const ChannelCombination& w_c, int n_classes);

struct ChannelSelection {
  int index = 0;  // position within the candidate list
  ChannelCombination w_c;
  double score = 0.0;
  SilhouetteReport report;
  MatrixD correlations;  // rho under w_c, reused for neighbor sets
};

/// Candidate with the highest overall silhouette; ties go to the lowest
/// index. Candidates whose combined signals are degenerate are skipped;
/// NumericError if none remain.
ChannelSelection select_channel_combination(std::span<const ChannelCombination> candidates,
                                            std::span<const MatrixD> collapsed, std::span<const int> labels,
                                            int n_classes);

/// Uses the network's layer-2 rows as candidates and its sub-band weights to
/// collapse the target.
ChannelSelection select_channel_combination(const NetworkParams& params, std::span<const SubBandTensor> target,
                                            std::span<const int> labels);

}  // namespace sfda

#endif  // SFDA_SILHOUETTE_HPP_
