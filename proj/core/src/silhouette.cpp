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

#include "sfda/silhouette.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sfda/errors.hpp"
#include "sfda/neighbors.hpp"

namespace sfda {

SilhouetteReport silhouette_from_correlations(const MatrixD& rho, std::span<const int> labels, int n_classes) {
  const int n = static_cast<int>(rho.rows());
  if (n < 2) throw ArgumentError("silhouette needs at least 2 instances");
  if (static_cast<int>(labels.size()) != n) throw ArgumentError("label count does not match instances");
  if (n_classes < 1) throw ArgumentError("n_classes must be positive");

  SilhouetteReport r;
  r.cluster_sizes.assign(static_cast<std::size_t>(n_classes), 0);
  for (const int y : labels) {
    if (y < 0 || y >= n_classes) throw ArgumentError("label " + std::to_string(y) + " out of range");
    ++r.cluster_sizes[static_cast<std::size_t>(y)];
  }
  const int nonempty = static_cast<int>(std::count_if(r.cluster_sizes.begin(), r.cluster_sizes.end(),
                                                      [](int q) { return q > 0; }));
  r.single_cluster = nonempty == 1;
  r.per_instance.resize(static_cast<std::size_t>(n));
  r.tightness.resize(static_cast<std::size_t>(n));
  r.separation.resize(static_cast<std::size_t>(n));

  std::vector<double> sums(static_cast<std::size_t>(n_classes));
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    std::fill(sums.begin(), sums.end(), 0.0);
    for (int j = 0; j < n; ++j) {
      if (j != i) sums[static_cast<std::size_t>(labels[static_cast<std::size_t>(j)])] += 1.0 - rho(i, j);
    }
    const auto own = static_cast<std::size_t>(labels[static_cast<std::size_t>(i)]);
    const int q_own = r.cluster_sizes[own];
    const double a = q_own == 1 ? 1.0 : sums[own] / (q_own - 1);
    double b = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < sums.size(); ++k) {
      if (k != own && r.cluster_sizes[k] > 0) b = std::min(b, sums[k] / r.cluster_sizes[k]);
    }
    double m = 0.0;
    if (r.single_cluster) {
      b = std::numeric_limits<double>::quiet_NaN();
    } else {
      const double denom = std::max(a, b);
      m = denom > 0.0 ? (b - a) / denom : 0.0;
    }
    r.tightness[static_cast<std::size_t>(i)] = a;
    r.separation[static_cast<std::size_t>(i)] = b;
    r.per_instance[static_cast<std::size_t>(i)] = m;
    total += m;
  }
  r.overall = total / n;
  return r;
}

SilhouetteReport silhouette(std::span<const MatrixD> collapsed, std::span<const int> labels,
                            const ChannelCombination& w_c, int n_classes) {
  if (collapsed.size() < 2) throw ArgumentError("silhouette needs at least 2 instances");
  return silhouette_from_correlations(combined_correlations(collapsed, w_c), labels, n_classes);
}

ChannelSelection select_channel_combination(std::span<const ChannelCombination> candidates,
                                            std::span<const MatrixD> collapsed, std::span<const int> labels,
                                            int n_classes) {
  if (candidates.empty()) throw ArgumentError("no candidate channel combinations");
  ChannelSelection best;
  bool found = false;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    MatrixD rho;
    try {
      rho = combined_correlations(collapsed, candidates[c]);
    } catch (const DegenerateInputError&) {
      continue;
    }
    SilhouetteReport report = silhouette_from_correlations(rho, labels, n_classes);
    if (!found || report.overall > best.score) {
      found = true;
      best.index = static_cast<int>(c);
      best.w_c = candidates[c];
      best.score = report.overall;
      best.report = std::move(report);
      best.correlations = std::move(rho);
    }
  }
  if (!found) throw NumericError("every candidate channel combination is degenerate on the target set");
  return best;
}

ChannelSelection select_channel_combination(const NetworkParams& params, std::span<const SubBandTensor> target,
                                            std::span<const int> labels) {
  std::vector<MatrixD> collapsed;
  collapsed.reserve(target.size());
  for (const auto& x : target) collapsed.push_back(subband_collapse(params, x));
  const auto candidates = candidate_channel_combinations(params);
  return select_channel_combination(candidates, collapsed, labels, params.arch().n_classes);
}

}  // namespace sfda
