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

#include "sfda/neighbors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sfda/errors.hpp"

namespace sfda {

MatrixD combined_correlations(std::span<const MatrixD> collapsed, const ChannelCombination& w_c) {
  if (collapsed.empty()) throw ArgumentError("no instances");
  const Eigen::Index ns = collapsed.front().cols();
  MatrixD z(static_cast<Eigen::Index>(collapsed.size()), ns);
  for (std::size_t i = 0; i < collapsed.size(); ++i) {
    if (collapsed[i].cols() != ns) {
      throw ArgumentError("instances differ in length; correlations need equal lengths");
    }
    try {
      z.row(static_cast<Eigen::Index>(i)) = standardize(combine_channels(collapsed[i], w_c)).transpose();
    } catch (const DegenerateInputError&) {
      throw DegenerateInputError("combined signal of instance " + std::to_string(i) + " has zero variance");
    }
  }
  MatrixD rho = z * z.transpose();
  rho = rho.cwiseMax(-1.0).cwiseMin(1.0);
  return rho;
}

int neighbor_count(std::span<const double> descending, double delta, int k_max) {
  const int len = static_cast<int>(descending.size());
  if (len < 1) throw ArgumentError("neighbor profile is empty");
  const int fallback = std::clamp(k_max, 1, len);
  for (int k = 1; k < len; ++k) {
    const double cur = descending[static_cast<std::size_t>(k - 1)];
    const double drop = cur - descending[static_cast<std::size_t>(k)];
    const bool qualifies = cur == 0.0 ? drop > 0.0 : drop / std::abs(cur) >= delta;
    if (qualifies) return k <= fallback ? k : fallback;
  }
  return fallback;
}

std::vector<NeighborSet> neighbor_sets_from_correlations(const MatrixD& rho, double delta, int k_max) {
  const int n = static_cast<int>(rho.rows());
  if (n < 2) throw ArgumentError("neighbor sets need at least 2 instances");
  if (!(delta > 0.0)) throw ArgumentError("delta must be positive");
  std::vector<NeighborSet> out(static_cast<std::size_t>(n));
  std::vector<double> profile;
  for (int i = 0; i < n; ++i) {
    NeighborSet& s = out[static_cast<std::size_t>(i)];
    s.order.reserve(static_cast<std::size_t>(n - 1));
    for (int j = 0; j < n; ++j) {
      if (j != i) s.order.push_back(j);
    }
    std::stable_sort(s.order.begin(), s.order.end(), [&](int a, int b) { return rho(i, a) > rho(i, b); });
    profile.clear();
    for (const int j : s.order) profile.push_back(rho(i, j));
    s.k = neighbor_count(profile, delta, k_max);
  }
  return out;
}

std::vector<NeighborSet> neighbor_sets(std::span<const MatrixD> collapsed, const ChannelCombination& w_c,
                                       double delta, int k_max) {
  if (collapsed.size() < 2) throw ArgumentError("neighbor sets need at least 2 instances");
  return neighbor_sets_from_correlations(combined_correlations(collapsed, w_c), delta, k_max);
}

}  // namespace sfda
