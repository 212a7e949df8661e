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

#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sfda/errors.hpp"
#include "sfda/rng.hpp"

namespace sfda {
namespace {

struct Instances {
  std::vector<MatrixD> collapsed;
  std::vector<VectorD> combined;
  std::vector<int> labels;
  ChannelCombination w;
};

Instances random_instances(int n, int m, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Instances s;
  const int channels = 3, samples = 32;
  s.w.weights = VectorD(channels);
  for (auto& v : s.w.weights) v = rng.normal();
  std::vector<VectorD> centers;
  for (int k = 0; k < m; ++k) {
    VectorD c(samples);
    for (auto& v : c) v = rng.normal();
    centers.push_back(c);
  }
  for (int i = 0; i < n; ++i) {
    const int y = static_cast<int>(rng.below(static_cast<std::uint64_t>(m)));
    MatrixD x(channels, samples);
    for (int c = 0; c < channels; ++c)
      for (int t = 0; t < samples; ++t) x(c, t) = centers[y][t] * (c + 1) + rng.normal();
    s.combined.push_back(x.transpose() * s.w.weights);
    s.collapsed.push_back(std::move(x));
    s.labels.push_back(y);
  }
  return s;
}

TEST(SilhouetteTest, MatchesBruteForce) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    SplitMix64 rng(seed);
    const int n = 2 + static_cast<int>(rng.below(40));
    const int m = 1 + static_cast<int>(rng.below(8));
    const Instances s = random_instances(n, m, 1000 + seed);
    const SilhouetteReport r = silhouette(s.collapsed, s.labels, s.w, m);
    const auto ref = sfda_test::brute_silhouette(s.combined, s.labels, m);
    for (int i = 0; i < n; ++i) EXPECT_NEAR(r.per_instance[i], ref.m[i], 1e-9);
    EXPECT_NEAR(r.overall, ref.overall, 1e-9);
    EXPECT_EQ(std::accumulate(r.cluster_sizes.begin(), r.cluster_sizes.end(), 0), n);
    for (double v : r.per_instance) {
      EXPECT_GE(v, -1.0);
      EXPECT_LE(v, 1.0);
    }
  }
}

TEST(SilhouetteTest, SingletonTightnessIsOne) {
  MatrixD rho(3, 3);
  rho << 1.0, 0.5, 0.5,  //
      0.5, 1.0, 0.9,     //
      0.5, 0.9, 1.0;
  const std::vector<int> labels{0, 1, 1};
  const SilhouetteReport r = silhouette_from_correlations(rho, labels, 2);
  EXPECT_DOUBLE_EQ(r.tightness[0], 1.0);
  EXPECT_DOUBLE_EQ(r.separation[0], 0.5);
  EXPECT_DOUBLE_EQ(r.per_instance[0], -0.5);
}

TEST(SilhouetteTest, SingleClusterIsZero) {
  const Instances s = random_instances(10, 1, 4);
  const SilhouetteReport r = silhouette(s.collapsed, s.labels, s.w, 40);
  EXPECT_TRUE(r.single_cluster);
  for (double v : r.per_instance) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(r.overall, 0.0);
  EXPECT_TRUE(std::isnan(r.separation[0]));
}

TEST(SilhouetteTest, SeparatedClustersScoreNearOne) {
  const int n = 20, len = 50;
  VectorD base(len);
  SplitMix64 rng(3);
  for (auto& v : base) v = rng.normal();
  std::vector<MatrixD> xs;
  std::vector<int> labels;
  for (int i = 0; i < n; ++i) {
    const double sign = i % 2 == 0 ? 1.0 : -1.0;
    MatrixD x(1, len);
    for (int t = 0; t < len; ++t) x(0, t) = sign * base[t] + 1e-4 * rng.normal();
    xs.push_back(x);
    labels.push_back(i % 2);
  }
  const SilhouetteReport r = silhouette(xs, labels, ChannelCombination{VectorD::Ones(1)}, 2);
  EXPECT_GT(r.overall, 0.999);
}

TEST(SilhouetteTest, EmptyClustersIgnoredInSeparation) {
  const Instances s = random_instances(12, 3, 5);
  std::vector<int> shifted = s.labels;
  for (int& y : shifted) y = 2 * y + 1;  // classes 0, 2, 4 stay empty
  const auto a = silhouette(s.collapsed, s.labels, s.w, 3);
  const auto b = silhouette(s.collapsed, shifted, s.w, 7);
  for (std::size_t i = 0; i < a.per_instance.size(); ++i) EXPECT_NEAR(a.per_instance[i], b.per_instance[i], 1e-15);
}

TEST(ChannelSelectionTest, SingleCandidateReturned) {
  const Instances s = random_instances(8, 3, 6);
  const std::vector<ChannelCombination> c{s.w};
  const ChannelSelection sel = select_channel_combination(c, s.collapsed, s.labels, 3);
  EXPECT_EQ(sel.index, 0);
  EXPECT_DOUBLE_EQ(sel.score, silhouette(s.collapsed, s.labels, s.w, 3).overall);
}

TEST(ChannelSelectionTest, OracleFilterWins) {
  // Channel 0 carries class structure, the others pure noise.
  SplitMix64 rng(10);
  const int n = 24, len = 40, m = 3;
  std::vector<VectorD> centers(m, VectorD(len));
  for (auto& c : centers)
    for (auto& v : c) v = rng.normal();
  std::vector<MatrixD> xs;
  std::vector<int> labels;
  for (int i = 0; i < n; ++i) {
    MatrixD x(4, len);
    for (auto& v : x.reshaped()) v = 3.0 * rng.normal();
    x.row(0) = (centers[i % m] + 0.1 * VectorD::NullaryExpr(len, [&] { return rng.normal(); })).transpose();
    xs.push_back(x);
    labels.push_back(i % m);
  }
  std::vector<ChannelCombination> cands;
  for (int c = 0; c < 5; ++c) {
    VectorD w(4);
    for (auto& v : w) v = rng.normal();
    cands.push_back({w});
  }
  VectorD oracle = VectorD::Zero(4);
  oracle[0] = 1.0;
  cands.insert(cands.begin() + 3, ChannelCombination{oracle});
  const ChannelSelection sel = select_channel_combination(cands, xs, labels, m);
  EXPECT_EQ(sel.index, 3);
  EXPECT_NEAR(sel.score, silhouette(xs, labels, cands[3], m).overall, 0.0);
}

TEST(ChannelSelectionTest, TiesGoToLowestIndex) {
  const Instances s = random_instances(8, 3, 7);
  const std::vector<ChannelCombination> c{s.w, ChannelCombination{s.w.weights * 2.0}};
  EXPECT_EQ(select_channel_combination(c, s.collapsed, s.labels, 3).index, 0);
}

TEST(ChannelSelectionTest, DegenerateCandidatesSkipped) {
  const Instances s = random_instances(8, 3, 8);
  const std::vector<ChannelCombination> c{ChannelCombination{VectorD::Zero(3)}, s.w};
  EXPECT_EQ(select_channel_combination(c, s.collapsed, s.labels, 3).index, 1);
  const std::vector<ChannelCombination> none{ChannelCombination{VectorD::Zero(3)}};
  EXPECT_THROW(select_channel_combination(none, s.collapsed, s.labels, 3), NumericError);
}

}  // namespace
}  // namespace sfda
