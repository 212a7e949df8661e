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

#ifndef SFDA_ADAPT_HPP_
#define SFDA_ADAPT_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sfda/cca.hpp"
#include "sfda/network.hpp"
#include "sfda/pretrain.hpp"
#include "sfda/trial.hpp"

namespace sfda {

struct AdaptationConfig {
  double learning_rate = 1e-4;  // alpha
  double beta = 1e-3;           // L2 weight
  int max_stalled = 3;          // B
  int epochs = 50;              // J full-batch steps per trial
  OptimizerKind optimizer = OptimizerKind::kSgd;  // plain gradient step, or Adam reset every trial
  std::vector<double> lambda_grid{0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
  double delta = 0.15;
  int k_max = 0;           // <= 0: derived from N and the class count
  int max_iterations = 0;  // accepted-iteration cap per lambda, <= 0: none
  std::uint64_t seed = 1;
  int threads = 1;  // lambda runs executed concurrently

  void validate() const;
  /// Effective neighbor cap for n instances over m classes:
  /// min(n - 1, k_max) if set, else min(n - 1, 4 * max(1, round(n / m))).
  int resolve_k_max(int n, int m) const;
};

enum class LabelSource { kDnn, kFbcca };
std::string to_string(LabelSource s);

struct InitialPredictions {
  std::vector<int> labels;
  LabelSource source = LabelSource::kDnn;
  std::vector<int> dnn_labels;
  std::vector<int> fbcca_labels;
  double dnn_score = 0.0;
  double fbcca_score = 0.0;
};

/// DNN pseudo-labels versus FBCCA predictions, whichever clusters better
/// under the network's channel combinations (ties keep the DNN labels).
/// Both label sets are scored with the same candidates.
InitialPredictions initial_predictions(const NetworkParams& params, std::span<const SubBandTensor> target,
                                       const StimulusTable& stimulus, const FbccaConfig& fbcca);

struct TrialRecord {
  int t = 0;  // accepted iterations so far
  int b = 0;  // stalled trials so far
  double overall_score = 0.0;
  bool accepted = false;
  int labels_changed = 0;  // flips against the accepted labels
  bool gated_out = false;  // no usable instance; weights untouched
};

struct LambdaRun {
  double lambda = 0.0;
  double initial_score = 0.0;
  std::vector<double> accepted_scores;  // strictly increasing, starts with initial_score
  std::vector<TrialRecord> trials;
  std::vector<int> labels;  // final accepted pseudo-labels
  int channel_index = 0;    // selected candidate for the final state
  NetworkParams params;     // final accepted weights

  int iterations() const { return static_cast<int>(accepted_scores.size()) - 1; }
  double final_score() const { return accepted_scores.back(); }
};

struct AdaptationResult {
  InitialPredictions initial;
  std::vector<LambdaRun> runs;  // in grid order
  int best = 0;                 // index of lambda_max within runs

  double lambda_max() const { return runs[static_cast<std::size_t>(best)].lambda; }
  const NetworkParams& params() const { return runs[static_cast<std::size_t>(best)].params; }
  const std::vector<int>& labels() const { return runs[static_cast<std::size_t>(best)].labels; }
};

/// Source-free adaptation over the lambda grid. Each run starts from params0
/// and the initial predictions, repeats trials of J gradient steps from the
/// last accepted weights, accepts a trial only if the overall silhouette
/// strictly increases and stops after max_stalled consecutive failures.
/// lambda_max maximizes the final score (ties to the smaller lambda).
/// Deterministic for a given seed regardless of thread count.
AdaptationResult adapt(const NetworkParams& params0, std::span<const SubBandTensor> target,
                       const AdaptationConfig& cfg, const StimulusTable& stimulus, const FbccaConfig& fbcca);

}  // namespace sfda

#endif  // SFDA_ADAPT_HPP_
