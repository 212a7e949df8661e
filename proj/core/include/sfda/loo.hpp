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

#ifndef SFDA_LOO_HPP_
#define SFDA_LOO_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sfda/adapt.hpp"
#include "sfda/cca.hpp"
#include "sfda/dataset.hpp"
#include "sfda/network.hpp"
#include "sfda/pretrain.hpp"

namespace sfda {

enum class Method { kSfda, kFbcca, kStandardCca, kDnnTransferOnly };
std::string to_string(Method m);
Method method_from_string(const std::string& name);
std::vector<Method> all_methods();

struct EvalConfig {
  std::vector<double> durations{0.2, 0.4, 0.6, 0.8, 1.0};
  double gaze_shift = 0.5;
  double latency = 0.14;  // window start after stimulus onset
  std::vector<std::string> channel_subset = occipital_channels();
  std::vector<Method> methods = all_methods();
  std::vector<std::string> targets;  // participants held out in turn; empty means all
  std::uint64_t seed = 1;
  int jobs = 1;  // folds evaluated concurrently

  void validate() const;
};

/// Everything an experiment needs besides the data.
struct ExperimentConfig {
  std::string data;   // manifest path, optional
  FbccaConfig fbcca;  // its filter bank also feeds the network
  Architecture arch;  // sub-band, channel, sample and class counts follow the data
  TrainingConfig training;
  AdaptationConfig adaptation;
  EvalConfig eval;

  void validate() const;
};

/// cfg.arch with the data-dependent sizes filled in.
Architecture fold_architecture(const ExperimentConfig& cfg, int n_channels, int n_samples, int n_classes);

/// One participant after channel selection and full-epoch filtering.
struct PreparedParticipant {
  std::string id;
  std::vector<EegTrial> trials;      // selected channels, full epoch
  std::vector<SubBandTensor> bands;  // filter bank over the full epoch
  std::vector<std::optional<int>> labels;
};

PreparedParticipant prepare_participant(const Dataset& data, std::size_t participant, const ExperimentConfig& cfg);

/// Sub-band windows [latency, latency + duration) of every trial.
std::vector<SubBandTensor> crop_bands(const PreparedParticipant& p, double latency, double duration);

/// Labeled windows pooled over the given participants; unlabeled trials are skipped.
LabeledSet labeled_windows(std::span<const PreparedParticipant* const> sources, double latency, double duration);

/// Content hash of everything that determines a pre-training run.
std::string pretrain_cache_key(const LabeledSet& data, const Architecture& arch, const TrainingConfig& cfg);

using LogFn = std::function<void(const std::string&)>;

/// pretrain() with an optional on-disk cache keyed by pretrain_cache_key.
NetworkParams pretrain_cached(const LabeledSet& data, const Architecture& arch, const TrainingConfig& cfg,
                              const std::filesystem::path& cache_dir, const LogFn& log = {});

struct EvalRecord {
  Method method = Method::kSfda;
  double duration = 0.0;
  std::string participant;
  double accuracy = 0.0;
  double itr = 0.0;
  bool clamped = false;
};

struct Aggregate {
  Method method = Method::kSfda;
  double duration = 0.0;
  int n = 0;
  double mean_accuracy = 0.0;
  double se_accuracy = 0.0;
  double mean_itr = 0.0;
  double se_itr = 0.0;
};

/// Paired comparison of SFDA against one other method at one duration.
struct SignificanceRow {
  std::string metric;  // "accuracy" or "itr"
  Method other = Method::kFbcca;
  double duration = 0.0;
  double t = 0.0;
  double p = 1.0;
  std::string label;
  bool degenerate = false;  // zero-variance differences; t and p undefined
};

/// Selected lambda against the lambda that scores best on true labels.
struct LambdaTriple {
  std::string participant;
  double duration = 0.0;
  double selected = 0.0;
  double best = 0.0;
  double gap = 0.0;  // accuracy(best) - accuracy(selected)
};

struct FoldAdaptation {
  std::string participant;
  double duration = 0.0;
  AdaptationResult result;  // per-run weights dropped
  std::vector<double> run_accuracy;
  double initial_accuracy = 0.0;
};

struct EvalReport {
  std::vector<EvalRecord> records;  // participant, duration, method order
  std::vector<Aggregate> aggregates;
  std::vector<SignificanceRow> significance;
  std::vector<LambdaTriple> lambdas;
  std::vector<FoldAdaptation> adaptations;

  /// Mean accuracy of a method at a duration (NaN if absent).
  double mean_accuracy(Method m, double duration) const;
};

struct LooOptions {
  std::filesystem::path cache_dir;  // empty: no checkpoint cache
  LogFn log;
};

/// Leave-one-participant-out evaluation. Every held-out participant's
/// trials must be labeled; labels are only read for scoring.
EvalReport run_loo(const Dataset& data, const ExperimentConfig& cfg, const LooOptions& options = {});

/// report.json, results.csv, significance.csv and lambda.csv under dir.
void write_report(const EvalReport& report, const std::filesystem::path& dir);

}  // namespace sfda

#endif  // SFDA_LOO_HPP_
