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

#include "sfda/adapt.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "sfda/adaptation_losses.hpp"
#include "sfda/errors.hpp"
#include "sfda/neighbors.hpp"
#include "sfda/rng.hpp"
#include "sfda/silhouette.hpp"

namespace sfda {

namespace {

constexpr std::uint64_t kTrialTag = 0xada9;
constexpr double kAdamBeta1 = 0.9, kAdamBeta2 = 0.999, kAdamEps = 1e-8;

struct State {
  std::vector<double> weights;
  std::vector<int> labels;
  ChannelSelection selection;
  std::vector<NeighborSet> neighbors;
};

ChannelSelection select_for(const Architecture& arch, std::span<const double> weights,
                            std::span<const SubBandTensor> target, std::span<const int> labels) {
  const auto sb = weights.first(static_cast<std::size_t>(arch.n_subbands));
  std::vector<MatrixD> collapsed;
  collapsed.reserve(target.size());
  for (const auto& x : target) collapsed.push_back(subband_collapse(sb, x));
  const auto candidates = candidate_channel_combinations(arch, weights);
  return select_channel_combination(candidates, collapsed, labels, arch.n_classes);
}

int count_changes(const std::vector<int>& a, const std::vector<int>& b) {
  int n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += a[i] != b[i] ? 1 : 0;
  return n;
}

LambdaRun run_lambda(const NetworkParams& params0, std::span<const SubBandTensor> target,
                     const AdaptationConfig& cfg, const std::vector<int>& init_labels, std::size_t li) {
  const Architecture& arch = params0.arch();
  const int n = static_cast<int>(target.size());
  const int k_max = cfg.resolve_k_max(n, arch.n_classes);
  const double lambda = cfg.lambda_grid[li];

  State acc;
  acc.weights = params0.to_double();
  acc.labels = init_labels;
  acc.selection = select_for(arch, acc.weights, target, acc.labels);
  acc.neighbors = neighbor_sets_from_correlations(acc.selection.correlations, cfg.delta, k_max);

  LambdaRun run;
  run.lambda = lambda;
  run.initial_score = acc.selection.score;
  run.accepted_scores.push_back(acc.selection.score);

  int t = 0;
  int b = 0;
  while (b < cfg.max_stalled && (cfg.max_iterations <= 0 || t < cfg.max_iterations)) {
    TrialRecord rec;
    rec.t = t;
    rec.b = b;
    const InstanceGating gating = instance_lambdas(lambda, acc.selection.report, acc.neighbors);
    if (gating.active_count() == 0) {
      rec.overall_score = acc.selection.score;
      rec.gated_out = true;
      run.trials.push_back(rec);
      ++b;
      continue;
    }
    const std::uint64_t trial_seed = mix_seed({cfg.seed, kTrialTag, li, static_cast<std::uint64_t>(t),
                                               static_cast<std::uint64_t>(b)});
    std::vector<double> w = acc.weights;
    std::vector<double> m1, m2;
    if (cfg.optimizer == OptimizerKind::kAdam) {
      m1.assign(w.size(), 0.0);
      m2.assign(w.size(), 0.0);
    }
    for (int j = 0; j < cfg.epochs; ++j) {
      const DropoutSpec dropout = DropoutSpec::train(arch, mix_seed({trial_seed, static_cast<std::uint64_t>(j)}));
      const LossResult r = total_loss(arch, w, target, acc.labels, acc.neighbors, gating, cfg.beta, dropout);
      if (cfg.optimizer == OptimizerKind::kAdam) {
        const double c1 = 1.0 - std::pow(kAdamBeta1, j + 1);
        const double c2 = 1.0 - std::pow(kAdamBeta2, j + 1);
        for (std::size_t q = 0; q < w.size(); ++q) {
          m1[q] = kAdamBeta1 * m1[q] + (1.0 - kAdamBeta1) * r.grad[q];
          m2[q] = kAdamBeta2 * m2[q] + (1.0 - kAdamBeta2) * r.grad[q] * r.grad[q];
          w[q] -= cfg.learning_rate * (m1[q] / c1) / (std::sqrt(m2[q] / c2) + kAdamEps);
        }
      } else {
        for (std::size_t q = 0; q < w.size(); ++q) w[q] -= cfg.learning_rate * r.grad[q];
      }
    }
    for (double& v : w) v = static_cast<double>(static_cast<float>(v));
    for (const double v : w) {
      if (!std::isfinite(v)) throw NumericError("non-finite weights during adaptation");
    }

    std::vector<int> labels = predict_batch(arch, w, target);
    rec.labels_changed = count_changes(labels, acc.labels);
    bool improved = false;
    ChannelSelection sel;
    try {
      sel = select_for(arch, w, target, labels);
      rec.overall_score = sel.score;
      improved = sel.score > acc.selection.score;
    } catch (const NumericError&) {
      rec.overall_score = -std::numeric_limits<double>::infinity();
    }
    rec.accepted = improved;
    run.trials.push_back(rec);
    if (improved) {
      acc.weights = std::move(w);
      acc.labels = std::move(labels);
      acc.selection = std::move(sel);
      acc.neighbors = neighbor_sets_from_correlations(acc.selection.correlations, cfg.delta, k_max);
      run.accepted_scores.push_back(acc.selection.score);
      ++t;
      b = 0;
    } else {
      ++b;
    }
  }
  run.labels = std::move(acc.labels);
  run.channel_index = acc.selection.index;
  run.params = NetworkParams::from_double(arch, acc.weights);
  return run;
}

}  // namespace

void AdaptationConfig::validate() const {
  if (!(learning_rate > 0.0)) throw ArgumentError("learning rate must be positive");
  if (!(beta >= 0.0)) throw ArgumentError("beta must be non-negative");
  if (max_stalled < 1) throw ArgumentError("max stalled trials must be >= 1");
  if (epochs < 1) throw ArgumentError("epochs per iteration must be >= 1");
  if (lambda_grid.empty()) throw ArgumentError("lambda grid is empty");
  for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
    const double v = lambda_grid[i];
    if (!(v >= 0.0 && v <= 1.0)) throw ArgumentError("lambda grid values must lie in [0, 1]");
    if (i > 0 && !(v > lambda_grid[i - 1])) throw ArgumentError("lambda grid must be sorted and distinct");
  }
  if (!(delta > 0.0)) throw ArgumentError("delta must be positive");
  if (threads < 1) throw ArgumentError("threads must be >= 1");
}

int AdaptationConfig::resolve_k_max(int n, int m) const {
  if (n < 2) throw ArgumentError("neighbor cap needs at least 2 instances");
  if (k_max > 0) return std::min(n - 1, k_max);
  const int per_class = std::max(1, static_cast<int>(std::lround(static_cast<double>(n) / std::max(1, m))));
  return std::min(n - 1, 4 * per_class);
}

std::string to_string(LabelSource s) { return s == LabelSource::kDnn ? "dnn" : "fbcca"; }

InitialPredictions initial_predictions(const NetworkParams& params, std::span<const SubBandTensor> target,
                                       const StimulusTable& stimulus, const FbccaConfig& fbcca) {
  if (target.empty()) throw ArgumentError("empty target set");
  if (stimulus.size() != params.arch().n_classes) {
    throw ArgumentError("stimulus table size does not match the network's class count");
  }
  InitialPredictions out;
  out.dnn_labels = pseudo_labels(params, target);
  out.fbcca_labels.reserve(target.size());
  for (const auto& x : target) out.fbcca_labels.push_back(fbcca_classify(x, stimulus, fbcca).predicted);

  const auto w = params.to_double();
  auto score = [&](const std::vector<int>& labels) {
    try {
      return select_for(params.arch(), w, target, labels).score;
    } catch (const NumericError&) {
      return -std::numeric_limits<double>::infinity();
    }
  };
  out.dnn_score = score(out.dnn_labels);
  out.fbcca_score = out.fbcca_labels == out.dnn_labels ? out.dnn_score : score(out.fbcca_labels);
  if (out.fbcca_score > out.dnn_score) {
    out.source = LabelSource::kFbcca;
    out.labels = out.fbcca_labels;
  } else {
    out.source = LabelSource::kDnn;
    out.labels = out.dnn_labels;
  }
  return out;
}

AdaptationResult adapt(const NetworkParams& params0, std::span<const SubBandTensor> target,
                       const AdaptationConfig& cfg, const StimulusTable& stimulus, const FbccaConfig& fbcca) {
  cfg.validate();
  params0.validate();
  if (target.size() < 2) throw ArgumentError("adaptation needs at least 2 target instances");

  AdaptationResult result;
  result.initial = initial_predictions(params0, target, stimulus, fbcca);

  const std::size_t n_runs = cfg.lambda_grid.size();
  result.runs.resize(n_runs);
  std::vector<std::exception_ptr> errors(n_runs);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t li = next++; li < n_runs; li = next++) {
      try {
        result.runs[li] = run_lambda(params0, target, cfg, result.initial.labels, li);
      } catch (...) {
        errors[li] = std::current_exception();
      }
    }
  };
  const int n_threads = std::min<int>(cfg.threads, static_cast<int>(n_runs));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  result.best = 0;
  for (std::size_t li = 1; li < n_runs; ++li) {
    if (result.runs[li].final_score() > result.runs[static_cast<std::size_t>(result.best)].final_score()) {
      result.best = static_cast<int>(li);
    }
  }
  return result;
}

}  // namespace sfda
