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

#include "sfda/pretrain.hpp"

#include <cmath>
#include <numeric>

#include "sfda/errors.hpp"
#include "sfda/rng.hpp"

namespace sfda {

std::string to_string(OptimizerKind kind) {
  switch (kind) {
    case OptimizerKind::kSgd:
      return "sgd";
    case OptimizerKind::kAdam:
      return "adam";
  }
  return "unknown";
}

OptimizerKind optimizer_from_string(const std::string& name) {
  if (name == "sgd") return OptimizerKind::kSgd;
  if (name == "adam") return OptimizerKind::kAdam;
  throw ArgumentError("unknown optimizer '" + name + "'");
}

void TrainingConfig::validate() const {
  if (epochs < 0) throw ArgumentError("epochs must be >= 0");
  if (batch_size < 1) throw ArgumentError("batch_size must be >= 1");
  if (!(learning_rate > 0.0)) throw ArgumentError("learning_rate must be positive");
  if (!(beta >= 0.0)) throw ArgumentError("beta must be >= 0");
}

PretrainResult pretrain(const LabeledSet& data, const Architecture& arch, const TrainingConfig& cfg) {
  arch.validate();
  cfg.validate();
  if (data.inputs.size() != data.labels.size()) throw ArgumentError("inputs and labels differ in length");
  if (data.inputs.empty()) throw DataError("no labeled source trials");
  std::vector<int> per_class(static_cast<std::size_t>(arch.n_classes), 0);
  for (const int y : data.labels) {
    if (y < 0 || y >= arch.n_classes) throw DataError("label " + std::to_string(y) + " out of range");
    ++per_class[static_cast<std::size_t>(y)];
  }
  for (int k = 0; k < arch.n_classes; ++k) {
    if (per_class[static_cast<std::size_t>(k)] == 0) {
      throw DataError("class " + std::to_string(k) + " has no training example");
    }
  }

  PretrainResult result;
  std::vector<double> w = initialize_params(arch, cfg.seed).to_double();
  std::vector<double> m1, m2;
  if (cfg.optimizer == OptimizerKind::kAdam) {
    m1.assign(w.size(), 0.0);
    m2.assign(w.size(), 0.0);
  }
  constexpr double kAdamBeta1 = 0.9, kAdamBeta2 = 0.999, kAdamEps = 1e-8;
  long step = 0;

  const std::size_t n = data.inputs.size();
  std::vector<std::size_t> order(n);
  std::vector<const SubBandTensor*> batch_inputs;
  std::vector<std::vector<ClassTarget>> batch_targets;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    SplitMix64 shuffle(mix_seed({cfg.seed, 0x5F1E, static_cast<std::uint64_t>(epoch)}));
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[shuffle.below(i)]);

    double epoch_loss = 0.0;
    int batches = 0;
    for (std::size_t start = 0; start < n; start += static_cast<std::size_t>(cfg.batch_size)) {
      const std::size_t stop = std::min(n, start + static_cast<std::size_t>(cfg.batch_size));
      batch_inputs.clear();
      batch_targets.clear();
      for (std::size_t i = start; i < stop; ++i) {
        batch_inputs.push_back(&data.inputs[order[i]]);
        batch_targets.push_back({{data.labels[order[i]], 1.0}});
      }
      const DropoutSpec dropout = DropoutSpec::train(
          arch, mix_seed({cfg.seed, 0xD209, static_cast<std::uint64_t>(epoch), static_cast<std::uint64_t>(batches)}));
      const LossResult r = weighted_nll(arch, w, std::span<const SubBandTensor* const>(batch_inputs), batch_targets,
                                        static_cast<double>(stop - start), cfg.beta, dropout);
      ++step;
      if (cfg.optimizer == OptimizerKind::kSgd) {
        for (std::size_t i = 0; i < w.size(); ++i) w[i] -= cfg.learning_rate * r.grad[i];
      } else {
        const double c1 = 1.0 - std::pow(kAdamBeta1, static_cast<double>(step));
        const double c2 = 1.0 - std::pow(kAdamBeta2, static_cast<double>(step));
        for (std::size_t i = 0; i < w.size(); ++i) {
          m1[i] = kAdamBeta1 * m1[i] + (1.0 - kAdamBeta1) * r.grad[i];
          m2[i] = kAdamBeta2 * m2[i] + (1.0 - kAdamBeta2) * r.grad[i] * r.grad[i];
          w[i] -= cfg.learning_rate * (m1[i] / c1) / (std::sqrt(m2[i] / c2) + kAdamEps);
        }
      }
      epoch_loss += r.loss;
      ++batches;
    }
    result.loss_trace.push_back(epoch_loss / batches);
  }
  result.params = NetworkParams::from_double(arch, w);
  return result;
}

double accuracy(const NetworkParams& params, const LabeledSet& data) {
  if (data.inputs.empty()) return 0.0;
  const std::vector<int> pred = predict_batch(params, data.inputs);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) hits += pred[i] == data.labels[i];
  return static_cast<double>(hits) / static_cast<double>(pred.size());
}

}  // namespace sfda
