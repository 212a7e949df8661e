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

#ifndef SFDA_PRETRAIN_HPP_
#define SFDA_PRETRAIN_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "sfda/network.hpp"

namespace sfda {

enum class OptimizerKind { kSgd, kAdam };

std::string to_string(OptimizerKind kind);
OptimizerKind optimizer_from_string(const std::string& name);

struct TrainingConfig {
  int epochs = 500;
  int batch_size = 64;
  double learning_rate = 1e-4;
  double beta = 1e-3;  // L2 weight
  OptimizerKind optimizer = OptimizerKind::kSgd;
  std::uint64_t seed = 1;

  void validate() const;
};

struct LabeledSet {
  std::vector<SubBandTensor> inputs;
  std::vector<int> labels;
};

struct PretrainResult {
  NetworkParams params;
  std::vector<double> loss_trace;  // mean mini-batch loss per epoch
};

/// Supervised training on labeled source trials: cross-entropy plus
/// beta*||w||^2, shuffled mini-batches, dropout on. Deterministic in
/// cfg.seed. Throws DataError when a class has no training example.
PretrainResult pretrain(const LabeledSet& data, const Architecture& arch, const TrainingConfig& cfg);

/// Fraction of inputs whose inference-mode prediction equals the label.
double accuracy(const NetworkParams& params, const LabeledSet& data);

}  // namespace sfda

#endif  // SFDA_PRETRAIN_HPP_
