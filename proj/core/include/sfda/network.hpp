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

#ifndef SFDA_NETWORK_HPP_
#define SFDA_NETWORK_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sfda/filter_bank.hpp"
#include "sfda/signal_ops.hpp"

namespace sfda {

/// Shape descriptor of the fixed network:
///
///   sub-band combination (N_sb -> 1)
///   channel combination  (C -> F maps)      -> dropout
///   temporal conv (k1, stride s1) + ReLU    -> dropout
///   temporal conv (k2, stride 1, same pad) + ReLU -> dropout
///   fully connected (F*L -> M) -> softmax
struct Architecture {
  int n_subbands = 3;
  int n_channels = 9;
  int n_samples = 250;
  int n_classes = 40;
  int n_filters = 120;
  int kernel1 = 2;
  int stride1 = 2;
  int kernel2 = 10;
  double dropout_channel = 0.1;
  double dropout_temporal1 = 0.1;
  double dropout_temporal2 = 0.95;

  int temporal_length() const { return (n_samples - kernel1) / stride1 + 1; }
  int fc_inputs() const { return n_filters * temporal_length(); }
  int pad_left() const { return (kernel2 - 1) / 2; }
  void validate() const;

  bool operator==(const Architecture&) const = default;
};

enum class TensorId : int {
  kSubbandComb = 0,
  kChannelComb,
  kTemporal1Weight,
  kTemporal1Bias,
  kTemporal2Weight,
  kTemporal2Bias,
  kFcWeight,
  kFcBias,
};
inline constexpr int kTensorCount = 8;

struct TensorInfo {
  std::string name;
  std::vector<int> shape;
  std::size_t offset = 0;  // in elements, within the flat parameter vector
  std::size_t count = 0;
};

/// Flat layout of all learnable tensors, in TensorId order.
std::vector<TensorInfo> tensor_layout(const Architecture& arch);
std::size_t parameter_count(const Architecture& arch);

/// All learnable weights, stored as float32 in one flat vector.
class NetworkParams {
 public:
  NetworkParams() = default;
  explicit NetworkParams(const Architecture& arch);  // all zeros

  const Architecture& arch() const { return arch_; }
  std::span<float> values() { return values_; }
  std::span<const float> values() const { return values_; }

  std::span<float> tensor(TensorId id);
  std::span<const float> tensor(TensorId id) const;

  std::span<const float> subband_comb() const { return tensor(TensorId::kSubbandComb); }
  std::span<const float> channel_comb() const { return tensor(TensorId::kChannelComb); }

  /// Flat copy in 64-bit for computation.
  std::vector<double> to_double() const;
  /// Rounds a 64-bit flat vector to storage precision.
  static NetworkParams from_double(const Architecture& arch, std::span<const double> weights);

  void validate() const;
  bool operator==(const NetworkParams&) const = default;

 private:
  Architecture arch_;
  std::vector<float> values_;
};

/// Gradient with the same flat layout as NetworkParams.
using Gradient = std::vector<double>;

enum class DropoutMode { kInference, kTrain };

struct DropoutSpec {
  double p_after_channel = 0.0;
  double p_after_temporal1 = 0.0;
  double p_after_temporal2 = 0.0;
  DropoutMode mode = DropoutMode::kInference;
  std::uint64_t seed = 0;

  static DropoutSpec inference() { return {}; }
  /// Train-mode spec using the architecture's probabilities.
  static DropoutSpec train(const Architecture& arch, std::uint64_t seed);
  void validate() const;
};

struct SoftResponse {
  std::vector<double> probs;
};

/// Symmetric uniform initialization, U(-1/sqrt(fan_in), 1/sqrt(fan_in)) for
/// weights and zeros for biases.
NetworkParams initialize_params(const Architecture& arch, std::uint64_t seed);

SoftResponse forward(const NetworkParams& params, const SubBandTensor& x, const DropoutSpec& dropout);
std::vector<SoftResponse> forward_batch(const NetworkParams& params, std::span<const SubBandTensor> xs,
                                        const DropoutSpec& dropout);
std::vector<SoftResponse> forward_batch(const Architecture& arch, std::span<const double> weights,
                                        std::span<const SubBandTensor> xs, const DropoutSpec& dropout);

/// argmax of the inference-mode response; ties go to the lowest index.
int predict(const NetworkParams& params, const SubBandTensor& x);
std::vector<int> predict_batch(const NetworkParams& params, std::span<const SubBandTensor> xs);
std::vector<int> predict_batch(const Architecture& arch, std::span<const double> weights,
                               std::span<const SubBandTensor> xs);

/// One weighted class target of an instance.
struct ClassTarget {
  int cls = 0;
  double weight = 0.0;
};

struct LossResult {
  double loss = 0.0;
  Gradient grad;
};

/// Generic objective behind every loss in this library:
///
///   (1/normalizer) * sum_i sum_{(k,w) in targets[i]} -w * log s_{i,k}
///     + beta * ||weights||^2
///
/// evaluated with 64-bit weights. Dropout masks are drawn once per call from
/// (dropout.seed, instance index, site) and shared by the forward and
/// backward pass.
LossResult weighted_nll(const Architecture& arch, std::span<const double> weights,
                        std::span<const SubBandTensor> inputs,
                        std::span<const std::vector<ClassTarget>> targets, double normalizer, double beta,
                        const DropoutSpec& dropout);

/// Same objective over borrowed inputs (e.g. a shuffled mini-batch).
LossResult weighted_nll(const Architecture& arch, std::span<const double> weights,
                        std::span<const SubBandTensor* const> inputs,
                        std::span<const std::vector<ClassTarget>> targets, double normalizer, double beta,
                        const DropoutSpec& dropout);

struct LabeledExample {
  const SubBandTensor* x = nullptr;
  int label = 0;
  double weight = 1.0;
};

/// (1/|batch|) * sum_i weight_i * -log s_{i,label_i} + beta * ||w||^2.
LossResult loss_and_gradients(const NetworkParams& params, std::span<const LabeledExample> batch, double beta,
                              const DropoutSpec& dropout);

/// Rows of the channel-combination layer, one candidate per feature map.
std::vector<ChannelCombination> candidate_channel_combinations(const NetworkParams& params);
std::vector<ChannelCombination> candidate_channel_combinations(const Architecture& arch,
                                                               std::span<const double> weights);

/// sum_n subband_comb[n] * x[n] -> [C x N_s].
MatrixD subband_collapse(const NetworkParams& params, const SubBandTensor& x);
MatrixD subband_collapse(std::span<const double> subband_weights, const SubBandTensor& x);

}  // namespace sfda

#endif  // SFDA_NETWORK_HPP_
