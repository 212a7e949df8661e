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

#include "sfda/network.hpp"

#include <algorithm>
#include <cmath>

#include "sfda/cca.hpp"
#include "sfda/errors.hpp"
#include "sfda/rng.hpp"

namespace sfda {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using RowMap = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
using RowMapMut = Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

constexpr int kChunk = 32;

enum DropoutSite : std::uint64_t { kSiteChannel = 1, kSiteTemporal1 = 2, kSiteTemporal2 = 3 };

const double* tensor_ptr(const Architecture& a, std::span<const double> w, TensorId id) {
  return w.data() + tensor_layout(a)[static_cast<int>(id)].offset;
}

// Views of the flat 64-bit weight vector.
struct Weights {
  Weights(const Architecture& a, std::span<const double> w)
      : arch(a),
        subband(tensor_ptr(a, w, TensorId::kSubbandComb)),
        w2(tensor_ptr(a, w, TensorId::kChannelComb), a.n_filters, a.n_channels),
        w3(tensor_ptr(a, w, TensorId::kTemporal1Weight), a.n_filters, a.n_filters * a.kernel1),
        b3(tensor_ptr(a, w, TensorId::kTemporal1Bias)),
        w4(tensor_ptr(a, w, TensorId::kTemporal2Weight), a.n_filters, a.n_filters * a.kernel2),
        b4(tensor_ptr(a, w, TensorId::kTemporal2Bias)),
        wfc(tensor_ptr(a, w, TensorId::kFcWeight), a.n_classes, a.fc_inputs()),
        bfc(tensor_ptr(a, w, TensorId::kFcBias)) {}

  const Architecture& arch;
  const double* subband;
  RowMap w2;
  RowMap w3;
  const double* b3;
  RowMap w4;
  const double* b4;
  RowMap wfc;
  const double* bfc;
};

using InputPtrs = std::span<const SubBandTensor* const>;

std::vector<const SubBandTensor*> pointers(std::span<const SubBandTensor> xs) {
  std::vector<const SubBandTensor*> p;
  p.reserve(xs.size());
  for (const auto& x : xs) p.push_back(&x);
  return p;
}

// Activations of one chunk of instances, columns concatenated per instance.
struct Chunk {
  int first = 0;  // index of the first instance within the call
  int size = 0;
  MatrixXd u;      // [C x B*Ns]   sub-band combined input
  MatrixXd d2;     // [F x B*Ns]   dropout scale after channel combination (empty if off)
  MatrixXd v;      // [F x B*Ns]   channel-combined, after dropout
  MatrixXd x3;     // [F*k1 x B*L] im2col of v
  MatrixXd h1pre;  // [F x B*L]
  MatrixXd d3;     // [F x B*L]
  MatrixXd x4;     // [F*k2 x B*L] im2col of dropped h1
  MatrixXd h2pre;  // [F x B*L]
  MatrixXd d4;     // [F x B*L]
  MatrixXd zin;    // [F*L x B]
  MatrixXd probs;  // [M x B]
  MatrixXd logp;   // [M x B]
};

MatrixXd dropout_scales(const DropoutSpec& spec, double p, DropoutSite site, int first, int count, int rows,
                        int cols_per_instance) {
  if (spec.mode != DropoutMode::kTrain || p <= 0.0) return {};
  MatrixXd d(rows, static_cast<Index>(count) * cols_per_instance);
  const double keep_scale = 1.0 / (1.0 - p);
  for (int b = 0; b < count; ++b) {
    SplitMix64 rng(mix_seed({spec.seed, static_cast<std::uint64_t>(first + b), site}));
    for (int r = 0; r < rows; ++r) {
      for (int t = 0; t < cols_per_instance; ++t) {
        d(r, static_cast<Index>(b) * cols_per_instance + t) = rng.uniform() < p ? 0.0 : keep_scale;
      }
    }
  }
  return d;
}

void check_input(const Architecture& a, const SubBandTensor& x) {
  if (x.n_subbands != a.n_subbands || x.n_channels != a.n_channels || x.n_samples != a.n_samples) {
    throw ArgumentError("input shape [" + std::to_string(x.n_subbands) + " x " + std::to_string(x.n_channels) +
                        " x " + std::to_string(x.n_samples) + "] does not match network [" +
                        std::to_string(a.n_subbands) + " x " + std::to_string(a.n_channels) + " x " +
                        std::to_string(a.n_samples) + "]");
  }
}

void forward_chunk(const Weights& w, InputPtrs xs, const DropoutSpec& dropout, Chunk& c) {
  const Architecture& a = w.arch;
  const int f = a.n_filters, ns = a.n_samples, len = a.temporal_length();
  const int k1 = a.kernel1, s1 = a.stride1, k2 = a.kernel2, pad = a.pad_left();
  const int bsz = c.size;

  c.u.setZero(a.n_channels, static_cast<Index>(bsz) * ns);
  for (int b = 0; b < bsz; ++b) {
    const SubBandTensor& x = *xs[static_cast<std::size_t>(c.first + b)];
    for (int n = 0; n < a.n_subbands; ++n) {
      c.u.middleCols(static_cast<Index>(b) * ns, ns).noalias() += w.subband[n] * x.band(n);
    }
  }

  c.v.noalias() = w.w2 * c.u;
  c.d2 = dropout_scales(dropout, dropout.p_after_channel, kSiteChannel, c.first, bsz, f, ns);
  if (c.d2.size() > 0) c.v.array() *= c.d2.array();

  c.x3.resize(static_cast<Index>(f) * k1, static_cast<Index>(bsz) * len);
  for (int b = 0; b < bsz; ++b) {
    for (int ch = 0; ch < f; ++ch) {
      for (int k = 0; k < k1; ++k) {
        for (int t = 0; t < len; ++t) {
          c.x3(static_cast<Index>(ch) * k1 + k, static_cast<Index>(b) * len + t) =
              c.v(ch, static_cast<Index>(b) * ns + s1 * t + k);
        }
      }
    }
  }
  c.h1pre.noalias() = w.w3 * c.x3;
  c.h1pre.colwise() += Eigen::Map<const Eigen::VectorXd>(w.b3, f);
  MatrixXd h1 = c.h1pre.cwiseMax(0.0);
  c.d3 = dropout_scales(dropout, dropout.p_after_temporal1, kSiteTemporal1, c.first, bsz, f, len);
  if (c.d3.size() > 0) h1.array() *= c.d3.array();

  c.x4.setZero(static_cast<Index>(f) * k2, static_cast<Index>(bsz) * len);
  for (int b = 0; b < bsz; ++b) {
    for (int ch = 0; ch < f; ++ch) {
      for (int k = 0; k < k2; ++k) {
        const int lo = std::max(0, pad - k);
        const int hi = std::min(len, len + pad - k);
        for (int t = lo; t < hi; ++t) {
          c.x4(static_cast<Index>(ch) * k2 + k, static_cast<Index>(b) * len + t) =
              h1(ch, static_cast<Index>(b) * len + t + k - pad);
        }
      }
    }
  }
  c.h2pre.noalias() = w.w4 * c.x4;
  c.h2pre.colwise() += Eigen::Map<const Eigen::VectorXd>(w.b4, f);
  MatrixXd h2 = c.h2pre.cwiseMax(0.0);
  c.d4 = dropout_scales(dropout, dropout.p_after_temporal2, kSiteTemporal2, c.first, bsz, f, len);
  if (c.d4.size() > 0) h2.array() *= c.d4.array();

  c.zin.resize(static_cast<Index>(f) * len, bsz);
  for (int b = 0; b < bsz; ++b) {
    for (int ch = 0; ch < f; ++ch) {
      c.zin.col(b).segment(static_cast<Index>(ch) * len, len) =
          h2.row(ch).segment(static_cast<Index>(b) * len, len).transpose();
    }
  }
  MatrixXd logits = w.wfc * c.zin;
  logits.colwise() += Eigen::Map<const Eigen::VectorXd>(w.bfc, a.n_classes);

  c.probs.resize(a.n_classes, bsz);
  c.logp.resize(a.n_classes, bsz);
  for (int b = 0; b < bsz; ++b) {
    const double mx = logits.col(b).maxCoeff();
    const double lse = mx + std::log((logits.col(b).array() - mx).exp().sum());
    c.logp.col(b) = logits.col(b).array() - lse;
    c.probs.col(b) = c.logp.col(b).array().exp();
  }
}

// Accumulates parameter gradients given dL/dlogits [M x B] for the chunk.
void backward_chunk(const Weights& w, InputPtrs xs, const Chunk& c, const MatrixXd& g,
                    std::span<double> grad) {
  const Architecture& a = w.arch;
  const int f = a.n_filters, ns = a.n_samples, len = a.temporal_length();
  const int k1 = a.kernel1, s1 = a.stride1, k2 = a.kernel2, pad = a.pad_left();
  const int bsz = c.size;
  const auto layout = tensor_layout(a);
  auto gptr = [&](TensorId id) { return grad.data() + layout[static_cast<int>(id)].offset; };

  RowMapMut(gptr(TensorId::kFcWeight), a.n_classes, a.fc_inputs()).noalias() += g * c.zin.transpose();
  Eigen::Map<Eigen::VectorXd>(gptr(TensorId::kFcBias), a.n_classes) += g.rowwise().sum();
  const MatrixXd dzin = w.wfc.transpose() * g;

  MatrixXd dh2(f, static_cast<Index>(bsz) * len);
  for (int b = 0; b < bsz; ++b) {
    for (int ch = 0; ch < f; ++ch) {
      dh2.row(ch).segment(static_cast<Index>(b) * len, len) =
          dzin.col(b).segment(static_cast<Index>(ch) * len, len).transpose();
    }
  }
  if (c.d4.size() > 0) dh2.array() *= c.d4.array();
  dh2.array() *= (c.h2pre.array() > 0.0).cast<double>();

  RowMapMut(gptr(TensorId::kTemporal2Weight), f, f * k2).noalias() += dh2 * c.x4.transpose();
  Eigen::Map<Eigen::VectorXd>(gptr(TensorId::kTemporal2Bias), f) += dh2.rowwise().sum();
  const MatrixXd dx4 = w.w4.transpose() * dh2;

  MatrixXd dh1 = MatrixXd::Zero(f, static_cast<Index>(bsz) * len);
  for (int b = 0; b < bsz; ++b) {
    for (int ch = 0; ch < f; ++ch) {
      for (int k = 0; k < k2; ++k) {
        const int lo = std::max(0, pad - k);
        const int hi = std::min(len, len + pad - k);
        for (int t = lo; t < hi; ++t) {
          dh1(ch, static_cast<Index>(b) * len + t + k - pad) +=
              dx4(static_cast<Index>(ch) * k2 + k, static_cast<Index>(b) * len + t);
        }
      }
    }
  }
  if (c.d3.size() > 0) dh1.array() *= c.d3.array();
  dh1.array() *= (c.h1pre.array() > 0.0).cast<double>();

  RowMapMut(gptr(TensorId::kTemporal1Weight), f, f * k1).noalias() += dh1 * c.x3.transpose();
  Eigen::Map<Eigen::VectorXd>(gptr(TensorId::kTemporal1Bias), f) += dh1.rowwise().sum();
  const MatrixXd dx3 = w.w3.transpose() * dh1;

  MatrixXd dv = MatrixXd::Zero(f, static_cast<Index>(bsz) * ns);
  for (int b = 0; b < bsz; ++b) {
    for (int ch = 0; ch < f; ++ch) {
      for (int k = 0; k < k1; ++k) {
        for (int t = 0; t < len; ++t) {
          dv(ch, static_cast<Index>(b) * ns + s1 * t + k) +=
              dx3(static_cast<Index>(ch) * k1 + k, static_cast<Index>(b) * len + t);
        }
      }
    }
  }
  if (c.d2.size() > 0) dv.array() *= c.d2.array();

  RowMapMut(gptr(TensorId::kChannelComb), f, a.n_channels).noalias() += dv * c.u.transpose();
  const MatrixXd du = w.w2.transpose() * dv;
  double* gsub = gptr(TensorId::kSubbandComb);
  for (int b = 0; b < bsz; ++b) {
    const SubBandTensor& x = *xs[static_cast<std::size_t>(c.first + b)];
    const auto du_b = du.middleCols(static_cast<Index>(b) * ns, ns);
    for (int n = 0; n < a.n_subbands; ++n) gsub[n] += (du_b.array() * x.band(n).array()).sum();
  }
}

std::vector<SoftResponse> run_forward(const Architecture& arch, std::span<const double> weights,
                                      InputPtrs xs, const DropoutSpec& dropout) {
  dropout.validate();
  for (const auto* x : xs) check_input(arch, *x);
  const Weights w(arch, weights);
  std::vector<SoftResponse> out(xs.size());
  Chunk c;
  for (int first = 0; first < static_cast<int>(xs.size()); first += kChunk) {
    c.first = first;
    c.size = std::min(kChunk, static_cast<int>(xs.size()) - first);
    forward_chunk(w, xs, dropout, c);
    for (int b = 0; b < c.size; ++b) {
      auto& probs = out[static_cast<std::size_t>(first + b)].probs;
      probs.assign(c.probs.col(b).data(), c.probs.col(b).data() + arch.n_classes);
    }
  }
  return out;
}

int argmax_probs(const std::vector<double>& p) { return argmax_lowest(p); }

}  // namespace

void Architecture::validate() const {
  if (n_subbands < 1 || n_channels < 1 || n_classes < 1 || n_filters < 1) {
    throw ArgumentError("architecture dimensions must be positive");
  }
  if (kernel1 < 1 || stride1 < 1 || kernel2 < 1) throw ArgumentError("kernel sizes and stride must be positive");
  if (n_samples < kernel1) throw ArgumentError("input shorter than the first temporal kernel");
  for (const double p : {dropout_channel, dropout_temporal1, dropout_temporal2}) {
    if (!(p >= 0.0 && p < 1.0)) throw ArgumentError("dropout probabilities must lie in [0, 1)");
  }
}

std::vector<TensorInfo> tensor_layout(const Architecture& a) {
  const int f = a.n_filters;
  std::vector<TensorInfo> t = {
      {"subband_comb", {a.n_subbands}, 0, 0},
      {"channel_comb", {f, a.n_channels}, 0, 0},
      {"temporal1.weight", {f, f, a.kernel1}, 0, 0},
      {"temporal1.bias", {f}, 0, 0},
      {"temporal2.weight", {f, f, a.kernel2}, 0, 0},
      {"temporal2.bias", {f}, 0, 0},
      {"fc.weight", {a.n_classes, a.fc_inputs()}, 0, 0},
      {"fc.bias", {a.n_classes}, 0, 0},
  };
  std::size_t offset = 0;
  for (auto& info : t) {
    info.count = 1;
    for (const int d : info.shape) info.count *= static_cast<std::size_t>(d);
    info.offset = offset;
    offset += info.count;
  }
  return t;
}

std::size_t parameter_count(const Architecture& arch) {
  const auto t = tensor_layout(arch);
  return t.back().offset + t.back().count;
}

NetworkParams::NetworkParams(const Architecture& arch) : arch_(arch) {
  arch_.validate();
  values_.assign(parameter_count(arch_), 0.0f);
}

std::span<float> NetworkParams::tensor(TensorId id) {
  const auto info = tensor_layout(arch_)[static_cast<int>(id)];
  return std::span<float>(values_).subspan(info.offset, info.count);
}

std::span<const float> NetworkParams::tensor(TensorId id) const {
  const auto info = tensor_layout(arch_)[static_cast<int>(id)];
  return std::span<const float>(values_).subspan(info.offset, info.count);
}

std::vector<double> NetworkParams::to_double() const { return {values_.begin(), values_.end()}; }

NetworkParams NetworkParams::from_double(const Architecture& arch, std::span<const double> weights) {
  NetworkParams p(arch);
  if (weights.size() != p.values_.size()) throw ArgumentError("weight vector length does not match architecture");
  std::transform(weights.begin(), weights.end(), p.values_.begin(), [](double v) { return static_cast<float>(v); });
  return p;
}

void NetworkParams::validate() const {
  arch_.validate();
  if (values_.size() != parameter_count(arch_)) throw ArgumentError("parameter count does not match architecture");
  if (!std::all_of(values_.begin(), values_.end(), [](float v) { return std::isfinite(v); })) {
    throw ArgumentError("network parameters contain non-finite values");
  }
}

DropoutSpec DropoutSpec::train(const Architecture& arch, std::uint64_t seed) {
  return {arch.dropout_channel, arch.dropout_temporal1, arch.dropout_temporal2, DropoutMode::kTrain, seed};
}

void DropoutSpec::validate() const {
  for (const double p : {p_after_channel, p_after_temporal1, p_after_temporal2}) {
    if (!(p >= 0.0 && p < 1.0)) throw ArgumentError("dropout probabilities must lie in [0, 1)");
  }
}

NetworkParams initialize_params(const Architecture& arch, std::uint64_t seed) {
  NetworkParams p(arch);
  SplitMix64 rng(mix_seed({seed, 0x1417}));
  const int f = arch.n_filters;
  auto fill = [&](TensorId id, int fan_in) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    for (float& v : p.tensor(id)) v = static_cast<float>(rng.uniform(-bound, bound));
  };
  fill(TensorId::kSubbandComb, arch.n_subbands);
  fill(TensorId::kChannelComb, arch.n_channels);
  fill(TensorId::kTemporal1Weight, f * arch.kernel1);
  fill(TensorId::kTemporal2Weight, f * arch.kernel2);
  fill(TensorId::kFcWeight, arch.fc_inputs());
  return p;
}

SoftResponse forward(const NetworkParams& params, const SubBandTensor& x, const DropoutSpec& dropout) {
  return forward_batch(params, std::span<const SubBandTensor>(&x, 1), dropout).front();
}

std::vector<SoftResponse> forward_batch(const NetworkParams& params, std::span<const SubBandTensor> xs,
                                        const DropoutSpec& dropout) {
  const std::vector<double> w = params.to_double();
  return run_forward(params.arch(), w, pointers(xs), dropout);
}

std::vector<SoftResponse> forward_batch(const Architecture& arch, std::span<const double> weights,
                                        std::span<const SubBandTensor> xs, const DropoutSpec& dropout) {
  if (weights.size() != parameter_count(arch)) throw ArgumentError("weight vector does not match architecture");
  return run_forward(arch, weights, pointers(xs), dropout);
}

int predict(const NetworkParams& params, const SubBandTensor& x) {
  return argmax_probs(forward(params, x, DropoutSpec::inference()).probs);
}

std::vector<int> predict_batch(const Architecture& arch, std::span<const double> weights,
                               std::span<const SubBandTensor> xs) {
  const auto responses = run_forward(arch, weights, pointers(xs), DropoutSpec::inference());
  std::vector<int> labels;
  labels.reserve(responses.size());
  for (const auto& r : responses) labels.push_back(argmax_probs(r.probs));
  return labels;
}

std::vector<int> predict_batch(const NetworkParams& params, std::span<const SubBandTensor> xs) {
  const std::vector<double> w = params.to_double();
  return predict_batch(params.arch(), w, xs);
}

LossResult weighted_nll(const Architecture& arch, std::span<const double> weights,
                        std::span<const SubBandTensor> inputs,
                        std::span<const std::vector<ClassTarget>> targets, double normalizer, double beta,
                        const DropoutSpec& dropout) {
  const auto ptrs = pointers(inputs);
  return weighted_nll(arch, weights, ptrs, targets, normalizer, beta, dropout);
}

LossResult weighted_nll(const Architecture& arch, std::span<const double> weights,
                        std::span<const SubBandTensor* const> inputs,
                        std::span<const std::vector<ClassTarget>> targets, double normalizer, double beta,
                        const DropoutSpec& dropout) {
  arch.validate();
  dropout.validate();
  if (inputs.empty()) throw ArgumentError("loss needs a nonempty batch");
  if (inputs.size() != targets.size()) throw ArgumentError("inputs and targets differ in length");
  if (!(normalizer > 0.0)) throw ArgumentError("loss normalizer must be positive");
  if (weights.size() != parameter_count(arch)) throw ArgumentError("weight vector length does not match architecture");
  for (const auto* x : inputs) check_input(arch, *x);
  for (const auto& ts : targets) {
    for (const auto& t : ts) {
      if (t.cls < 0 || t.cls >= arch.n_classes) throw ArgumentError("target class out of range");
      if (!(t.weight >= 0.0)) throw ArgumentError("target weights must be non-negative");
    }
  }

  const Weights w(arch, weights);
  LossResult r;
  r.grad.assign(weights.size(), 0.0);
  double data_loss = 0.0;
  Chunk c;
  MatrixXd g;
  for (int first = 0; first < static_cast<int>(inputs.size()); first += kChunk) {
    c.first = first;
    c.size = std::min(kChunk, static_cast<int>(inputs.size()) - first);
    // Skip chunks without targets.
    bool any = false;
    for (int b = 0; b < c.size && !any; ++b) any = !targets[static_cast<std::size_t>(first + b)].empty();
    if (!any) continue;
    forward_chunk(w, inputs, dropout, c);
    g.setZero(arch.n_classes, c.size);
    for (int b = 0; b < c.size; ++b) {
      double total_weight = 0.0;
      for (const ClassTarget& t : targets[static_cast<std::size_t>(first + b)]) {
        data_loss -= t.weight * c.logp(t.cls, b);
        g(t.cls, b) -= t.weight;
        total_weight += t.weight;
      }
      g.col(b) += total_weight * c.probs.col(b);
    }
    g /= normalizer;
    backward_chunk(w, inputs, c, g, r.grad);
  }
  double sq = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    sq += weights[i] * weights[i];
    r.grad[i] += 2.0 * beta * weights[i];
  }
  r.loss = data_loss / normalizer + beta * sq;
  return r;
}

LossResult loss_and_gradients(const NetworkParams& params, std::span<const LabeledExample> batch, double beta,
                              const DropoutSpec& dropout) {
  if (batch.empty()) throw ArgumentError("loss needs a nonempty batch");
  std::vector<const SubBandTensor*> inputs;
  std::vector<std::vector<ClassTarget>> targets;
  inputs.reserve(batch.size());
  targets.reserve(batch.size());
  for (const auto& e : batch) {
    if (e.x == nullptr) throw ArgumentError("batch entry without input");
    inputs.push_back(e.x);
    targets.push_back({{e.label, e.weight}});
  }
  const std::vector<double> w = params.to_double();
  return weighted_nll(params.arch(), w, std::span<const SubBandTensor* const>(inputs), targets,
                      static_cast<double>(batch.size()), beta, dropout);
}

std::vector<ChannelCombination> candidate_channel_combinations(const Architecture& arch,
                                                               std::span<const double> weights) {
  const auto info = tensor_layout(arch)[static_cast<int>(TensorId::kChannelComb)];
  std::vector<ChannelCombination> out(static_cast<std::size_t>(arch.n_filters));
  for (int f = 0; f < arch.n_filters; ++f) {
    out[static_cast<std::size_t>(f)].weights =
        Eigen::Map<const Eigen::VectorXd>(weights.data() + info.offset + static_cast<std::size_t>(f) * arch.n_channels,
                                          arch.n_channels);
  }
  return out;
}

std::vector<ChannelCombination> candidate_channel_combinations(const NetworkParams& params) {
  const std::vector<double> w = params.to_double();
  return candidate_channel_combinations(params.arch(), w);
}

MatrixD subband_collapse(std::span<const double> subband_weights, const SubBandTensor& x) {
  if (static_cast<int>(subband_weights.size()) != x.n_subbands) {
    throw ArgumentError("sub-band weight count does not match tensor");
  }
  MatrixD out = MatrixD::Zero(x.n_channels, x.n_samples);
  for (int n = 0; n < x.n_subbands; ++n) out.noalias() += subband_weights[static_cast<std::size_t>(n)] * x.band(n);
  return out;
}

MatrixD subband_collapse(const NetworkParams& params, const SubBandTensor& x) {
  const auto sub = params.subband_comb();
  const std::vector<double> w(sub.begin(), sub.end());
  return subband_collapse(w, x);
}

}  // namespace sfda
