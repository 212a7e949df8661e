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

#ifndef SFDA_SYNTH_HPP_
#define SFDA_SYNTH_HPP_

#include <cstdint>

#include "sfda/dataset.hpp"
#include "sfda/types.hpp"

namespace sfda {

struct SynthConfig {
  int n_participants = 7;
  int n_blocks = 4;
  double snr_db = 0.0;
  int n_harmonics_signal = 5;
  /// Per-participant deviation of the spatial mixing matrix from the shared
  /// base, in [0, 1]. Zero gives every participant the same matrix.
  double mixing_strength = 0.5;
  /// amplitude(h) = h^(-harmonic_decay).
  double harmonic_decay = 1.0;
  /// Response latency offset of a participant is
  /// mixing_strength * latency_spread * U(-1, 1) seconds.
  double latency_spread = 0.04;
  std::uint64_t seed = 1;

  void validate() const;
};

/// Spatial mixing matrix [C x C] of participant p (0-based). Exposed for tests.
MatrixD participant_mixing(const SynthConfig& cfg, int participant, int n_channels);

/// Response latency of participant p in seconds.
double participant_latency(const SynthConfig& cfg, int participant);

/// Noise-free latent SSVEP waveform of class k; t_offset delays the response.
VectorD ssvep_waveform(const SynthConfig& cfg, const StimulusTable& stimulus, int k, double fs,
                       int n_samples, double t_offset = 0.0);

/// Unmixed source rows of one trial. Row 0 carries the response, every row
/// carries white noise at the configured SNR relative to it.
struct LatentTrial {
  MatrixD signal;
  MatrixD noise;
};
LatentTrial synth_latent(const SynthConfig& cfg, const StimulusTable& stimulus, double fs, int n_samples,
                         int participant, int block, int k, int n_channels);

/// Builds an in-memory synthetic dataset.
///
/// Each trial is A_p * (signal + noise) from synth_latent, with the class
/// waveform shifted by the participant's latency and the participant's
/// mixing matrix A_p applied on the left. Channels carry the 9 occipital
/// names. Every trial draws from its own seed derived from (seed,
/// participant, block, class), so output does not depend on generation order.
Dataset synth_dataset(const SynthConfig& cfg, const StimulusTable& stimulus, double fs, double duration);

}  // namespace sfda

#endif  // SFDA_SYNTH_HPP_
