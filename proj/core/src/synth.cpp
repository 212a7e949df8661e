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

#include "sfda/synth.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "sfda/errors.hpp"
#include "sfda/rng.hpp"

namespace sfda {

namespace {

constexpr std::uint64_t kBaseStream = 0xBA5E;
constexpr std::uint64_t kParticipantStream = 0x9A27;
constexpr std::uint64_t kTrialStream = 0x7814;
constexpr std::uint64_t kLatencyStream = 0x1A7E;

std::string participant_name(int p) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "S%02d", p + 1);
  return buf;
}

std::string trial_file(const std::string& pid, int block, int k) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s/block%d_char%02d.f32", pid.c_str(), block, k);
  return buf;
}

}  // namespace

void SynthConfig::validate() const {
  if (n_participants < 2) throw ArgumentError("synthetic set needs at least 2 participants");
  if (n_blocks < 1) throw ArgumentError("synthetic set needs at least 1 block");
  if (!std::isfinite(snr_db)) throw ArgumentError("snr_db must be finite");
  if (n_harmonics_signal < 1) throw ArgumentError("n_harmonics_signal must be >= 1");
  if (!(mixing_strength >= 0.0 && mixing_strength <= 1.0)) {
    throw ArgumentError("mixing_strength must lie in [0, 1]");
  }
  if (!std::isfinite(harmonic_decay)) throw ArgumentError("harmonic_decay must be finite");
  if (!(latency_spread >= 0.0 && std::isfinite(latency_spread))) {
    throw ArgumentError("latency_spread must be finite and non-negative");
  }
}

MatrixD participant_mixing(const SynthConfig& cfg, int participant, int n_channels) {
  const double scale = 1.0 / std::sqrt(static_cast<double>(n_channels));
  SplitMix64 base_rng(mix_seed({cfg.seed, kBaseStream}));
  MatrixD a = MatrixD::Identity(n_channels, n_channels);
  for (int r = 0; r < n_channels; ++r) {
    for (int c = 0; c < n_channels; ++c) a(r, c) += scale * base_rng.normal();
  }
  SplitMix64 rng(mix_seed({cfg.seed, kParticipantStream, static_cast<std::uint64_t>(participant)}));
  for (int r = 0; r < n_channels; ++r) {
    for (int c = 0; c < n_channels; ++c) {
      const double g = rng.normal();
      if (cfg.mixing_strength > 0.0) a(r, c) += cfg.mixing_strength * scale * g;
    }
  }
  return a;
}

double participant_latency(const SynthConfig& cfg, int participant) {
  SplitMix64 rng(mix_seed({cfg.seed, kLatencyStream, static_cast<std::uint64_t>(participant)}));
  return cfg.mixing_strength * cfg.latency_spread * rng.uniform(-1.0, 1.0);
}

VectorD ssvep_waveform(const SynthConfig& cfg, const StimulusTable& stimulus, int k, double fs,
                       int n_samples, double t_offset) {
  const double f = stimulus.frequency(k);
  const double phi = stimulus.phase(k);
  VectorD s = VectorD::Zero(n_samples);
  for (int h = 1; h <= cfg.n_harmonics_signal; ++h) {
    const double amp = std::pow(static_cast<double>(h), -cfg.harmonic_decay);
    for (int n = 0; n < n_samples; ++n) {
      const double t = n / fs - t_offset;
      s[n] += amp * std::sin(2.0 * std::numbers::pi * h * f * t + h * phi);
    }
  }
  return s;
}

LatentTrial synth_latent(const SynthConfig& cfg, const StimulusTable& stimulus, double fs, int n_samples,
                         int participant, int block, int k, int n_channels) {
  const VectorD s = ssvep_waveform(cfg, stimulus, k, fs, n_samples, participant_latency(cfg, participant));
  const double noise_sd = std::sqrt(s.squaredNorm() / n_samples * std::pow(10.0, -cfg.snr_db / 10.0));
  LatentTrial out;
  out.signal = MatrixD::Zero(n_channels, n_samples);
  out.signal.row(0) = s.transpose();
  out.noise.resize(n_channels, n_samples);
  SplitMix64 rng(mix_seed({cfg.seed, kTrialStream, static_cast<std::uint64_t>(participant),
                           static_cast<std::uint64_t>(block), static_cast<std::uint64_t>(k)}));
  for (int c = 0; c < n_channels; ++c) {
    for (int n = 0; n < n_samples; ++n) out.noise(c, n) = noise_sd * rng.normal();
  }
  return out;
}

Dataset synth_dataset(const SynthConfig& cfg, const StimulusTable& stimulus, double fs, double duration) {
  cfg.validate();
  if (!(duration > 0.0)) throw ArgumentError("duration must be positive");
  if (!(fs > 0.0)) throw ArgumentError("fs must be positive");
  const auto n_samples = static_cast<int>(std::lround(duration * fs));
  if (n_samples < 2) throw ArgumentError("duration*fs must be at least 2 samples");

  const std::vector<std::string>& names = occipital_channels();
  const int n_channels = static_cast<int>(names.size());
  const int n_classes = stimulus.size();

  DatasetManifest manifest;
  manifest.fs = fs;
  manifest.n_samples = n_samples;
  manifest.stimulus = stimulus;
  std::vector<std::vector<EegTrial>> trials(static_cast<std::size_t>(cfg.n_participants));

  for (int p = 0; p < cfg.n_participants; ++p) {
    ParticipantInfo info;
    info.id = participant_name(p);
    info.blocks = cfg.n_blocks;
    info.channels = names;
    const MatrixD mixing = participant_mixing(cfg, p, n_channels);
    for (int b = 0; b < cfg.n_blocks; ++b) {
      for (int k = 0; k < n_classes; ++k) {
        const LatentTrial latent = synth_latent(cfg, stimulus, fs, n_samples, p, b, k, n_channels);
        EegTrial t;
        t.samples = (mixing * (latent.signal + latent.noise)).cast<float>();
        t.fs = fs;
        t.char_index = k;
        t.participant_id = info.id;
        t.block_index = b;
        t.channels = names;
        info.trials.push_back({b, k, trial_file(info.id, b, k)});
        trials[static_cast<std::size_t>(p)].push_back(std::move(t));
      }
    }
    manifest.participants.push_back(std::move(info));
  }
  return Dataset::from_memory(std::move(manifest), std::move(trials));
}

}  // namespace sfda
