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

#ifndef SFDA_TRIAL_HPP_
#define SFDA_TRIAL_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sfda/types.hpp"

namespace sfda {

/// One stimulation epoch: channels x samples in microvolts.
struct EegTrial {
  MatrixF samples;
  double fs = 0.0;
  std::optional<int> char_index;
  std::string participant_id;
  int block_index = 0;
  std::vector<std::string> channels;

  int n_channels() const { return static_cast<int>(samples.rows()); }
  int n_samples() const { return static_cast<int>(samples.cols()); }
  double duration() const { return n_samples() / fs; }

  /// Throws ArgumentError unless C >= 1, N_T >= 2, fs > 0, samples are
  /// finite, channel names match the row count and (when n_classes > 0)
  /// char_index lies in [0, n_classes).
  void validate(int n_classes = 0) const;
};

/// Flicker frequency and phase of each selectable character.
class StimulusTable {
 public:
  StimulusTable() = default;
  StimulusTable(std::vector<double> frequencies, std::vector<double> phases);

  /// 40 targets, 8.0-15.8 Hz in 0.2 Hz steps, phase advancing 0.5*pi per
  /// target (wrapped to [0, 2*pi)).
  static StimulusTable benchmark40();

  int size() const { return static_cast<int>(frequencies_.size()); }
  const std::vector<double>& frequencies() const { return frequencies_; }
  const std::vector<double>& phases() const { return phases_; }
  double frequency(int k) const { return frequencies_.at(k); }
  double phase(int k) const { return phases_.at(k); }

 private:
  std::vector<double> frequencies_;
  std::vector<double> phases_;
};

/// The 9 occipital/parietal electrodes used for evaluation.
const std::vector<std::string>& occipital_channels();

/// Returns a copy holding only the requested channels, in the given order.
EegTrial select_channels(const EegTrial& trial, std::span<const std::string> names);

/// Window of round(duration*fs) samples starting at round(t_start*fs).
EegTrial crop_trial(const EegTrial& trial, double t_start, double duration);

/// Sample index arithmetic shared by every cropping routine. Throws
/// ArgumentError if the window does not fit in n_total samples.
struct SampleWindow {
  int start = 0;
  int length = 0;
};
SampleWindow sample_window(double fs, int n_total, double t_start, double duration);

}  // namespace sfda

#endif  // SFDA_TRIAL_HPP_
