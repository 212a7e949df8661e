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

#include "sfda/trial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_set>

#include "sfda/errors.hpp"

namespace sfda {

void EegTrial::validate(int n_classes) const {
  if (samples.rows() < 1 || samples.cols() < 2) {
    throw ArgumentError("trial needs at least 1 channel and 2 samples");
  }
  if (!(fs > 0.0) || !std::isfinite(fs)) {
    throw ArgumentError("trial sampling rate must be positive");
  }
  if (!samples.allFinite()) {
    throw ArgumentError("trial contains non-finite samples");
  }
  if (!channels.empty() && static_cast<Eigen::Index>(channels.size()) != samples.rows()) {
    throw ArgumentError("channel name count does not match trial rows");
  }
  if (char_index && (*char_index < 0 || (n_classes > 0 && *char_index >= n_classes))) {
    throw ArgumentError("char_index " + std::to_string(*char_index) + " out of range");
  }
}

StimulusTable::StimulusTable(std::vector<double> frequencies, std::vector<double> phases)
    : frequencies_(std::move(frequencies)), phases_(std::move(phases)) {
  if (frequencies_.empty()) throw ArgumentError("stimulus table is empty");
  if (frequencies_.size() != phases_.size()) {
    throw ArgumentError("stimulus frequencies and phases differ in length");
  }
  std::unordered_set<double> seen;
  for (const double f : frequencies_) {
    if (!(f > 0.0) || !std::isfinite(f)) {
      throw ArgumentError("stimulus frequencies must be positive");
    }
    if (!seen.insert(f).second) {
      throw ArgumentError("stimulus frequencies must be distinct");
    }
  }
  for (const double p : phases_) {
    if (!std::isfinite(p)) throw ArgumentError("stimulus phase is not finite");
  }
}

StimulusTable StimulusTable::benchmark40() {
  std::vector<double> freqs(40);
  std::vector<double> phases(40);
  for (int k = 0; k < 40; ++k) {
    // Integer arithmetic first so 8.2, 8.4, ... are the nearest doubles.
    freqs[k] = (80 + 2 * k) / 10.0;
    phases[k] = std::fmod(k * 0.5 * std::numbers::pi, 2.0 * std::numbers::pi);
  }
  return StimulusTable(std::move(freqs), std::move(phases));
}

const std::vector<std::string>& occipital_channels() {
  static const std::vector<std::string> kNames = {"Pz",  "PO3", "PO5", "PO4", "PO6",
                                                  "POz", "O1",  "Oz",  "O2"};
  return kNames;
}

EegTrial select_channels(const EegTrial& trial, std::span<const std::string> names) {
  if (names.empty()) throw ArgumentError("no channels requested");
  std::unordered_set<std::string> requested;
  std::vector<int> rows;
  rows.reserve(names.size());
  for (const auto& name : names) {
    if (!requested.insert(name).second) {
      throw ArgumentError("channel requested twice: " + name);
    }
    const auto it = std::find(trial.channels.begin(), trial.channels.end(), name);
    if (it == trial.channels.end()) {
      throw ArgumentError("unknown channel: " + name);
    }
    rows.push_back(static_cast<int>(it - trial.channels.begin()));
  }
  EegTrial out;
  out.fs = trial.fs;
  out.char_index = trial.char_index;
  out.participant_id = trial.participant_id;
  out.block_index = trial.block_index;
  out.channels.assign(names.begin(), names.end());
  out.samples.resize(static_cast<Eigen::Index>(rows.size()), trial.samples.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out.samples.row(static_cast<Eigen::Index>(r)) = trial.samples.row(rows[r]);
  }
  return out;
}

SampleWindow sample_window(double fs, int n_total, double t_start, double duration) {
  if (!(t_start >= 0.0) || !(duration > 0.0)) {
    throw ArgumentError("crop window needs t_start >= 0 and duration > 0");
  }
  const auto start = static_cast<long>(std::lround(t_start * fs));
  const auto length = static_cast<long>(std::lround(duration * fs));
  if (length < 1 || start + length > n_total) {
    throw ArgumentError("crop window [" + std::to_string(start) + ", " +
                        std::to_string(start + length) + ") exceeds " +
                        std::to_string(n_total) + " samples");
  }
  return {static_cast<int>(start), static_cast<int>(length)};
}

EegTrial crop_trial(const EegTrial& trial, double t_start, double duration) {
  const SampleWindow w = sample_window(trial.fs, trial.n_samples(), t_start, duration);
  EegTrial out = trial;
  out.samples = trial.samples.middleCols(w.start, w.length);
  return out;
}

}  // namespace sfda
