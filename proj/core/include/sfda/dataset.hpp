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

#ifndef SFDA_DATASET_HPP_
#define SFDA_DATASET_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sfda/trial.hpp"

namespace sfda {

inline constexpr int kManifestFormatVersion = 1;

struct TrialRef {
  int block = 0;
  std::optional<int> char_index;  // absent for unlabeled recordings
  std::string file;               // relative to the manifest directory
};

struct ParticipantInfo {
  std::string id;
  int blocks = 0;
  std::vector<std::string> channels;
  std::vector<TrialRef> trials;

  bool labeled() const;
};

struct DatasetManifest {
  int format_version = kManifestFormatVersion;
  double fs = 0.0;
  int n_samples = 0;  // samples per trial file, shared by the whole set
  StimulusTable stimulus;
  std::vector<ParticipantInfo> participants;
  std::filesystem::path data_dir;
};

/// A dataset whose trials are either read lazily from disk or held in memory.
///
/// Disk layout: one JSON manifest plus one ".f32" file per trial holding
/// little-endian float32 samples in row-major [C][N_T] order.
class Dataset {
 public:
  /// Parses and validates the manifest. Every referenced trial file must
  /// exist with length 4*C*N_T. Throws IoError, FormatError or VersionError.
  static Dataset open(const std::filesystem::path& manifest_path);

  /// Wraps trials already in memory; trials[p] follows manifest.participants[p].trials.
  static Dataset from_memory(DatasetManifest manifest, std::vector<std::vector<EegTrial>> trials);

  const DatasetManifest& manifest() const { return manifest_; }
  std::size_t participant_count() const { return manifest_.participants.size(); }
  std::size_t trial_count() const;

  std::optional<std::size_t> participant_index(std::string_view id) const;
  const ParticipantInfo& participant(std::size_t p) const { return manifest_.participants.at(p); }

  EegTrial trial(std::size_t participant, std::size_t index) const;
  EegTrial find_trial(std::string_view participant_id, int block, int char_index) const;
  std::vector<EegTrial> participant_trials(std::size_t participant) const;

 private:
  DatasetManifest manifest_;
  std::vector<std::vector<EegTrial>> memory_;
};

/// Equivalent to Dataset::open; named for symmetry with write_dataset.
inline Dataset load_dataset(const std::filesystem::path& manifest_path) {
  return Dataset::open(manifest_path);
}

/// Writes manifest.json plus trial binaries under out_dir and returns the
/// manifest path. File names come from the manifest's TrialRef entries.
std::filesystem::path write_dataset(const Dataset& dataset, const std::filesystem::path& out_dir);

/// Raw trial binary helpers (little-endian float32, row-major).
void write_trial_file(const std::filesystem::path& path, const MatrixF& samples);
MatrixF read_trial_file(const std::filesystem::path& path, int n_channels, int n_samples);

}  // namespace sfda

#endif  // SFDA_DATASET_HPP_
