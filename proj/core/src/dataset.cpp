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

#include "sfda/dataset.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <unordered_set>

#include <nlohmann/json.hpp>
#include "sfda/errors.hpp"

namespace sfda {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

static_assert(sizeof(float) == 4);

std::uint32_t to_little_endian(std::uint32_t v) {
  if constexpr (std::endian::native == std::endian::big) {
    return ((v & 0xFFu) << 24) | ((v & 0xFF00u) << 8) | ((v >> 8) & 0xFF00u) | (v >> 24);
  }
  return v;
}

template <typename T>
T require(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw FormatError(where + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw FormatError(where + ": field '" + key + "' has wrong type (" + e.what() + ")");
  }
}

std::uintmax_t file_size_or_throw(const fs::path& path) {
  std::error_code ec;
  const auto size = fs::file_size(path, ec);
  if (ec) throw IoError("cannot stat trial file " + path.string() + ": " + ec.message());
  return size;
}

}  // namespace

bool ParticipantInfo::labeled() const {
  return !trials.empty() &&
         std::all_of(trials.begin(), trials.end(), [](const TrialRef& t) { return t.char_index.has_value(); });
}

void write_trial_file(const fs::path& path, const MatrixF& samples) {
  std::vector<std::uint32_t> words(static_cast<std::size_t>(samples.size()));
  for (Eigen::Index i = 0; i < samples.size(); ++i) {
    std::uint32_t w;
    std::memcpy(&w, samples.data() + i, sizeof w);
    words[static_cast<std::size_t>(i)] = to_little_endian(w);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(words.data()),
            static_cast<std::streamsize>(words.size() * sizeof(std::uint32_t)));
  if (!out) throw IoError("short write to " + path.string());
}

MatrixF read_trial_file(const fs::path& path, int n_channels, int n_samples) {
  const std::uintmax_t expected = 4ull * static_cast<std::uintmax_t>(n_channels) * n_samples;
  const std::uintmax_t actual = file_size_or_throw(path);
  if (actual != expected) {
    throw FormatError("trial file " + path.string() + " has " + std::to_string(actual) +
                      " bytes, expected " + std::to_string(expected));
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint32_t> words(static_cast<std::size_t>(n_channels) * n_samples);
  in.read(reinterpret_cast<char*>(words.data()), static_cast<std::streamsize>(expected));
  if (!in) throw IoError("short read from " + path.string());
  MatrixF m(n_channels, n_samples);
  for (std::size_t i = 0; i < words.size(); ++i) {
    const std::uint32_t w = to_little_endian(words[i]);
    std::memcpy(m.data() + i, &w, sizeof w);
  }
  return m;
}

Dataset Dataset::open(const fs::path& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw IoError("cannot open manifest " + manifest_path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError("manifest " + manifest_path.string() + " is not valid JSON: " + e.what());
  }
  const std::string where = manifest_path.string();
  if (!doc.is_object()) throw FormatError(where + ": manifest root must be an object");

  DatasetManifest m;
  m.format_version = require<int>(doc, "format_version", where);
  if (m.format_version != kManifestFormatVersion) {
    throw VersionError(where + ": unsupported format_version " + std::to_string(m.format_version));
  }
  m.fs = require<double>(doc, "fs", where);
  if (!(m.fs > 0.0)) throw FormatError(where + ": fs must be positive");
  m.data_dir = manifest_path.parent_path();

  const json& stim = doc.contains("stimulus") ? doc.at("stimulus") : json();
  if (!stim.is_object()) throw FormatError(where + ": missing object 'stimulus'");
  try {
    m.stimulus = StimulusTable(require<std::vector<double>>(stim, "frequencies", where),
                               require<std::vector<double>>(stim, "phases", where));
  } catch (const ArgumentError& e) {
    throw FormatError(where + ": invalid stimulus table: " + e.what());
  }

  if (!doc.contains("participants") || !doc.at("participants").is_array()) {
    throw FormatError(where + ": missing array 'participants'");
  }
  std::unordered_set<std::string> ids;
  for (const json& pj : doc.at("participants")) {
    ParticipantInfo p;
    p.id = require<std::string>(pj, "id", where);
    if (!ids.insert(p.id).second) throw FormatError(where + ": duplicate participant id " + p.id);
    const std::string pwhere = where + " participant " + p.id;
    p.blocks = require<int>(pj, "blocks", pwhere);
    p.channels = require<std::vector<std::string>>(pj, "channels", pwhere);
    if (p.channels.empty()) throw FormatError(pwhere + ": no channels");
    std::unordered_set<std::string> names(p.channels.begin(), p.channels.end());
    if (names.size() != p.channels.size()) throw FormatError(pwhere + ": channel names not unique");
    if (!pj.contains("trials") || !pj.at("trials").is_array()) {
      throw FormatError(pwhere + ": missing array 'trials'");
    }
    for (const json& tj : pj.at("trials")) {
      TrialRef t;
      t.block = require<int>(tj, "block", pwhere);
      if (tj.contains("char") && !tj.at("char").is_null()) {
        t.char_index = require<int>(tj, "char", pwhere);
        if (*t.char_index < 0 || *t.char_index >= m.stimulus.size()) {
          throw FormatError(pwhere + ": char " + std::to_string(*t.char_index) + " out of range");
        }
      }
      t.file = require<std::string>(tj, "file", pwhere);
      p.trials.push_back(std::move(t));
    }
    m.participants.push_back(std::move(p));
  }

  // n_samples is optional in the manifest; without it the first trial file fixes it.
  if (doc.contains("n_samples")) {
    m.n_samples = require<int>(doc, "n_samples", where);
    if (m.n_samples < 2) throw FormatError(where + ": n_samples must be >= 2");
  }
  for (const auto& p : m.participants) {
    const auto c = static_cast<std::uintmax_t>(p.channels.size());
    for (const auto& t : p.trials) {
      const fs::path file = m.data_dir / t.file;
      const std::uintmax_t size = file_size_or_throw(file);
      if (m.n_samples == 0) {
        if (size % (4 * c) != 0 || size / (4 * c) < 2) {
          throw FormatError("trial file " + file.string() + " size " + std::to_string(size) +
                            " is not a whole [" + std::to_string(c) + " x N] float32 matrix");
        }
        m.n_samples = static_cast<int>(size / (4 * c));
      } else if (size != 4 * c * static_cast<std::uintmax_t>(m.n_samples)) {
        throw FormatError("trial file " + file.string() + " has " + std::to_string(size) +
                          " bytes, expected " + std::to_string(4 * c * m.n_samples));
      }
    }
  }

  Dataset d;
  d.manifest_ = std::move(m);
  return d;
}

Dataset Dataset::from_memory(DatasetManifest manifest, std::vector<std::vector<EegTrial>> trials) {
  if (trials.size() != manifest.participants.size()) {
    throw ArgumentError("in-memory dataset: participant count mismatch");
  }
  for (std::size_t p = 0; p < trials.size(); ++p) {
    if (trials[p].size() != manifest.participants[p].trials.size()) {
      throw ArgumentError("in-memory dataset: trial count mismatch for " + manifest.participants[p].id);
    }
  }
  Dataset d;
  d.manifest_ = std::move(manifest);
  d.memory_ = std::move(trials);
  return d;
}

std::size_t Dataset::trial_count() const {
  std::size_t n = 0;
  for (const auto& p : manifest_.participants) n += p.trials.size();
  return n;
}

std::optional<std::size_t> Dataset::participant_index(std::string_view id) const {
  for (std::size_t p = 0; p < manifest_.participants.size(); ++p) {
    if (manifest_.participants[p].id == id) return p;
  }
  return std::nullopt;
}

EegTrial Dataset::trial(std::size_t participant, std::size_t index) const {
  const ParticipantInfo& info = manifest_.participants.at(participant);
  const TrialRef& ref = info.trials.at(index);
  if (!memory_.empty()) return memory_[participant][index];
  EegTrial t;
  t.samples = read_trial_file(manifest_.data_dir / ref.file, static_cast<int>(info.channels.size()),
                              manifest_.n_samples);
  t.fs = manifest_.fs;
  t.char_index = ref.char_index;
  t.participant_id = info.id;
  t.block_index = ref.block;
  t.channels = info.channels;
  return t;
}

EegTrial Dataset::find_trial(std::string_view participant_id, int block, int char_index) const {
  const auto p = participant_index(participant_id);
  if (!p) throw ArgumentError("unknown participant " + std::string(participant_id));
  const auto& trials = manifest_.participants[*p].trials;
  for (std::size_t i = 0; i < trials.size(); ++i) {
    if (trials[i].block == block && trials[i].char_index == char_index) return trial(*p, i);
  }
  throw ArgumentError("no trial for participant " + std::string(participant_id) + " block " +
                      std::to_string(block) + " char " + std::to_string(char_index));
}

std::vector<EegTrial> Dataset::participant_trials(std::size_t participant) const {
  std::vector<EegTrial> out;
  const std::size_t n = manifest_.participants.at(participant).trials.size();
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(trial(participant, i));
  return out;
}

fs::path write_dataset(const Dataset& dataset, const fs::path& out_dir) {
  const DatasetManifest& m = dataset.manifest();
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

  json doc;
  doc["format_version"] = m.format_version;
  doc["fs"] = m.fs;
  doc["n_samples"] = m.n_samples;
  doc["stimulus"] = {{"frequencies", m.stimulus.frequencies()}, {"phases", m.stimulus.phases()}};
  json parts = json::array();
  for (std::size_t p = 0; p < m.participants.size(); ++p) {
    const ParticipantInfo& info = m.participants[p];
    json trials = json::array();
    for (std::size_t i = 0; i < info.trials.size(); ++i) {
      const TrialRef& ref = info.trials[i];
      const fs::path file = out_dir / ref.file;
      fs::create_directories(file.parent_path(), ec);
      if (ec) throw IoError("cannot create " + file.parent_path().string());
      const EegTrial t = dataset.trial(p, i);
      if (t.n_samples() != m.n_samples) {
        throw ArgumentError("trial length differs from manifest n_samples");
      }
      write_trial_file(file, t.samples);
      json tj = {{"block", ref.block}, {"file", ref.file}};
      tj["char"] = ref.char_index ? json(*ref.char_index) : json(nullptr);
      trials.push_back(std::move(tj));
    }
    parts.push_back({{"id", info.id}, {"blocks", info.blocks}, {"channels", info.channels}, {"trials", trials}});
  }
  doc["participants"] = std::move(parts);

  const fs::path manifest_path = out_dir / "manifest.json";
  std::ofstream out(manifest_path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + manifest_path.string());
  out << doc.dump(1) << '\n';
  if (!out) throw IoError("short write to " + manifest_path.string());
  return manifest_path;
}

}  // namespace sfda
