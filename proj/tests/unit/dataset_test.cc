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

#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "sfda/errors.hpp"
#include "sfda/synth.hpp"

namespace sfda {
namespace {

namespace fs = std::filesystem;

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("sfda_dataset_test_" + name);
  fs::remove_all(dir);
  return dir;
}

SynthConfig tiny_synth() {
  SynthConfig cfg;
  cfg.n_participants = 2;
  cfg.n_blocks = 1;
  cfg.seed = 5;
  return cfg;
}

TEST(DatasetTest, CountsTrials) {
  const Dataset ds = synth_dataset(tiny_synth(), StimulusTable::benchmark40(), 250.0, 0.4);
  EXPECT_EQ(ds.participant_count(), 2u);
  EXPECT_EQ(ds.trial_count(), 80u);
  const fs::path dir = scratch_dir("count");
  const Dataset loaded = Dataset::open(write_dataset(ds, dir));
  EXPECT_EQ(loaded.trial_count(), 80u);
  for (int k = 0; k < 40; ++k) EXPECT_EQ(loaded.find_trial("S02", 0, k).char_index, k);
  fs::remove_all(dir);
}

TEST(DatasetTest, RoundTripIsBitExact) {
  const Dataset ds = synth_dataset(tiny_synth(), StimulusTable::benchmark40(), 250.0, 0.4);
  const fs::path dir = scratch_dir("roundtrip");
  const Dataset loaded = Dataset::open(write_dataset(ds, dir));
  ASSERT_EQ(loaded.trial_count(), ds.trial_count());
  for (std::size_t p = 0; p < ds.participant_count(); ++p) {
    for (std::size_t i = 0; i < ds.participant(p).trials.size(); ++i) {
      const EegTrial a = ds.trial(p, i);
      const EegTrial b = loaded.trial(p, i);
      ASSERT_EQ(a.samples.size(), b.samples.size());
      ASSERT_EQ(0, std::memcmp(a.samples.data(), b.samples.data(), sizeof(float) * a.samples.size()));
      EXPECT_EQ(a.char_index, b.char_index);
      EXPECT_EQ(a.block_index, b.block_index);
    }
  }
  EXPECT_EQ(loaded.manifest().stimulus.frequencies(), ds.manifest().stimulus.frequencies());
  fs::remove_all(dir);
}

TEST(DatasetTest, TruncatedFileNamesTheFile) {
  const Dataset ds = synth_dataset(tiny_synth(), StimulusTable::benchmark40(), 250.0, 0.4);
  const fs::path dir = scratch_dir("truncated");
  const fs::path manifest = write_dataset(ds, dir);
  const fs::path victim = dir / ds.participant(1).trials[3].file;
  fs::resize_file(victim, fs::file_size(victim) - 4);
  try {
    Dataset::open(manifest);
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find(victim.filename().string()), std::string::npos) << e.what();
  }
  fs::remove_all(dir);
}

TEST(DatasetTest, UnknownVersionRejected) {
  const Dataset ds = synth_dataset(tiny_synth(), StimulusTable::benchmark40(), 250.0, 0.4);
  const fs::path dir = scratch_dir("version");
  const fs::path manifest = write_dataset(ds, dir);
  nlohmann::json doc;
  std::ifstream(manifest) >> doc;
  doc["format_version"] = 7;
  std::ofstream(manifest) << doc.dump();
  EXPECT_THROW(Dataset::open(manifest), VersionError);
  fs::remove_all(dir);
}

TEST(DatasetTest, MissingManifestIsIoError) {
  EXPECT_THROW(Dataset::open("/nonexistent/sfda/manifest.json"), IoError);
}

TEST(DatasetTest, ManifestFieldNames) {
  const Dataset ds = synth_dataset(tiny_synth(), StimulusTable::benchmark40(), 250.0, 0.4);
  const fs::path dir = scratch_dir("schema");
  const fs::path manifest = write_dataset(ds, dir);
  nlohmann::json doc;
  std::ifstream(manifest) >> doc;
  EXPECT_EQ(doc.at("format_version"), 1);
  EXPECT_EQ(doc.at("fs"), 250.0);
  EXPECT_EQ(doc.at("stimulus").at("frequencies").size(), 40u);
  EXPECT_EQ(doc.at("stimulus").at("phases").size(), 40u);
  const auto& p0 = doc.at("participants").at(0);
  EXPECT_EQ(p0.at("id"), "S01");
  EXPECT_EQ(p0.at("blocks"), 1);
  EXPECT_EQ(p0.at("channels").size(), 9u);
  const auto& t0 = p0.at("trials").at(0);
  EXPECT_TRUE(t0.contains("block"));
  EXPECT_TRUE(t0.contains("char"));
  EXPECT_EQ(fs::path(t0.at("file").get<std::string>()).extension(), ".f32");
  fs::remove_all(dir);
}

TEST(TrialTest, SelectChannelsReorders) {
  EegTrial t;
  t.fs = 250.0;
  t.channels = {"A", "B", "C"};
  t.samples = MatrixF(3, 4);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 4; ++c) t.samples(r, c) = static_cast<float>(10 * r + c);
  const std::vector<std::string> names{"C", "A"};
  const EegTrial s = select_channels(t, names);
  ASSERT_EQ(s.n_channels(), 2);
  EXPECT_EQ(s.channels, names);
  EXPECT_EQ(s.samples(0, 2), 22.0f);
  EXPECT_EQ(s.samples(1, 3), 3.0f);
  const std::vector<std::string> bad{"Z"};
  EXPECT_THROW(select_channels(t, bad), ArgumentError);
}

TEST(TrialTest, CropWindow) {
  EegTrial t;
  t.fs = 250.0;
  t.channels = {"A"};
  t.samples = MatrixF::Zero(1, 250);
  for (int n = 0; n < 250; ++n) t.samples(0, n) = static_cast<float>(n);
  const EegTrial c = crop_trial(t, 0.14, 0.2);
  EXPECT_EQ(c.n_samples(), 50);
  EXPECT_EQ(c.samples(0, 0), 35.0f);
  EXPECT_THROW(crop_trial(t, 0.14, 1.0), ArgumentError);
}

TEST(TrialTest, Benchmark40Table) {
  const StimulusTable s = StimulusTable::benchmark40();
  ASSERT_EQ(s.size(), 40);
  EXPECT_DOUBLE_EQ(s.frequency(0), 8.0);
  EXPECT_NEAR(s.frequency(39), 15.8, 1e-12);
  for (int k = 0; k < 40; ++k) {
    EXPECT_GE(s.phase(k), 0.0);
    EXPECT_LT(s.phase(k), 2.0 * 3.14159265358979);
  }
}

TEST(TrialTest, ValidateRejectsBadTrials) {
  EegTrial t;
  t.fs = 250.0;
  t.channels = {"A"};
  t.samples = MatrixF::Zero(1, 1);
  EXPECT_THROW(t.validate(), ArgumentError);
  t.samples = MatrixF::Zero(1, 4);
  t.validate();
  t.char_index = 40;
  EXPECT_THROW(t.validate(40), ArgumentError);
  t.char_index = 3;
  t.samples(0, 1) = std::numeric_limits<float>::quiet_NaN();
  EXPECT_THROW(t.validate(40), ArgumentError);
}

}  // namespace
}  // namespace sfda
