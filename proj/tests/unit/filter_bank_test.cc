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

#include "sfda/filter_bank.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "sfda/errors.hpp"

namespace sfda {
namespace {

// Frozen from scipy.signal 1.15: cheby1(4, 1, [low, 90], btype="band",
// fs=250, output="sos"), freqz magnitudes and sosfiltfilt of
// x[n] = sin(0.3 n) + 0.5 cos(1.7 n) + (n % 7) / 7, n < 120.
struct ScipyCase {
  double low;
  std::array<double, 6> magnitude;  // at 5, 8, 12, 40, 90, 110 Hz
  std::array<double, 7> output;     // at indices 0, 1, 17, 59, 60, 118, 119
  double sum;
  double sum_sq;
};

constexpr std::array<double, 6> kProbeHz{5.0, 8.0, 12.0, 40.0, 90.0, 110.0};
constexpr std::array<int, 7> kProbeIndex{0, 1, 17, 59, 60, 118, 119};

const ScipyCase kScipy[] = {
    {8.0, {0.050631448712034219, 0.89125093813374867, 0.90966156313383251, 0.90024571910337059, 0.8912509381337459, 0.006618761964288458}, {-0.0042238714384268961, -0.15176145772865471, -1.1685815209699657, -0.21682224093429447, -0.46363826999857349, 0.96467115418797411, 0.065367060869124666}, 5.043777483514857, 61.363697460153098},
    {16.0, {0.0016776460511238945, 0.013610454397802254, 0.11932718839441392, 0.9128466209716255, 0.89125093813374689, 0.0054683512600362501}, {0.016530314399473639, -0.37175437267457195, -0.41450502752118062, 0.48288490860544225, 0.1129654608954498, 0.8648765668992956, 0.016094486976978239}, 0.0024658489930338146, 22.647580840312116},
    {24.0, {0.00023044196095600781, 0.0016644321344021155, 0.010466821815720983, 0.99875217800781801, 0.89125093813374534, 0.0044311342758817044}, {-0.0087741988330970883, -0.40177920878026419, -0.39680817264638901, 0.4758480610957565, 0.11595169507408501, 0.88391716258254194, 0.028237877346708851}, 0.13512899010767754, 22.534166791393908},
};

std::vector<double> probe_signal() {
  std::vector<double> x(120);
  for (int n = 0; n < 120; ++n) x[n] = std::sin(0.3 * n) + 0.5 * std::cos(1.7 * n) + (n % 7) / 7.0;
  return x;
}

TEST(FilterBankTest, MagnitudeMatchesScipy) {
  for (const auto& c : kScipy) {
    const auto sos = design_chebyshev1_bandpass(4, 1.0, c.low, 90.0, 250.0);
    EXPECT_EQ(sos.size(), 4u);
    for (std::size_t i = 0; i < kProbeHz.size(); ++i) {
      EXPECT_NEAR(sos_magnitude(sos, kProbeHz[i], 250.0), c.magnitude[i], 1e-9)
          << "low " << c.low << " at " << kProbeHz[i] << " Hz";
    }
  }
}

TEST(FilterBankTest, ZeroPhaseOutputMatchesScipy) {
  const auto x = probe_signal();
  for (const auto& c : kScipy) {
    const auto sos = design_chebyshev1_bandpass(4, 1.0, c.low, 90.0, 250.0);
    const auto y = filtfilt(sos, x);
    ASSERT_EQ(y.size(), x.size());
    for (std::size_t i = 0; i < kProbeIndex.size(); ++i) {
      EXPECT_NEAR(y[kProbeIndex[i]], c.output[i], 1e-8) << "low " << c.low << " index " << kProbeIndex[i];
    }
    double s = 0.0, s2 = 0.0;
    for (double v : y) {
      s += v;
      s2 += v * v;
    }
    EXPECT_NEAR(s, c.sum, 1e-7);
    EXPECT_NEAR(s2, c.sum_sq, 1e-7);
  }
}

TEST(FilterBankTest, PassbandSinusoidKeepsPhase) {
  const auto sos = design_chebyshev1_bandpass(4, 1.0, 8.0, 90.0, 250.0);
  std::vector<double> x(500);
  for (int n = 0; n < 500; ++n) x[n] = std::sin(2.0 * std::numbers::pi * 30.0 * n / 250.0);
  const auto y = filtfilt(sos, x);
  const double gain = std::pow(sos_magnitude(sos, 30.0, 250.0), 2);
  for (int n = 200; n < 300; ++n) EXPECT_NEAR(y[n], gain * x[n], 1e-3);
}

TEST(FilterBankTest, TensorShapeAndBands) {
  EegTrial t;
  t.fs = 250.0;
  t.channels = {"A", "B"};
  t.samples = MatrixF(2, 120);
  const auto x = probe_signal();
  for (int n = 0; n < 120; ++n) {
    t.samples(0, n) = static_cast<float>(x[n]);
    t.samples(1, n) = static_cast<float>(-2.0 * x[n]);
  }
  const SubBandTensor b = filter_bank(t, FilterBankConfig{});
  EXPECT_EQ(b.n_subbands, 3);
  EXPECT_EQ(b.n_channels, 2);
  EXPECT_EQ(b.n_samples, 120);
  for (int band = 0; band < 3; ++band) {
    for (int i = 0; i < 7; ++i) {
      EXPECT_NEAR(b.at(band, 0, kProbeIndex[i]), kScipy[band].output[i], 1e-6);
      EXPECT_NEAR(b.at(band, 1, kProbeIndex[i]), -2.0 * kScipy[band].output[i], 2e-6);
    }
  }
  const SubBandTensor c = crop_subbands(b, 0.04, 0.2);
  EXPECT_EQ(c.n_samples, 50);
  EXPECT_EQ(c.at(2, 1, 0), b.at(2, 1, 10));
}

TEST(FilterBankTest, ConfigValidation) {
  FilterBankConfig cfg;
  EXPECT_THROW(cfg.validate(150.0), ArgumentError);  // 90 Hz above Nyquist
  cfg.validate(250.0);
  cfg.low_cutoffs = {16.0, 8.0};
  EXPECT_THROW(cfg.validate(250.0), ArgumentError);
  cfg = FilterBankConfig{};
  cfg.low_cutoffs.clear();
  EXPECT_THROW(cfg.validate(250.0), ArgumentError);
  EXPECT_EQ(filter_design_from_string(to_string(FilterDesign::kChebyshev1)), FilterDesign::kChebyshev1);
}

}  // namespace
}  // namespace sfda
