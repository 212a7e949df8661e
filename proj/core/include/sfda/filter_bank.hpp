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

#ifndef SFDA_FILTER_BANK_HPP_
#define SFDA_FILTER_BANK_HPP_

#include <span>
#include <string>
#include <vector>

#include "sfda/trial.hpp"
#include "sfda/types.hpp"

namespace sfda {

enum class FilterDesign { kChebyshev1 };

std::string to_string(FilterDesign design);
FilterDesign filter_design_from_string(const std::string& name);

struct FilterBankConfig {
  std::vector<double> low_cutoffs{8.0, 16.0, 24.0};
  double high_cutoff = 90.0;
  /// Order of the low-pass prototype; the band-pass has twice as many poles.
  int filter_order = 4;
  double ripple_db = 1.0;
  FilterDesign design = FilterDesign::kChebyshev1;

  int n_subbands() const { return static_cast<int>(low_cutoffs.size()); }
  void validate(double fs) const;
};

/// Filter-bank expansion of a trial, [N_sb x C x N_s], stored contiguously.
struct SubBandTensor {
  int n_subbands = 0;
  int n_channels = 0;
  int n_samples = 0;
  double fs = 0.0;
  std::vector<double> data;

  SubBandTensor() = default;
  SubBandTensor(int subbands, int channels, int samples, double rate);

  double& at(int n, int c, int t) { return data[index(n, c, t)]; }
  double at(int n, int c, int t) const { return data[index(n, c, t)]; }

  Eigen::Map<MatrixD> band(int n) {
    return {data.data() + static_cast<std::size_t>(n) * n_channels * n_samples, n_channels, n_samples};
  }
  Eigen::Map<const MatrixD> band(int n) const {
    return {data.data() + static_cast<std::size_t>(n) * n_channels * n_samples, n_channels, n_samples};
  }

 private:
  std::size_t index(int n, int c, int t) const {
    return (static_cast<std::size_t>(n) * n_channels + c) * n_samples + t;
  }
};

/// Second-order section with a0 == 1.
struct Biquad {
  double b0 = 1.0, b1 = 0.0, b2 = 0.0;
  double a1 = 0.0, a2 = 0.0;
};

/// Digital Chebyshev type-I band-pass [low_hz, high_hz] as cascaded biquads
/// (bilinear transform with pre-warped band edges).
std::vector<Biquad> design_chebyshev1_bandpass(int order, double ripple_db, double low_hz,
                                               double high_hz, double fs);

/// Complex frequency response magnitude of a cascade at f_hz.
double sos_magnitude(std::span<const Biquad> sos, double f_hz, double fs);

/// Forward-backward filtering with odd extension and steady-state initial
/// conditions, so the output has no group delay.
std::vector<double> filtfilt(std::span<const Biquad> sos, std::span<const double> x);

/// Band n holds the trial filtered to [low_cutoffs[n], high_cutoff].
SubBandTensor filter_bank(const EegTrial& trial, const FilterBankConfig& cfg);

/// Time window of a sub-band tensor, same index arithmetic as crop_trial.
SubBandTensor crop_subbands(const SubBandTensor& x, double t_start, double duration);

}  // namespace sfda

#endif  // SFDA_FILTER_BANK_HPP_
