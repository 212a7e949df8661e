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

#include "sfda/signal_ops.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sfda/errors.hpp"

namespace sfda {

MatrixD reference_signals(double f, int n_harmonics, int n_samples, double fs) {
  if (n_harmonics < 1) throw ArgumentError("need at least one harmonic");
  if (n_samples < 1) throw ArgumentError("reference length must be positive");
  if (!(f > 0.0) || !(fs > 0.0)) throw ArgumentError("frequencies must be positive");
  if (!(f * n_harmonics < fs / 2.0)) {
    throw ArgumentError("harmonic " + std::to_string(n_harmonics) + " of " + std::to_string(f) +
                        " Hz is not below Nyquist");
  }
  MatrixD y(2 * n_harmonics, n_samples);
  for (int h = 1; h <= n_harmonics; ++h) {
    for (int k = 0; k < n_samples; ++k) {
      const double arg = 2.0 * std::numbers::pi * h * f * (k / fs);
      y(2 * (h - 1), k) = std::sin(arg);
      y(2 * (h - 1) + 1, k) = std::cos(arg);
    }
  }
  return y;
}

VectorD combine_channels(const MatrixD& x, const ChannelCombination& w) {
  if (w.weights.size() != x.rows()) {
    throw ArgumentError("channel combination has " + std::to_string(w.weights.size()) +
                        " weights for " + std::to_string(x.rows()) + " channels");
  }
  return x.transpose() * w.weights;
}

VectorD standardize(const VectorD& v) {
  if (v.size() < 2) throw DegenerateInputError("correlation needs at least 2 samples");
  VectorD c = v.array() - v.mean();
  const double norm = c.norm();
  // Relative threshold: constant signals leave only rounding residue.
  const double scale = v.cwiseAbs().maxCoeff();
  if (!(norm > 1e-12 * scale * std::sqrt(static_cast<double>(v.size()))) || norm == 0.0) {
    throw DegenerateInputError("signal has zero variance");
  }
  return c / norm;
}

double correlation(const VectorD& a, const VectorD& b) {
  if (a.size() != b.size()) throw ArgumentError("correlation inputs differ in length");
  const double r = standardize(a).dot(standardize(b));
  return std::clamp(r, -1.0, 1.0);
}

double distance(const VectorD& a, const VectorD& b) { return 1.0 - correlation(a, b); }

}  // namespace sfda
