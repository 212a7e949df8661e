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

#ifndef SFDA_SIGNAL_OPS_HPP_
#define SFDA_SIGNAL_OPS_HPP_

#include "sfda/types.hpp"

namespace sfda {

/// Linear spatial filter collapsing C channels to one signal.
struct ChannelCombination {
  VectorD weights;

  int size() const { return static_cast<int>(weights.size()); }
};

/// Rows sin(2*pi*h*f*t), cos(2*pi*h*f*t) for h = 1..n_harmonics, t = k/fs.
MatrixD reference_signals(double f, int n_harmonics, int n_samples, double fs);

/// w^T x for x of shape [C x N_s].
VectorD combine_channels(const MatrixD& x, const ChannelCombination& w);

/// Pearson correlation. Throws DegenerateInputError on zero variance.
double correlation(const VectorD& a, const VectorD& b);

/// 1 - correlation(a, b), in [0, 2].
double distance(const VectorD& a, const VectorD& b);

/// Mean-removed, unit-norm copy of v; the dot product of two such vectors is
/// their correlation. Throws DegenerateInputError on zero variance.
VectorD standardize(const VectorD& v);

}  // namespace sfda

#endif  // SFDA_SIGNAL_OPS_HPP_
