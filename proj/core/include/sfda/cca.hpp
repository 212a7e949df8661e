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

#ifndef SFDA_CCA_HPP_
#define SFDA_CCA_HPP_

#include <vector>

#include "sfda/filter_bank.hpp"
#include "sfda/trial.hpp"
#include "sfda/types.hpp"

namespace sfda {

struct CcaResult {
  double rho = 0.0;  // largest canonical correlation, in [0, 1]
  VectorD wx;        // channel weights [C]
  VectorD wy;        // reference weights [2H]
};

/// Relative ridge added to each covariance block: eps * trace / dim * I.
inline constexpr double kCcaRegularization = 1e-8;

/// Largest canonical correlation between the rows of x [C x N] and y [2H x N].
///
/// Rows are mean-removed, covariances regularized, both blocks whitened, and
/// the top eigenpair of the symmetric matrix T T^T (T the whitened
/// cross-covariance) gives rho^2 and the x-side direction. Sign convention:
/// the first nonzero entry of wx is positive. Throws NumericError when a
/// covariance block stays singular after regularization.
CcaResult cca_max(const MatrixD& x, const MatrixD& y);

struct FbccaConfig {
  FilterBankConfig bank;
  int n_harmonics = 5;
  double weight_a = 1.25;
  double weight_b = 0.25;

  void validate() const;
  /// w(n) = n^(-a) + b for n = 1..N_sb.
  std::vector<double> subband_weights() const;
};

struct Classification {
  int predicted = 0;
  std::vector<double> scores;  // one per class
};

/// Index of the largest score; ties go to the lowest index.
int argmax_lowest(const std::vector<double>& scores);

Classification standard_cca_classify(const EegTrial& trial, const StimulusTable& stimulus,
                                     int n_harmonics = 5);

/// Same as above on a raw [C x N] matrix sampled at fs.
Classification standard_cca_classify(const MatrixD& x, double fs, const StimulusTable& stimulus,
                                     int n_harmonics);

/// score_k = sum_n w(n) * rho_{n,k}^2 over the sub-bands of cfg.bank.
Classification fbcca_classify(const EegTrial& trial, const StimulusTable& stimulus, const FbccaConfig& cfg);

/// FBCCA on sub-bands that were already produced (and possibly cropped).
Classification fbcca_classify(const SubBandTensor& x, const StimulusTable& stimulus, const FbccaConfig& cfg);

}  // namespace sfda

#endif  // SFDA_CCA_HPP_
