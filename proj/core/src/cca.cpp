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

#include "sfda/cca.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "sfda/errors.hpp"
#include "sfda/signal_ops.hpp"

namespace sfda {

namespace {

using Eigen::MatrixXd;

MatrixXd regularized_covariance(const MatrixXd& centered, const char* which) {
  MatrixXd cov = centered * centered.transpose() / static_cast<double>(centered.cols() - 1);
  const double trace = cov.trace();
  if (!(trace > 0.0) || !std::isfinite(trace)) {
    throw NumericError(std::string("CCA: ") + which + " covariance is zero");
  }
  cov.diagonal().array() += kCcaRegularization * trace / static_cast<double>(cov.rows());
  return cov;
}

MatrixXd inverse_sqrt(const MatrixXd& cov, const char* which) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(cov);
  if (eig.info() != Eigen::Success) throw NumericError(std::string("CCA: eigensolver failed on ") + which);
  const Eigen::VectorXd& vals = eig.eigenvalues();
  const double floor = 1e-14 * vals.cwiseAbs().maxCoeff();
  if (!(vals.minCoeff() > floor)) {
    throw NumericError(std::string("CCA: ") + which + " covariance is rank deficient");
  }
  return eig.eigenvectors() * vals.cwiseSqrt().cwiseInverse().asDiagonal() * eig.eigenvectors().transpose();
}

}  // namespace

CcaResult cca_max(const MatrixD& x, const MatrixD& y) {
  if (x.cols() != y.cols()) throw ArgumentError("CCA inputs differ in sample count");
  if (x.rows() < 1 || y.rows() < 1) throw ArgumentError("CCA inputs need at least one row");
  if (x.cols() <= std::max(x.rows(), y.rows())) {
    throw ArgumentError("CCA needs more samples than rows in either input");
  }
  const MatrixXd xc = x.colwise() - x.rowwise().mean();
  const MatrixXd yc = y.colwise() - y.rowwise().mean();
  const double n1 = static_cast<double>(x.cols() - 1);
  const MatrixXd wx_half = inverse_sqrt(regularized_covariance(xc, "X"), "X");
  const MatrixXd wy_half = inverse_sqrt(regularized_covariance(yc, "Y"), "Y");
  const MatrixXd cxy = xc * yc.transpose() / n1;
  const MatrixXd t = wx_half * cxy * wy_half;

  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(t * t.transpose());
  if (eig.info() != Eigen::Success) throw NumericError("CCA: eigensolver failed");
  const Eigen::Index top = eig.eigenvalues().size() - 1;  // ascending order
  const double rho2 = std::max(0.0, eig.eigenvalues()[top]);
  const Eigen::VectorXd u = eig.eigenvectors().col(top);

  CcaResult r;
  r.rho = std::min(1.0, std::sqrt(rho2));
  r.wx = wx_half * u;
  if (r.rho > 0.0) {
    r.wy = wy_half * (t.transpose() * u) / r.rho;
  } else {
    r.wy = wy_half.col(0);
  }
  for (Eigen::Index i = 0; i < r.wx.size(); ++i) {
    if (r.wx[i] != 0.0) {
      if (r.wx[i] < 0.0) {
        r.wx = -r.wx;
        r.wy = -r.wy;
      }
      break;
    }
  }
  return r;
}

void FbccaConfig::validate() const {
  if (n_harmonics < 1) throw ArgumentError("FBCCA needs n_harmonics >= 1");
  if (!(weight_a > 0.0)) throw ArgumentError("FBCCA weight_a must be positive");
  if (!std::isfinite(weight_b)) throw ArgumentError("FBCCA weight_b must be finite");
}

std::vector<double> FbccaConfig::subband_weights() const {
  std::vector<double> w(static_cast<std::size_t>(bank.n_subbands()));
  for (std::size_t n = 0; n < w.size(); ++n) {
    w[n] = std::pow(static_cast<double>(n + 1), -weight_a) + weight_b;
  }
  return w;
}

int argmax_lowest(const std::vector<double>& scores) {
  if (scores.empty()) throw ArgumentError("argmax of empty score vector");
  int best = 0;
  for (std::size_t k = 1; k < scores.size(); ++k) {
    if (scores[k] > scores[static_cast<std::size_t>(best)]) best = static_cast<int>(k);
  }
  return best;
}

Classification standard_cca_classify(const MatrixD& x, double fs, const StimulusTable& stimulus,
                                     int n_harmonics) {
  Classification c;
  c.scores.resize(static_cast<std::size_t>(stimulus.size()));
  for (int k = 0; k < stimulus.size(); ++k) {
    const MatrixD ref = reference_signals(stimulus.frequency(k), n_harmonics, static_cast<int>(x.cols()), fs);
    c.scores[static_cast<std::size_t>(k)] = cca_max(x, ref).rho;
  }
  c.predicted = argmax_lowest(c.scores);
  return c;
}

Classification standard_cca_classify(const EegTrial& trial, const StimulusTable& stimulus, int n_harmonics) {
  trial.validate();
  return standard_cca_classify(trial.samples.cast<double>(), trial.fs, stimulus, n_harmonics);
}

Classification fbcca_classify(const SubBandTensor& x, const StimulusTable& stimulus, const FbccaConfig& cfg) {
  cfg.validate();
  if (x.n_subbands != cfg.bank.n_subbands()) {
    throw ArgumentError("sub-band tensor has " + std::to_string(x.n_subbands) + " bands, config has " +
                        std::to_string(cfg.bank.n_subbands()));
  }
  const std::vector<double> w = cfg.subband_weights();
  Classification c;
  c.scores.assign(static_cast<std::size_t>(stimulus.size()), 0.0);
  for (int k = 0; k < stimulus.size(); ++k) {
    const MatrixD ref = reference_signals(stimulus.frequency(k), cfg.n_harmonics, x.n_samples, x.fs);
    double score = 0.0;
    for (int n = 0; n < x.n_subbands; ++n) {
      const double rho = cca_max(MatrixD(x.band(n)), ref).rho;
      score += w[static_cast<std::size_t>(n)] * rho * rho;
    }
    c.scores[static_cast<std::size_t>(k)] = score;
  }
  c.predicted = argmax_lowest(c.scores);
  return c;
}

Classification fbcca_classify(const EegTrial& trial, const StimulusTable& stimulus, const FbccaConfig& cfg) {
  return fbcca_classify(filter_bank(trial, cfg.bank), stimulus, cfg);
}

}  // namespace sfda
