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

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "sfda/errors.hpp"

namespace sfda {

namespace {

using cplx = std::complex<double>;

std::vector<double> sosfilt(std::span<const Biquad> sos, std::span<const double> x,
                            std::span<const std::array<double, 2>> zi, double zi_scale) {
  std::vector<double> y(x.begin(), x.end());
  for (std::size_t s = 0; s < sos.size(); ++s) {
    const Biquad& q = sos[s];
    double z0 = zi[s][0] * zi_scale;
    double z1 = zi[s][1] * zi_scale;
    for (double& v : y) {
      const double in = v;
      const double out = q.b0 * in + z0;
      z0 = q.b1 * in - q.a1 * out + z1;
      z1 = q.b2 * in - q.a2 * out;
      v = out;
    }
  }
  return y;
}

// Steady-state state vector of each section for a unit step input.
std::vector<std::array<double, 2>> sos_step_state(std::span<const Biquad> sos) {
  std::vector<std::array<double, 2>> zi(sos.size());
  double scale = 1.0;
  for (std::size_t s = 0; s < sos.size(); ++s) {
    const Biquad& q = sos[s];
    // Solve [[1+a1, -1], [a2, 1]] z = [b1 - a1*b0, b2 - a2*b0].
    const double r0 = q.b1 - q.a1 * q.b0;
    const double r1 = q.b2 - q.a2 * q.b0;
    const double det = (1.0 + q.a1) + q.a2;
    const double z0 = (r0 + r1) / det;
    const double z1 = r1 - q.a2 * z0;
    zi[s] = {scale * z0, scale * z1};
    scale *= (q.b0 + q.b1 + q.b2) / (1.0 + q.a1 + q.a2);
  }
  return zi;
}

}  // namespace

std::string to_string(FilterDesign design) {
  switch (design) {
    case FilterDesign::kChebyshev1:
      return "chebyshev1";
  }
  return "unknown";
}

FilterDesign filter_design_from_string(const std::string& name) {
  if (name == "chebyshev1") return FilterDesign::kChebyshev1;
  throw ArgumentError("unknown filter design '" + name + "'");
}

void FilterBankConfig::validate(double fs) const {
  if (low_cutoffs.empty()) throw ArgumentError("filter bank needs at least one sub-band");
  if (filter_order < 1) throw ArgumentError("filter order must be >= 1");
  if (!(ripple_db > 0.0)) throw ArgumentError("ripple must be positive");
  if (!(low_cutoffs.front() > 0.0)) throw ArgumentError("low cutoffs must be positive");
  for (std::size_t i = 1; i < low_cutoffs.size(); ++i) {
    if (!(low_cutoffs[i] > low_cutoffs[i - 1])) {
      throw ArgumentError("low cutoffs must be strictly increasing");
    }
  }
  if (!(low_cutoffs.back() < high_cutoff)) {
    throw ArgumentError("every low cutoff must lie below the high cutoff");
  }
  if (!(high_cutoff < fs / 2.0)) {
    throw ArgumentError("high cutoff " + std::to_string(high_cutoff) + " Hz is not below Nyquist (" +
                        std::to_string(fs / 2.0) + " Hz)");
  }
}

SubBandTensor::SubBandTensor(int subbands, int channels, int samples, double rate)
    : n_subbands(subbands),
      n_channels(channels),
      n_samples(samples),
      fs(rate),
      data(static_cast<std::size_t>(subbands) * channels * samples, 0.0) {}

std::vector<Biquad> design_chebyshev1_bandpass(int order, double ripple_db, double low_hz,
                                               double high_hz, double fs) {
  if (order < 1) throw ArgumentError("filter order must be >= 1");
  if (!(low_hz > 0.0 && low_hz < high_hz && high_hz < fs / 2.0)) {
    throw ArgumentError("band edges must satisfy 0 < low < high < fs/2");
  }
  const double pi = std::numbers::pi;
  const int n = order;

  // Analog low-pass prototype.
  const double eps = std::sqrt(std::pow(10.0, ripple_db / 10.0) - 1.0);
  const double mu = std::asinh(1.0 / eps) / n;
  std::vector<cplx> proto(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double theta = pi * (2 * i - n + 1) / (2.0 * n);
    proto[static_cast<std::size_t>(i)] = -std::sinh(cplx(mu, theta));
  }
  cplx kc = 1.0;
  for (const cplx& p : proto) kc *= -p;
  double k = kc.real();
  if (n % 2 == 0) k /= std::sqrt(1.0 + eps * eps);

  // Pre-warp edges (internal sample rate 2, normalized frequencies).
  const double fs_int = 2.0;
  const double w_lo = 2.0 * fs_int * std::tan(pi * (low_hz / (fs / 2.0)) / fs_int);
  const double w_hi = 2.0 * fs_int * std::tan(pi * (high_hz / (fs / 2.0)) / fs_int);
  const double bw = w_hi - w_lo;
  const double w0 = std::sqrt(w_lo * w_hi);

  // Low-pass to band-pass: n zeros at s=0, 2n poles.
  std::vector<cplx> poles;
  poles.reserve(static_cast<std::size_t>(2 * n));
  for (const cplx& p : proto) {
    const cplx half = p * bw / 2.0;
    const cplx root = std::sqrt(half * half - w0 * w0);
    poles.push_back(half + root);
    poles.push_back(half - root);
  }
  double k_bp = k * std::pow(bw, n);

  // Bilinear transform; zeros at s=0 map to z=1, zeros at infinity to z=-1.
  const double fs2 = 2.0 * fs_int;
  cplx num = std::pow(cplx(fs2), n);
  cplx den = 1.0;
  for (cplx& p : poles) {
    den *= (fs2 - p);
    p = (fs2 + p) / (fs2 - p);
  }
  const double k_z = k_bp * (num / den).real();

  // Pair each upper-half-plane pole with its conjugate; zeros {+1, -1} per section.
  std::vector<cplx> upper;
  for (const cplx& p : poles) {
    if (p.imag() > 0.0) upper.push_back(p);
  }
  if (static_cast<int>(upper.size()) != n) {
    throw NumericError("band-pass design produced real poles; widen the band");
  }
  std::sort(upper.begin(), upper.end(), [](const cplx& a, const cplx& b) { return std::abs(a) < std::abs(b); });
  std::vector<Biquad> sos;
  for (const cplx& p : upper) {
    Biquad q;
    q.b0 = 1.0;
    q.b1 = 0.0;
    q.b2 = -1.0;
    q.a1 = -2.0 * p.real();
    q.a2 = std::norm(p);
    sos.push_back(q);
  }
  sos.front().b0 *= k_z;
  sos.front().b1 *= k_z;
  sos.front().b2 *= k_z;
  return sos;
}

double sos_magnitude(std::span<const Biquad> sos, double f_hz, double fs) {
  const cplx z1 = std::polar(1.0, -2.0 * std::numbers::pi * f_hz / fs);
  const cplx z2 = z1 * z1;
  cplx h = 1.0;
  for (const Biquad& q : sos) {
    h *= (q.b0 + q.b1 * z1 + q.b2 * z2) / (1.0 + q.a1 * z1 + q.a2 * z2);
  }
  return std::abs(h);
}

std::vector<double> filtfilt(std::span<const Biquad> sos, std::span<const double> x) {
  const auto n = static_cast<int>(x.size());
  if (n < 2) throw ArgumentError("filtfilt needs at least 2 samples");
  int zero_b2 = 0;
  int zero_a2 = 0;
  for (const Biquad& q : sos) {
    zero_b2 += q.b2 == 0.0;
    zero_a2 += q.a2 == 0.0;
  }
  int pad = 3 * (2 * static_cast<int>(sos.size()) + 1) - std::min(zero_b2, zero_a2);
  pad = std::min(pad, n - 1);

  std::vector<double> ext(static_cast<std::size_t>(n + 2 * pad));
  for (int i = 0; i < pad; ++i) ext[static_cast<std::size_t>(i)] = 2.0 * x[0] - x[static_cast<std::size_t>(pad - i)];
  std::copy(x.begin(), x.end(), ext.begin() + pad);
  for (int i = 0; i < pad; ++i) {
    ext[static_cast<std::size_t>(pad + n + i)] = 2.0 * x[static_cast<std::size_t>(n - 1)] - x[static_cast<std::size_t>(n - 2 - i)];
  }

  const auto zi = sos_step_state(sos);
  std::vector<double> y = sosfilt(sos, ext, zi, ext.front());
  std::reverse(y.begin(), y.end());
  y = sosfilt(sos, y, zi, y.front());
  std::reverse(y.begin(), y.end());
  return {y.begin() + pad, y.begin() + pad + n};
}

SubBandTensor filter_bank(const EegTrial& trial, const FilterBankConfig& cfg) {
  trial.validate();
  cfg.validate(trial.fs);
  SubBandTensor out(cfg.n_subbands(), trial.n_channels(), trial.n_samples(), trial.fs);
  std::vector<double> row(static_cast<std::size_t>(trial.n_samples()));
  for (int band = 0; band < cfg.n_subbands(); ++band) {
    const auto sos = design_chebyshev1_bandpass(cfg.filter_order, cfg.ripple_db,
                                                cfg.low_cutoffs[static_cast<std::size_t>(band)],
                                                cfg.high_cutoff, trial.fs);
    for (int c = 0; c < trial.n_channels(); ++c) {
      for (int t = 0; t < trial.n_samples(); ++t) row[static_cast<std::size_t>(t)] = trial.samples(c, t);
      const std::vector<double> y = filtfilt(sos, row);
      for (int t = 0; t < trial.n_samples(); ++t) out.at(band, c, t) = y[static_cast<std::size_t>(t)];
    }
  }
  return out;
}

SubBandTensor crop_subbands(const SubBandTensor& x, double t_start, double duration) {
  const SampleWindow w = sample_window(x.fs, x.n_samples, t_start, duration);
  SubBandTensor out(x.n_subbands, x.n_channels, w.length, x.fs);
  for (int n = 0; n < x.n_subbands; ++n) {
    for (int c = 0; c < x.n_channels; ++c) {
      for (int t = 0; t < w.length; ++t) out.at(n, c, t) = x.at(n, c, w.start + t);
    }
  }
  return out;
}

}  // namespace sfda
