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

#ifndef SFDA_TESTS_SUPPORT_ORACLES_HPP_
#define SFDA_TESTS_SUPPORT_ORACLES_HPP_

// Reference implementations used only by the tests. They share no code with
// the library beyond the plain data types.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sfda/filter_bank.hpp"
#include "sfda/network.hpp"
#include "sfda/rng.hpp"
#include "sfda/types.hpp"

namespace sfda_test {

using sfda::MatrixD;
using sfda::VectorD;

inline double pearson(const VectorD& a, const VectorD& b) {
  const double ma = a.mean();
  const double mb = b.mean();
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (Eigen::Index n = 0; n < a.size(); ++n) {
    sab += (a[n] - ma) * (b[n] - mb);
    saa += (a[n] - ma) * (a[n] - ma);
    sbb += (b[n] - mb) * (b[n] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

// Largest canonical correlation by alternating least squares. Each half-step
// regresses one side's projection on the other's rows.
inline double als_cca(const MatrixD& x, const MatrixD& y, int iterations = 2000) {
  MatrixD xc = x.colwise() - x.rowwise().mean();
  MatrixD yc = y.colwise() - y.rowwise().mean();
  const Eigen::ColPivHouseholderQR<MatrixD> qx(xc.transpose());
  const Eigen::ColPivHouseholderQR<MatrixD> qy(yc.transpose());
  double best = 0.0;
  for (int start = 0; start < 4; ++start) {
    sfda::SplitMix64 rng(0xCCA0 + static_cast<std::uint64_t>(start));
    VectorD wy(yc.rows());
    for (auto& v : wy) v = rng.normal();
    double rho = 0.0;
    for (int it = 0; it < iterations; ++it) {
      VectorD v = yc.transpose() * wy;
      VectorD wx = qx.solve(v);
      VectorD u = xc.transpose() * wx;
      wy = qy.solve(u);
      wy /= wy.norm();
      const double next = pearson(u, yc.transpose() * wy);
      if (std::abs(next - rho) < 1e-15) {
        rho = next;
        break;
      }
      rho = next;
    }
    best = std::max(best, std::abs(rho));
  }
  return best;
}

// Silhouette straight from the definition, distances recomputed per pair.
struct BruteSilhouette {
  std::vector<double> m;
  double overall = 0.0;
};

inline BruteSilhouette brute_silhouette(const std::vector<VectorD>& v, const std::vector<int>& labels,
                                        int n_classes) {
  const int n = static_cast<int>(v.size());
  std::vector<int> size(static_cast<std::size_t>(n_classes), 0);
  for (int l : labels) ++size[static_cast<std::size_t>(l)];
  int nonempty = 0;
  for (int q : size) nonempty += q > 0 ? 1 : 0;
  BruteSilhouette out;
  out.m.assign(static_cast<std::size_t>(n), 0.0);
  if (nonempty < 2) return out;
  for (int i = 0; i < n; ++i) {
    const int li = labels[static_cast<std::size_t>(i)];
    double a = 1.0;
    if (size[static_cast<std::size_t>(li)] > 1) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j != i && labels[static_cast<std::size_t>(j)] == li) s += 1.0 - pearson(v[i], v[j]);
      }
      a = s / (size[static_cast<std::size_t>(li)] - 1);
    }
    double b = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n_classes; ++k) {
      if (k == li || size[static_cast<std::size_t>(k)] == 0) continue;
      double s = 0.0;
      for (int j = 0; j < n; ++j) {
        if (labels[static_cast<std::size_t>(j)] == k) s += 1.0 - pearson(v[i], v[j]);
      }
      b = std::min(b, s / size[static_cast<std::size_t>(k)]);
    }
    const double den = std::max(a, b);
    out.m[static_cast<std::size_t>(i)] = den == 0.0 ? 0.0 : (b - a) / den;
  }
  out.overall = std::accumulate(out.m.begin(), out.m.end(), 0.0) / n;
  return out;
}

// Neighbor count by scanning every admissible k in turn.
inline int naive_neighbor_count(const std::vector<double>& correlations, double delta, int k_max) {
  std::vector<double> r = correlations;
  std::sort(r.begin(), r.end(), std::greater<>());
  const int len = static_cast<int>(r.size());
  const int cap = std::clamp(k_max, 1, len);
  for (int k = 1; k < len; ++k) {
    const double cur = r[static_cast<std::size_t>(k - 1)];
    const double drop = cur - r[static_cast<std::size_t>(k)];
    const bool hit = cur == 0.0 ? drop > 0.0 : drop / std::abs(cur) >= delta;
    if (hit) return k <= cap ? k : cap;
  }
  return cap;
}

inline sfda::Architecture small_arch() {
  sfda::Architecture a;
  a.n_subbands = 2;
  a.n_channels = 3;
  a.n_samples = 24;
  a.n_classes = 4;
  a.n_filters = 3;
  a.kernel1 = 2;
  a.stride1 = 2;
  a.kernel2 = 4;
  return a;
}

inline std::vector<double> random_weights(const sfda::Architecture& arch, std::uint64_t seed, double scale = 0.5) {
  sfda::SplitMix64 rng(seed);
  std::vector<double> w(sfda::parameter_count(arch));
  for (auto& v : w) v = scale * rng.normal();
  return w;
}

inline std::vector<sfda::SubBandTensor> random_inputs(const sfda::Architecture& arch, int n, std::uint64_t seed) {
  sfda::SplitMix64 rng(seed);
  std::vector<sfda::SubBandTensor> xs;
  for (int i = 0; i < n; ++i) {
    sfda::SubBandTensor x(arch.n_subbands, arch.n_channels, arch.n_samples, 250.0);
    for (auto& v : x.data) v = rng.normal();
    xs.push_back(std::move(x));
  }
  return xs;
}

// Central-difference check of one coordinate. A second difference at h/2
// flags ReLU kinks inside the stencil; such coordinates report kink = true.
// noise bounds the rounding error of the difference quotients; 1e4 * noise
// floors the relative-error denominator.
struct FdProbe {
  double numeric = 0.0;
  double noise = 0.0;
  bool kink = false;

  double floor() const { return 1e4 * noise; }
};

inline FdProbe central_difference(const std::function<double(std::span<const double>)>& f,
                                  std::vector<double> w, std::size_t coord, double h) {
  const double w0 = w[coord];
  auto at = [&](double step) {
    w[coord] = w0 + step;
    const double v = f(w);
    w[coord] = w0;
    return v;
  };
  const double fp = at(h), fm = at(-h), fp2 = at(h / 2), fm2 = at(-h / 2);
  const double d1 = (fp - fm) / (2.0 * h);
  const double d2 = (fp2 - fm2) / h;
  FdProbe p;
  p.numeric = d1;
  p.noise = std::numeric_limits<double>::epsilon() * std::max({std::abs(fp), std::abs(fm), std::abs(fp2), std::abs(fm2)}) / h;
  p.kink = std::abs(d1 - d2) > 2e-5 * std::max({std::abs(d1), std::abs(d2), p.floor()});
  return p;
}

// |analytic - numeric| / max(|analytic|, |numeric|, 1e4 * noise).
inline double relative_error(double analytic, const FdProbe& p) {
  const double scale = std::max({std::abs(analytic), std::abs(p.numeric), p.floor()});
  return std::abs(analytic - p.numeric) / scale;
}

}  // namespace sfda_test

#endif  // SFDA_TESTS_SUPPORT_ORACLES_HPP_
