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

#include "sfda/metrics.hpp"

#include <cmath>

#include "sfda/errors.hpp"

namespace sfda {

ItrValue itr_checked(double p, int m, double t_total) {
  if (!(p >= 0.0 && p <= 1.0)) throw ArgumentError("accuracy must lie in [0, 1]");
  if (m < 2) throw ArgumentError("ITR needs at least 2 classes");
  if (!(t_total > 0.0) || !std::isfinite(t_total)) throw ArgumentError("selection time must be positive");
  const double chance = 1.0 / m;
  if (p <= chance) return {0.0, p < chance};
  double bits = std::log2(static_cast<double>(m)) + p * std::log2(p);
  if (p < 1.0) bits += (1.0 - p) * std::log2((1.0 - p) / (m - 1));
  return {bits * 60.0 / t_total, false};
}

double accuracy(std::span<const int> predicted, std::span<const int> truth) {
  if (predicted.size() != truth.size()) throw ArgumentError("prediction and label counts differ");
  if (predicted.empty()) throw ArgumentError("no predictions to score");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i) hits += predicted[i] == truth[i] ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(predicted.size());
}

double mean(std::span<const double> values) {
  if (values.empty()) throw ArgumentError("mean of an empty set");
  double s = 0.0;
  for (const double v : values) s += v;
  return s / static_cast<double>(values.size());
}

double standard_error(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  const double mu = mean(values);
  double ss = 0.0;
  for (const double v : values) ss += (v - mu) * (v - mu);
  return std::sqrt(ss / static_cast<double>(n - 1)) / std::sqrt(static_cast<double>(n));
}

}  // namespace sfda
