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

#ifndef SFDA_METRICS_HPP_
#define SFDA_METRICS_HPP_

#include <span>

namespace sfda {

struct ItrValue {
  double bits_per_min = 0.0;
  bool clamped = false;  // accuracy below chance, reported as 0
};

/// Information transfer rate in bits/min for accuracy p over m classes with
/// t_total seconds per selection, 0 log 0 taken as 0. Below-chance accuracy
/// is clamped to 0 and flagged.
ItrValue itr_checked(double p, int m, double t_total);
inline double itr(double p, int m, double t_total) { return itr_checked(p, m, t_total).bits_per_min; }

/// Fraction of positions where predicted equals truth.
double accuracy(std::span<const int> predicted, std::span<const int> truth);

double mean(std::span<const double> values);
/// Sample standard deviation over sqrt(n); 0 for fewer than 2 values.
double standard_error(std::span<const double> values);

}  // namespace sfda

#endif  // SFDA_METRICS_HPP_
