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

#ifndef SFDA_STATS_HPP_
#define SFDA_STATS_HPP_

#include <span>
#include <string>
#include <vector>

namespace sfda {

/// I_x(a, b) by Lentz's continued fraction.
double regularized_incomplete_beta(double a, double b, double x);

/// Student-t cumulative distribution with df degrees of freedom.
double student_t_cdf(double t, double df);

struct TTestResult {
  double t = 0.0;
  int df = 0;
  double p = 1.0;  // two-sided
};

/// Paired t-test on a - b. DegenerateStatisticsError when the differences
/// have zero variance.
TTestResult paired_t_test(std::span<const double> a, std::span<const double> b);

/// "**" below 0.05/n_total, "*" below 0.05/n_per_duration, else "".
std::string significance_label(double p, int n_per_duration = 3, int n_total = 15);
std::vector<std::string> significance_labels(std::span<const double> p_values, int n_per_duration = 3,
                                             int n_total = 15);

}  // namespace sfda

#endif  // SFDA_STATS_HPP_
