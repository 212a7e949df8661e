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

#include "sfda/stats.hpp"

#include <cmath>
#include <vector>

#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <gtest/gtest.h>

#include "sfda/errors.hpp"
#include "sfda/rng.hpp"

namespace sfda {
namespace {

TEST(IncompleteBetaTest, MatchesBoost) {
  SplitMix64 rng(4);
  for (int i = 0; i < 300; ++i) {
    const double a = rng.uniform(0.2, 40.0);
    const double b = rng.uniform(0.2, 40.0);
    const double x = rng.uniform();
    EXPECT_NEAR(regularized_incomplete_beta(a, b, x), boost::math::ibeta(a, b, x), 1e-10)
        << a << " " << b << " " << x;
  }
  EXPECT_EQ(regularized_incomplete_beta(2.0, 3.0, 0.0), 0.0);
  EXPECT_EQ(regularized_incomplete_beta(2.0, 3.0, 1.0), 1.0);
}

TEST(StudentTTest, CdfMatchesBoost) {
  for (double df : {1.0, 2.0, 4.0, 6.0, 34.0, 69.0}) {
    const boost::math::students_t dist(df);
    for (double t = -8.0; t <= 8.0; t += 0.37) {
      EXPECT_NEAR(student_t_cdf(t, df), boost::math::cdf(dist, t), 1e-10) << "df " << df << " t " << t;
    }
  }
}

TEST(PairedTTest, ReferenceDifferences) {
  const std::vector<double> a{2.0, 4.0, 6.0, 8.0, 10.0};
  const std::vector<double> b{1.0, 2.0, 3.0, 4.0, 5.0};
  const TTestResult r = paired_t_test(a, b);
  EXPECT_NEAR(r.t, 4.2426, 1e-4);
  EXPECT_EQ(r.df, 4);
  const boost::math::students_t dist(4.0);
  EXPECT_NEAR(r.p, 2.0 * boost::math::cdf(boost::math::complement(dist, 3.0 * std::sqrt(2.0))), 1e-10);
  EXPECT_NEAR(r.p, 0.0132, 1e-4);
}

TEST(PairedTTest, SwapNegatesStatistic) {
  const std::vector<double> a{0.91, 0.85, 0.77, 0.99, 0.62, 0.88};
  const std::vector<double> b{0.80, 0.86, 0.70, 0.91, 0.55, 0.79};
  const TTestResult ab = paired_t_test(a, b);
  const TTestResult ba = paired_t_test(b, a);
  EXPECT_DOUBLE_EQ(ab.t, -ba.t);
  EXPECT_DOUBLE_EQ(ab.p, ba.p);
}

TEST(PairedTTest, Degenerate) {
  const std::vector<double> a{1.0, 2.0, 3.0};
  EXPECT_THROW(paired_t_test(a, a), DegenerateStatisticsError);
  const std::vector<double> shifted{2.0, 3.0, 4.0};
  EXPECT_THROW(paired_t_test(a, shifted), DegenerateStatisticsError);
  const std::vector<double> one{1.0};
  EXPECT_THROW(paired_t_test(one, one), ArgumentError);
}

TEST(SignificanceTest, BonferroniThresholds) {
  EXPECT_EQ(significance_label(1e-7), "**");
  EXPECT_EQ(significance_label(2.26e-7), "**");
  EXPECT_EQ(significance_label(0.01), "*");
  EXPECT_EQ(significance_label(0.0094), "*");
  EXPECT_EQ(significance_label(0.07), "");
  EXPECT_EQ(significance_label(0.05 / 3), "");
  EXPECT_EQ(significance_label(0.05 / 15), "*");
  const std::vector<double> ps{0.5, 0.004, 0.003};
  EXPECT_EQ(significance_labels(ps), (std::vector<std::string>{"", "*", "**"}));
  EXPECT_EQ(significance_label(0.01, 2, 4), "**");
  EXPECT_EQ(significance_label(0.02, 2, 4), "*");
  EXPECT_EQ(significance_label(0.03, 2, 4), "");
}

}  // namespace
}  // namespace sfda
