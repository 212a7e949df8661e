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
#include <vector>

#include <gtest/gtest.h>

#include "sfda/errors.hpp"

namespace sfda {
namespace {

TEST(ItrTest, ChanceIsZero) {
  for (int m : {2, 4, 40}) EXPECT_EQ(itr(1.0 / m, m, 1.0), 0.0);
}

TEST(ItrTest, ClosedFormValues) {
  EXPECT_NEAR(itr(1.0, 40, 1.0), 60.0 * std::log2(40.0), 1e-6);
  EXPECT_NEAR(itr(1.0, 40, 1.0), 319.32, 0.01);
  // Closed form evaluated offline in double precision.
  EXPECT_NEAR(itr(0.9, 40, 1.0), 259.4635367647114, 1e-9);
}

TEST(ItrTest, HalvingTimeDoublesRate) {
  for (double p : {0.05, 0.3, 0.77, 1.0}) EXPECT_EQ(itr(p, 40, 2.0), itr(p, 40, 1.0) / 2.0);
}

TEST(ItrTest, MonotoneInAccuracy) {
  double prev = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double v = itr(i / 1000.0, 40, 1.5);
    EXPECT_GE(v, prev);
    EXPECT_GE(v, 0.0);
    prev = v;
  }
}

TEST(ItrTest, BelowChanceClampedAndFlagged) {
  const ItrValue v = itr_checked(0.01, 40, 1.0);
  EXPECT_EQ(v.bits_per_min, 0.0);
  EXPECT_TRUE(v.clamped);
  EXPECT_FALSE(itr_checked(0.5, 40, 1.0).clamped);
  EXPECT_FALSE(itr_checked(0.025, 40, 1.0).clamped);
}

TEST(ItrTest, DomainErrors) {
  EXPECT_THROW(itr(1.2, 40, 1.0), ArgumentError);
  EXPECT_THROW(itr(0.5, 1, 1.0), ArgumentError);
  EXPECT_THROW(itr(0.5, 40, 0.0), ArgumentError);
}

TEST(AccuracyTest, FractionCorrect) {
  const std::vector<int> pred{0, 1, 2, 3};
  const std::vector<int> truth{0, 1, 0, 0};
  EXPECT_DOUBLE_EQ(accuracy(pred, truth), 0.5);
  const std::vector<int> shorter{0};
  EXPECT_THROW(accuracy(pred, shorter), ArgumentError);
}

TEST(SummaryTest, MeanAndStandardError) {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  EXPECT_DOUBLE_EQ(mean(v), 2.5);
  EXPECT_NEAR(standard_error(v), std::sqrt(5.0 / 3.0) / 2.0, 1e-15);
  const std::vector<double> one{3.0};
  EXPECT_EQ(standard_error(one), 0.0);
}

}  // namespace
}  // namespace sfda
