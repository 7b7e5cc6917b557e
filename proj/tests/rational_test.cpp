// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "upa/rational.hpp"

#include <cstdint>
#include <limits>
#include <stdexcept>

#include <gtest/gtest.h>

#include "upa/errors.hpp"

namespace upa {
namespace {

TEST(RationalTest, ParsesAndReduces) {
  EXPECT_EQ(Rational::parse("6/8"), Rational(3, 4));
  EXPECT_EQ(Rational::parse("5"), Rational(5));
  EXPECT_EQ(Rational::parse("-2/4").str(), "-1/2");
  EXPECT_EQ(Rational(3, -6).str(), "-1/2");
  EXPECT_EQ(Rational(0, 7).str(), "0/1");
  EXPECT_EQ(Rational(4).str(), "4/1");
}

TEST(RationalTest, RejectsMalformed) {
  for (const char* bad : {"", "/", "1/", "/2", "1/0", "a", "1.5", "1/2/3",
                          " 1/2", "--1", "+"}) {
    EXPECT_THROW(Rational::parse(bad), ValidationError) << bad;
  }
  EXPECT_THROW(Rational(1, 0), std::domain_error);
}

TEST(RationalTest, Arithmetic) {
  const Rational a(1, 6), b(3, 4);
  EXPECT_EQ(a + b, Rational(11, 12));
  EXPECT_EQ(a - b, Rational(-7, 12));
  EXPECT_EQ(a * b, Rational(1, 8));
  EXPECT_EQ(a / b, Rational(2, 9));
  EXPECT_THROW(a / Rational(0), std::domain_error);
}

TEST(RationalTest, OrderingUsesCrossProducts) {
  EXPECT_LT(Rational(2, 3), Rational(3, 4));
  EXPECT_GT(Rational(-1, 3), Rational(-1, 2));
  const std::int64_t big = std::numeric_limits<std::int64_t>::max();
  EXPECT_LT(Rational(big - 1, big), Rational(big, big - 1));
}

TEST(RationalTest, OverflowThrowsInsteadOfWrapping) {
  const std::int64_t big = std::numeric_limits<std::int64_t>::max() / 2;
  EXPECT_THROW(Rational(big) * Rational(4), std::overflow_error);
  EXPECT_THROW(Rational(1, big) + Rational(1, big - 2), std::overflow_error);
}

TEST(RationalTest, HarmonicDenominatorsFit) {
  Rational h;
  for (int j = 1; j <= 40; ++j) h += Rational(1, j);
  EXPECT_EQ(h.den(), 485721041551200);
  EXPECT_NEAR(h.to_double(), 4.278543038936377, 1e-12);
}

TEST(RationalTest, Helpers) {
  EXPECT_EQ(ceil_div(5, 2), 3);
  EXPECT_EQ(ceil_div(4, 2), 2);
  EXPECT_EQ(ceil_div(0, 2), 0);
  EXPECT_EQ(saturating_mul(UINT64_MAX / 2, 3), UINT64_MAX);
  EXPECT_EQ(saturating_mul(6, 7), 42u);
  EXPECT_EQ(min(Rational(1, 2), Rational(1, 3)), Rational(1, 3));
  EXPECT_EQ(max(Rational(1, 2), Rational(1, 3)), Rational(1, 2));
}

}  // namespace
}  // namespace upa
