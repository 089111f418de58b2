// Copyright 2026 The cwi Authors
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

#include "cwi/rational.hpp"

#include <gtest/gtest.h>

#include <random>

#include "cwi/error.hpp"

namespace {

using cwi::Rational;

TEST(Rational, ParsesFractionsAndReducesThem) {
  EXPECT_EQ(Rational::parse("3/6").str(), "1/2");
  EXPECT_EQ(Rational::parse("-4/2").str(), "-2");
  EXPECT_EQ(Rational::parse("7").str(), "7");
}

TEST(Rational, DecimalsAreExact) {
  EXPECT_EQ(Rational::parse("0.125"), Rational(1, 8));
  EXPECT_EQ(Rational::parse("0.1"), Rational(1, 10));
  EXPECT_EQ(Rational::parse("1.5e-2"), Rational(3, 200));
  EXPECT_EQ(Rational::parse("2E1"), Rational(20));
  EXPECT_EQ(Rational::parse("0.66").str(), "33/50");
}

TEST(Rational, RejectsGarbage) {
  for (const char* bad : {"", "abc", "1/0", "1//2", "0.1.2", "1e", "--1", "1/ 2"}) {
    EXPECT_THROW(Rational::parse(bad), cwi::Error) << bad;
  }
}

TEST(Rational, DivisionByZeroThrows) {
  EXPECT_THROW(Rational(1) / Rational(0), cwi::Error);
  EXPECT_THROW(Rational(1, 0), cwi::Error);
}

TEST(Rational, Ordering) {
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_GT(Rational(-1, 3), Rational(-1, 2));
  EXPECT_EQ(Rational(2, 4), Rational(1, 2));
  EXPECT_TRUE(Rational().is_zero());
  EXPECT_EQ(Rational(-3, 4).sign(), -1);
}

TEST(Rational, FieldLawsOnRandomValues) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    const Rational a(static_cast<long>(rng() % 2001) - 1000, static_cast<long>(1 + rng() % 97));
    const Rational b(static_cast<long>(rng() % 2001) - 1000, static_cast<long>(1 + rng() % 89));
    EXPECT_EQ((a + b) - b, a);
    EXPECT_EQ(a * b, b * a);
    if (!b.is_zero()) EXPECT_EQ(a * b / b, a);
    EXPECT_EQ(Rational::parse(a.str()), a);
  }
}

}  // namespace
