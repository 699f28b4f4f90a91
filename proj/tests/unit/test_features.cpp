// Copyright 2026 The specphase Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "helpers.hpp"
#include "specphase/features.hpp"
#include "specphase/validation/oracles.hpp"

namespace specphase {
namespace {

using testing::gaussian_samples;

std::size_t lz(const std::string& s) { return lz76_complexity(BitSequence::from_string(s)); }

TEST(Binarize, Examples) {
  EXPECT_EQ(binarize_mean(TimeSeriesSegment({1, -1, 1, -1})).to_string(), "1010");
  EXPECT_EQ(binarize_mean(TimeSeriesSegment({5, 5, 5, 5})).to_string(), "0000");
  EXPECT_EQ(binarize_mean(TimeSeriesSegment({0, 1, 2, 3})).to_string(), "0011");
}

TEST(BitSequence, Validation) {
  EXPECT_THROW(BitSequence::from_string(""), ValidationError);
  EXPECT_THROW(BitSequence::from_string("0120"), ValidationError);
  EXPECT_THROW(BitSequence(std::vector<std::uint8_t>{0, 2}), ValidationError);
}

// Values below were produced by the quadratic reference parser.
TEST(Lz76, ReferenceValues) {
  EXPECT_EQ(lz("0"), 1u);
  EXPECT_EQ(lz("0000000000"), 2u);
  EXPECT_EQ(lz("0001101001000101"), 6u);
  EXPECT_EQ(lz("01"), 2u);
  EXPECT_EQ(lz("1010"), 3u);
  EXPECT_EQ(lz("0011"), 3u);
  EXPECT_EQ(lz("0110101"), 4u);
}

TEST(Lz76, AgreesWithReferenceOnRandomStrings) {
  Xoshiro256 rng(2024);
  for (int i = 0; i < 2000; ++i) {
    const std::size_t n = 1 + uniform_index(rng, 300);
    std::vector<std::uint8_t> b(n);
    for (auto& v : b) {
      v = fair_coin(rng) ? 1 : 0;
    }
    ASSERT_EQ(lz76_complexity(b), oracle::lz76(b)) << i;
  }
}

TEST(Lz76, ExhaustiveProperties) {
  for (std::size_t len = 1; len <= 12; ++len) {
    for (std::uint64_t w = 0; w < (std::uint64_t{1} << len); ++w) {
      std::vector<std::uint8_t> b(len), comp(len);
      for (std::size_t i = 0; i < len; ++i) {
        b[i] = static_cast<std::uint8_t>((w >> i) & 1U);
        comp[i] = static_cast<std::uint8_t>(1U - b[i]);
      }
      const auto c = lz76_complexity(b);
      ASSERT_EQ(c, oracle::lz76(b));
      ASSERT_EQ(c, lz76_complexity(comp));
      ASSERT_GE(c, 1u);
      ASSERT_LE(c, len);
      b.push_back(0);
      ASSERT_GE(lz76_complexity(b), c);
      b.back() = 1;
      ASSERT_GE(lz76_complexity(b), c);
    }
  }
}

TEST(Lz76, ParserIsReusable) {
  Lz76Parser parser;
  const std::vector<std::uint8_t> a{0, 0, 0, 1, 1, 0, 1, 0, 0, 1, 0, 0, 0, 1, 0, 1};
  const std::vector<std::uint8_t> b{1, 1, 1};
  EXPECT_EQ(parser.complexity(a), 6u);
  EXPECT_EQ(parser.complexity(b), 2u);
  EXPECT_EQ(parser.complexity(a), 6u);
}

TEST(EvaluateFeature, ConstantSegmentGivesTwo) {
  EXPECT_EQ(evaluate_feature({}, TimeSeriesSegment(std::vector<double>(1024, 0.7))), 2.0);
}

TEST(EvaluateFeature, AffineInvariance) {
  const auto x = gaussian_samples(5, 256);
  std::vector<double> shifted(x), scaled(x);
  for (auto& v : shifted) {
    v += 100.0;
  }
  for (auto& v : scaled) {
    v *= 3.0;
  }
  const double base = evaluate_feature({}, TimeSeriesSegment(x));
  EXPECT_EQ(evaluate_feature({}, TimeSeriesSegment(shifted)), base);
  EXPECT_EQ(evaluate_feature({}, TimeSeriesSegment(scaled)), base);
}

TEST(EvaluateFeature, Normalization) {
  const auto x = TimeSeriesSegment(gaussian_samples(6, 128));
  const double raw = evaluate_feature({}, x);
  const double norm = evaluate_feature({"lz76", {{"normalize", "true"}}}, x);
  EXPECT_DOUBLE_EQ(norm, raw * 7.0 / 128.0);
  EXPECT_EQ(evaluate_feature({"lz76", {{"normalize", "off"}}}, x), raw);
  EXPECT_THROW(resolve_feature({"lz76", {{"normalize", "maybe"}}}), ValidationError);
}

TEST(EvaluateFeature, UnknownNameListsRegistered) {
  try {
    resolve_feature({"entropy", {}});
    FAIL();
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("lz76"), std::string::npos);
    EXPECT_NE(msg.find("spectral_centroid"), std::string::npos);
  }
  EXPECT_THROW(resolve_feature({"lz76", {{"bogus", "1"}}}), ValidationError);
}

TEST(SpectralCentroid, SingleToneSitsOnItsBin) {
  EXPECT_NEAR(evaluate_feature({"spectral_centroid", {}}, TimeSeriesSegment(testing::cosine(64, 5))),
              5.0, 1e-9);
}

}  // namespace
}  // namespace specphase
