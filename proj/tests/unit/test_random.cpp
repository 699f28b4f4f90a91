// Copyright 2026 The specphase Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <set>

#include "specphase/random.hpp"

namespace specphase {
namespace {

TEST(Streams, PureFunctionOfLabel) {
  const SeedSpec seed{123};
  auto a = derive_stream(seed, {Scheme::donor, 0, 5, 7});
  auto b = derive_stream(seed, {Scheme::donor, 0, 5, 7});
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(a(), b());
  }
}

TEST(Streams, DistinctLabelsDiffer) {
  const SeedSpec seed{123};
  std::set<std::uint64_t> first;
  for (std::uint32_t scheme = 1; scheme <= 8; ++scheme) {
    for (std::uint32_t cond = 0; cond < 2; ++cond) {
      for (std::uint64_t j = 0; j < 20; ++j) {
        for (std::uint64_t r = 0; r < 20; ++r) {
          first.insert(derive_stream(seed, {static_cast<Scheme>(scheme), cond, j, r})());
        }
      }
    }
  }
  EXPECT_EQ(first.size(), 8u * 2 * 20 * 20);
  EXPECT_NE(derive_stream(SeedSpec{1}, {Scheme::donor, 0, 0, 0})(),
            derive_stream(SeedSpec{2}, {Scheme::donor, 0, 0, 0})());
}

TEST(Streams, ChildSeedsAreDistinct) {
  EXPECT_NE(child_seed(SeedSpec{5}, 1, 2), child_seed(SeedSpec{5}, 2, 1));
  EXPECT_EQ(child_seed(SeedSpec{5}, 1, 2), child_seed(SeedSpec{5}, 1, 2));
}

TEST(Distributions, UniformIndexIsUnbiased) {
  Xoshiro256 rng(99);
  std::array<int, 7> counts{};
  const int draws = 70000;
  for (int i = 0; i < draws; ++i) {
    const auto k = uniform_index(rng, 7);
    ASSERT_LT(k, 7u);
    ++counts[k];
  }
  // each count ~ Binomial(70000, 1/7): sd about 93
  for (int c : counts) {
    EXPECT_NEAR(c, draws / 7, 5 * 93);
  }
}

TEST(Distributions, UnitAndNormalMoments) {
  Xoshiro256 rng(7);
  double su = 0, sn = 0, sn2 = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = uniform_unit(rng);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    su += u;
    const double z = standard_normal(rng);
    sn += z;
    sn2 += z * z;
  }
  EXPECT_NEAR(su / n, 0.5, 5 * std::sqrt(1.0 / 12 / n));
  EXPECT_NEAR(sn / n, 0.0, 5 / std::sqrt(n));
  EXPECT_NEAR(sn2 / n, 1.0, 5 * std::sqrt(2.0 / n));
}

TEST(Distributions, FairCoin) {
  Xoshiro256 rng(3);
  int heads = 0;
  for (int i = 0; i < 100000; ++i) {
    heads += fair_coin(rng) ? 1 : 0;
  }
  EXPECT_NEAR(heads, 50000, 5 * 158);
}

}  // namespace
}  // namespace specphase
