// Copyright 2026 The specphase Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "specphase/dataset.hpp"
#include "specphase/random.hpp"
#include "specphase/spectral.hpp"

namespace specphase::testing {

inline std::vector<double> gaussian_samples(std::uint64_t seed, std::size_t n) {
  Xoshiro256 rng(seed);
  std::vector<double> x(n);
  for (auto& v : x) {
    v = standard_normal(rng);
  }
  return x;
}

inline TimeSeriesSegment gaussian_segment(std::uint64_t seed, std::size_t n) {
  return TimeSeriesSegment(gaussian_samples(seed, n));
}

inline ConditionDataset gaussian_dataset(std::uint64_t seed, std::size_t count, std::size_t n) {
  std::vector<TimeSeriesSegment> segs;
  for (std::size_t i = 0; i < count; ++i) {
    segs.push_back(gaussian_segment(seed * 1000 + i, n));
  }
  return ConditionDataset(std::move(segs));
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    worst = std::max(worst, std::fabs(a[i] - b[i]));
  }
  return a.size() == b.size() ? worst : INFINITY;
}

inline double max_abs(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) {
    m = std::max(m, std::fabs(v));
  }
  return m;
}

inline std::vector<double> cosine(std::size_t n, double cycles, double phase = 0.0) {
  std::vector<double> x(n);
  for (std::size_t t = 0; t < n; ++t) {
    x[t] = std::cos(2.0 * std::numbers::pi * cycles * static_cast<double>(t) / static_cast<double>(n) + phase);
  }
  return x;
}

}  // namespace specphase::testing
