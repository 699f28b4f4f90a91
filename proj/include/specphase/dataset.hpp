// Copyright 2026 The specphase Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "specphase/errors.hpp"
#include "specphase/spectral.hpp"

namespace specphase {

struct DatasetTags {
  std::string condition;
  std::string subject;
  std::string channel;
};

/// The segments recorded under one condition, treated as i.i.d. draws.
///
/// Spectra are computed once at construction. Copies share the immutable
/// payload, so passing datasets by value is cheap.
class ConditionDataset {
 public:
  explicit ConditionDataset(std::vector<TimeSeriesSegment> segments, DatasetTags tags = {}) {
    if (segments.empty()) {
      throw ValidationError("condition dataset is empty");
    }
    const std::size_t length = segments.front().size();
    for (std::size_t i = 0; i < segments.size(); ++i) {
      if (segments[i].size() != length) {
        throw ValidationError("segment " + std::to_string(i) + " has length " +
                              std::to_string(segments[i].size()) + ", expected " +
                              std::to_string(length));
      }
    }
    auto data = std::make_shared<Data>();
    data->spectra.reserve(segments.size());
    for (const auto& s : segments) {
      data->spectra.emplace_back(forward_spectrum(s));
    }
    data->segments = std::move(segments);
    data->tags = std::move(tags);
    data_ = std::move(data);
  }

  [[nodiscard]] std::size_t size() const noexcept { return data_->segments.size(); }
  [[nodiscard]] std::size_t segment_length() const noexcept {
    return data_->segments.front().size();
  }
  [[nodiscard]] const std::vector<TimeSeriesSegment>& segments() const noexcept {
    return data_->segments;
  }
  [[nodiscard]] const TimeSeriesSegment& segment(std::size_t i) const {
    return data_->segments.at(i);
  }
  [[nodiscard]] const PreparedSpectrum& spectrum(std::size_t i) const {
    return data_->spectra.at(i);
  }
  [[nodiscard]] const DatasetTags& tags() const noexcept { return data_->tags; }

 private:
  struct Data {
    std::vector<TimeSeriesSegment> segments;
    std::vector<PreparedSpectrum> spectra;
    DatasetTags tags;
  };
  std::shared_ptr<const Data> data_;
};

inline void require_same_length(const ConditionDataset& a, const ConditionDataset& b) {
  if (a.segment_length() != b.segment_length()) {
    throw ValidationError("datasets have different segment lengths (" +
                          std::to_string(a.segment_length()) + " vs " +
                          std::to_string(b.segment_length()) + ")");
  }
}

}  // namespace specphase
