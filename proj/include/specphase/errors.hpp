// Copyright 2026 The specphase Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace specphase {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input that violates a documented precondition (bad data, bad config).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A sample set whose variance is exactly zero, so a t statistic is undefined.
class ZeroVarianceError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

}  // namespace specphase
