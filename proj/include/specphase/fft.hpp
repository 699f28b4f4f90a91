// Copyright 2026 The specphase Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <numbers>
#include <span>
#include <unordered_map>
#include <vector>

namespace specphase::fft {

using Complex = std::complex<double>;

/// Precomputed tables for a complex DFT of one fixed length.
///
/// Forward is unnormalized, X[k] = sum_t x[t] exp(-2 pi i k t / n); inverse
/// carries the 1/n factor. Powers of two use an iterative radix-2 kernel,
/// every other length goes through Bluestein's chirp-z convolution on a
/// power-of-two plan. A plan is immutable after construction and may be shared
/// between threads.
class Plan {
 public:
  explicit Plan(std::size_t n) : n_(n), pow2_(n != 0 && (n & (n - 1)) == 0) {
    if (n_ < 2) {
      return;
    }
    if (pow2_) {
      init_radix2();
    } else {
      init_bluestein();
    }
  }

  [[nodiscard]] std::size_t size() const noexcept { return n_; }

  void forward(std::span<Complex> data) const { transform(data, false); }

  void inverse(std::span<Complex> data) const {
    transform(data, true);
    const double scale = 1.0 / static_cast<double>(n_);
    for (auto& v : data) {
      v *= scale;
    }
  }

 private:
  void init_radix2() {
    twiddles_.resize(n_ / 2);
    for (std::size_t k = 0; k < n_ / 2; ++k) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) /
                           static_cast<double>(n_);
      twiddles_[k] = Complex(std::cos(angle), std::sin(angle));
    }
    bitrev_.resize(n_);
    std::size_t bits = 0;
    while ((std::size_t{1} << bits) < n_) {
      ++bits;
    }
    for (std::size_t i = 0; i < n_; ++i) {
      std::size_t r = 0;
      for (std::size_t b = 0; b < bits; ++b) {
        r |= ((i >> b) & 1U) << (bits - 1 - b);
      }
      bitrev_[i] = r;
    }
  }

  void init_bluestein() {
    m_ = 1;
    while (m_ < 2 * n_ - 1) {
      m_ <<= 1;
    }
    inner_ = std::make_unique<Plan>(m_);
    chirp_.resize(n_);
    const std::size_t two_n = 2 * n_;
    for (std::size_t k = 0; k < n_; ++k) {
      // k^2 mod 2n keeps the angle argument small and exact.
      const std::size_t k2 = (k * k) % two_n;
      const double angle =
          -std::numbers::pi * static_cast<double>(k2) / static_cast<double>(n_);
      chirp_[k] = Complex(std::cos(angle), std::sin(angle));
    }
    filter_.assign(m_, Complex(0.0, 0.0));
    filter_[0] = std::conj(chirp_[0]);
    for (std::size_t k = 1; k < n_; ++k) {
      filter_[k] = std::conj(chirp_[k]);
      filter_[m_ - k] = std::conj(chirp_[k]);
    }
    inner_->forward(filter_);
  }

  void transform(std::span<Complex> data, bool inverse) const {
    if (n_ < 2) {
      return;
    }
    if (inverse) {
      for (auto& v : data) {
        v = std::conj(v);
      }
    }
    if (pow2_) {
      radix2(data);
    } else {
      bluestein(data);
    }
    if (inverse) {
      for (auto& v : data) {
        v = std::conj(v);
      }
    }
  }

  void radix2(std::span<Complex> data) const {
    for (std::size_t i = 0; i < n_; ++i) {
      const std::size_t r = bitrev_[i];
      if (r > i) {
        std::swap(data[i], data[r]);
      }
    }
    for (std::size_t len = 2; len <= n_; len <<= 1) {
      const std::size_t half = len / 2;
      const std::size_t stride = n_ / len;
      for (std::size_t start = 0; start < n_; start += len) {
        for (std::size_t k = 0; k < half; ++k) {
          const Complex w = twiddles_[k * stride];
          const Complex a = data[start + k];
          const Complex b = data[start + k + half] * w;
          data[start + k] = a + b;
          data[start + k + half] = a - b;
        }
      }
    }
  }

  void bluestein(std::span<Complex> data) const {
    std::vector<Complex> work(m_, Complex(0.0, 0.0));
    for (std::size_t k = 0; k < n_; ++k) {
      work[k] = data[k] * chirp_[k];
    }
    inner_->forward(work);
    for (std::size_t k = 0; k < m_; ++k) {
      work[k] *= filter_[k];
    }
    inner_->inverse(work);
    for (std::size_t k = 0; k < n_; ++k) {
      data[k] = work[k] * chirp_[k];
    }
  }

  std::size_t n_;
  bool pow2_;
  std::vector<Complex> twiddles_;
  std::vector<std::size_t> bitrev_;
  std::size_t m_ = 0;
  std::unique_ptr<Plan> inner_;
  std::vector<Complex> chirp_;
  std::vector<Complex> filter_;
};

/// Per-thread plan cache; plans are built once per (thread, length).
inline const Plan& plan_for(std::size_t n) {
  thread_local std::unordered_map<std::size_t, std::unique_ptr<Plan>> cache;
  auto& slot = cache[n];
  if (!slot) {
    slot = std::make_unique<Plan>(n);
  }
  return *slot;
}

}  // namespace specphase::fft
