// Copyright 2026 The specphase Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "specphase/errors.hpp"
#include "specphase/fft.hpp"

namespace specphase {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Tolerance used by every Hermitian-symmetry and realness check.
inline constexpr double kSpectralTolerance = 1e-9;

/// A fixed-length window of finite real samples (T >= 2).
class TimeSeriesSegment {
 public:
  explicit TimeSeriesSegment(std::vector<double> samples)
      : samples_(std::move(samples)) {
    if (samples_.size() < 2) {
      throw ValidationError("time series segment needs at least 2 samples, got " +
                            std::to_string(samples_.size()));
    }
    for (std::size_t i = 0; i < samples_.size(); ++i) {
      if (!std::isfinite(samples_[i])) {
        throw ValidationError("non-finite sample at index " + std::to_string(i));
      }
    }
  }

  [[nodiscard]] std::size_t size() const noexcept { return samples_.size(); }
  [[nodiscard]] std::span<const double> samples() const noexcept { return samples_; }
  [[nodiscard]] double operator[](std::size_t i) const { return samples_[i]; }

  friend bool operator==(const TimeSeriesSegment&, const TimeSeriesSegment&) = default;

 private:
  std::vector<double> samples_;
};

/// Amplitude and phase of every DFT bin of a real segment.
///
/// Both vectors have length T. Phases live in [0, 2pi); bins k and T-k are
/// mirror images (equal amplitude, negated phase), and the DC bin plus the
/// Nyquist bin of an even length carry their sign as a phase of 0 or pi.
struct SpectralRep {
  std::vector<double> amplitudes;
  std::vector<double> phases;

  [[nodiscard]] std::size_t length() const noexcept { return amplitudes.size(); }
  [[nodiscard]] bool is_even() const noexcept { return length() % 2 == 0; }
  /// Highest bin index that is not a mirror of a lower one (T/2 rounded down).
  [[nodiscard]] std::size_t half() const noexcept { return length() / 2; }
};

/// Wraps an angle into [0, 2pi).
inline double normalize_phase(double phase) {
  double p = std::fmod(phase, kTwoPi);
  if (p < 0.0) {
    p += kTwoPi;
  }
  if (p >= kTwoPi) {
    p = 0.0;
  }
  return p;
}

/// Phase of the conjugate bin.
inline double mirror_phase(double phase) {
  return phase == 0.0 ? 0.0 : normalize_phase(kTwoPi - phase);
}

/// Shortest distance between two angles on the circle.
inline double circular_distance(double a, double b) {
  const double d = std::fabs(normalize_phase(a - b));
  return std::min(d, kTwoPi - d);
}

namespace detail {

inline bool is_sign_bin(std::size_t k, std::size_t n) {
  return k == 0 || (n % 2 == 0 && k == n / 2);
}

inline double snap_sign_phase(double phase) {
  return circular_distance(phase, std::numbers::pi) < std::numbers::pi / 2.0
             ? std::numbers::pi
             : 0.0;
}

}  // namespace detail

/// Describes the first violated SpectralRep invariant, or nullopt if none.
inline std::optional<std::string> check_hermitian(const SpectralRep& s,
                                                  double tol = kSpectralTolerance) {
  const std::size_t n = s.length();
  if (n < 2) {
    return "spectrum length must be at least 2";
  }
  if (s.phases.size() != n) {
    return "amplitude and phase vectors differ in length";
  }
  double scale = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double a = s.amplitudes[k];
    if (!std::isfinite(a) || a < 0.0) {
      return "amplitude at bin " + std::to_string(k) + " is negative or non-finite";
    }
    const double p = s.phases[k];
    if (!std::isfinite(p) || p < 0.0 || p >= kTwoPi) {
      return "phase at bin " + std::to_string(k) + " outside [0, 2pi)";
    }
    scale = std::max(scale, a);
  }
  for (std::size_t k = 1; k < n - k; ++k) {
    if (std::fabs(s.amplitudes[k] - s.amplitudes[n - k]) > tol * scale) {
      return "amplitude mismatch between bins " + std::to_string(k) + " and " +
             std::to_string(n - k);
    }
    if (circular_distance(s.phases[k], mirror_phase(s.phases[n - k])) > tol) {
      return "phase of bin " + std::to_string(k) + " is not the negation of bin " +
             std::to_string(n - k);
    }
  }
  for (std::size_t k : {std::size_t{0}, n / 2}) {
    if (!detail::is_sign_bin(k, n)) {
      continue;
    }
    const double p = s.phases[k];
    if (std::min(circular_distance(p, 0.0), circular_distance(p, std::numbers::pi)) > tol) {
      return "phase of real-valued bin " + std::to_string(k) + " is not 0 or pi";
    }
  }
  return std::nullopt;
}

/// Copies bins 0..T/2 onto their conjugate partners and snaps the DC and
/// Nyquist phases to exactly 0 or pi.
inline void symmetrize(SpectralRep& s) {
  const std::size_t n = s.length();
  for (std::size_t k = 1; k < n - k; ++k) {
    s.amplitudes[n - k] = s.amplitudes[k];
    s.phases[n - k] = mirror_phase(s.phases[k]);
  }
  s.phases[0] = detail::snap_sign_phase(s.phases[0]);
  if (n % 2 == 0) {
    s.phases[n / 2] = detail::snap_sign_phase(s.phases[n / 2]);
  }
}

/// Forward DFT of a real segment, split into amplitudes and phases.
inline SpectralRep forward_spectrum(const TimeSeriesSegment& x) {
  const std::size_t n = x.size();
  std::vector<fft::Complex> buf(n);
  for (std::size_t t = 0; t < n; ++t) {
    buf[t] = fft::Complex(x[t], 0.0);
  }
  fft::plan_for(n).forward(buf);

  SpectralRep s;
  s.amplitudes.assign(n, 0.0);
  s.phases.assign(n, 0.0);
  for (std::size_t k = 0; k <= n / 2; ++k) {
    if (detail::is_sign_bin(k, n)) {
      const double re = buf[k].real();
      s.amplitudes[k] = std::fabs(re);
      s.phases[k] = re < 0.0 ? std::numbers::pi : 0.0;
      continue;
    }
    const double a = std::abs(buf[k]);
    s.amplitudes[k] = a;
    // A zero complex number has no argument; pin it to 0.
    s.phases[k] = a == 0.0 ? 0.0 : normalize_phase(std::atan2(buf[k].imag(), buf[k].real()));
  }
  symmetrize(s);
  return s;
}

inline SpectralRep forward_spectrum(std::span<const double> samples) {
  return forward_spectrum(TimeSeriesSegment(std::vector<double>(samples.begin(), samples.end())));
}

/// A spectrum with its unit phasors exp(i phi_k) for k = 0..T/2 precomputed,
/// ready to serve as amplitude source or phase donor in repeated synthesis.
class PreparedSpectrum {
 public:
  explicit PreparedSpectrum(SpectralRep rep) : rep_(std::move(rep)) {
    if (auto problem = check_hermitian(rep_)) {
      throw ValidationError("invalid spectrum: " + *problem);
    }
    symmetrize(rep_);
    const std::size_t n = rep_.length();
    phasors_.resize(n / 2 + 1);
    for (std::size_t k = 0; k <= n / 2; ++k) {
      if (detail::is_sign_bin(k, n)) {
        phasors_[k] = fft::Complex(rep_.phases[k] == 0.0 ? 1.0 : -1.0, 0.0);
      } else {
        phasors_[k] = fft::Complex(std::cos(rep_.phases[k]), std::sin(rep_.phases[k]));
      }
      max_amplitude_ = std::max(max_amplitude_, rep_.amplitudes[k]);
    }
  }

  [[nodiscard]] const SpectralRep& rep() const noexcept { return rep_; }
  [[nodiscard]] std::size_t length() const noexcept { return rep_.length(); }
  [[nodiscard]] std::span<const fft::Complex> phasors() const noexcept { return phasors_; }
  [[nodiscard]] double max_amplitude() const noexcept { return max_amplitude_; }

 private:
  SpectralRep rep_;
  std::vector<fft::Complex> phasors_;
  double max_amplitude_ = 0.0;
};

/// Reusable workspace that turns (amplitudes, phasors) into a real series.
/// Not thread-safe; give each worker its own instance.
class Synthesizer {
 public:
  /// Real series with the amplitudes of `amp` and the phases of `phase`.
  /// The returned view stays valid until the next call.
  std::span<const double> synthesize(const PreparedSpectrum& amp, const PreparedSpectrum& phase) {
    if (amp.length() != phase.length()) {
      throw ValidationError("cannot recombine spectra of lengths " +
                            std::to_string(amp.length()) + " and " +
                            std::to_string(phase.length()));
    }
    return synthesize(amp.rep().amplitudes, phase.phasors(), amp.max_amplitude());
  }

  /// Lower-level entry: `amplitudes` has length T, `phasors` covers bins 0..T/2
  /// and must hold exactly +-1 at the DC and Nyquist bins.
  std::span<const double> synthesize(std::span<const double> amplitudes,
                                     std::span<const fft::Complex> phasors,
                                     double max_amplitude) {
    const std::size_t n = amplitudes.size();
    buffer_.resize(n);
    out_.resize(n);
    for (std::size_t k = 0; k <= n / 2; ++k) {
      buffer_[k] = amplitudes[k] * phasors[k];
    }
    for (std::size_t k = 1; k < n - k; ++k) {
      buffer_[n - k] = std::conj(buffer_[k]);
    }
    fft::plan_for(n).inverse(buffer_);
    double residue = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      residue = std::max(residue, std::fabs(buffer_[t].imag()));
      out_[t] = buffer_[t].real();
    }
    last_residue_ = residue;
    if (residue > kSpectralTolerance * max_amplitude) {
      throw Error("inverse transform left an imaginary residue of " + std::to_string(residue));
    }
    return out_;
  }

  /// Largest imaginary part discarded by the most recent call.
  [[nodiscard]] double last_residue() const noexcept { return last_residue_; }

 private:
  std::vector<fft::Complex> buffer_;
  std::vector<double> out_;
  double last_residue_ = 0.0;
};

/// Inverse DFT of a Hermitian spectrum back to a real segment.
inline TimeSeriesSegment inverse_series(const SpectralRep& s) {
  PreparedSpectrum prepared(s);
  Synthesizer synth;
  auto out = synth.synthesize(prepared, prepared);
  return TimeSeriesSegment(std::vector<double>(out.begin(), out.end()));
}

/// Real series carrying the amplitudes of `amp_source` and the phases of
/// `phase_source` at every bin, DC and Nyquist included.
inline TimeSeriesSegment recombine(const SpectralRep& amp_source, const SpectralRep& phase_source) {
  if (amp_source.length() != phase_source.length()) {
    throw ValidationError("cannot recombine spectra of lengths " +
                          std::to_string(amp_source.length()) + " and " +
                          std::to_string(phase_source.length()));
  }
  PreparedSpectrum amp(amp_source);
  PreparedSpectrum phase(phase_source);
  Synthesizer synth;
  auto out = synth.synthesize(amp, phase);
  return TimeSeriesSegment(std::vector<double>(out.begin(), out.end()));
}

}  // namespace specphase
