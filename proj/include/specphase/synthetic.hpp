// Copyright 2026 The specphase Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "specphase/dataset.hpp"
#include "specphase/errors.hpp"
#include "specphase/random.hpp"
#include "specphase/spectral.hpp"

namespace specphase {

/// Parametric amplitude spectrum over the folded frequency f = min(k, T - k).
/// The DC bin is always 0, so generated signals have zero mean.
struct SpectrumModel {
  enum class Kind { power_law, gaussian_bump };

  Kind kind = Kind::power_law;
  std::size_t length = 0;
  double exponent = 0.0;  // power_law: f^-exponent
  double center_bin = 0.0;
  double width = 1.0;
  double height = 1.0;
  double floor = 0.0;  // added to every non-DC bin

  static SpectrumModel power_law(std::size_t length, double exponent, double floor = 0.0) {
    SpectrumModel m;
    m.kind = Kind::power_law;
    m.length = length;
    m.exponent = exponent;
    m.floor = floor;
    return m;
  }

  static SpectrumModel gaussian_bump(std::size_t length, double center_bin, double width,
                                     double height = 1.0, double floor = 0.0) {
    SpectrumModel m;
    m.kind = Kind::gaussian_bump;
    m.length = length;
    m.center_bin = center_bin;
    m.width = width;
    m.height = height;
    m.floor = floor;
    return m;
  }

  friend bool operator==(const SpectrumModel&, const SpectrumModel&) = default;
};

inline std::vector<double> generate_amplitudes(const SpectrumModel& m) {
  if (m.length < 2) {
    throw ValidationError("spectrum model length must be at least 2");
  }
  if (m.kind == SpectrumModel::Kind::gaussian_bump && !(m.width > 0.0)) {
    throw ValidationError("gaussian bump width must be positive");
  }
  if (!(m.floor >= 0.0) || !(m.height >= 0.0) || !std::isfinite(m.exponent)) {
    throw ValidationError("spectrum model floor and height must be non-negative");
  }
  const std::size_t n = m.length;
  std::vector<double> amp(n, 0.0);
  for (std::size_t k = 1; k <= n / 2; ++k) {
    const auto f = static_cast<double>(k);
    double a = m.floor;
    if (m.kind == SpectrumModel::Kind::power_law) {
      a += std::pow(f, -m.exponent);
    } else {
      const double d = (f - m.center_bin) / m.width;
      a += m.height * std::exp(-0.5 * d * d);
    }
    if (!std::isfinite(a)) {
      throw ValidationError("spectrum model produced a non-finite amplitude at bin " +
                            std::to_string(k));
    }
    amp[k] = a;
    amp[n - k] = a;
  }
  return amp;
}

/// Version of the two fixed demo spectra; bump it whenever they change.
inline constexpr int kStandInSpectraVersion = 1;

/// The two spectra used by the false-positive demonstration: a 1/f spectrum
/// with a flat floor, and a Gaussian bump at bin T/8 (width T/16) on the
/// same floor. Their LZ76 values under random phases differ by about 11.
inline std::pair<SpectrumModel, SpectrumModel> stand_in_spectra(std::size_t length) {
  const double floor = 0.02;
  const auto n = static_cast<double>(length);
  return {SpectrumModel::power_law(length, 1.0, floor),
          SpectrumModel::gaussian_bump(length, n / 8.0, std::max(1.0, n / 16.0), 1.0, floor)};
}

struct PhaseModel {
  enum class Kind { constant, roughness, iid_uniform };

  Kind kind = Kind::iid_uniform;
  double c = 1.0;

  static PhaseModel constant() { return {Kind::constant, 0.0}; }
  static PhaseModel roughness(double c) { return {Kind::roughness, c}; }
  static PhaseModel iid_uniform() { return {Kind::iid_uniform, 1.0}; }
};

/// Hermitian phase vector whose free bins are i.i.d. uniform on [0, 2 pi c).
/// DC is 0; an even-length Nyquist bin is pi with probability c / 2, so c = 0
/// gives the zero vector and c = 1 matches classical phase randomisation.
template <std::uniform_random_bit_generator G>
std::vector<double> roughness_phases(std::size_t length, double c, G& rng) {
  if (!(c >= 0.0 && c <= 1.0)) {
    throw ValidationError("roughness c must lie in [0, 1], got " + std::to_string(c));
  }
  if (length < 2) {
    throw ValidationError("phase vector length must be at least 2");
  }
  std::vector<double> phases(length, 0.0);
  for (std::size_t k = 1; k < length - k; ++k) {
    phases[k] = kTwoPi * c * uniform_unit(rng);
    phases[length - k] = mirror_phase(phases[k]);
  }
  if (length % 2 == 0) {
    phases[length / 2] = uniform_unit(rng) < 0.5 * c ? std::numbers::pi : 0.0;
  }
  return phases;
}

template <std::uniform_random_bit_generator G>
std::vector<double> draw_phases(const PhaseModel& pm, std::size_t length, G& rng) {
  switch (pm.kind) {
    case PhaseModel::Kind::constant:
      return roughness_phases(length, 0.0, rng);
    case PhaseModel::Kind::roughness:
      return roughness_phases(length, pm.c, rng);
    case PhaseModel::Kind::iid_uniform:
      break;
  }
  return roughness_phases(length, 1.0, rng);
}

inline TimeSeriesSegment series_from(std::vector<double> amplitudes, std::vector<double> phases) {
  return inverse_series(SpectralRep{std::move(amplitudes), std::move(phases)});
}

/// Two segments built from one phase draw; only their spectra differ.
template <std::uniform_random_bit_generator G>
std::pair<TimeSeriesSegment, TimeSeriesSegment> make_pair_shared_phase(const SpectrumModel& a,
                                                                       const SpectrumModel& b,
                                                                       const PhaseModel& pm,
                                                                       G& rng) {
  if (a.length != b.length) {
    throw ValidationError("shared-phase pair needs equal lengths");
  }
  const auto phases = draw_phases(pm, a.length, rng);
  return {series_from(generate_amplitudes(a), phases), series_from(generate_amplitudes(b), phases)};
}

enum class Coupling { none, amp_phase_coupled };

/// Per-segment amplitude variability used by make_dataset.
struct AmplitudeJitter {
  double per_bin = 0.1;  // sd of the log-amplitude noise at each bin
  double tilt = 4.0;     // strength of a per-segment spectral tilt
};

/// N independent segments from a spectrum model.
///
/// Each segment draws a latent u ~ U[0, 1) that tilts its spectrum (more
/// high-frequency power for larger u) plus per-bin log-normal noise. With
/// Coupling::none phases come from `pm` independently of u, so amplitudes and
/// phases are independent. With Coupling::amp_phase_coupled the phase
/// roughness of a segment is u itself, tying phase structure to the spectrum.
template <std::uniform_random_bit_generator G>
ConditionDataset make_dataset(const SpectrumModel& spec, const PhaseModel& pm, std::size_t n,
                              G& rng, Coupling coupling = Coupling::none,
                              AmplitudeJitter jitter = {}, DatasetTags tags = {}) {
  if (n == 0) {
    throw ValidationError("synthetic dataset needs at least one segment");
  }
  const auto base = generate_amplitudes(spec);
  const std::size_t len = spec.length;
  std::vector<TimeSeriesSegment> segments;
  segments.reserve(n);
  for (std::size_t s = 0; s < n; ++s) {
    const double u = uniform_unit(rng);
    std::vector<double> amp(base);
    for (std::size_t k = 1; k <= len / 2; ++k) {
      const double g = 2.0 * static_cast<double>(k) / static_cast<double>(len);
      const double factor =
          std::exp(jitter.per_bin * standard_normal(rng) + jitter.tilt * (u - 0.5) * (g - 0.5));
      amp[k] *= factor;
      amp[len - k] = amp[k];
    }
    auto phases = coupling == Coupling::amp_phase_coupled ? roughness_phases(len, u, rng)
                                                          : draw_phases(pm, len, rng);
    segments.push_back(series_from(std::move(amp), std::move(phases)));
  }
  return ConditionDataset(std::move(segments), std::move(tags));
}

/// Datasets x, y of n segments each where x_j and y_j share one phase draw
/// and differ only in their spectrum model.
template <std::uniform_random_bit_generator G>
std::pair<ConditionDataset, ConditionDataset> make_shared_phase_datasets(const SpectrumModel& a,
                                                                         const SpectrumModel& b,
                                                                         const PhaseModel& pm,
                                                                         std::size_t n, G& rng) {
  if (n == 0) {
    throw ValidationError("synthetic dataset needs at least one segment");
  }
  std::vector<TimeSeriesSegment> xs, ys;
  xs.reserve(n);
  ys.reserve(n);
  for (std::size_t s = 0; s < n; ++s) {
    auto [x, y] = make_pair_shared_phase(a, b, pm, rng);
    xs.push_back(std::move(x));
    ys.push_back(std::move(y));
  }
  return {ConditionDataset(std::move(xs), {"x", "", ""}), ConditionDataset(std::move(ys), {"y", "", ""})};
}

}  // namespace specphase
