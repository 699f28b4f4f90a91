// Copyright 2026 The specphase Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include "specphase/dataset.hpp"
#include "specphase/random.hpp"
#include "specphase/spectral.hpp"

namespace specphase {

enum class SurrogateKind { within, across_pooled, swapped_spectra, phase_randomized };

/// Where a surrogate takes its donor spectrum from.
struct Donor {
  bool from_other = false;  // false: same condition, true: the other condition
  std::size_t index = 0;
  friend bool operator==(const Donor&, const Donor&) = default;
};

/// Donor index uniform over the whole condition, self included.
template <std::uniform_random_bit_generator G>
std::size_t draw_within_donor(std::size_t n, G& rng) {
  return static_cast<std::size_t>(uniform_index(rng, n));
}

/// Fair coin picks the condition, then the index is uniform inside it.
/// The coin and the index may come from separate streams.
template <std::uniform_random_bit_generator G, std::uniform_random_bit_generator H>
Donor draw_pooled_donor(std::size_t n_self, std::size_t n_other, G& coin_rng, H& index_rng) {
  const bool other = fair_coin(coin_rng);
  const std::size_t n = other ? n_other : n_self;
  return Donor{other, static_cast<std::size_t>(uniform_index(index_rng, n))};
}

// Seeding contract for the decomposition's shuffles. The pooled shuffle reads
// its index from the same stream as the within shuffle, so when it lands on
// its own condition it picks the same donor (common random numbers).

inline std::size_t within_donor(SeedSpec seed, std::uint32_t condition, std::size_t j,
                                std::size_t r, std::size_t n) {
  auto rng = derive_stream(seed, {Scheme::donor, condition, j, r});
  return draw_within_donor(n, rng);
}

inline Donor pooled_donor(SeedSpec seed, std::uint32_t condition, std::size_t j, std::size_t r,
                          std::size_t n_self, std::size_t n_other) {
  auto coin = derive_stream(seed, {Scheme::coin, condition, j, r});
  auto index = derive_stream(seed, {Scheme::donor, condition, j, r});
  return draw_pooled_donor(n_self, n_other, coin, index);
}

inline Donor alternative_donor(SeedSpec seed, std::uint32_t condition, std::size_t j,
                               std::size_t r, std::size_t n_self, std::size_t n_other) {
  auto coin = derive_stream(seed, {Scheme::alt_coin, condition, j, r});
  auto index = derive_stream(seed, {Scheme::alt_donor, condition, j, r});
  return draw_pooled_donor(n_self, n_other, coin, index);
}

namespace detail {

inline TimeSeriesSegment synthesize_segment(const PreparedSpectrum& amp,
                                            const PreparedSpectrum& phase) {
  Synthesizer synth;
  auto out = synth.synthesize(amp, phase);
  return TimeSeriesSegment(std::vector<double>(out.begin(), out.end()));
}

inline void require_index(const ConditionDataset& d, std::size_t j) {
  if (j >= d.size()) {
    throw ValidationError("segment index " + std::to_string(j) + " out of range for dataset of " +
                          std::to_string(d.size()));
  }
}

}  // namespace detail

/// x_j with its phases replaced by those of a uniformly drawn segment of the
/// same condition.
template <std::uniform_random_bit_generator G>
TimeSeriesSegment within_condition_surrogate(const ConditionDataset& d, std::size_t j, G& rng) {
  detail::require_index(d, j);
  const std::size_t alpha = draw_within_donor(d.size(), rng);
  return detail::synthesize_segment(d.spectrum(j), d.spectrum(alpha));
}

/// x_j with phases from a donor drawn from `d` or `other` with probability 1/2
/// each, then uniformly within the chosen condition.
template <std::uniform_random_bit_generator G>
TimeSeriesSegment across_condition_surrogate(const ConditionDataset& d,
                                             const ConditionDataset& other, std::size_t j,
                                             G& rng) {
  require_same_length(d, other);
  detail::require_index(d, j);
  const Donor donor = draw_pooled_donor(d.size(), other.size(), rng, rng);
  const auto& source = donor.from_other ? other : d;
  return detail::synthesize_segment(d.spectrum(j), source.spectrum(donor.index));
}

/// Spectrum of target_k with the phases of a uniformly drawn segment of the
/// other process.
template <std::uniform_random_bit_generator G>
TimeSeriesSegment swapped_spectra_surrogate(const ConditionDataset& target,
                                            const ConditionDataset& phase_pool, std::size_t k,
                                            G& rng) {
  require_same_length(target, phase_pool);
  detail::require_index(target, k);
  const std::size_t beta = draw_within_donor(phase_pool.size(), rng);
  return detail::synthesize_segment(target.spectrum(k), phase_pool.spectrum(beta));
}

/// Draws phasors for classical phase randomisation: free bins uniform on
/// [0, 2pi), DC kept from the source, even-length Nyquist bin a fair {0, pi}.
template <std::uniform_random_bit_generator G>
void random_phasors(const PreparedSpectrum& source, G& rng, std::vector<fft::Complex>& out) {
  const std::size_t n = source.length();
  out.resize(n / 2 + 1);
  out[0] = source.phasors()[0];
  for (std::size_t k = 1; k < n - k; ++k) {
    const double phase = kTwoPi * uniform_unit(rng);
    out[k] = fft::Complex(std::cos(phase), std::sin(phase));
  }
  if (n % 2 == 0) {
    out[n / 2] = fft::Complex(fair_coin(rng) ? -1.0 : 1.0, 0.0);
  }
}

/// Classical phase-randomised surrogate of a single segment.
template <std::uniform_random_bit_generator G>
TimeSeriesSegment phase_randomized_surrogate(const TimeSeriesSegment& x, G& rng) {
  PreparedSpectrum spectrum(forward_spectrum(x));
  std::vector<fft::Complex> phasors;
  random_phasors(spectrum, rng, phasors);
  Synthesizer synth;
  auto out = synth.synthesize(spectrum.rep().amplitudes, phasors, spectrum.max_amplitude());
  return TimeSeriesSegment(std::vector<double>(out.begin(), out.end()));
}

}  // namespace specphase
