// Copyright 2026 The specphase Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>

namespace specphase {

/// Finalizer of SplitMix64; a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// xoshiro256** (Blackman & Vigna): period 2^256 - 1, passes BigCrush.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::uint64_t seed) noexcept {
    std::uint64_t z = seed;
    for (auto& word : state_) {
      z += 0x9e3779b97f4a7c15ULL;
      word = mix64(z);
    }
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    const std::uint64_t result = std::rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = std::rotl(state_[3], 45);
    return result;
  }

 private:
  std::array<std::uint64_t, 4> state_{};
};

/// Which random decision a stream drives. Values are part of the
/// reproducibility contract; never renumber them.
enum class Scheme : std::uint32_t {
  donor = 1,          // donor index for within/across phase shuffles
  coin = 2,           // donor condition for across-condition shuffles
  alt_donor = 3,      // amplitude donor index, alternative ordering
  alt_coin = 4,       // amplitude donor condition, alternative ordering
  phase_random = 5,   // classical phase randomisation
  synthetic = 6,      // synthetic data generation
  trial = 7,          // per-trial seeds in validation sweeps
  swapped = 8,        // swapped-spectra surrogates
};

/// Master seed of a run; every random stream is derived from it and a label.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

struct StreamLabel {
  Scheme scheme;
  std::uint32_t condition = 0;
  std::uint64_t segment = 0;
  std::uint64_t realization = 0;
};

/// Hash of (master seed, label) used as a stream seed.
constexpr std::uint64_t stream_key(SeedSpec seed, const StreamLabel& label) noexcept {
  std::uint64_t h = mix64(seed.master_seed);
  h = mix64(h ^ static_cast<std::uint64_t>(label.scheme));
  h = mix64(h ^ label.condition);
  h = mix64(h ^ label.segment);
  h = mix64(h ^ label.realization);
  return h;
}

/// Independent generator for one (scheme, condition, segment, realization) task.
inline Xoshiro256 derive_stream(SeedSpec seed, const StreamLabel& label) noexcept {
  return Xoshiro256(stream_key(seed, label));
}

/// Child seed for nested experiments (trial t of sweep point c, ...).
constexpr SeedSpec child_seed(SeedSpec seed, std::uint64_t a, std::uint64_t b = 0) noexcept {
  return SeedSpec{stream_key(seed, StreamLabel{Scheme::trial, 0, a, b})};
}

namespace detail {
__extension__ using uint128 = unsigned __int128;
}  // namespace detail

/// Unbiased integer in [0, n) (Lemire's multiply-shift with rejection).
template <std::uniform_random_bit_generator G>
std::uint64_t uniform_index(G& rng, std::uint64_t n) {
  static_assert(G::min() == 0 && G::max() == std::numeric_limits<std::uint64_t>::max());
  detail::uint128 m = static_cast<detail::uint128>(rng()) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      m = static_cast<detail::uint128>(rng()) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

/// Uniform double in [0, 1) with 53 random bits.
template <std::uniform_random_bit_generator G>
double uniform_unit(G& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <std::uniform_random_bit_generator G>
bool fair_coin(G& rng) {
  return (rng() >> 63) != 0;
}

/// Standard normal deviate via Box-Muller (one value per call).
template <std::uniform_random_bit_generator G>
double standard_normal(G& rng) {
  const double u1 = 1.0 - uniform_unit(rng);  // (0, 1]
  const double u2 = uniform_unit(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace specphase
