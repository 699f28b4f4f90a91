// Copyright 2026 The specphase Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "specphase/spectral.hpp"
#include "specphase/validation/oracles.hpp"

namespace specphase {
namespace {

using testing::cosine;
using testing::gaussian_segment;
using testing::max_abs;
using testing::max_abs_diff;

constexpr double kPi = std::numbers::pi;

TEST(Segment, RejectsShortAndNonFinite) {
  EXPECT_THROW(TimeSeriesSegment({1.0}), ValidationError);
  try {
    TimeSeriesSegment({1.0, 2.0, NAN, 4.0});
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("index 2"), std::string::npos);
  }
  EXPECT_THROW(TimeSeriesSegment({INFINITY, 0.0}), ValidationError);
}

TEST(ForwardSpectrum, ConstantSeries) {
  const auto s = forward_spectrum(TimeSeriesSegment({3, 3, 3, 3}));
  EXPECT_DOUBLE_EQ(s.amplitudes[0], 12.0);
  EXPECT_EQ(s.phases[0], 0.0);
  for (std::size_t k = 1; k < 4; ++k) {
    EXPECT_NEAR(s.amplitudes[k], 0.0, 1e-12);
    EXPECT_EQ(s.phases[k], 0.0);  // zero amplitude forces phase 0
  }
}

TEST(ForwardSpectrum, SingleTone) {
  const auto s = forward_spectrum(TimeSeriesSegment(cosine(8, 1)));
  for (std::size_t k = 0; k < 8; ++k) {
    EXPECT_NEAR(s.amplitudes[k], (k == 1 || k == 7) ? 4.0 : 0.0, 1e-12) << k;
  }
  EXPECT_NEAR(s.phases[1], 0.0, 1e-12);
  EXPECT_NEAR(s.phases[7], 0.0, 1e-12);
}

TEST(ForwardSpectrum, MatchesDirectDft) {
  for (std::size_t n : {16, 15, 7, 100}) {
    const auto x = gaussian_segment(n, n);
    const auto s = forward_spectrum(x);
    const auto ref = oracle::dft(x.samples());
    double scale = 0.0;
    for (const auto& c : ref) {
      scale = std::max(scale, std::abs(c));
    }
    for (std::size_t k = 0; k < n; ++k) {
      const auto got = std::polar(s.amplitudes[k], s.phases[k]);
      EXPECT_LT(std::abs(got - ref[k]), 1e-9 * scale) << "n=" << n << " k=" << k;
    }
  }
}

TEST(ForwardSpectrum, HermitianInvariants) {
  for (std::size_t n : {2, 3, 8, 9, 64, 77}) {
    const auto s = forward_spectrum(gaussian_segment(n + 1, n));
    EXPECT_FALSE(check_hermitian(s).has_value()) << n;
    for (std::size_t k = 1; k < n; ++k) {
      EXPECT_NEAR(s.amplitudes[k], s.amplitudes[n - k], 1e-9 * (1.0 + s.amplitudes[k]));
      EXPECT_LT(circular_distance(s.phases[k], mirror_phase(s.phases[n - k])), 1e-9);
    }
    EXPECT_TRUE(s.phases[0] == 0.0 || s.phases[0] == kPi);
    if (n % 2 == 0) {
      EXPECT_TRUE(s.phases[n / 2] == 0.0 || s.phases[n / 2] == kPi);
    }
    for (double p : s.phases) {
      EXPECT_GE(p, 0.0);
      EXPECT_LT(p, kTwoPi);
    }
  }
}

TEST(InverseSeries, RoundTrip) {
  for (std::size_t n : {2, 5, 8, 31, 64, 250, 1024}) {
    const auto x = gaussian_segment(7 * n, n);
    const auto back = inverse_series(forward_spectrum(x));
    EXPECT_LT(max_abs_diff(back.samples(), x.samples()), 1e-9 * (1.0 + max_abs(x.samples()))) << n;
  }
}

TEST(InverseSeries, ZeroAmplitudes) {
  SpectralRep s{std::vector<double>(6, 0.0), std::vector<double>(6, 0.0)};
  const auto x = inverse_series(s);
  EXPECT_EQ(max_abs(x.samples()), 0.0);
}

TEST(InverseSeries, HandBuiltSpectrumMatchesOracle) {
  SpectralRep s{{0, 4, 0, 0, 0, 0, 0, 4}, std::vector<double>(8, 0.0)};
  const auto x = inverse_series(s);
  const auto ref = oracle::idft(std::vector<std::complex<double>>{0, 4, 0, 0, 0, 0, 0, 4});
  for (std::size_t t = 0; t < 8; ++t) {
    EXPECT_NEAR(x[t], ref[t].real(), 1e-12);
    EXPECT_NEAR(x[t], std::cos(2 * kPi * static_cast<double>(t) / 8), 1e-12);
  }
}

TEST(InverseSeries, RejectsHermitianViolation) {
  auto s = forward_spectrum(gaussian_segment(3, 16));
  s.amplitudes[3] *= 2.0;
  EXPECT_THROW(inverse_series(s), ValidationError);
  auto t = forward_spectrum(gaussian_segment(4, 16));
  t.phases[8] = 1.0;  // Nyquist must be 0 or pi
  EXPECT_THROW(inverse_series(t), ValidationError);
}

TEST(Symmetrize, RepairsDrift) {
  auto s = forward_spectrum(gaussian_segment(5, 12));
  s.amplitudes[11] += 1e-3;
  s.phases[6] = 0.1;
  symmetrize(s);
  EXPECT_FALSE(check_hermitian(s).has_value());
}

TEST(Recombine, SelfIsIdentity) {
  const auto x = gaussian_segment(11, 64);
  const auto s = forward_spectrum(x);
  EXPECT_LT(max_abs_diff(recombine(s, s).samples(), x.samples()), 1e-9);
}

TEST(Recombine, AmplitudePreservationAndOracle) {
  for (std::size_t n : {64, 63}) {
    const auto x = gaussian_segment(20 + n, n);
    const auto y = gaussian_segment(30 + n, n);
    const auto sx = forward_spectrum(x);
    const auto z = recombine(sx, forward_spectrum(y));
    const auto sz = forward_spectrum(z);
    for (std::size_t k = 0; k < n; ++k) {
      EXPECT_NEAR(sz.amplitudes[k], sx.amplitudes[k], 1e-9 * (1.0 + sx.amplitudes[k]));
    }
    const auto ref = oracle::recombine(x.samples(), y.samples());
    EXPECT_LT(max_abs_diff(z.samples(), ref), 1e-9);
  }
}

TEST(Recombine, CosineAmplitudeSinePhase) {
  const auto x = forward_spectrum(TimeSeriesSegment(cosine(8, 1)));
  const auto y_samples = cosine(8, 1, -kPi / 2);  // sin(2 pi t / 8)
  const auto z = recombine(x, forward_spectrum(TimeSeriesSegment(y_samples)));
  EXPECT_LT(max_abs_diff(z.samples(), y_samples), 1e-9);
}

TEST(Recombine, PhaseSubstitutionIsInvertible) {
  const auto x = gaussian_segment(41, 50);
  const auto y = gaussian_segment(42, 50);
  const auto sx = forward_spectrum(x);
  const auto mixed = recombine(sx, forward_spectrum(y));
  const auto restored = recombine(forward_spectrum(mixed), sx);
  EXPECT_LT(max_abs_diff(restored.samples(), x.samples()), 1e-9);
}

TEST(Recombine, RejectsLengthMismatch) {
  EXPECT_THROW(recombine(forward_spectrum(gaussian_segment(1, 8)),
                         forward_spectrum(gaussian_segment(2, 9))),
               ValidationError);
}

TEST(Recombine, ParsevalAndRealnessAcrossLengths) {
  Synthesizer synth;
  for (std::size_t n = 2; n <= 70; ++n) {
    const auto x = gaussian_segment(500 + n, n);
    const auto sx = forward_spectrum(x);
    double e = 0.0, se = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      e += x[t] * x[t];
      se += sx.amplitudes[t] * sx.amplitudes[t];
    }
    EXPECT_NEAR(e, se / static_cast<double>(n), 1e-9 * e);
    const PreparedSpectrum a(sx);
    const PreparedSpectrum p(forward_spectrum(gaussian_segment(900 + n, n)));
    synth.synthesize(a, p);
    EXPECT_LT(synth.last_residue(), 1e-9 * a.max_amplitude());
  }
}

TEST(Phase, NormalizeAndMirror) {
  EXPECT_DOUBLE_EQ(normalize_phase(-kPi / 2), 3 * kPi / 2);
  EXPECT_DOUBLE_EQ(normalize_phase(kTwoPi), 0.0);
  EXPECT_DOUBLE_EQ(mirror_phase(0.0), 0.0);
  EXPECT_DOUBLE_EQ(mirror_phase(kPi / 3), kTwoPi - kPi / 3);
  EXPECT_NEAR(circular_distance(0.01, kTwoPi - 0.01), 0.02, 1e-15);
}

}  // namespace
}  // namespace specphase
