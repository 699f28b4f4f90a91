// Copyright 2026 The specphase Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "specphase/decomposition.hpp"
#include "specphase/synthetic.hpp"

namespace specphase {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(Amplitudes, PowerLawAndBump) {
  const auto flat = generate_amplitudes(SpectrumModel::power_law(32, 0.0));
  EXPECT_EQ(flat[0], 0.0);
  for (std::size_t k = 1; k < 32; ++k) {
    EXPECT_EQ(flat[k], 1.0);
  }
  const auto inv = generate_amplitudes(SpectrumModel::power_law(64, 1.0));
  for (std::size_t k = 1; 2 * k <= 32; ++k) {
    EXPECT_NEAR(inv[2 * k], 0.5 * inv[k], 1e-12);
  }
  const auto bump = generate_amplitudes(SpectrumModel::gaussian_bump(64, 8.0, 3.0));
  EXPECT_EQ(std::max_element(bump.begin(), bump.begin() + 33) - bump.begin(), 8);
  for (std::size_t k = 1; k < 64; ++k) {
    EXPECT_EQ(bump[k], bump[64 - k]);
  }
  EXPECT_THROW(generate_amplitudes(SpectrumModel::gaussian_bump(64, 8.0, 0.0)), ValidationError);
}

TEST(Roughness, Endpoints) {
  Xoshiro256 rng(1);
  const auto zero = roughness_phases(64, 0.0, rng);
  for (double p : zero) {
    EXPECT_EQ(p, 0.0);
  }
  EXPECT_THROW(roughness_phases(64, 1.2, rng), ValidationError);
  EXPECT_THROW(roughness_phases(64, -0.1, rng), ValidationError);
}

TEST(Roughness, HalfRangeStaysBelowPi) {
  Xoshiro256 rng(2);
  for (int i = 0; i < 200; ++i) {
    const auto p = roughness_phases(33, 0.5, rng);
    for (std::size_t k = 1; k <= 16; ++k) {
      ASSERT_LT(p[k], kPi);
      ASSERT_LT(circular_distance(p[33 - k], mirror_phase(p[k])), 1e-12);
    }
  }
}

TEST(Roughness, FullRangeIsUniform) {
  Xoshiro256 rng(3);
  std::vector<double> draws;
  while (draws.size() < 10000) {
    const auto p = roughness_phases(64, 1.0, rng);
    for (std::size_t k = 1; k < 32; ++k) {
      draws.push_back(p[k]);
    }
  }
  std::sort(draws.begin(), draws.end());
  const auto n = static_cast<double>(draws.size());
  double d = 0.0;
  for (std::size_t i = 0; i < draws.size(); ++i) {
    const double cdf = draws[i] / (2.0 * kPi);
    d = std::max({d, cdf - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - cdf});
  }
  EXPECT_LT(d, 1.628 / std::sqrt(n));  // Kolmogorov-Smirnov, 1% level
}

TEST(SharedPhasePair, Contract) {
  const auto a = SpectrumModel::power_law(64, 1.0, 0.02);
  const auto b = SpectrumModel::gaussian_bump(64, 8.0, 4.0, 1.0, 0.02);
  Xoshiro256 rng(4);
  const auto [x, y] = make_pair_shared_phase(a, b, PhaseModel::roughness(0.7), rng);
  const auto sx = forward_spectrum(x), sy = forward_spectrum(y);
  for (std::size_t k = 1; k < 64; ++k) {
    EXPECT_LT(circular_distance(sx.phases[k], sy.phases[k]), 1e-9) << k;
  }
  const auto [u, v] = make_pair_shared_phase(a, a, PhaseModel::roughness(0.7), rng);
  EXPECT_EQ(u, v);
  Xoshiro256 r1(10), r2(20);
  EXPECT_EQ(make_pair_shared_phase(a, b, PhaseModel::constant(), r1).first,
            make_pair_shared_phase(a, b, PhaseModel::constant(), r2).first);
  EXPECT_THROW(make_pair_shared_phase(a, SpectrumModel::power_law(32, 1.0), PhaseModel::constant(), rng),
               ValidationError);
}

TEST(MakeDataset, BasicContract) {
  const auto spec = SpectrumModel::power_law(64, 1.0, 0.02);
  Xoshiro256 rng(5), again(5);
  const auto d = make_dataset(spec, PhaseModel::iid_uniform(), 1, rng);
  EXPECT_EQ(d.size(), 1u);
  EXPECT_EQ(make_dataset(spec, PhaseModel::iid_uniform(), 1, again).segment(0), d.segment(0));
  EXPECT_THROW(make_dataset(spec, PhaseModel::iid_uniform(), 0, rng), ValidationError);
  const auto s = forward_spectrum(d.segment(0));
  EXPECT_NEAR(s.amplitudes[0], 0.0, 1e-9);
  EXPECT_FALSE(check_hermitian(s).has_value());
}

TEST(MakeDataset, FullNullGivesZeroComponents) {
  const auto [a, b] = stand_in_spectra(128);
  std::vector<double> zA, zphi, zi;
  for (std::size_t t = 0; t < 50; ++t) {
    auto rng = derive_stream(SeedSpec{6}, {Scheme::trial, 0, t, 0});
    const auto x = make_dataset(a, PhaseModel::roughness(0.5), 100, rng);
    const auto y = make_dataset(a, PhaseModel::roughness(0.5), 100, rng);
    DecomposeOptions o;
    o.realizations = 100;
    o.seed = SeedSpec{t};
    const auto d = decompose(x, y, {}, o);
    zA.push_back(d.delta_A.z());
    zphi.push_back(d.delta_phi.z());
    zi.push_back(d.delta_i.z());
  }
  for (const auto* zs : {&zA, &zphi, &zi}) {
    double mean = 0.0;
    int large = 0;
    for (double z : *zs) {
      mean += z / 50.0;
      large += std::fabs(z) > 3.0 ? 1 : 0;
    }
    EXPECT_LT(std::fabs(mean) * std::sqrt(50.0), 3.0);
    EXPECT_LE(large, 2);
  }
}

TEST(MakeDataset, CouplingPlantsAnInteraction) {
  const auto [a, b] = stand_in_spectra(256);
  auto rng = derive_stream(SeedSpec{7}, {Scheme::trial, 0, 0, 0});
  const auto x = make_dataset(a, PhaseModel::iid_uniform(), 100, rng, Coupling::amp_phase_coupled);
  const auto y = make_dataset(a, PhaseModel::iid_uniform(), 100, rng, Coupling::none);
  DecomposeOptions o;
  o.realizations = 100;
  o.seed = SeedSpec{8};
  EXPECT_GT(std::fabs(decompose(x, y, {}, o).delta_i.z()), 3.0);
}

TEST(StandIn, VersionedSpectraDiffer) {
  const auto [a, b] = stand_in_spectra(256);
  EXPECT_EQ(kStandInSpectraVersion, 1);
  EXPECT_NE(generate_amplitudes(a), generate_amplitudes(b));
  EXPECT_EQ(b.center_bin, 32.0);
}

}  // namespace
}  // namespace specphase
