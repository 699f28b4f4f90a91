// Copyright 2026 The specphase Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "specphase/stats.hpp"
#include "specphase/validation/oracles.hpp"

namespace specphase {
namespace {

TEST(IncompleteBeta, KnownValues) {
  EXPECT_NEAR(regularized_incomplete_beta(1, 1, 0.3), 0.3, 1e-14);
  EXPECT_NEAR(regularized_incomplete_beta(2, 3, 0.4), 0.5248, 1e-12);  // 1 - (0.6^4 + 4*0.4*0.6^3)
  EXPECT_EQ(regularized_incomplete_beta(2, 3, 0.0), 0.0);
  EXPECT_EQ(regularized_incomplete_beta(2, 3, 1.0), 1.0);
  EXPECT_NEAR(regularized_incomplete_beta(0.5, 0.5, 0.5), 0.5, 1e-12);
}

TEST(TTest, SymmetricValues) {
  const std::vector<double> v{-1.0, 1.0};
  const auto r = one_sample_ttest(v);
  EXPECT_EQ(r.statistic, 0.0);
  EXPECT_NEAR(r.p_value, 1.0, 1e-12);
  EXPECT_FALSE(r.reject);
}

TEST(TTest, DfTwoClosedForm) {
  const std::vector<double> v{1, 2, 3};
  const auto r = one_sample_ttest(v);
  EXPECT_NEAR(r.statistic, 3.4641016151377544, 1e-12);
  EXPECT_EQ(r.df, 2.0);
  const double t = r.statistic;
  EXPECT_NEAR(r.p_value, 1.0 - t / std::sqrt(2.0 + t * t), 1e-12);
  EXPECT_NEAR(r.p_value, 0.0742, 5e-5);
}

TEST(TTest, MatchesQuadrature) {
  const std::vector<double> v{5, 5.1, 4.9, 5.05};
  const auto r = one_sample_ttest(v);
  EXPECT_NEAR(r.p_value, oracle::student_t_two_sided_p(r.statistic, 3), 1e-6);
  EXPECT_NEAR(r.p_value, 1.3625247189e-06, 1e-12);  // independent reference value
  EXPECT_TRUE(r.reject);
}

TEST(TTest, PValueGridAgainstQuadrature) {
  for (int df = 1; df <= 200; df += 13) {
    for (double t = -10.0; t <= 10.0; t += 0.37) {
      ASSERT_NEAR(student_t_two_sided_p(t, df), oracle::student_t_two_sided_p(t, df), 1e-6)
          << "t=" << t << " df=" << df;
    }
  }
  EXPECT_NEAR(student_t_two_sided_p(1.0, 1), 0.5, 1e-12);  // Cauchy
}

TEST(TTest, Errors) {
  const std::vector<double> one{1.0};
  EXPECT_THROW(one_sample_ttest(one), ValidationError);
  const std::vector<double> flat{2.0, 2.0, 2.0};
  EXPECT_THROW(one_sample_ttest(flat), ZeroVarianceError);
  const std::vector<double> v{1, 2, 3};
  EXPECT_THROW(one_sample_ttest(v, 1.5), ValidationError);
}

TEST(Binomial, WilsonAndTails) {
  const auto [lo, hi] = wilson_interval(20, 400);
  EXPECT_NEAR(lo, 0.03259742983714725, 1e-12);
  EXPECT_NEAR(hi, 0.07596363506371961, 1e-12);
  EXPECT_NEAR(binomial_upper_tail(30, 400, 0.05), 0.019033610776192474, 1e-10);
  EXPECT_EQ(binomial_upper_tail(0, 10, 0.3), 1.0);
  EXPECT_EQ(binomial_upper_tail(11, 10, 0.3), 0.0);
  EXPECT_EQ(binomial_acceptance_region(50, 0.05), std::make_pair(std::size_t{0}, std::size_t{6}));
  EXPECT_EQ(binomial_acceptance_region(100, 0.05), std::make_pair(std::size_t{1}, std::size_t{10}));
}

TEST(NaiveTest, IdenticalSegmentsRarelyReject) {
  int rejections = 0;
  const int trials = 200;
  for (int t = 0; t < trials; ++t) {
    const auto x = testing::gaussian_segment(static_cast<std::uint64_t>(t), 64);
    const auto r = naive_two_sample_test(x, x, {}, 199, 0.05, SeedSpec{static_cast<std::uint64_t>(t)});
    EXPECT_EQ(r.statistic, 0.0);
    EXPECT_GE(r.p_value, 0.0);
    EXPECT_LE(r.p_value, 1.0);
    rejections += r.reject ? 1 : 0;
  }
  EXPECT_LE(rejections, trials / 20);
}

TEST(NaiveTest, Preconditions) {
  const auto x = testing::gaussian_segment(1, 32);
  const auto y = testing::gaussian_segment(2, 33);
  EXPECT_THROW(naive_two_sample_test(x, y, {}, 199, 0.05, SeedSpec{1}), ValidationError);
  EXPECT_THROW(naive_two_sample_test(x, x, {}, 18, 0.05, SeedSpec{1}), ValidationError);
  EXPECT_NO_THROW(naive_two_sample_test(x, x, {}, 19, 0.05, SeedSpec{1}));
}

TEST(NaiveTest, DeterministicAndCenteringOption) {
  const auto x = testing::gaussian_segment(3, 64);
  const auto y = testing::gaussian_segment(4, 64);
  const auto a = naive_two_sample_test(x, y, {}, 99, 0.05, SeedSpec{8});
  const auto b = naive_two_sample_test(x, y, {}, 99, 0.05, SeedSpec{8});
  EXPECT_EQ(a.p_value, b.p_value);
  const auto m = naive_two_sample_test(x, y, {}, 99, 0.05, SeedSpec{8}, Centering::mean);
  EXPECT_GE(m.p_value, 0.01);
  EXPECT_EQ(a.reject, a.p_value < 0.05);
}

// Under the exact null the rank p-value is super-uniform.
TEST(NaiveTest, SuperUniformUnderExactNull) {
  const std::size_t trials = 1000;
  for (double alpha : {0.01, 0.05}) {
    std::size_t rejections = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      auto rng = derive_stream(SeedSpec{99}, {Scheme::trial, 0, t, 0});
      const auto base = testing::gaussian_segment(rng(), 64);
      const auto x = phase_randomized_surrogate(base, rng);
      const auto y = phase_randomized_surrogate(base, rng);
      const std::size_t r = alpha == 0.01 ? 199 : 99;
      rejections += naive_two_sample_test(x, y, {}, r, alpha, SeedSpec{t}).reject ? 1 : 0;
    }
    // one-sided: the count must not exceed the upper 99% bound for Binomial(n, alpha)
    EXPECT_GT(binomial_upper_tail(rejections, trials, alpha), 0.005) << "alpha=" << alpha;
  }
}

TEST(Sweep, ContractAndValidation) {
  SweepConfig cfg;
  cfg.c_values = {0.0, 0.5, 1.0};
  cfg.trials = 100;
  cfg.length = 128;
  cfg.realizations = 39;
  cfg.seed = SeedSpec{3};
  const auto reports = false_positive_sweep(cfg);
  ASSERT_EQ(reports.size(), 3u);
  for (const auto& r : reports) {
    EXPECT_EQ(r.trials, 100u);
    EXPECT_DOUBLE_EQ(r.rate, static_cast<double>(r.rejections) / 100.0);
    EXPECT_LE(r.ci_lo, r.rate);
    EXPECT_GE(r.ci_hi, r.rate);
    EXPECT_GE(r.ci_lo, 0.0);
    EXPECT_LE(r.ci_hi, 1.0);
  }
  cfg.threads = 3;
  const auto again = false_positive_sweep(cfg);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(again[i].rejections, reports[i].rejections);
  }
  auto bad = cfg;
  bad.c_values = {1.5};
  EXPECT_THROW(false_positive_sweep(bad), ValidationError);
  bad = cfg;
  bad.trials = 99;
  EXPECT_THROW(false_positive_sweep(bad), ValidationError);
}

}  // namespace
}  // namespace specphase
