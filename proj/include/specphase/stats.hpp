// Copyright 2026 The specphase Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "specphase/decomposition.hpp"
#include "specphase/errors.hpp"
#include "specphase/features.hpp"
#include "specphase/parallel.hpp"
#include "specphase/random.hpp"
#include "specphase/surrogates.hpp"
#include "specphase/synthetic.hpp"

namespace specphase {

namespace detail {

// Continued fraction for the incomplete beta function (modified Lentz).
inline double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIterations = 10000;
  constexpr double kEps = 1e-15;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) {
    d = kTiny;
  }
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) {
      d = kTiny;
    }
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) {
      c = kTiny;
    }
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) {
      d = kTiny;
    }
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) {
      c = kTiny;
    }
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) {
      return h;
    }
  }
  throw Error("incomplete beta continued fraction did not converge");
}

}  // namespace detail

/// Regularized incomplete beta function I_x(a, b).
inline double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw ValidationError("incomplete beta needs positive shape parameters");
  }
  if (x <= 0.0) {
    return 0.0;
  }
  if (x >= 1.0) {
    return 1.0;
  }
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * detail::beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - front * detail::beta_continued_fraction(b, a, 1.0 - x) / b;
}

/// P(|T| >= |t|) for Student's t with `df` degrees of freedom.
inline double student_t_two_sided_p(double t, double df) {
  if (!(df > 0.0)) {
    throw ValidationError("degrees of freedom must be positive");
  }
  if (!std::isfinite(t)) {
    return 0.0;
  }
  const double x = df / (df + t * t);
  return std::clamp(regularized_incomplete_beta(0.5 * df, 0.5, x), 0.0, 1.0);
}

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  double df = 0.0;  // degrees of freedom, or the surrogate count for rank tests
  double alpha = 0.05;
  bool reject = false;
};

/// Two-sided one-sample t-test of mean zero.
inline TestResult one_sample_ttest(std::span<const double> values, double alpha = 0.05) {
  const std::size_t n = values.size();
  if (n < 2) {
    throw ValidationError("t-test needs at least 2 values (n<2)");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ValidationError("alpha must lie in (0, 1)");
  }
  double sum = 0.0;
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw ValidationError("t-test input contains a non-finite value");
    }
    sum += v;
  }
  const double mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (double v : values) {
    ss += (v - mean) * (v - mean);
  }
  if (ss == 0.0) {
    throw ZeroVarianceError("t-test undefined: zero variance across values");
  }
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  TestResult r;
  r.df = static_cast<double>(n - 1);
  r.statistic = mean / (sd / std::sqrt(static_cast<double>(n)));
  r.p_value = student_t_two_sided_p(r.statistic, r.df);
  r.alpha = alpha;
  r.reject = r.p_value < alpha;
  return r;
}

/// Wilson score interval for a binomial proportion (default 95%).
inline std::pair<double, double> wilson_interval(std::size_t successes, std::size_t trials,
                                                 double z = 1.959963984540054) {
  if (trials == 0) {
    return {0.0, 1.0};
  }
  const auto n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

/// P(X >= k) for X ~ Binomial(n, p).
inline double binomial_upper_tail(std::size_t k, std::size_t n, double p) {
  if (k == 0) {
    return 1.0;
  }
  if (k > n) {
    return 0.0;
  }
  return regularized_incomplete_beta(static_cast<double>(k), static_cast<double>(n - k + 1), p);
}

/// Central acceptance region [lo, hi] of counts for Binomial(n, p): each
/// tail outside it has probability at most (1 - level) / 2.
inline std::pair<std::size_t, std::size_t> binomial_acceptance_region(std::size_t n, double p,
                                                                      double level = 0.95) {
  const double tail = 0.5 * (1.0 - level);
  std::size_t lo = 0;
  while (lo < n && 1.0 - binomial_upper_tail(lo + 1, n, p) <= tail) {
    ++lo;
  }
  std::size_t hi = n;
  while (hi > 0 && binomial_upper_tail(hi, n, p) <= tail) {
    --hi;
  }
  return {lo, hi};
}

enum class Centering { median, mean };

namespace detail {

inline double center_of(std::vector<double> v, Centering centering) {
  if (centering == Centering::mean) {
    double sum = 0.0;
    for (double x : v) {
      sum += x;
    }
    return sum / static_cast<double>(v.size());
  }
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace detail

/// Two-sample test of f(x) - f(y) against independently phase-randomised
/// surrogates of both segments, with a two-sided rank p-value.
inline TestResult naive_two_sample_test(const TimeSeriesSegment& x, const TimeSeriesSegment& y,
                                        const FeatureDescriptor& fd, std::size_t realizations,
                                        double alpha, SeedSpec seed,
                                        Centering centering = Centering::median) {
  if (x.size() != y.size()) {
    throw ValidationError("naive test needs segments of equal length");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ValidationError("alpha must lie in (0, 1)");
  }
  if (static_cast<double>(realizations + 1) * alpha < 1.0 - 1e-12) {
    throw ValidationError("realization count " + std::to_string(realizations) +
                          " too small to resolve alpha " + std::to_string(alpha));
  }
  const auto f = resolve_feature(fd);
  const PreparedSpectrum sx(forward_spectrum(x));
  const PreparedSpectrum sy(forward_spectrum(y));
  const double delta = detail::checked_feature(f, x.samples()) -
                       detail::checked_feature(f, y.samples());

  Synthesizer synth;
  std::vector<fft::Complex> phasors;
  std::vector<double> null(realizations);
  for (std::size_t r = 0; r < realizations; ++r) {
    auto rx = derive_stream(seed, {Scheme::phase_random, 0, 0, r});
    random_phasors(sx, rx, phasors);
    const double fx = detail::checked_feature(
        f, synth.synthesize(sx.rep().amplitudes, phasors, sx.max_amplitude()));
    auto ry = derive_stream(seed, {Scheme::phase_random, 1, 0, r});
    random_phasors(sy, ry, phasors);
    const double fy = detail::checked_feature(
        f, synth.synthesize(sy.rep().amplitudes, phasors, sy.max_amplitude()));
    null[r] = fx - fy;
  }
  const double center = detail::center_of(null, centering);
  const double observed = std::fabs(delta - center);
  std::size_t extreme = 0;
  for (double v : null) {
    if (std::fabs(v - center) >= observed) {
      ++extreme;
    }
  }
  TestResult out;
  out.statistic = delta;
  out.p_value = static_cast<double>(1 + extreme) / static_cast<double>(realizations + 1);
  out.df = static_cast<double>(realizations);
  out.alpha = alpha;
  out.reject = out.p_value < alpha;
  return out;
}

/// Rejection count of the naive test at one roughness value.
struct FprReport {
  double c = 0.0;
  std::size_t trials = 0;
  std::size_t rejections = 0;
  double rate = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 1.0;
};

struct SweepConfig {
  std::vector<double> c_values{0.0, 0.25, 0.5, 1.0};
  std::size_t trials = 400;
  std::size_t realizations = 199;
  double alpha = 0.05;
  std::size_t length = 256;
  SeedSpec seed{};
  FeatureDescriptor feature{};
  Centering centering = Centering::median;
  std::size_t threads = 1;
};

inline void validate_sweep(const SweepConfig& cfg) {
  for (double c : cfg.c_values) {
    if (!(c >= 0.0 && c <= 1.0)) {
      throw ValidationError("roughness c must lie in [0, 1], got " + std::to_string(c));
    }
  }
  if (cfg.c_values.empty()) {
    throw ValidationError("sweep needs at least one c value");
  }
  if (cfg.length < 2) {
    throw ValidationError("sweep segment length must be at least 2");
  }
}

/// Runs the naive test on shared-phase pairs built from the two stand-in
/// spectra, once per trial and roughness value.
inline std::vector<FprReport> false_positive_sweep(const SweepConfig& cfg) {
  validate_sweep(cfg);
  if (cfg.trials < 100) {
    throw ValidationError("false-positive sweep needs at least 100 trials per c");
  }
  resolve_feature(cfg.feature);
  const auto [spec_x, spec_y] = stand_in_spectra(cfg.length);
  std::vector<FprReport> reports;
  for (std::size_t ci = 0; ci < cfg.c_values.size(); ++ci) {
    const double c = cfg.c_values[ci];
    std::vector<char> rejected(cfg.trials, 0);
    parallel_for(cfg.trials, cfg.threads, [&](std::size_t t) {
      auto rng = derive_stream(cfg.seed, {Scheme::synthetic, static_cast<std::uint32_t>(ci), t, 0});
      const auto [x, y] = make_pair_shared_phase(spec_x, spec_y, PhaseModel::roughness(c), rng);
      const auto result = naive_two_sample_test(x, y, cfg.feature, cfg.realizations, cfg.alpha,
                                                child_seed(cfg.seed, ci, t), cfg.centering);
      rejected[t] = result.reject ? 1 : 0;
    });
    FprReport rep;
    rep.c = c;
    rep.trials = cfg.trials;
    for (char r : rejected) {
      rep.rejections += static_cast<std::size_t>(r);
    }
    rep.rate = static_cast<double>(rep.rejections) / static_cast<double>(rep.trials);
    std::tie(rep.ci_lo, rep.ci_hi) = wilson_interval(rep.rejections, rep.trials);
    reports.push_back(rep);
  }
  return reports;
}

/// Decomposition of one shared-phase dataset pair from the sweep.
struct SweepDecomposition {
  double c = 0.0;
  std::size_t trial = 0;
  Component delta_phi;
  Component delta_i;
  Component delta_A;
};

/// The decomposition counterpart of the sweep: datasets of shared-phase
/// pairs, where phasic and interaction differences are null by construction.
inline std::vector<SweepDecomposition> sweep_decompositions(const SweepConfig& cfg,
                                                            std::size_t trials,
                                                            std::size_t segments,
                                                            std::size_t realizations) {
  validate_sweep(cfg);
  if (segments == 0 || realizations == 0) {
    throw ValidationError("sweep decomposition needs segments and realizations >= 1");
  }
  resolve_feature(cfg.feature);
  const auto [spec_x, spec_y] = stand_in_spectra(cfg.length);
  std::vector<SweepDecomposition> out(cfg.c_values.size() * trials);
  parallel_for(out.size(), cfg.threads, [&](std::size_t idx) {
    const std::size_t ci = idx / trials;
    const std::size_t t = idx % trials;
    const double c = cfg.c_values[ci];
    auto rng = derive_stream(cfg.seed, {Scheme::synthetic, static_cast<std::uint32_t>(ci), t, 1});
    const auto [x, y] =
        make_shared_phase_datasets(spec_x, spec_y, PhaseModel::roughness(c), segments, rng);
    DecomposeOptions opts;
    opts.realizations = realizations;
    opts.seed = child_seed(cfg.seed, 1000 + ci, t);
    const auto d = decompose(x, y, cfg.feature, opts);
    out[idx] = SweepDecomposition{c, t, d.delta_phi, d.delta_i, d.delta_A};
  });
  return out;
}

}  // namespace specphase
