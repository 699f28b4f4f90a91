// Copyright 2026 The specphase Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "specphase/dataset.hpp"
#include "specphase/errors.hpp"
#include "specphase/features.hpp"
#include "specphase/parallel.hpp"
#include "specphase/random.hpp"
#include "specphase/surrogates.hpp"

namespace specphase {

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

/// One term of the decomposition with two error bars.
///
/// `mc_stderr` is the realization-level Monte-Carlo error only. `std_error`
/// adds a first-order (Hajek projection) estimate of the segment-sampling
/// error, so value / std_error is a z-score against data resampling as well.
/// The sampling part assumes the two conditions are independent samples.
struct Component {
  double value = 0.0;
  double mc_stderr = 0.0;
  double std_error = 0.0;

  [[nodiscard]] double z() const {
    if (std_error > 0.0) {
      return value / std_error;
    }
    return value == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), value);
  }
};

struct DecomposeOptions {
  std::size_t realizations = 500;
  SeedSpec seed{};
  /// Test mode: both conditions draw from the same random streams, so
  /// identical inputs give exactly cancelling terms.
  bool mirrored_seeds = false;
  std::size_t threads = 1;
};

/// Per-realization shuffle means, in realization order.
struct RealizationTrace {
  std::vector<double> nu_i_x, nu_i_y, nu_phi_x, nu_phi_y;
};

struct DecompositionResult {
  double f_bar_x = 0.0;
  double f_bar_y = 0.0;
  MonteCarloEstimate nu_i_x, nu_i_y, nu_phi_x_given_y, nu_phi_y_given_x;
  double delta_total = 0.0;
  Component delta_A;
  Component delta_phi_x, delta_phi_y;
  Component delta_i_x, delta_i_y;
  Component delta_phi;  // delta_phi_x - delta_phi_y
  Component delta_i;    // delta_i_x - delta_i_y
  std::size_t realizations = 0;
  SeedSpec seed{};
  double telescope_residual = 0.0;
  RealizationTrace trace;
};

/// Spectral component assessed before the phasic one.
struct AlternativeResult {
  double value = 0.0;
  double mc_stderr = 0.0;
  MonteCarloEstimate nu_alt_x, nu_alt_y;
  std::vector<double> trace;
};

/// Both orderings computed on shared within-condition shuffles.
struct OrderingComparison {
  double delta_A = 0.0;
  double delta_A_alt = 0.0;
  double difference = 0.0;         // delta_A_alt - delta_A
  double difference_stderr = 0.0;  // paired over realizations
  [[nodiscard]] double z() const {
    if (difference_stderr > 0.0) {
      return difference / difference_stderr;
    }
    return difference == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
};

namespace detail {

enum class Shuffle { within, pooled, alternative };

struct ShuffleLog {
  std::size_t segments = 0;
  std::size_t realizations = 0;
  std::vector<double> values;  // [r * segments + j]
  std::vector<Donor> donors;

  [[nodiscard]] std::vector<double> realization_means() const {
    std::vector<double> means(realizations, 0.0);
    for (std::size_t r = 0; r < realizations; ++r) {
      double sum = 0.0;
      for (std::size_t j = 0; j < segments; ++j) {
        sum += values[r * segments + j];
      }
      means[r] = sum / static_cast<double>(segments);
    }
    return means;
  }
};

inline double checked_feature(const FeatureFunction& f, std::span<const double> x) {
  const double v = f(x);
  if (!std::isfinite(v)) {
    throw Error("feature returned a non-finite value");
  }
  return v;
}

/// R realizations of one shuffle. For `within` and `pooled`, segment j of
/// `self` supplies the amplitudes and the donor the phases; for `alternative`
/// the donor supplies the amplitudes and segment j the phases.
inline ShuffleLog run_shuffle(const ConditionDataset& self, const ConditionDataset* other,
                              Shuffle kind, const FeatureFunction& feature, SeedSpec seed,
                              std::uint32_t condition, std::size_t realizations,
                              std::size_t threads) {
  const std::size_t n = self.size();
  const std::size_t m = other != nullptr ? other->size() : 0;
  ShuffleLog log;
  log.segments = n;
  log.realizations = realizations;
  log.values.resize(n * realizations);
  log.donors.resize(n * realizations);
  parallel_for(realizations, threads, [&](std::size_t r) {
    Synthesizer synth;
    for (std::size_t j = 0; j < n; ++j) {
      Donor donor;
      switch (kind) {
        case Shuffle::within:
          donor = Donor{false, within_donor(seed, condition, j, r, n)};
          break;
        case Shuffle::pooled:
          donor = pooled_donor(seed, condition, j, r, n, m);
          break;
        case Shuffle::alternative:
          donor = alternative_donor(seed, condition, j, r, n, m);
          break;
      }
      const auto& pool = donor.from_other ? *other : self;
      const PreparedSpectrum& own = self.spectrum(j);
      const PreparedSpectrum& donated = pool.spectrum(donor.index);
      auto series = kind == Shuffle::alternative ? synth.synthesize(donated, own)
                                                 : synth.synthesize(own, donated);
      log.values[r * n + j] = checked_feature(feature, series);
      log.donors[r * n + j] = donor;
    }
  });
  return log;
}

inline MonteCarloEstimate summarize(std::span<const double> per_realization) {
  const auto r = static_cast<double>(per_realization.size());
  double sum = 0.0;
  for (double v : per_realization) {
    sum += v;
  }
  const double mean = sum / r;
  if (per_realization.size() < 2) {
    return {mean, 0.0};
  }
  double ss = 0.0;
  for (double v : per_realization) {
    ss += (v - mean) * (v - mean);
  }
  return {mean, std::sqrt(ss / (r - 1.0) / r)};
}

inline double sample_variance(std::span<const double> v) {
  if (v.size() < 2) {
    return 0.0;
  }
  double sum = 0.0;
  for (double x : v) {
    sum += x;
  }
  const double mean = sum / static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) {
    ss += (x - mean) * (x - mean);
  }
  return ss / static_cast<double>(v.size() - 1);
}

/// Row (amplitude source) and column (phase donor) means of one block of
/// shuffle evaluations.
struct BlockMeans {
  double overall = 0.0;
  bool empty = true;
  std::vector<double> row_sum, col_sum;
  std::vector<std::size_t> row_count, col_count;

  BlockMeans(std::size_t rows, std::size_t cols)
      : row_sum(rows, 0.0), col_sum(cols, 0.0), row_count(rows, 0), col_count(cols, 0) {}

  [[nodiscard]] double row_deviation(std::size_t i) const {
    return row_count[i] == 0 ? 0.0 : row_sum[i] / static_cast<double>(row_count[i]) - overall;
  }
  [[nodiscard]] double col_deviation(std::size_t i) const {
    return col_count[i] == 0 ? 0.0 : col_sum[i] / static_cast<double>(col_count[i]) - overall;
  }
};

inline BlockMeans block_means(const ShuffleLog& log, bool from_other, std::size_t donor_pool) {
  BlockMeans b(log.segments, donor_pool);
  double total = 0.0;
  std::size_t count = 0;
  for (std::size_t r = 0; r < log.realizations; ++r) {
    for (std::size_t j = 0; j < log.segments; ++j) {
      const Donor d = log.donors[r * log.segments + j];
      if (d.from_other != from_other) {
        continue;
      }
      const double v = log.values[r * log.segments + j];
      b.row_sum[j] += v;
      ++b.row_count[j];
      b.col_sum[d.index] += v;
      ++b.col_count[d.index];
      total += v;
      ++count;
    }
  }
  if (count > 0) {
    b.overall = total / static_cast<double>(count);
    b.empty = false;
  }
  return b;
}

/// First-order influence of each segment of both conditions on one term.
struct Influence {
  std::vector<double> self, other;
};

inline Influence ensemble_influence(std::span<const double> f) {
  Influence inf{std::vector<double>(f.size()), {}};
  double sum = 0.0;
  for (double v : f) {
    sum += v;
  }
  const double mean = sum / static_cast<double>(f.size());
  for (std::size_t s = 0; s < f.size(); ++s) {
    inf.self[s] = f[s] - mean;
  }
  return inf;
}

/// nu^i: a V-statistic over (amplitude, phase) pairs of the same condition.
inline Influence within_influence(const ShuffleLog& log) {
  const auto b = block_means(log, false, log.segments);
  Influence inf{std::vector<double>(log.segments, 0.0), {}};
  for (std::size_t s = 0; s < log.segments; ++s) {
    inf.self[s] = b.row_deviation(s) + b.col_deviation(s);
  }
  return inf;
}

/// nu^phi: an equal mixture of a same-condition block and a cross-condition
/// block whose phase donors come from the other condition.
inline Influence pooled_influence(const ShuffleLog& log, std::size_t other_size) {
  const auto same = block_means(log, false, log.segments);
  const auto cross = block_means(log, true, other_size);
  Influence inf{std::vector<double>(log.segments, 0.0), std::vector<double>(other_size, 0.0)};
  for (std::size_t s = 0; s < log.segments; ++s) {
    inf.self[s] = 0.5 * (same.row_deviation(s) + same.col_deviation(s));
    inf.self[s] += 0.5 * cross.row_deviation(s);
  }
  for (std::size_t s = 0; s < other_size; ++s) {
    inf.other[s] = 0.5 * cross.col_deviation(s);
  }
  return inf;
}

struct Term {
  double coef;
  const Influence* influence;
  bool self_is_x;
};

/// Segment-sampling variance of sum(coef * term) from the influence values.
inline double sampling_variance(std::initializer_list<Term> terms, std::size_t n, std::size_t m) {
  std::vector<double> psi_x(n, 0.0), psi_y(m, 0.0);
  for (const auto& t : terms) {
    auto& self_side = t.self_is_x ? psi_x : psi_y;
    auto& other_side = t.self_is_x ? psi_y : psi_x;
    for (std::size_t s = 0; s < t.influence->self.size(); ++s) {
      self_side[s] += t.coef * t.influence->self[s];
    }
    for (std::size_t s = 0; s < t.influence->other.size(); ++s) {
      other_side[s] += t.coef * t.influence->other[s];
    }
  }
  return sample_variance(psi_x) / static_cast<double>(n) +
         sample_variance(psi_y) / static_cast<double>(m);
}

inline void validate_pair(const ConditionDataset& x, const ConditionDataset& y,
                          const DecomposeOptions& options) {
  require_same_length(x, y);
  if (options.realizations == 0) {
    throw ValidationError("realization count must be at least 1");
  }
}

inline std::vector<double> feature_values(const ConditionDataset& d, const FeatureFunction& f) {
  std::vector<double> out(d.size());
  for (std::size_t s = 0; s < d.size(); ++s) {
    out[s] = checked_feature(f, d.segment(s).samples());
  }
  return out;
}

inline double mean_of(std::span<const double> v) {
  double sum = 0.0;
  for (double x : v) {
    sum += x;
  }
  return sum / static_cast<double>(v.size());
}

inline std::uint32_t y_condition(const DecomposeOptions& o) { return o.mirrored_seeds ? 0U : 1U; }

}  // namespace detail

/// Mean feature value over the segments of a dataset.
inline double ensemble_mean(const ConditionDataset& d, const FeatureDescriptor& fd) {
  const auto f = resolve_feature(fd);
  return detail::mean_of(detail::feature_values(d, f));
}

/// nu^i: feature mean on within-condition phase shuffles, averaged over R
/// realizations. `condition` selects the random-stream family.
inline MonteCarloEstimate nu_within(const ConditionDataset& d, const FeatureDescriptor& fd,
                                    std::size_t realizations, SeedSpec seed,
                                    std::uint32_t condition = 0, std::size_t threads = 1) {
  if (realizations == 0) {
    throw ValidationError("realization count must be at least 1");
  }
  const auto f = resolve_feature(fd);
  const auto log = detail::run_shuffle(d, nullptr, detail::Shuffle::within, f, seed, condition,
                                       realizations, threads);
  return detail::summarize(log.realization_means());
}

/// nu^phi(d | other): feature mean on shuffles whose phase donor comes from
/// either condition with probability 1/2.
inline MonteCarloEstimate nu_across(const ConditionDataset& d, const ConditionDataset& other,
                                    const FeatureDescriptor& fd, std::size_t realizations,
                                    SeedSpec seed, std::uint32_t condition = 0,
                                    std::size_t threads = 1) {
  require_same_length(d, other);
  if (realizations == 0) {
    throw ValidationError("realization count must be at least 1");
  }
  const auto f = resolve_feature(fd);
  const auto log = detail::run_shuffle(d, &other, detail::Shuffle::pooled, f, seed, condition,
                                       realizations, threads);
  return detail::summarize(log.realization_means());
}

/// Splits f̄(x) - f̄(y) into spectral, phasic and interaction parts.
///
/// Each shuffle mean is estimated once and reused in every term that refers
/// to it, so the three parts add up to the raw difference up to rounding.
inline DecompositionResult decompose(const ConditionDataset& x, const ConditionDataset& y,
                                     const FeatureDescriptor& fd,
                                     const DecomposeOptions& options = {}) {
  using namespace detail;
  validate_pair(x, y, options);
  const auto f = resolve_feature(fd);
  const std::size_t R = options.realizations;
  const std::uint32_t cx = 0;
  const std::uint32_t cy = y_condition(options);

  const auto fx = feature_values(x, f);
  const auto fy = feature_values(y, f);
  const auto wx = run_shuffle(x, nullptr, Shuffle::within, f, options.seed, cx, R, options.threads);
  const auto wy = run_shuffle(y, nullptr, Shuffle::within, f, options.seed, cy, R, options.threads);
  const auto px = run_shuffle(x, &y, Shuffle::pooled, f, options.seed, cx, R, options.threads);
  const auto py = run_shuffle(y, &x, Shuffle::pooled, f, options.seed, cy, R, options.threads);

  DecompositionResult out;
  out.realizations = R;
  out.seed = options.seed;
  out.f_bar_x = mean_of(fx);
  out.f_bar_y = mean_of(fy);
  out.trace = {wx.realization_means(), wy.realization_means(), px.realization_means(),
               py.realization_means()};
  out.nu_i_x = summarize(out.trace.nu_i_x);
  out.nu_i_y = summarize(out.trace.nu_i_y);
  out.nu_phi_x_given_y = summarize(out.trace.nu_phi_x);
  out.nu_phi_y_given_x = summarize(out.trace.nu_phi_y);

  const double nix = out.nu_i_x.mean;
  const double niy = out.nu_i_y.mean;
  const double npx = out.nu_phi_x_given_y.mean;
  const double npy = out.nu_phi_y_given_x.mean;
  out.delta_total = out.f_bar_x - out.f_bar_y;
  out.delta_i_x.value = out.f_bar_x - nix;
  out.delta_i_y.value = out.f_bar_y - niy;
  out.delta_phi_x.value = nix - npx;
  out.delta_phi_y.value = niy - npy;
  out.delta_A.value = npx - npy;
  out.delta_phi.value = out.delta_phi_x.value - out.delta_phi_y.value;
  out.delta_i.value = out.delta_i_x.value - out.delta_i_y.value;
  out.telescope_residual =
      (out.delta_A.value + out.delta_phi.value + out.delta_i.value) - out.delta_total;

  // Monte-Carlo errors from per-realization values of each term.
  const auto& t = out.trace;
  auto mc = [&](auto&& term) {
    std::vector<double> v(R);
    for (std::size_t r = 0; r < R; ++r) {
      v[r] = term(r);
    }
    return summarize(v).std_error;
  };
  out.delta_i_x.mc_stderr = mc([&](std::size_t r) { return out.f_bar_x - t.nu_i_x[r]; });
  out.delta_i_y.mc_stderr = mc([&](std::size_t r) { return out.f_bar_y - t.nu_i_y[r]; });
  out.delta_phi_x.mc_stderr = mc([&](std::size_t r) { return t.nu_i_x[r] - t.nu_phi_x[r]; });
  out.delta_phi_y.mc_stderr = mc([&](std::size_t r) { return t.nu_i_y[r] - t.nu_phi_y[r]; });
  out.delta_A.mc_stderr = mc([&](std::size_t r) { return t.nu_phi_x[r] - t.nu_phi_y[r]; });
  out.delta_phi.mc_stderr = mc([&](std::size_t r) {
    return (t.nu_i_x[r] - t.nu_phi_x[r]) - (t.nu_i_y[r] - t.nu_phi_y[r]);
  });
  out.delta_i.mc_stderr = mc([&](std::size_t r) {
    return (out.f_bar_x - t.nu_i_x[r]) - (out.f_bar_y - t.nu_i_y[r]);
  });

  const auto ifx = ensemble_influence(fx);
  const auto ify = ensemble_influence(fy);
  const auto iwx = within_influence(wx);
  const auto iwy = within_influence(wy);
  const auto ipx = pooled_influence(px, y.size());
  const auto ipy = pooled_influence(py, x.size());
  const std::size_t n = x.size();
  const std::size_t m = y.size();
  auto finish = [](Component& c, double sampling_var) {
    c.std_error = std::sqrt(sampling_var + c.mc_stderr * c.mc_stderr);
  };
  finish(out.delta_i_x, sampling_variance({{1, &ifx, true}, {-1, &iwx, true}}, n, m));
  finish(out.delta_i_y, sampling_variance({{1, &ify, false}, {-1, &iwy, false}}, n, m));
  finish(out.delta_phi_x, sampling_variance({{1, &iwx, true}, {-1, &ipx, true}}, n, m));
  finish(out.delta_phi_y, sampling_variance({{1, &iwy, false}, {-1, &ipy, false}}, n, m));
  finish(out.delta_A, sampling_variance({{1, &ipx, true}, {-1, &ipy, false}}, n, m));
  finish(out.delta_phi, sampling_variance({{1, &iwx, true},
                                           {-1, &ipx, true},
                                           {-1, &iwy, false},
                                           {1, &ipy, false}},
                                          n, m));
  finish(out.delta_i, sampling_variance({{1, &ifx, true},
                                         {-1, &iwx, true},
                                         {-1, &ify, false},
                                         {1, &iwy, false}},
                                        n, m));
  return out;
}

namespace detail {

struct AlternativeParts {
  AlternativeResult result;
  std::vector<double> nu_phi_x, nu_phi_y;  // only filled when requested
};

inline AlternativeParts alternative_parts(const ConditionDataset& x, const ConditionDataset& y,
                                          const FeatureFunction& f,
                                          const DecomposeOptions& options, bool with_pooled) {
  const std::size_t R = options.realizations;
  const std::uint32_t cx = 0;
  const std::uint32_t cy = y_condition(options);
  const auto wx = run_shuffle(x, nullptr, Shuffle::within, f, options.seed, cx, R, options.threads);
  const auto wy = run_shuffle(y, nullptr, Shuffle::within, f, options.seed, cy, R, options.threads);
  const auto ax = run_shuffle(x, &y, Shuffle::alternative, f, options.seed, cx, R, options.threads);
  const auto ay = run_shuffle(y, &x, Shuffle::alternative, f, options.seed, cy, R, options.threads);
  const auto nix = wx.realization_means();
  const auto niy = wy.realization_means();
  const auto nax = ax.realization_means();
  const auto nay = ay.realization_means();

  AlternativeParts parts;
  auto& res = parts.result;
  res.nu_alt_x = summarize(nax);
  res.nu_alt_y = summarize(nay);
  const auto ix = summarize(nix);
  const auto iy = summarize(niy);
  res.value = (ix.mean - res.nu_alt_x.mean) - (iy.mean - res.nu_alt_y.mean);
  res.trace.resize(R);
  for (std::size_t r = 0; r < R; ++r) {
    res.trace[r] = (nix[r] - nax[r]) - (niy[r] - nay[r]);
  }
  res.mc_stderr = summarize(res.trace).std_error;
  if (with_pooled) {
    parts.nu_phi_x =
        run_shuffle(x, &y, Shuffle::pooled, f, options.seed, cx, R, options.threads)
            .realization_means();
    parts.nu_phi_y =
        run_shuffle(y, &x, Shuffle::pooled, f, options.seed, cy, R, options.threads)
            .realization_means();
  }
  return parts;
}

}  // namespace detail

/// Spectral component of the ordering that removes spectral differences
/// before phasic ones: amplitudes are borrowed from the pooled conditions
/// while each segment keeps its own phases.
inline AlternativeResult decompose_alternative(const ConditionDataset& x,
                                               const ConditionDataset& y,
                                               const FeatureDescriptor& fd,
                                               const DecomposeOptions& options = {}) {
  detail::validate_pair(x, y, options);
  return detail::alternative_parts(x, y, resolve_feature(fd), options, false).result;
}

/// Both spectral estimates from one set of streams, with the paired
/// realization-level error of their difference.
inline OrderingComparison compare_orderings(const ConditionDataset& x, const ConditionDataset& y,
                                            const FeatureDescriptor& fd,
                                            const DecomposeOptions& options = {}) {
  detail::validate_pair(x, y, options);
  const auto parts = detail::alternative_parts(x, y, resolve_feature(fd), options, true);
  const std::size_t R = options.realizations;
  std::vector<double> diff(R);
  std::vector<double> spectral(R);
  for (std::size_t r = 0; r < R; ++r) {
    spectral[r] = parts.nu_phi_x[r] - parts.nu_phi_y[r];
    diff[r] = parts.result.trace[r] - spectral[r];
  }
  OrderingComparison out;
  out.delta_A = detail::summarize(spectral).mean;
  out.delta_A_alt = parts.result.value;
  out.difference = out.delta_A_alt - out.delta_A;
  out.difference_stderr = detail::summarize(diff).std_error;
  return out;
}

}  // namespace specphase
