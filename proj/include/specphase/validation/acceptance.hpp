// Copyright 2026 The specphase Authors
// SPDX-License-Identifier: Apache-2.0

// End-to-end validation suites. Each returns one pass/fail record; `Scale`
// picks the full sizes or a quick reduced run for `specphase selftest`.

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "specphase/decomposition.hpp"
#include "specphase/features.hpp"
#include "specphase/fft.hpp"
#include "specphase/io.hpp"
#include "specphase/pipeline.hpp"
#include "specphase/random.hpp"
#include "specphase/spectral.hpp"
#include "specphase/stats.hpp"
#include "specphase/synthetic.hpp"
#include "specphase/validation/oracles.hpp"

namespace specphase::validation {

enum class Scale { full, reduced };

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct SuiteOptions {
  Scale scale = Scale::full;
  SeedSpec seed{2026};
  std::size_t threads = 1;
  std::filesystem::path scratch = std::filesystem::temp_directory_path() / "specphase_acceptance";
};

namespace detail {

inline std::string fmt(double v, int precision = 4) {
  std::ostringstream os;
  os << std::setprecision(precision) << v;
  return os.str();
}

/// z-scores of repeated trials against a standard normal: mean |z| below 3,
/// the mean within 3 standard errors of zero, and the count of |z| > 2 inside the
/// central 95% region of Binomial(n, 0.0455).
struct ZSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double mean_abs = 0.0;
  std::size_t over_two = 0;
  std::size_t over_lo = 0, over_hi = 0;
  [[nodiscard]] double mean_z_score() const { return mean * std::sqrt(static_cast<double>(n)); }
  [[nodiscard]] bool ok() const {
    return mean_abs < 3.0 && std::fabs(mean_z_score()) < 3.0 && over_two >= over_lo && over_two <= over_hi;
  }
  [[nodiscard]] std::string describe() const {
    return "mean z " + fmt(mean, 3) + " (sqrt(n)*mean " + fmt(mean_z_score(), 3) +
           "), mean |z| " + fmt(mean_abs, 3) + ", |z|>2 in " + std::to_string(over_two) + "/" +
           std::to_string(n) + " (allowed " + std::to_string(over_lo) + ".." +
           std::to_string(over_hi) + ")";
  }
};

inline ZSummary summarize_z(const std::vector<double>& zs) {
  ZSummary s;
  s.n = zs.size();
  for (double z : zs) {
    s.mean += z;
    s.mean_abs += std::fabs(z);
    s.over_two += std::fabs(z) > 2.0 ? 1 : 0;
  }
  s.mean /= static_cast<double>(s.n);
  s.mean_abs /= static_cast<double>(s.n);
  std::tie(s.over_lo, s.over_hi) = binomial_acceptance_region(s.n, 0.05, 0.95);
  return s;
}

inline std::vector<double> random_series(Xoshiro256& rng, std::size_t n) {
  std::vector<double> x(n);
  for (auto& v : x) {
    v = standard_normal(rng);
  }
  return x;
}

inline std::vector<std::uint8_t> bits_of(std::uint64_t word, std::size_t len) {
  std::vector<std::uint8_t> b(len);
  for (std::size_t i = 0; i < len; ++i) {
    b[i] = static_cast<std::uint8_t>((word >> i) & 1U);
  }
  return b;
}

template <typename F>
CriterionResult timed(int id, std::string name, F&& body) {
  const auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  try {
    body(r);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace detail

/// 1. The three components add up to the raw difference on random inputs.
inline CriterionResult telescoping(const SuiteOptions& o) {
  return detail::timed(1, "telescoping identity", [&](CriterionResult& r) {
    const std::size_t configs = o.scale == Scale::full ? 200 : 100;
    const std::size_t lengths[] = {8, 16, 64};
    double worst = 0.0;
    for (std::size_t c = 0; c < configs; ++c) {
      auto rng = derive_stream(o.seed, {Scheme::trial, 1, c, 0});
      const std::size_t n = 1 + uniform_index(rng, 8);
      const std::size_t m = 1 + uniform_index(rng, 8);
      const std::size_t len = lengths[uniform_index(rng, 3)];
      std::vector<TimeSeriesSegment> xs, ys;
      for (std::size_t j = 0; j < n; ++j) {
        xs.emplace_back(detail::random_series(rng, len));
      }
      for (std::size_t j = 0; j < m; ++j) {
        ys.emplace_back(detail::random_series(rng, len));
      }
      DecomposeOptions opts;
      opts.realizations = 1 + uniform_index(rng, 20);
      opts.seed = SeedSpec{rng()};
      const auto d = decompose(ConditionDataset(xs), ConditionDataset(ys), FeatureDescriptor{}, opts);
      const double sum = d.delta_A.value + (d.delta_phi_x.value - d.delta_phi_y.value) +
                         (d.delta_i_x.value - d.delta_i_y.value);
      worst = std::max(worst, std::fabs(sum - d.delta_total) / (1.0 + std::fabs(d.delta_total)));
    }
    r.passed = worst < 1e-12;
    r.detail = std::to_string(configs) + " configurations, max residual/(1+|delta|) " +
               detail::fmt(worst, 3);
  });
}

/// 2. Each component is calibrated (z ~ N(0,1)) when its null holds.
inline CriterionResult null_calibration(const SuiteOptions& o) {
  return detail::timed(2, "null calibration", [&](CriterionResult& r) {
    const bool full = o.scale == Scale::full;
    const std::size_t trials = full ? 50 : 20;
    const std::size_t n = full ? 100 : 40;
    const std::size_t len = full ? 256 : 128;
    const std::size_t R = full ? 100 : 40;
    const auto [spec_a, spec_b] = stand_in_spectra(len);
    const FeatureDescriptor lz{};
    struct Null {
      const char* name;
      int id;
    };
    bool all_ok = true;
    std::string detail_text;
    for (const Null null : {Null{"M^i (delta_i)", 0}, Null{"M^phi (delta_phi)", 1},
                            Null{"M^A (delta_A)", 2}}) {
      std::vector<double> zs(trials);
      parallel_for(trials, o.threads, [&](std::size_t t) {
        auto rng = derive_stream(o.seed, {Scheme::trial, 20U + static_cast<std::uint32_t>(null.id), t, 0});
        std::optional<ConditionDataset> x, y;
        switch (null.id) {
          case 0:  // amplitudes independent of phases; everything else differs
            x = make_dataset(spec_a, PhaseModel::iid_uniform(), n, rng);
            y = make_dataset(spec_b, PhaseModel::roughness(0.3), n, rng);
            break;
          case 1:  // same phase law in both conditions, different spectra
            x = make_dataset(spec_a, PhaseModel::roughness(0.4), n, rng);
            y = make_dataset(spec_b, PhaseModel::roughness(0.4), n, rng);
            break;
          default:  // same spectral law, different phase laws
            x = make_dataset(spec_a, PhaseModel::roughness(0.3), n, rng);
            y = make_dataset(spec_a, PhaseModel::iid_uniform(), n, rng);
            break;
        }
        DecomposeOptions opts;
        opts.realizations = R;
        opts.seed = child_seed(o.seed, 200U + static_cast<std::uint64_t>(null.id), t);
        const auto d = decompose(*x, *y, lz, opts);
        const Component& c = null.id == 0 ? d.delta_i : null.id == 1 ? d.delta_phi : d.delta_A;
        zs[t] = c.z();
      });
      const auto s = detail::summarize_z(zs);
      all_ok = all_ok && s.ok();
      detail_text += std::string(detail_text.empty() ? "" : "; ") + null.name + ": " +
                     s.describe() + (s.ok() ? "" : " FAIL");
    }
    r.passed = all_ok;
    r.detail = detail_text;
  });
}

/// 3. Assessing the spectral part first or second gives the same estimate.
inline CriterionResult order_invariance(const SuiteOptions& o) {
  return detail::timed(3, "order invariance", [&](CriterionResult& r) {
    const bool full = o.scale == Scale::full;
    const std::size_t pairs = full ? 20 : 10;
    const std::size_t n = full ? 100 : 40;
    const std::size_t len = full ? 256 : 128;
    const std::size_t R = full ? 500 : 100;
    const auto [spec_a, spec_b] = stand_in_spectra(len);
    std::vector<double> zs(pairs);
    parallel_for(pairs, o.threads, [&](std::size_t p) {
      auto rng = derive_stream(o.seed, {Scheme::trial, 3, p, 0});
      const auto x = make_dataset(spec_a, PhaseModel::roughness(0.5), n, rng);
      const auto y = make_dataset(spec_b, PhaseModel::iid_uniform(), n, rng);
      DecomposeOptions opts;
      opts.realizations = R;
      opts.seed = child_seed(o.seed, 300, p);
      zs[p] = compare_orderings(x, y, FeatureDescriptor{}, opts).z();
    });
    std::size_t within = 0;
    double worst = 0.0;
    for (double z : zs) {
      within += std::fabs(z) < 3.0 ? 1 : 0;
      worst = std::max(worst, std::fabs(z));
    }
    const std::size_t needed = pairs - pairs / 20;
    r.passed = within >= needed;
    r.detail = std::to_string(within) + "/" + std::to_string(pairs) +
               " pairs with |z| < 3 (need " + std::to_string(needed) + "), max |z| " +
               detail::fmt(worst, 3);
  });
}

/// 4. The naive surrogate test rejects far too often when phases are
/// shared, while the decomposition attributes nothing to phases.
inline CriterionResult naive_failure(const SuiteOptions& o) {
  return detail::timed(4, "naive-test failure", [&](CriterionResult& r) {
    const bool full = o.scale == Scale::full;
    SweepConfig cfg;
    cfg.c_values = {0.0, 0.25, 0.5, 1.0};
    cfg.trials = full ? 400 : 100;
    cfg.realizations = 199;
    cfg.alpha = 0.05;
    cfg.length = 256;  // the stand-in spectra are tuned for this length
    cfg.seed = o.seed;
    cfg.threads = o.threads;
    const auto reports = false_positive_sweep(cfg);
    bool ok = true;
    std::string text;
    for (const auto& rep : reports) {
      const double p_high = binomial_upper_tail(rep.rejections, rep.trials, cfg.alpha);
      bool row_ok = true;
      if (rep.c == 1.0) {
        row_ok = rep.ci_lo <= cfg.alpha && cfg.alpha <= rep.ci_hi;
      } else if (rep.c == 0.0 || rep.c == 0.25) {
        row_ok = rep.rate > cfg.alpha && p_high < 0.01;
      }
      ok = ok && row_ok;
      text += "c=" + detail::fmt(rep.c) + " rate " + detail::fmt(rep.rate, 3) + " [" +
              detail::fmt(rep.ci_lo, 3) + "," + detail::fmt(rep.ci_hi, 3) + "]" +
              (row_ok ? "" : " FAIL") + "; ";
    }
    const std::size_t companion = full ? 20 : 8;
    const auto decs =
        sweep_decompositions(cfg, companion, full ? 100 : 40, full ? 100 : 40);
    for (double c : cfg.c_values) {
      std::vector<double> zs;
      double largest = 0.0;
      for (const auto& d : decs) {
        if (d.c == c) {
          zs.push_back(d.delta_phi.z());
          largest = std::max(largest, std::fabs(d.delta_phi.value));
        }
      }
      const auto s = detail::summarize_z(zs);
      ok = ok && s.ok();
      text += "phasic z at c=" + detail::fmt(c) + ": " + s.describe() + ", max |delta_phi| " +
              detail::fmt(largest, 3) + (s.ok() ? "" : " FAIL") + "; ";
    }
    r.passed = ok;
    r.detail = text;
  });
}

/// 5. The linear-time LZ76 parser agrees with the quadratic reference.
inline CriterionResult lz76_equivalence(const SuiteOptions& o) {
  return detail::timed(5, "LZ76 oracle equivalence", [&](CriterionResult& r) {
    const std::size_t max_len = o.scale == Scale::full ? 14 : 12;
    const std::size_t random_count = o.scale == Scale::full ? 10000 : 2000;
    std::size_t checked = 0, mismatches = 0, complement_bad = 0, prefix_bad = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
      for (std::uint64_t w = 0; w < (std::uint64_t{1} << len); ++w) {
        const auto b = detail::bits_of(w, len);
        const std::size_t c = lz76_complexity(b);
        mismatches += c != oracle::lz76(b) ? 1 : 0;
        auto comp = b;
        for (auto& bit : comp) {
          bit ^= 1U;
        }
        complement_bad += lz76_complexity(comp) != c ? 1 : 0;
        if (len < max_len) {
          for (const std::uint8_t next : {std::uint8_t{0}, std::uint8_t{1}}) {
            auto ext = b;
            ext.push_back(next);
            prefix_bad += lz76_complexity(ext) < c ? 1 : 0;
          }
        }
        ++checked;
      }
    }
    auto rng = derive_stream(o.seed, {Scheme::trial, 5, 0, 0});
    for (std::size_t i = 0; i < random_count; ++i) {
      const std::size_t len = 1 + uniform_index(rng, 256);
      std::vector<std::uint8_t> b(len);
      for (auto& bit : b) {
        bit = fair_coin(rng) ? 1 : 0;
      }
      mismatches += lz76_complexity(b) != oracle::lz76(b) ? 1 : 0;
    }
    r.passed = mismatches == 0 && complement_bad == 0 && prefix_bad == 0;
    r.detail = std::to_string(checked) + " exhaustive + " + std::to_string(random_count) +
               " random strings: " + std::to_string(mismatches) + " mismatches, " +
               std::to_string(complement_bad) + " complement violations, " +
               std::to_string(prefix_bad) + " prefix violations";
  });
}

/// 6. Monte-Carlo estimates match expectations enumerated over every donor
/// and coin assignment for N = M = 2, T = 8.
inline CriterionResult exact_enumeration(const SuiteOptions& o) {
  return detail::timed(6, "small-instance enumeration", [&](CriterionResult& r) {
    const std::size_t datasets = o.scale == Scale::full ? 5 : 2;
    const std::size_t R = 2000;
    const FeatureDescriptor lz{};
    const auto f = resolve_feature(lz);
    double worst = 0.0;
    for (std::size_t d = 0; d < datasets; ++d) {
      auto rng = derive_stream(o.seed, {Scheme::trial, 6, d, 0});
      std::vector<oracle::Series> xs, ys;
      std::vector<TimeSeriesSegment> sx, sy;
      for (std::size_t j = 0; j < 2; ++j) {
        xs.push_back(detail::random_series(rng, 8));
        ys.push_back(detail::random_series(rng, 8));
        sx.emplace_back(xs.back());
        sy.emplace_back(ys.back());
      }
      const ConditionDataset x(sx), y(sy);
      const SeedSpec seed = child_seed(o.seed, 600, d);
      auto check = [&](double estimate, double se, double exact) {
        const double dev = std::fabs(estimate - exact);
        const double score = se > 0.0 ? dev / se : (dev < 1e-12 ? 0.0 : 1e300);
        worst = std::max(worst, score);
      };
      const auto wx = nu_within(x, lz, R, seed, 0);
      check(wx.mean, wx.std_error, oracle::nu_within(xs, f));
      const auto wy = nu_within(y, lz, R, seed, 1);
      check(wy.mean, wy.std_error, oracle::nu_within(ys, f));
      const auto ax = nu_across(x, y, lz, R, seed, 0);
      check(ax.mean, ax.std_error, oracle::nu_across(xs, ys, f));
      const auto ay = nu_across(y, x, lz, R, seed, 1);
      check(ay.mean, ay.std_error, oracle::nu_across(ys, xs, f));
      DecomposeOptions opts;
      opts.realizations = R;
      opts.seed = seed;
      const auto alt = decompose_alternative(x, y, lz, opts);
      check(alt.value, alt.mc_stderr, oracle::delta_A_alternative(xs, ys, f));
    }
    r.passed = worst < 4.0;
    r.detail = std::to_string(datasets) + " datasets x 5 estimates at R=" + std::to_string(R) +
               ", worst deviation " + detail::fmt(worst, 3) + " stderr";
  });
}

/// 7. Transform identities and t-test p-values.
inline CriterionResult numerics(const SuiteOptions& o) {
  return detail::timed(7, "numerics", [&](CriterionResult& r) {
    const std::size_t segments = o.scale == Scale::full ? 1000 : 200;
    auto rng = derive_stream(o.seed, {Scheme::trial, 7, 0, 0});
    double round_trip = 0.0, parseval = 0.0, preservation = 0.0, realness = 0.0;
    Synthesizer synth;
    for (std::size_t i = 0; i < segments; ++i) {
      const std::size_t len = 2 + uniform_index(rng, 299);  // odd and even lengths
      const TimeSeriesSegment x(detail::random_series(rng, len));
      const TimeSeriesSegment y(detail::random_series(rng, len));
      const auto sx = forward_spectrum(x);
      const auto back = inverse_series(sx);
      double inf_norm = 0.0, err = 0.0, energy = 0.0, spec_energy = 0.0;
      for (std::size_t t = 0; t < len; ++t) {
        inf_norm = std::max(inf_norm, std::fabs(x[t]));
        err = std::max(err, std::fabs(back[t] - x[t]));
        energy += x[t] * x[t];
        spec_energy += sx.amplitudes[t] * sx.amplitudes[t];
      }
      round_trip = std::max(round_trip, err / (1.0 + inf_norm));
      parseval = std::max(parseval,
                          std::fabs(energy - spec_energy / static_cast<double>(len)) / energy);
      const PreparedSpectrum px(sx);
      const PreparedSpectrum py(forward_spectrum(y));
      const auto mixed = synth.synthesize(px, py);
      realness = std::max(realness, synth.last_residue() / px.max_amplitude());
      const auto sm = forward_spectrum(mixed);
      for (std::size_t k = 0; k < len; ++k) {
        preservation = std::max(
            preservation, std::fabs(sm.amplitudes[k] - sx.amplitudes[k]) / px.max_amplitude());
      }
    }
    double t_err = 0.0;
    for (std::size_t i = 0; i < 50; ++i) {
      const double t = -10.0 + 20.0 * static_cast<double>(i) / 49.0;
      const double df = 1.0 + static_cast<double>((i * 37) % 200);
      t_err = std::max(t_err,
                       std::fabs(student_t_two_sided_p(t, df) - oracle::student_t_two_sided_p(t, df)));
    }
    r.passed = round_trip < 1e-9 && parseval < 1e-9 && preservation < 1e-9 && realness < 1e-9 &&
               t_err < 1e-6;
    r.detail = std::to_string(segments) + " segments: round trip " + detail::fmt(round_trip, 2) +
               ", Parseval " + detail::fmt(parseval, 2) + ", amplitude preservation " +
               detail::fmt(preservation, 2) + ", imaginary residue " + detail::fmt(realness, 2) +
               "; t-test max |p - quadrature| " + detail::fmt(t_err, 2) + " on 50 points";
  });
}

/// 8. decompose output is byte-identical at 4 and 1 worker threads.
inline CriterionResult reproducibility(const SuiteOptions& o) {
  return detail::timed(8, "reproducibility", [&](CriterionResult& r) {
    namespace fs = std::filesystem;
    const fs::path root = o.scratch / "reproducibility";
    fs::remove_all(root);
    pipeline::GenConfig gen;
    gen.subjects = 3;
    gen.channels = 2;
    gen.segments = o.scale == Scale::full ? 30 : 12;
    gen.length = 128;
    gen.seed = o.seed;
    gen.out = root / "study";
    pipeline::run_gen(gen);
    auto run = [&](std::size_t threads, const char* dir) {
      pipeline::DecomposeConfig cfg;
      cfg.manifest = root / "study" / "manifest.csv";
      cfg.realizations = o.scale == Scale::full ? 100 : 30;
      cfg.seed = o.seed;
      cfg.threads = threads;
      cfg.out = root / dir;
      return pipeline::run_decompose(cfg);
    };
    run(4, "t4");
    run(1, "t1");
    auto slurp = [](const fs::path& p) {
      std::ifstream in(p, std::ios::binary);
      return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    };
    std::size_t same = 0;
    std::vector<std::string> files{"decomposition.csv", "group_ttests.csv", "run_summary.json"};
    std::string differing;
    for (const auto& f : files) {
      const auto a = slurp(root / "t4" / f);
      const auto b = slurp(root / "t1" / f);
      if (!a.empty() && a == b) {
        ++same;
      } else {
        differing += " " + f;
      }
    }
    fs::remove_all(root);
    r.passed = same == files.size();
    r.detail = std::to_string(same) + "/" + std::to_string(files.size()) +
               " output files byte-identical" + (differing.empty() ? "" : " (differ:" + differing + ")");
  });
}

inline std::vector<std::function<CriterionResult(const SuiteOptions&)>> all_criteria() {
  return {telescoping,  null_calibration, order_invariance, naive_failure,
          lz76_equivalence, exact_enumeration, numerics,   reproducibility};
}

inline void print_line(std::ostream& out, const CriterionResult& r) {
  out << (r.passed ? "PASS" : "FAIL") << "  criterion " << r.id << " (" << r.name << ") "
      << std::fixed << std::setprecision(1) << r.seconds << "s  " << std::defaultfloat
      << r.detail << std::endl;
}

/// Runs the selected criteria (all when `only` is empty), printing one line
/// each. Returns true when every criterion passed.
inline bool run_suite(const SuiteOptions& o, std::ostream& out, const std::vector<int>& only = {}) {
  bool ok = true;
  const auto criteria = all_criteria();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) {
      continue;
    }
    const auto r = criteria[i](o);
    print_line(out, r);
    ok = ok && r.passed;
  }
  return ok;
}

}  // namespace specphase::validation
