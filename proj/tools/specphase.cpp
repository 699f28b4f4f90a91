// Copyright 2026 The specphase Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end: decompose, naive-demo, feature, selftest, gen.

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "specphase/errors.hpp"
#include "specphase/pipeline.hpp"
#include "specphase/validation/acceptance.hpp"

namespace {

using namespace specphase;
using namespace specphase::pipeline;

// Flag text that needs conversion after parsing.
struct CommonText {
  std::uint64_t seed = 0;
  std::string format = "csv";
  std::vector<std::string> feature_options;
};

void add_common(CLI::App* cmd, CommonConfig& cfg, CommonText& text) {
  cmd->add_option("--seed", text.seed, "master seed (u64)")->capture_default_str();
  cmd->add_option("--realizations", cfg.realizations, "Monte-Carlo realizations R")
      ->capture_default_str();
  cmd->add_option("--feature", cfg.feature.name, "feature name")->capture_default_str();
  cmd->add_option("--feature-option", text.feature_options, "feature option key=value (repeatable)");
  cmd->add_option("--alpha", cfg.alpha, "significance level")->capture_default_str();
  cmd->add_option("--out", cfg.out, "output directory")->capture_default_str();
  cmd->add_option("--format", text.format, "data file format: csv or bin")->capture_default_str();
  cmd->add_option("--threads", cfg.threads, "worker threads (0: SPECPHASE_THREADS or all cores)")
      ->capture_default_str();
}

void finish_common(CommonConfig& cfg, const CommonText& text) {
  cfg.seed = SeedSpec{text.seed};
  cfg.format = parse_format(text.format);
  for (const auto& kv : text.feature_options) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ValidationError("--feature-option expects key=value, got '" + kv + "'");
    }
    cfg.feature.options[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
}

void add_window(CLI::App* cmd, WindowSpec& w) {
  cmd->add_option("--window", w.length, "cut rows into windows of this length (0: rows are segments)")
      ->capture_default_str();
  cmd->add_option("--stride", w.stride, "window stride (0: non-overlapping)")->capture_default_str();
}

void report(const RunOutcome& outcome) {
  for (const auto& n : outcome.notices) {
    std::cerr << "notice: " << n << '\n';
  }
  for (const auto& f : outcome.files) {
    std::cout << "wrote " << f.string() << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral/phasic decomposition of feature differences between conditions"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.set_config("--config", "", "read options from a config file ([command] sections)");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1, 1);

  DecomposeConfig dec;
  CommonText dec_text;
  auto* dec_cmd = app.add_subcommand("decompose", "decompose every (subject, channel) cell of a study");
  add_common(dec_cmd, dec, dec_text);
  dec_cmd->add_option("--manifest", dec.manifest, "study manifest CSV")->required();
  add_window(dec_cmd, dec.window);
  dec_cmd->add_flag("--mirrored-seeds", dec.mirrored_seeds,
                    "use the same random streams for both conditions");

  NaiveDemoConfig naive;
  CommonText naive_text;
  auto* naive_cmd = app.add_subcommand("naive-demo", "false-positive sweep of the naive surrogate test");
  add_common(naive_cmd, naive, naive_text);
  naive_cmd->add_option("--c-values", naive.c_values, "phase roughness values")->delimiter(',');
  naive_cmd->add_option("--trials", naive.trials, "trials per c")->capture_default_str();
  naive_cmd->add_option("--length", naive.length, "segment length")->capture_default_str();
  naive_cmd->add_option("--companion-trials", naive.companion_trials,
                        "decomposition trials per c (0 to skip)")
      ->capture_default_str();
  naive_cmd->add_option("--companion-segments", naive.companion_segments,
                        "segments per condition in companion datasets")
      ->capture_default_str();
  naive_cmd->add_option("--companion-realizations", naive.companion_realizations,
                        "realizations for companion decompositions")
      ->capture_default_str();

  FeatureConfig feat;
  CommonText feat_text;
  auto* feat_cmd = app.add_subcommand("feature", "print the feature value of every segment in a file");
  add_common(feat_cmd, feat, feat_text);
  feat_cmd->add_option("--input", feat.input, "data file")->required();
  add_window(feat_cmd, feat.window);

  std::uint64_t selftest_seed = 2026;
  std::size_t selftest_threads = 0;
  std::vector<int> selftest_only;
  auto* self_cmd = app.add_subcommand("selftest", "run the validation suites at reduced scale");
  self_cmd->add_option("--seed", selftest_seed, "master seed")->capture_default_str();
  self_cmd->add_option("--threads", selftest_threads, "worker threads")->capture_default_str();
  self_cmd->add_option("--only", selftest_only, "run only these criteria (1-8)")
      ->check(CLI::Range(1, 8))
      ->delimiter(',');

  GenConfig gen;
  CommonText gen_text;
  std::string gen_mode = "spectral";
  auto* gen_cmd = app.add_subcommand("gen", "write a synthetic study and its manifest");
  add_common(gen_cmd, gen, gen_text);
  gen_cmd->add_option("--subjects", gen.subjects, "subjects")->capture_default_str();
  gen_cmd->add_option("--channels", gen.channels, "channels per subject")->capture_default_str();
  gen_cmd->add_option("--segments", gen.segments, "segments per condition")->capture_default_str();
  gen_cmd->add_option("--length", gen.length, "segment length")->capture_default_str();
  gen_cmd->add_option("--mode", gen_mode,
                      "spectral: spectra differ, phases shared; null: no difference; copy: y = x")
      ->capture_default_str();
  gen_cmd->add_option("--phase-c", gen.phase_c, "phase roughness c in [0, 1]")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidationFailure;
  }

  try {
    if (*dec_cmd) {
      finish_common(dec, dec_text);
      report(run_decompose(dec));
    } else if (*naive_cmd) {
      finish_common(naive, naive_text);
      report(run_naive_demo(naive));
    } else if (*feat_cmd) {
      finish_common(feat, feat_text);
      std::cout << run_feature(feat);
    } else if (*self_cmd) {
      validation::SuiteOptions opts;
      opts.scale = validation::Scale::reduced;
      opts.seed = SeedSpec{selftest_seed};
      opts.threads = resolve_threads(selftest_threads);
      const bool ok = validation::run_suite(opts, std::cout, selftest_only);
      std::cout << (ok ? "selftest passed" : "selftest FAILED") << '\n';
      return ok ? kOk : kRuntimeFailure;
    } else if (*gen_cmd) {
      finish_common(gen, gen_text);
      gen.mode = parse_gen_mode(gen_mode);
      report(run_gen(gen));
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << '\n';
    return kRuntimeFailure;
  }
  return kOk;
}
