// Copyright 2026 The specphase Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance binary: one PASS/FAIL line per criterion, nonzero exit on any
// failure. The master seed was fixed before any acceptance run.

#include <cstdint>
#include <iostream>
#include <vector>

#include <CLI11.hpp>

#include "specphase/parallel.hpp"
#include "specphase/validation/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"specphase acceptance suite"};
  std::uint64_t seed = 2026;
  std::size_t threads = 0;
  bool reduced = false;
  std::vector<int> only;
  app.add_option("--seed", seed, "master seed")->capture_default_str();
  app.add_option("--threads", threads, "worker threads (0: SPECPHASE_THREADS or all cores)");
  app.add_flag("--reduced", reduced, "run at the reduced selftest scale");
  app.add_option("--only", only, "criteria to run (1-8)")->check(CLI::Range(1, 8))->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  specphase::validation::SuiteOptions opts;
  opts.scale = reduced ? specphase::validation::Scale::reduced : specphase::validation::Scale::full;
  opts.seed = specphase::SeedSpec{seed};
  opts.threads = specphase::resolve_threads(threads);
  return specphase::validation::run_suite(opts, std::cout, only) ? 0 : 1;
}
