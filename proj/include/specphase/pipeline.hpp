// Copyright 2026 The specphase Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

#include "specphase/dataset.hpp"
#include "specphase/decomposition.hpp"
#include "specphase/errors.hpp"
#include "specphase/features.hpp"
#include "specphase/io.hpp"
#include "specphase/parallel.hpp"
#include "specphase/random.hpp"
#include "specphase/stats.hpp"
#include "specphase/synthetic.hpp"

namespace specphase::pipeline {

inline constexpr std::string_view kToolVersion = "1.0.0";
/// Bumped whenever a column is added, removed or renamed in any output.
inline constexpr int kSchemaVersion = 1;

enum ExitCode : int { kOk = 0, kValidationFailure = 1, kRuntimeFailure = 2 };

// ---------------------------------------------------------------------------
// Configuration

struct CommonConfig {
  FeatureDescriptor feature{};
  std::size_t realizations = 500;
  SeedSpec seed{};
  double alpha = 0.05;
  std::filesystem::path out = ".";
  DataFormat format = DataFormat::csv;
  std::size_t threads = 0;  // 0: SPECPHASE_THREADS or hardware concurrency
};

/// Cutting continuous recordings into segments. length 0 means every stored
/// row already is one segment; stride 0 means non-overlapping windows.
struct WindowSpec {
  std::size_t length = 0;
  std::size_t stride = 0;
};

struct DecomposeConfig : CommonConfig {
  std::filesystem::path manifest;
  WindowSpec window{};
  bool mirrored_seeds = false;
};

struct NaiveDemoConfig : CommonConfig {
  NaiveDemoConfig() { realizations = 199; }
  std::vector<double> c_values{0.0, 0.25, 0.5, 1.0};
  std::size_t trials = 400;
  std::size_t length = 256;
  std::size_t companion_trials = 10;
  std::size_t companion_segments = 100;
  std::size_t companion_realizations = 100;
};

struct FeatureConfig : CommonConfig {
  std::filesystem::path input;
  WindowSpec window{};
};

enum class GenMode { spectral, null, copy };

inline GenMode parse_gen_mode(std::string_view s) {
  if (s == "spectral") {
    return GenMode::spectral;
  }
  if (s == "null") {
    return GenMode::null;
  }
  if (s == "copy") {
    return GenMode::copy;
  }
  throw ValidationError("unknown gen mode '" + std::string(s) + "' (spectral, null, copy)");
}

inline std::string gen_mode_name(GenMode m) {
  switch (m) {
    case GenMode::spectral:
      return "spectral";
    case GenMode::null:
      return "null";
    case GenMode::copy:
      return "copy";
  }
  return "?";
}

/// A synthetic study: `spectral` gives x and y the two stand-in spectra with
/// shared phases per segment pair; `null` draws both conditions from one
/// model; `copy` writes identical x and y files.
struct GenConfig : CommonConfig {
  std::size_t subjects = 20;
  std::size_t channels = 1;
  std::size_t segments = 100;
  std::size_t length = 256;
  GenMode mode = GenMode::spectral;
  double phase_c = 1.0;
};

inline void validate_common(const CommonConfig& c) {
  if (c.realizations == 0) {
    throw ValidationError("realizations must be at least 1");
  }
  if (!(c.alpha > 0.0 && c.alpha < 1.0)) {
    throw ValidationError("alpha must lie in (0, 1)");
  }
  resolve_feature(c.feature);
  resolve_threads(c.threads);
}

// ---------------------------------------------------------------------------
// Study layout

inline std::vector<std::vector<double>> apply_window(const std::vector<std::vector<double>>& rows,
                                                     const WindowSpec& w) {
  if (w.length == 0) {
    return rows;
  }
  if (w.length < 2) {
    throw ValidationError("window length must be at least 2");
  }
  const std::size_t stride = w.stride == 0 ? w.length : w.stride;
  std::vector<std::vector<double>> out;
  for (const auto& rec : rows) {
    for (std::size_t start = 0; start + w.length <= rec.size(); start += stride) {
      out.emplace_back(rec.begin() + static_cast<std::ptrdiff_t>(start),
                       rec.begin() + static_cast<std::ptrdiff_t>(start + w.length));
    }
  }
  return out;
}

struct StudyCell {
  std::string subject;
  std::string channel;
  ConditionDataset x;
  ConditionDataset y;
};

struct StudyLayout {
  std::vector<StudyCell> cells;  // sorted by (subject, channel)
  std::size_t segment_length = 0;

  [[nodiscard]] std::vector<std::string> channels() const {
    std::vector<std::string> out;
    for (const auto& c : cells) {
      out.push_back(c.channel);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
};

/// Reads a manifest CSV with header `subject,channel,condition,path[,format]`.
/// Condition is "x" or "y"; several files for one cell are pooled in manifest
/// order. Relative paths resolve against the manifest's directory.
inline StudyLayout load_study(const std::filesystem::path& manifest, DataFormat default_format,
                              const WindowSpec& window) {
  std::ifstream in(manifest);
  if (!in) {
    throw ValidationError("cannot open manifest '" + manifest.string() + "'");
  }
  const auto base = manifest.parent_path();
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  bool has_format = false;
  using Key = std::tuple<std::string, std::string, std::string>;
  std::map<Key, std::vector<std::vector<double>>> pools;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = specphase::detail::trim(line);
    if (text.empty() || text.front() == '#') {
      continue;
    }
    auto cells = specphase::detail::split_commas(text);
    for (auto& c : cells) {
      c = specphase::detail::trim(c);
    }
    const std::string where = manifest.string() + ":" + std::to_string(line_no);
    if (!have_header) {
      if (cells.size() < 4 || cells[0] != "subject" || cells[1] != "channel" ||
          cells[2] != "condition" || cells[3] != "path" ||
          (cells.size() == 5 && cells[4] != "format") || cells.size() > 5) {
        throw ValidationError(where + ": manifest header must be "
                                      "'subject,channel,condition,path[,format]'");
      }
      has_format = cells.size() == 5;
      have_header = true;
      continue;
    }
    if (cells.size() != (has_format ? 5U : 4U)) {
      throw ValidationError(where + ": expected " + std::to_string(has_format ? 5 : 4) +
                            " fields, found " + std::to_string(cells.size()));
    }
    const std::string condition(cells[2]);
    if (condition != "x" && condition != "y") {
      throw ValidationError(where + ": condition must be 'x' or 'y', got '" + condition + "'");
    }
    if (cells[0].empty() || cells[1].empty()) {
      throw ValidationError(where + ": empty subject or channel");
    }
    const DataFormat fmt =
        has_format && !cells[4].empty() ? parse_format(cells[4]) : default_format;
    std::filesystem::path path{std::string(cells[3])};
    if (path.is_relative()) {
      path = base / path;
    }
    auto rows = apply_window(read_rows(path, fmt), window);
    auto& pool = pools[Key{std::string(cells[0]), std::string(cells[1]), condition}];
    pool.insert(pool.end(), std::make_move_iterator(rows.begin()),
                std::make_move_iterator(rows.end()));
  }
  if (!have_header) {
    throw ValidationError("manifest '" + manifest.string() + "' is empty");
  }

  StudyLayout study;
  std::map<std::pair<std::string, std::string>, int> seen;
  for (const auto& [key, rows] : pools) {
    seen[{std::get<0>(key), std::get<1>(key)}] = 0;
  }
  for (const auto& [cell, unused] : seen) {
    const auto& [subject, channel] = cell;
    const std::string name = "cell (subject=" + subject + ", channel=" + channel + ")";
    auto take = [&](const std::string& cond) -> std::vector<std::vector<double>>& {
      auto it = pools.find(Key{subject, channel, cond});
      if (it == pools.end() || it->second.empty()) {
        throw ValidationError(name + " has no segments for condition '" + cond + "'");
      }
      return it->second;
    };
    auto& xr = take("x");
    auto& yr = take("y");
    try {
      StudyCell c{subject, channel, dataset_from_rows(xr, {"x", subject, channel}),
                  dataset_from_rows(yr, {"y", subject, channel})};
      require_same_length(c.x, c.y);
      if (study.segment_length == 0) {
        study.segment_length = c.x.segment_length();
      } else if (study.segment_length != c.x.segment_length()) {
        throw ValidationError("segment length " + std::to_string(c.x.segment_length()) +
                              " differs from the study's " +
                              std::to_string(study.segment_length));
      }
      study.cells.push_back(std::move(c));
    } catch (const ValidationError& e) {
      throw ValidationError(name + ": " + e.what());
    }
  }
  if (study.cells.empty()) {
    throw ValidationError("manifest '" + manifest.string() + "' lists no data files");
  }
  return study;
}

/// 64-bit FNV-1a of a name; cell seeds depend on names, not on positions.
inline std::uint64_t name_hash(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline SeedSpec cell_seed(SeedSpec master, std::string_view subject, std::string_view channel) {
  return child_seed(master, name_hash(subject), name_hash(channel));
}

// ---------------------------------------------------------------------------
// Outputs

/// Files of one run, held in memory and written together. If writing fails
/// part way, files already written are removed again.
class OutputSet {
 public:
  void add(std::string name, std::string content) {
    files_.emplace_back(std::move(name), std::move(content));
  }

  std::vector<std::filesystem::path> commit(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
      throw Error("cannot create output directory '" + dir.string() + "': " + ec.message());
    }
    std::vector<std::filesystem::path> written;
    try {
      for (const auto& [name, content] : files_) {
        const auto path = dir / name;
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        written.push_back(path);
        if (!out || !out.write(content.data(), static_cast<std::streamsize>(content.size())) ||
            !out.flush()) {
          throw Error("cannot write '" + path.string() + "'");
        }
      }
    } catch (...) {
      for (const auto& p : written) {
        std::filesystem::remove(p, ec);
      }
      throw;
    }
    return written;
  }

 private:
  std::vector<std::pair<std::string, std::string>> files_;
};

namespace detail {

inline void csv_field(std::string& row, double v) {
  row += ',';
  append_double(row, v);
}

inline std::string feature_label(const FeatureDescriptor& fd) {
  std::string s = fd.name;
  for (const auto& [k, v] : fd.options) {
    s += ";" + k + "=" + v;
  }
  return s;
}

inline nlohmann::ordered_json common_json(const CommonConfig& c) {
  nlohmann::ordered_json j;
  j["feature"] = c.feature.name;
  j["feature_options"] = c.feature.options;
  j["realizations"] = c.realizations;
  j["seed"] = c.seed.master_seed;
  j["alpha"] = c.alpha;
  j["format"] = format_name(c.format);
  return j;
}

/// Deterministic part of a run summary; wall time and thread count go to a
/// separate timing file so repeated runs can be compared byte for byte.
inline std::string summary_json(std::string_view command, nlohmann::ordered_json config,
                                const std::vector<std::string>& outputs,
                                const std::vector<std::string>& notices) {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["tool"] = "specphase";
  j["version"] = std::string(kToolVersion);
  j["stand_in_spectra_version"] = kStandInSpectraVersion;
  j["command"] = std::string(command);
  j["config"] = std::move(config);
  j["outputs"] = outputs;
  j["notices"] = notices;
  return j.dump(2) + "\n";
}

inline std::string timing_json(double seconds, std::size_t threads) {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["wall_time_seconds"] = seconds;
  j["threads"] = threads;
  return j.dump(2) + "\n";
}

/// Reruns `body`, prefixing any error message with `where` but keeping the
/// error category.
template <typename F>
auto with_context(const std::string& where, F&& body) {
  try {
    return body();
  } catch (const ZeroVarianceError& e) {
    throw ZeroVarianceError(where + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(where + ": " + e.what());
  } catch (const std::exception& e) {
    throw Error(where + ": " + e.what());
  }
}

}  // namespace detail

struct RunOutcome {
  std::vector<std::filesystem::path> files;
  std::vector<std::string> notices;
};

inline constexpr std::string_view kDecompositionHeader =
    "subject,channel,delta_total,delta_A,delta_phi_x,delta_phi_y,delta_i_x,delta_i_y,"
    "stderr_A,stderr_phi_x,stderr_phi_y,stderr_i_x,stderr_i_y,R,seed";

inline constexpr std::string_view kTtestHeader = "channel,component,t,df,p";

/// Components tested across subjects, with their decomposition.csv columns.
inline const std::vector<std::string>& tested_components() {
  static const std::vector<std::string> names{"delta_total", "delta_A",   "delta_phi_x",
                                              "delta_phi_y", "delta_i_x", "delta_i_y"};
  return names;
}

/// Decomposes every (subject, channel) cell of a study and runs per-channel
/// one-sample t-tests across subjects on each component.
inline RunOutcome run_decompose(const DecomposeConfig& cfg) {
  const auto started = std::chrono::steady_clock::now();
  validate_common(cfg);
  if (cfg.manifest.empty()) {
    throw ValidationError("decompose needs a manifest (--manifest)");
  }
  const std::size_t threads = resolve_threads(cfg.threads);
  const auto study = load_study(cfg.manifest, cfg.format, cfg.window);
  const std::size_t n_cells = study.cells.size();

  std::vector<DecompositionResult> results(n_cells);
  std::vector<SeedSpec> seeds(n_cells);
  const std::size_t cell_threads = n_cells >= threads ? threads : 1;
  const std::size_t inner_threads = n_cells >= threads ? 1 : threads;
  parallel_for(n_cells, cell_threads, [&](std::size_t i) {
    const auto& cell = study.cells[i];
    seeds[i] = cell_seed(cfg.seed, cell.subject, cell.channel);
    DecomposeOptions opts;
    opts.realizations = cfg.realizations;
    opts.seed = seeds[i];
    opts.mirrored_seeds = cfg.mirrored_seeds;
    opts.threads = inner_threads;
    results[i] = detail::with_context(
        "cell (subject=" + cell.subject + ", channel=" + cell.channel + ")",
        [&] { return decompose(cell.x, cell.y, cfg.feature, opts); });
  });

  std::string table(kDecompositionHeader);
  table += '\n';
  for (std::size_t i = 0; i < n_cells; ++i) {
    const auto& r = results[i];
    std::string row = study.cells[i].subject + "," + study.cells[i].channel;
    for (double v : {r.delta_total, r.delta_A.value, r.delta_phi_x.value, r.delta_phi_y.value,
                     r.delta_i_x.value, r.delta_i_y.value, r.delta_A.std_error,
                     r.delta_phi_x.std_error, r.delta_phi_y.std_error, r.delta_i_x.std_error,
                     r.delta_i_y.std_error}) {
      detail::csv_field(row, v);
    }
    row += "," + std::to_string(r.realizations) + "," + std::to_string(seeds[i].master_seed);
    table += row + '\n';
  }

  RunOutcome outcome;
  OutputSet outputs;
  outputs.add("decomposition.csv", table);
  std::vector<std::string> names{"decomposition.csv"};

  std::string ttests(kTtestHeader);
  ttests += '\n';
  bool any_test = false;
  for (const auto& channel : study.channels()) {
    std::vector<const DecompositionResult*> group;
    for (std::size_t i = 0; i < n_cells; ++i) {
      if (study.cells[i].channel == channel) {
        group.push_back(&results[i]);
      }
    }
    if (group.size() < 2) {
      outcome.notices.push_back("t-test skipped for channel " + channel + ": n<2 subjects");
      continue;
    }
    any_test = true;
    for (const auto& comp : tested_components()) {
      std::vector<double> values;
      for (const auto* r : group) {
        const double v = comp == "delta_total"   ? r->delta_total
                         : comp == "delta_A"     ? r->delta_A.value
                         : comp == "delta_phi_x" ? r->delta_phi_x.value
                         : comp == "delta_phi_y" ? r->delta_phi_y.value
                         : comp == "delta_i_x"   ? r->delta_i_x.value
                                                 : r->delta_i_y.value;
        values.push_back(v);
      }
      std::string row = channel + "," + comp;
      try {
        const auto t = one_sample_ttest(values, cfg.alpha);
        detail::csv_field(row, t.statistic);
        detail::csv_field(row, t.df);
        detail::csv_field(row, t.p_value);
      } catch (const ZeroVarianceError&) {
        row += ",NA," + std::to_string(group.size() - 1) + ",NA";
        outcome.notices.push_back("t-test undefined for channel " + channel + ", " + comp +
                                  ": zero variance across subjects");
      }
      ttests += row + '\n';
    }
  }
  if (any_test) {
    outputs.add("group_ttests.csv", ttests);
    names.emplace_back("group_ttests.csv");
  } else {
    outcome.notices.emplace_back("t-test stage skipped: n<2 subjects in every channel");
  }

  auto config = detail::common_json(cfg);
  config["manifest"] = cfg.manifest.filename().string();
  config["window_length"] = cfg.window.length;
  config["window_stride"] = cfg.window.stride;
  config["mirrored_seeds"] = cfg.mirrored_seeds;
  config["cells"] = n_cells;
  config["segment_length"] = study.segment_length;
  names.emplace_back("run_summary.json");
  outputs.add("run_summary.json", detail::summary_json("decompose", config, names, outcome.notices));
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  outputs.add("run_timing.json", detail::timing_json(secs, threads));
  outcome.files = outputs.commit(cfg.out);
  return outcome;
}

inline constexpr std::string_view kSweepHeader = "c,trials,rejections,rate,ci_lo,ci_hi";
inline constexpr std::string_view kCompanionHeader =
    "c,trial,delta_phi,stderr_phi,z_phi,delta_i,stderr_i,z_i,delta_A,stderr_A,z_A";

/// False-positive sweep of the naive surrogate test plus the decomposition
/// of matching shared-phase datasets.
inline RunOutcome run_naive_demo(const NaiveDemoConfig& cfg) {
  const auto started = std::chrono::steady_clock::now();
  validate_common(cfg);
  const std::size_t threads = resolve_threads(cfg.threads);
  SweepConfig sweep;
  sweep.c_values = cfg.c_values;
  sweep.trials = cfg.trials;
  sweep.realizations = cfg.realizations;
  sweep.alpha = cfg.alpha;
  sweep.length = cfg.length;
  sweep.seed = cfg.seed;
  sweep.feature = cfg.feature;
  sweep.threads = threads;

  const auto reports = false_positive_sweep(sweep);
  std::string table(kSweepHeader);
  table += '\n';
  for (const auto& r : reports) {
    std::string row = format_double(r.c);
    row += "," + std::to_string(r.trials) + "," + std::to_string(r.rejections);
    detail::csv_field(row, r.rate);
    detail::csv_field(row, r.ci_lo);
    detail::csv_field(row, r.ci_hi);
    table += row + '\n';
  }

  RunOutcome outcome;
  OutputSet outputs;
  outputs.add("naive_sweep.csv", table);
  std::vector<std::string> names{"naive_sweep.csv"};
  if (cfg.companion_trials > 0) {
    const auto decs = sweep_decompositions(sweep, cfg.companion_trials, cfg.companion_segments,
                                           cfg.companion_realizations);
    std::string comp(kCompanionHeader);
    comp += '\n';
    for (const auto& d : decs) {
      std::string row = format_double(d.c) + "," + std::to_string(d.trial);
      for (const Component* c : {&d.delta_phi, &d.delta_i, &d.delta_A}) {
        detail::csv_field(row, c->value);
        detail::csv_field(row, c->std_error);
        detail::csv_field(row, c->z());
      }
      comp += row + '\n';
    }
    outputs.add("naive_companion.csv", comp);
    names.emplace_back("naive_companion.csv");
  }

  auto config = detail::common_json(cfg);
  config["c_values"] = cfg.c_values;
  config["trials"] = cfg.trials;
  config["length"] = cfg.length;
  config["companion_trials"] = cfg.companion_trials;
  config["companion_segments"] = cfg.companion_segments;
  config["companion_realizations"] = cfg.companion_realizations;
  names.emplace_back("run_summary.json");
  outputs.add("run_summary.json",
              detail::summary_json("naive-demo", config, names, outcome.notices));
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  outputs.add("run_timing.json", detail::timing_json(secs, threads));
  outcome.files = outputs.commit(cfg.out);
  return outcome;
}

/// Feature value of every segment in one data file, as `segment_id,value`.
inline std::string run_feature(const FeatureConfig& cfg) {
  validate_common(cfg);
  if (cfg.input.empty()) {
    throw ValidationError("feature needs an input file (--input)");
  }
  const auto rows = apply_window(read_rows(cfg.input, cfg.format), cfg.window);
  const auto d = dataset_from_rows(rows);
  const auto f = resolve_feature(cfg.feature);
  std::string out = "segment_id,value\n";
  for (std::size_t s = 0; s < d.size(); ++s) {
    out += std::to_string(s);
    detail::csv_field(out, specphase::detail::checked_feature(f, d.segment(s).samples()));
    out += '\n';
  }
  return out;
}

/// Writes a synthetic study (data files plus manifest.csv) under cfg.out.
inline RunOutcome run_gen(const GenConfig& cfg) {
  if (cfg.subjects == 0 || cfg.channels == 0 || cfg.segments == 0) {
    throw ValidationError("gen needs at least one subject, channel and segment");
  }
  if (cfg.length < 2) {
    throw ValidationError("segment length must be at least 2");
  }
  if (!(cfg.phase_c >= 0.0 && cfg.phase_c <= 1.0)) {
    throw ValidationError("phase_c must lie in [0, 1]");
  }
  const auto [spec_x, spec_y] = stand_in_spectra(cfg.length);
  const std::string ext = format_name(cfg.format);
  OutputSet outputs;
  std::string manifest = "subject,channel,condition,path,format\n";
  std::vector<std::string> names;
  auto rows_of = [](const ConditionDataset& d) {
    std::vector<std::vector<double>> rows;
    for (const auto& s : d.segments()) {
      rows.emplace_back(s.samples().begin(), s.samples().end());
    }
    return rows;
  };
  auto encode = [&](const std::vector<std::vector<double>>& rows) {
    std::ostringstream os;
    if (cfg.format == DataFormat::csv) {
      write_csv_rows(os, rows);
    } else {
      write_binary_rows(os, rows);
    }
    return os.str();
  };
  for (std::size_t s = 0; s < cfg.subjects; ++s) {
    for (std::size_t c = 0; c < cfg.channels; ++c) {
      const std::string subject = "s" + std::to_string(s + 1);
      const std::string channel = "ch" + std::to_string(c + 1);
      auto rng = derive_stream(cell_seed(cfg.seed, subject, channel), {Scheme::synthetic, 0, 0, 0});
      const auto pm = PhaseModel::roughness(cfg.phase_c);
      std::vector<std::vector<double>> xr, yr;
      switch (cfg.mode) {
        case GenMode::spectral: {
          auto [x, y] = make_shared_phase_datasets(spec_x, spec_y, pm, cfg.segments, rng);
          xr = rows_of(x);
          yr = rows_of(y);
          break;
        }
        case GenMode::null:
          xr = rows_of(make_dataset(spec_x, pm, cfg.segments, rng));
          yr = rows_of(make_dataset(spec_x, pm, cfg.segments, rng));
          break;
        case GenMode::copy:
          xr = rows_of(make_dataset(spec_x, pm, cfg.segments, rng));
          yr = xr;
          break;
      }
      for (const auto& [cond, rows] : {std::pair{"x", &xr}, std::pair{"y", &yr}}) {
        const std::string name = subject + "_" + channel + "_" + cond + "." + ext;
        outputs.add("data/" + name, encode(*rows));
        manifest += subject + "," + channel + "," + cond + ",data/" + name + "," + ext + "\n";
        names.push_back("data/" + name);
      }
    }
  }
  outputs.add("manifest.csv", manifest);
  std::error_code ec;
  std::filesystem::create_directories(cfg.out / "data", ec);
  if (ec) {
    throw Error("cannot create '" + (cfg.out / "data").string() + "': " + ec.message());
  }
  RunOutcome outcome;
  outcome.files = outputs.commit(cfg.out);
  return outcome;
}

}  // namespace specphase::pipeline
