// Copyright 2026 The specphase Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "specphase/errors.hpp"
#include "specphase/spectral.hpp"

namespace specphase {

/// A non-empty sequence over {0, 1}.
class BitSequence {
 public:
  explicit BitSequence(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    if (bits_.empty()) {
      throw ValidationError("bit sequence is empty");
    }
    for (std::size_t i = 0; i < bits_.size(); ++i) {
      if (bits_[i] > 1) {
        throw ValidationError("bit sequence holds a non-binary symbol at index " +
                              std::to_string(i));
      }
    }
  }

  /// Parses a string of '0'/'1' characters.
  static BitSequence from_string(std::string_view text) {
    std::vector<std::uint8_t> bits;
    bits.reserve(text.size());
    for (char ch : text) {
      if (ch != '0' && ch != '1') {
        throw ValidationError(std::string("invalid bit character '") + ch + "'");
      }
      bits.push_back(static_cast<std::uint8_t>(ch - '0'));
    }
    return BitSequence(std::move(bits));
  }

  [[nodiscard]] std::size_t size() const noexcept { return bits_.size(); }
  [[nodiscard]] std::span<const std::uint8_t> bits() const noexcept { return bits_; }
  [[nodiscard]] std::string to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (auto b : bits_) {
      s.push_back(static_cast<char>('0' + b));
    }
    return s;
  }

  friend bool operator==(const BitSequence&, const BitSequence&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// Writes bit t = 1 iff samples[t] is strictly above the arithmetic mean.
inline void binarize_mean_into(std::span<const double> samples, std::vector<std::uint8_t>& out) {
  double sum = 0.0;
  for (double v : samples) {
    sum += v;
  }
  const double mean = sum / static_cast<double>(samples.size());
  out.resize(samples.size());
  for (std::size_t t = 0; t < samples.size(); ++t) {
    out[t] = samples[t] > mean ? 1 : 0;
  }
}

inline BitSequence binarize_mean(const TimeSeriesSegment& x) {
  std::vector<std::uint8_t> bits;
  binarize_mean_into(x.samples(), bits);
  return BitSequence(std::move(bits));
}

/// Lempel-Ziv (1976) production complexity of a binary string.
///
/// A component starting at i grows while s[i..k] still occurs starting
/// strictly before i (overlap allowed); the first symbol that breaks the match
/// closes the component, and a trailing unfinished component counts as one.
/// Uses a suffix automaton of the whole string annotated with first end
/// positions, so the parse is linear in the length. Buffers are reused between
/// calls; one instance per thread.
class Lz76Parser {
 public:
  std::size_t complexity(std::span<const std::uint8_t> s) {
    const int n = static_cast<int>(s.size());
    if (n == 0) {
      return 0;
    }
    build(s);
    std::size_t components = 0;
    int i = 0;
    while (i < n) {
      int state = 0;
      int k = i;
      while (k < n) {
        const int next = states_[state].next[s[k]];
        // s[i..k] also ends before k  <=>  it starts before i.
        if (states_[next].first_end < k) {
          state = next;
          ++k;
        } else {
          break;
        }
      }
      ++components;
      i = k + 1;
    }
    return components;
  }

 private:
  struct State {
    int len = 0;
    int link = -1;
    int next[2] = {-1, -1};
    int first_end = -1;
  };

  void build(std::span<const std::uint8_t> s) {
    states_.clear();
    states_.reserve(2 * s.size() + 1);
    states_.push_back(State{});
    int last = 0;
    for (int pos = 0; pos < static_cast<int>(s.size()); ++pos) {
      const int c = s[pos];
      const int cur = static_cast<int>(states_.size());
      states_.push_back(State{states_[last].len + 1, -1, {-1, -1}, pos});
      int p = last;
      while (p != -1 && states_[p].next[c] == -1) {
        states_[p].next[c] = cur;
        p = states_[p].link;
      }
      if (p == -1) {
        states_[cur].link = 0;
      } else {
        const int q = states_[p].next[c];
        if (states_[p].len + 1 == states_[q].len) {
          states_[cur].link = q;
        } else {
          const int clone = static_cast<int>(states_.size());
          State copy = states_[q];
          copy.len = states_[p].len + 1;
          states_.push_back(copy);
          while (p != -1 && states_[p].next[c] == q) {
            states_[p].next[c] = clone;
            p = states_[p].link;
          }
          states_[q].link = clone;
          states_[cur].link = clone;
        }
      }
      last = cur;
    }
  }

  std::vector<State> states_;
};

inline std::size_t lz76_complexity(std::span<const std::uint8_t> bits) {
  thread_local Lz76Parser parser;
  return parser.complexity(bits);
}

inline std::size_t lz76_complexity(const BitSequence& b) { return lz76_complexity(b.bits()); }

/// Amplitude-weighted mean frequency in bin units over bins 0..T/2.
inline double spectral_centroid(const SpectralRep& s) {
  double weighted = 0.0;
  double total = 0.0;
  for (std::size_t k = 0; k <= s.half(); ++k) {
    weighted += static_cast<double>(k) * s.amplitudes[k];
    total += s.amplitudes[k];
  }
  return total == 0.0 ? 0.0 : weighted / total;
}

using FeatureOptions = std::map<std::string, std::string>;

/// Names a registered feature plus its options, as written on the command line.
struct FeatureDescriptor {
  std::string name = "lz76";
  FeatureOptions options;
  friend bool operator==(const FeatureDescriptor&, const FeatureDescriptor&) = default;
};

/// A feature with its options bound; safe to call from several threads.
using FeatureFunction = std::function<double(std::span<const double>)>;

inline bool parse_bool_option(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") {
    return true;
  }
  if (value == "false" || value == "0" || value == "no" || value == "off") {
    return false;
  }
  throw ValidationError("option '" + key + "' expects a boolean, got '" + value + "'");
}

class FeatureRegistry {
 public:
  using Factory = std::function<FeatureFunction(const FeatureOptions&)>;

  void add(std::string name, std::vector<std::string> option_keys, Factory factory) {
    entries_[std::move(name)] = Entry{std::move(option_keys), std::move(factory)};
  }

  [[nodiscard]] std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& [name, entry] : entries_) {
      out.push_back(name);
    }
    return out;
  }

  [[nodiscard]] bool contains(const std::string& name) const { return entries_.contains(name); }

  [[nodiscard]] FeatureFunction resolve(const FeatureDescriptor& fd) const {
    auto it = entries_.find(fd.name);
    if (it == entries_.end()) {
      std::string known;
      for (const auto& n : names()) {
        known += (known.empty() ? "" : ", ") + n;
      }
      throw ValidationError("unknown feature '" + fd.name + "' (registered: " + known + ")");
    }
    const auto& keys = it->second.option_keys;
    for (const auto& [key, value] : fd.options) {
      if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
        throw ValidationError("feature '" + fd.name + "' has no option '" + key + "'");
      }
    }
    return it->second.factory(fd.options);
  }

 private:
  struct Entry {
    std::vector<std::string> option_keys;
    Factory factory;
  };
  std::map<std::string, Entry> entries_;
};

/// The built-in features: "lz76" (option "normalize") and "spectral_centroid".
inline const FeatureRegistry& builtin_features() {
  static const FeatureRegistry registry = [] {
    FeatureRegistry r;
    r.add("lz76", {"normalize"}, [](const FeatureOptions& opts) -> FeatureFunction {
      bool normalize = false;
      if (auto it = opts.find("normalize"); it != opts.end()) {
        normalize = parse_bool_option(it->first, it->second);
      }
      return [normalize](std::span<const double> x) {
        thread_local std::vector<std::uint8_t> bits;
        binarize_mean_into(x, bits);
        const auto c = static_cast<double>(lz76_complexity(bits));
        if (!normalize) {
          return c;
        }
        const auto n = static_cast<double>(x.size());
        return c * std::log2(n) / n;
      };
    });
    r.add("spectral_centroid", {}, [](const FeatureOptions&) -> FeatureFunction {
      return [](std::span<const double> x) { return spectral_centroid(forward_spectrum(x)); };
    });
    return r;
  }();
  return registry;
}

inline FeatureFunction resolve_feature(const FeatureDescriptor& fd) {
  return builtin_features().resolve(fd);
}

inline double evaluate_feature(const FeatureDescriptor& fd, const TimeSeriesSegment& x) {
  return resolve_feature(fd)(x.samples());
}

}  // namespace specphase
