// Copyright 2026 The specphase Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "specphase/dataset.hpp"
#include "specphase/errors.hpp"
#include "specphase/spectral.hpp"

namespace specphase {

enum class DataFormat { csv, bin };

inline DataFormat parse_format(std::string_view name) {
  if (name == "csv") {
    return DataFormat::csv;
  }
  if (name == "bin") {
    return DataFormat::bin;
  }
  throw ValidationError("unknown data format '" + std::string(name) + "' (expected csv or bin)");
}

inline std::string format_name(DataFormat f) { return f == DataFormat::csv ? "csv" : "bin"; }

/// Shortest decimal text that parses back to the same double.
inline std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

/// Appends the shortest round-trip text for `v` to `out`.
inline void append_double(std::string& out, double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  out.append(buf.data(), res.ptr);
}

inline constexpr std::array<char, 4> kBinaryMagic{'S', 'P', 'H', 'D'};
inline constexpr std::uint16_t kBinaryVersion = 1;
inline constexpr std::size_t kBinaryHeaderBytes = 4 + 2 + 4 + 4;

namespace detail {

inline std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

inline double parse_sample(std::string_view text, std::size_t line, std::size_t column) {
  text = trim(text);
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ValidationError("line " + std::to_string(line) + ", column " +
                          std::to_string(column + 1) + ": cannot parse '" + std::string(text) +
                          "' as a number");
  }
  if (!std::isfinite(v)) {
    throw ValidationError("line " + std::to_string(line) + ", column " +
                          std::to_string(column + 1) + ": non-finite value");
  }
  return v;
}

template <typename T>
void put_le(std::string& out, T v) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t,
                               std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint16_t>>;
  auto u = std::bit_cast<U>(v);
  for (std::size_t b = 0; b < sizeof(T); ++b) {
    out.push_back(static_cast<char>(u & 0xffU));
    u = static_cast<U>(u >> 8);
  }
}

template <typename T>
T get_le(const char* p) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t,
                               std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint16_t>>;
  U u = 0;
  for (std::size_t b = sizeof(T); b-- > 0;) {
    u = static_cast<U>((u << 8) | static_cast<unsigned char>(p[b]));
  }
  return std::bit_cast<T>(u);
}

}  // namespace detail

/// Rows of a segment table. CSV layout: header `segment_id,t0,...,t{T-1}`,
/// then one row per segment. Rows must all have T values.
inline std::vector<std::vector<double>> read_csv_rows(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  bool have_header = false;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = detail::trim(line);
    if (text.empty()) {
      continue;
    }
    const auto cells = detail::split_commas(text);
    if (!have_header) {
      if (detail::trim(cells.front()) != "segment_id") {
        throw ValidationError("line " + std::to_string(line_no) +
                              ": header must start with 'segment_id'");
      }
      width = cells.size() - 1;
      if (width == 0) {
        throw ValidationError("header declares no sample columns");
      }
      for (std::size_t c = 1; c < cells.size(); ++c) {
        if (detail::trim(cells[c]) != "t" + std::to_string(c - 1)) {
          throw ValidationError("line " + std::to_string(line_no) + ": header column " +
                                std::to_string(c + 1) + " should be 't" + std::to_string(c - 1) +
                                "'");
        }
      }
      have_header = true;
      continue;
    }
    if (cells.size() - 1 != width) {
      throw ValidationError("line " + std::to_string(line_no) + ": ragged row with " +
                            std::to_string(cells.size() - 1) + " values, expected " +
                            std::to_string(width));
    }
    std::vector<double> row(width);
    for (std::size_t c = 0; c < width; ++c) {
      row[c] = detail::parse_sample(cells[c + 1], line_no, c + 1);
    }
    rows.push_back(std::move(row));
  }
  if (!have_header) {
    throw ValidationError("CSV input is empty (no header)");
  }
  return rows;
}

inline void write_csv_rows(std::ostream& out, const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) {
    throw ValidationError("nothing to write: no segments");
  }
  const std::size_t width = rows.front().size();
  std::string text = "segment_id";
  for (std::size_t t = 0; t < width; ++t) {
    text += ",t" + std::to_string(t);
  }
  text += '\n';
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != width) {
      throw ValidationError("segment " + std::to_string(r) + " has a different length");
    }
    text += std::to_string(r);
    for (double v : rows[r]) {
      text += ',';
      append_double(text, v);
    }
    text += '\n';
  }
  out << text;
}

/// Binary layout: "SPHD", u16 version, u32 segment count N, u32 length T,
/// then N*T little-endian doubles, segment-major. Nothing may follow.
inline std::vector<std::vector<double>> read_binary_rows(std::istream& in) {
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes.size() < kBinaryHeaderBytes) {
    throw ValidationError("truncated header: " + std::to_string(bytes.size()) + " bytes, need " +
                          std::to_string(kBinaryHeaderBytes));
  }
  if (std::memcmp(bytes.data(), kBinaryMagic.data(), kBinaryMagic.size()) != 0) {
    throw ValidationError("bad magic at offset 0: expected \"SPHD\"");
  }
  const auto version = detail::get_le<std::uint16_t>(bytes.data() + 4);
  if (version != kBinaryVersion) {
    throw ValidationError("unsupported format version " + std::to_string(version) +
                          " at offset 4");
  }
  const auto n = detail::get_le<std::uint32_t>(bytes.data() + 6);
  const auto len = detail::get_le<std::uint32_t>(bytes.data() + 10);
  const std::uint64_t expected =
      kBinaryHeaderBytes + static_cast<std::uint64_t>(n) * len * sizeof(double);
  if (bytes.size() != expected) {
    throw ValidationError(std::string(bytes.size() < expected ? "truncated payload" : "trailing bytes") +
                          ": file has " + std::to_string(bytes.size()) + " bytes, header implies " +
                          std::to_string(expected));
  }
  std::vector<std::vector<double>> rows(n, std::vector<double>(len));
  const char* p = bytes.data() + kBinaryHeaderBytes;
  for (std::uint32_t s = 0; s < n; ++s) {
    for (std::uint32_t t = 0; t < len; ++t, p += sizeof(double)) {
      const double v = detail::get_le<double>(p);
      if (!std::isfinite(v)) {
        throw ValidationError("non-finite value at byte offset " +
                              std::to_string(p - bytes.data()) + " (segment " +
                              std::to_string(s) + ", sample " + std::to_string(t) + ")");
      }
      rows[s][t] = v;
    }
  }
  return rows;
}

inline void write_binary_rows(std::ostream& out, const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) {
    throw ValidationError("nothing to write: no segments");
  }
  const std::size_t width = rows.front().size();
  std::string bytes(kBinaryMagic.begin(), kBinaryMagic.end());
  detail::put_le(bytes, kBinaryVersion);
  detail::put_le(bytes, static_cast<std::uint32_t>(rows.size()));
  detail::put_le(bytes, static_cast<std::uint32_t>(width));
  bytes.reserve(bytes.size() + rows.size() * width * sizeof(double));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != width) {
      throw ValidationError("segment " + std::to_string(r) + " has a different length");
    }
    for (double v : rows[r]) {
      detail::put_le(bytes, v);
    }
  }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

inline std::vector<std::vector<double>> read_rows(const std::filesystem::path& path,
                                                  DataFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ValidationError("cannot open '" + path.string() + "'");
  }
  try {
    return format == DataFormat::csv ? read_csv_rows(in) : read_binary_rows(in);
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

inline void write_rows(const std::filesystem::path& path, DataFormat format,
                       const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error("cannot write '" + path.string() + "'");
  }
  if (format == DataFormat::csv) {
    write_csv_rows(out, rows);
  } else {
    write_binary_rows(out, rows);
  }
  if (!out.flush()) {
    throw Error("write to '" + path.string() + "' failed");
  }
}

inline ConditionDataset dataset_from_rows(const std::vector<std::vector<double>>& rows,
                                          DatasetTags tags = {}) {
  if (rows.empty()) {
    throw ValidationError("dataset file holds no segments");
  }
  std::vector<TimeSeriesSegment> segments;
  segments.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    try {
      segments.emplace_back(rows[r]);
    } catch (const ValidationError& e) {
      throw ValidationError("segment " + std::to_string(r) + ": " + e.what());
    }
  }
  return ConditionDataset(std::move(segments), std::move(tags));
}

inline ConditionDataset load_dataset(const std::filesystem::path& path, DataFormat format,
                                     DatasetTags tags = {}) {
  return dataset_from_rows(read_rows(path, format), std::move(tags));
}

inline void save_dataset(const ConditionDataset& d, const std::filesystem::path& path,
                         DataFormat format) {
  std::vector<std::vector<double>> rows;
  rows.reserve(d.size());
  for (const auto& s : d.segments()) {
    rows.emplace_back(s.samples().begin(), s.samples().end());
  }
  write_rows(path, format, rows);
}

}  // namespace specphase
