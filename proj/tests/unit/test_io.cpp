// Copyright 2026 The specphase Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <bit>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "helpers.hpp"
#include "specphase/io.hpp"

namespace specphase {
namespace {

namespace fs = std::filesystem;

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("specphase_io_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

TEST_F(TempDir, CsvRoundTripIsBitExact) {
  const std::vector<std::vector<double>> rows{{0.1, -2.5e-300, 3.0, 1.0 / 3.0},
                                              {std::numeric_limits<double>::max(), 0.0, -0.0, 7}};
  const auto path = dir_ / "d.csv";
  write_rows(path, DataFormat::csv, rows);
  const auto back = read_rows(path, DataFormat::csv);
  ASSERT_EQ(back.size(), 2u);
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t t = 0; t < 4; ++t) {
      EXPECT_EQ(std::bit_cast<std::uint64_t>(back[r][t]), std::bit_cast<std::uint64_t>(rows[r][t]));
    }
  }
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "segment_id,t0,t1,t2,t3");
}

TEST_F(TempDir, BinaryRoundTripOfManySegments) {
  std::vector<std::vector<double>> rows;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    rows.push_back(testing::gaussian_samples(s, 16));
  }
  for (auto fmt : {DataFormat::bin, DataFormat::csv}) {
    const auto path = dir_ / ("d." + format_name(fmt));
    write_rows(path, fmt, rows);
    EXPECT_EQ(read_rows(path, fmt), rows);
  }
  EXPECT_EQ(fs::file_size(dir_ / "d.bin"), kBinaryHeaderBytes + 1000u * 16u * 8u);
}

TEST_F(TempDir, DatasetSaveLoad) {
  const auto d = testing::gaussian_dataset(3, 2, 4);
  save_dataset(d, dir_ / "x.csv", DataFormat::csv);
  const auto back = load_dataset(dir_ / "x.csv", DataFormat::csv);
  EXPECT_EQ(back.segments(), d.segments());
}

TEST(BinaryFormat, Diagnostics) {
  std::ostringstream os;
  write_binary_rows(os, {{1.0, 2.0}, {3.0, 4.0}});
  const std::string good = os.str();
  ASSERT_EQ(good.substr(0, 4), "SPHD");

  auto read = [](std::string bytes) {
    std::istringstream is(bytes);
    read_binary_rows(is);
  };
  EXPECT_NE(message_of([&] { read("XXXX" + good.substr(4)); }).find("bad magic"), std::string::npos);
  EXPECT_NE(message_of([&] { read(good.substr(0, 9)); }).find("truncated header"), std::string::npos);
  EXPECT_NE(message_of([&] { read(good.substr(0, good.size() - 1)); }).find("truncated payload"),
            std::string::npos);
  EXPECT_NE(message_of([&] { read(good + "x"); }).find("trailing bytes"), std::string::npos);
  std::string nan_bytes = good;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::memcpy(nan_bytes.data() + kBinaryHeaderBytes + 8, &nan, 8);
  EXPECT_NE(message_of([&] { read(nan_bytes); }).find("byte offset 22"), std::string::npos);
  std::string version = good;
  version[4] = 9;
  EXPECT_NE(message_of([&] { read(version); }).find("version"), std::string::npos);
}

TEST(CsvFormat, Diagnostics) {
  auto read = [](const std::string& text) {
    std::istringstream is(text);
    read_csv_rows(is);
  };
  EXPECT_NE(message_of([&] { read("segment_id,t0,t1\n0,1,2\n1,3\n"); }).find("line 3: ragged row"),
            std::string::npos);
  EXPECT_NE(message_of([&] { read("segment_id,t0,t1\n0,1,abc\n"); }).find("line 2, column 3"),
            std::string::npos);
  EXPECT_NE(message_of([&] { read("segment_id,t0,t1\n0,1,nan\n"); }).find("non-finite"),
            std::string::npos);
  EXPECT_NE(message_of([&] { read("id,t0\n0,1\n"); }).find("segment_id"), std::string::npos);
  EXPECT_NE(message_of([&] { read(""); }).find("empty"), std::string::npos);
  std::istringstream crlf("segment_id,t0,t1\r\n0,1.5,2\r\n\r\n");
  EXPECT_EQ(read_csv_rows(crlf), (std::vector<std::vector<double>>{{1.5, 2.0}}));
}

TEST(Formats, Names) {
  EXPECT_EQ(parse_format("csv"), DataFormat::csv);
  EXPECT_EQ(parse_format("bin"), DataFormat::bin);
  EXPECT_THROW(parse_format("hdf5"), ValidationError);
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_THROW(load_dataset("/nonexistent/file.csv", DataFormat::csv), ValidationError);
}

}  // namespace
}  // namespace specphase
