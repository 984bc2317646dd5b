/*
 * Copyright 2026 The flowvol Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "flowvol/stream.hpp"
#include "flowvol/trace_io.hpp"

namespace fv = flowvol;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("flowvol_trace_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
             "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

void write_raw(const std::string& path, const std::string& data) {
  std::ofstream(path, std::ios::binary) << data;
}

std::vector<fv::Packet> random_stream(std::uint64_t seed, std::size_t n) {
  fv::Rng rng(seed);
  std::vector<fv::Packet> s(n);
  for (auto& p : s) {
    p.id = rng();
    p.weight = static_cast<std::uint32_t>(fv::uniform_int(rng, 1, 0xffffffffULL));
  }
  return s;
}

}  // namespace

TEST(TextTrace, ParsesRecords) {
  auto t = fv::parse_text_trace("7,3\n7,2\n9,1");
  ASSERT_EQ(t.packets.size(), 3u);
  EXPECT_EQ(t.packets[0], (fv::Packet{7, 3}));
  EXPECT_EQ(t.packets[1], (fv::Packet{7, 2}));
  EXPECT_EQ(t.packets[2], (fv::Packet{9, 1}));
  EXPECT_EQ(t.descriptor.length, 3u);
  EXPECT_EQ(t.descriptor.max_weight, 3u);
}

TEST(TextTrace, EmptyInput) {
  auto t = fv::parse_text_trace("");
  EXPECT_TRUE(t.packets.empty());
  EXPECT_EQ(t.descriptor.length, 0u);
}

TEST(TextTrace, TrailingNewlineIsNotARecord) {
  EXPECT_EQ(fv::parse_text_trace("1,1\n2,1\n").packets.size(), 2u);
}

TEST(TextTrace, MalformedLineCarriesLineNumber) {
  try {
    fv::parse_text_trace("1,1\n2;1\n", "t.txt");
    FAIL() << "expected ParseError";
  } catch (const fv::ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find("t.txt: line 2"), std::string::npos);
  }
  EXPECT_THROW(fv::parse_text_trace("x,1"), fv::ParseError);
  EXPECT_THROW(fv::parse_text_trace("1,"), fv::ParseError);
  EXPECT_THROW(fv::parse_text_trace("1,-2"), fv::ParseError);
  EXPECT_THROW(fv::parse_text_trace("1,99999999999"), fv::ParseError);
  EXPECT_THROW(fv::parse_text_trace("\n"), fv::ParseError);
}

TEST(TextTrace, ZeroWeightIsValidationError) {
  EXPECT_THROW(fv::parse_text_trace("1,1\n5,0\n"), fv::ValidationError);
}

TEST(BinaryTrace, LittleEndianLayout) {
  const std::vector<fv::Packet> s{{0x0102030405060708ULL, 0x0a0b0c0d}};
  const std::string bytes = fv::serialize_binary(s);
  ASSERT_EQ(bytes.size(), 12u);
  EXPECT_EQ(static_cast<unsigned char>(bytes[0]), 0x08);
  EXPECT_EQ(static_cast<unsigned char>(bytes[7]), 0x01);
  EXPECT_EQ(static_cast<unsigned char>(bytes[8]), 0x0d);
  EXPECT_EQ(static_cast<unsigned char>(bytes[11]), 0x0a);
  EXPECT_EQ(fv::parse_binary_trace(bytes).packets, s);
}

TEST(BinaryTrace, TruncatedRecord) {
  std::string bytes = fv::serialize_binary(std::vector<fv::Packet>{{1, 1}, {2, 1}});
  bytes.pop_back();
  try {
    fv::parse_binary_trace(bytes);
    FAIL() << "expected ParseError";
  } catch (const fv::ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(BinaryTrace, ZeroWeightIsValidationError) {
  EXPECT_THROW(fv::parse_binary_trace(std::string(12, '\0')), fv::ValidationError);
}

TEST(TraceFiles, RoundTripBothFormats) {
  TempDir dir;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto s = random_stream(seed, seed * 37);
    for (const char* name : {"t.txt", "t.bin"}) {
      const std::string path = dir.file(name);
      fv::write_trace(s, path);
      const auto t = fv::read_trace(path);
      ASSERT_EQ(t.packets, s) << name << " seed " << seed;
      EXPECT_EQ(t.descriptor.length, s.size());
    }
  }
}

TEST(TraceFiles, FormatFromExtension) {
  EXPECT_EQ(fv::format_from_path("a.bin"), fv::TraceFormat::Binary);
  EXPECT_EQ(fv::format_from_path("a.txt"), fv::TraceFormat::Text);
  EXPECT_EQ(fv::format_from_path("bin"), fv::TraceFormat::Text);
}

TEST(TraceFiles, ExplicitFormatOverridesExtension) {
  TempDir dir;
  const std::vector<fv::Packet> s{{5, 2}, {6, 1}};
  const auto path = dir.file("trace.dat");
  fv::write_trace(s, path, fv::TraceFormat::Binary);
  EXPECT_EQ(fs::file_size(path), 24u);
  EXPECT_EQ(fv::read_trace(path, fv::TraceFormat::Binary).packets, s);
}

TEST(TraceFiles, IoErrorsCarryPath) {
  try {
    fv::read_trace("/nonexistent/dir/trace.txt");
    FAIL() << "expected IoError";
  } catch (const fv::IoError& e) {
    EXPECT_EQ(e.path(), "/nonexistent/dir/trace.txt");
  }
  EXPECT_THROW(fv::write_trace({}, "/nonexistent/dir/out.bin"), fv::IoError);
}

TEST(TraceFiles, ParseErrorFromFileNamesSource) {
  TempDir dir;
  const auto path = dir.file("bad.txt");
  write_raw(path, "1,1\n1,1\nbad\n");
  try {
    fv::read_trace(path);
    FAIL() << "expected ParseError";
  } catch (const fv::ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find(path), std::string::npos);
  }
}

TEST(AddressTrace, ParseAndRoundTrip) {
  const auto pkts = fv::parse_address_trace("101.102.103.104,10.0.0.1,3\n1.2.3.4,5.6.7.8,1\n");
  ASSERT_EQ(pkts.size(), 2u);
  EXPECT_EQ(pkts[0].src, 0x65666768u);
  EXPECT_EQ(pkts[0].dst, 0x0a000001u);
  EXPECT_EQ(pkts[0].weight, 3u);
  EXPECT_EQ(fv::format_ipv4(pkts[1].dst), "5.6.7.8");

  TempDir dir;
  const auto path = dir.file("hhh.txt");
  fv::write_address_trace(pkts, path);
  EXPECT_EQ(fv::read_address_trace(path), pkts);
}

TEST(AddressTrace, RejectsBadAddresses) {
  EXPECT_THROW(fv::parse_address_trace("1.2.3,1.2.3.4,1"), fv::ParseError);
  EXPECT_THROW(fv::parse_address_trace("1.2.3.256,1.2.3.4,1"), fv::ParseError);
  EXPECT_THROW(fv::parse_address_trace("1.2.3.4,1.2.3.4"), fv::ParseError);
  EXPECT_THROW(fv::parse_address_trace("1.2.3.4,1.2.3.4,0"), fv::ValidationError);
  std::uint32_t ip = 0;
  EXPECT_FALSE(fv::parse_ipv4("1.2.3.4.5", ip));
  EXPECT_TRUE(fv::parse_ipv4("0.0.0.0", ip));
  EXPECT_EQ(ip, 0u);
}
