// Copyright 2026 The aaceval Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "aaceval/wav.h"

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "aaceval/error.h"
#include "test_util.h"

namespace aaceval {
namespace {

// Builds a PCM WAV by hand so decoding is checked against an independent
// encoder.
std::vector<std::uint8_t> make_wav(int channels, int bits, int rate,
                                   const std::vector<std::int16_t>& samples,
                                   int format = 1) {
  std::vector<std::uint8_t> out;
  auto put32 = [&](std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back((v >> (8 * i)) & 0xFF);
  };
  auto put16 = [&](std::uint16_t v) {
    out.push_back(v & 0xFF);
    out.push_back(v >> 8);
  };
  const std::uint32_t data_size =
      static_cast<std::uint32_t>(samples.size() * (bits / 8));
  out.insert(out.end(), {'R', 'I', 'F', 'F'});
  put32(36 + data_size + 12);
  out.insert(out.end(), {'W', 'A', 'V', 'E'});
  // An unrelated chunk before fmt must be skipped.
  out.insert(out.end(), {'L', 'I', 'S', 'T'});
  put32(4);
  out.insert(out.end(), {'a', 'b', 'c', 'd'});
  out.insert(out.end(), {'f', 'm', 't', ' '});
  put32(16);
  put16(static_cast<std::uint16_t>(format));
  put16(static_cast<std::uint16_t>(channels));
  put32(static_cast<std::uint32_t>(rate));
  put32(static_cast<std::uint32_t>(rate * channels * bits / 8));
  put16(static_cast<std::uint16_t>(channels * bits / 8));
  put16(static_cast<std::uint16_t>(bits));
  out.insert(out.end(), {'d', 'a', 't', 'a'});
  put32(data_size);
  for (auto s : samples) {
    if (bits == 16) {
      put16(static_cast<std::uint16_t>(s));
    } else {
      out.push_back(static_cast<std::uint8_t>(s));
    }
  }
  return out;
}

TEST(WavTest, ScaleDefinition) {
  auto buf = decode_wav(make_wav(1, 16, 16000, {-32768, 0, 16384, 32767}));
  ASSERT_EQ(buf.samples.size(), 4u);
  EXPECT_EQ(buf.samples[0], -1.0f);
  EXPECT_EQ(buf.samples[1], 0.0f);
  EXPECT_EQ(buf.samples[2], 0.5f);
  EXPECT_FLOAT_EQ(buf.samples[3], 32767.0f / 32768.0f);
  EXPECT_EQ(buf.sample_rate, 16000);
}

TEST(WavTest, StereoDownmixIsFrameMean) {
  auto buf = decode_wav(make_wav(2, 16, 8000, {16384, 0, -32768, 32767}));
  ASSERT_EQ(buf.samples.size(), 2u);
  EXPECT_FLOAT_EQ(buf.samples[0], 0.25f);
  EXPECT_FLOAT_EQ(buf.samples[1], (-32768.0f + 32767.0f) / 2 / 32768.0f);
}

TEST(WavTest, RejectsEightBit) {
  EXPECT_THROW(decode_wav(make_wav(1, 8, 16000, {1, 2, 3})), DataError);
}

TEST(WavTest, RejectsNonPcm) {
  EXPECT_THROW(decode_wav(make_wav(1, 16, 16000, {1, 2}, 3)), DataError);
}

TEST(WavTest, RejectsEmptyPayload) {
  EXPECT_THROW(decode_wav(make_wav(1, 16, 16000, {})), DataError);
}

TEST(WavTest, RejectsMalformedHeader) {
  std::vector<std::uint8_t> junk = {'R', 'I', 'F', 'X', 0, 0, 0, 0, 'W', 'A', 'V', 'E'};
  EXPECT_THROW(decode_wav(junk), DataError);
  EXPECT_THROW(decode_wav(std::vector<std::uint8_t>{}), DataError);
  auto truncated = make_wav(1, 16, 16000, {1, 2, 3});
  truncated.resize(30);
  EXPECT_THROW(decode_wav(truncated), DataError);
}

TEST(WavTest, WriteSaturatesAtFullScale) {
  AudioBuffer buf{{1.0f, -1.0f, 2.0f}, 16000};
  auto back = decode_wav(encode_wav(buf));
  EXPECT_FLOAT_EQ(back.samples[0], 32767.0f / 32768.0f);
  EXPECT_FLOAT_EQ(back.samples[1], -32767.0f / 32768.0f);
  EXPECT_FLOAT_EQ(back.samples[2], 32767.0f / 32768.0f);
}

TEST(WavTest, RoundTripWithinOneQuantizationStep) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> len(1, 500);
  std::uniform_real_distribution<float> amp(-1.0f, 1.0f);
  testing::TempDir dir;
  for (int trial = 0; trial < 50; ++trial) {
    AudioBuffer x;
    x.sample_rate = 16000;
    x.samples.resize(static_cast<std::size_t>(len(rng)));
    for (auto& s : x.samples) s = amp(rng);
    const auto path = dir / "x.wav";
    write_wav(x, path);
    AudioBuffer y = read_wav(path);
    ASSERT_EQ(y.samples.size(), x.samples.size());
    EXPECT_EQ(y.sample_rate, x.sample_rate);
    for (std::size_t i = 0; i < x.samples.size(); ++i) {
      EXPECT_LE(std::abs(y.samples[i] - x.samples[i]), 1.0f / 32768.0f);
    }
    // Decoded audio is already quantized, so the second trip is exact.
    write_wav(y, path);
    EXPECT_EQ(read_wav(path), y);
  }
}

TEST(WavTest, ProbeReadsHeaderOnly) {
  testing::TempDir dir;
  AudioBuffer x{std::vector<float>(16000 * 2, 0.1f), 16000};
  write_wav(x, dir / "a.wav");
  WavInfo info = probe_wav(dir / "a.wav");
  EXPECT_EQ(info.sample_rate, 16000);
  EXPECT_EQ(info.channels, 1);
  EXPECT_EQ(info.frames, 32000u);
}

TEST(WavTest, MissingFile) {
  EXPECT_THROW(read_wav("/nonexistent/file.wav"), DataError);
}

}  // namespace
}  // namespace aaceval
