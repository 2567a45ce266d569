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

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "aaceval/error.h"

namespace aaceval {
namespace {

constexpr int kPcmFormat = 1;
constexpr int kExtensibleFormat = 0xFFFE;
constexpr double kScale = 32768.0;

std::uint32_t le32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t le16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void put32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back((v >> (8 * i)) & 0xFF);
}

void put16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(v & 0xFF);
  out.push_back((v >> 8) & 0xFF);
}

struct Layout {
  WavInfo info;
  std::size_t data_offset = 0;
  std::size_t data_size = 0;
};

// Walks the RIFF chunks. Only the fmt and data chunks are interpreted.
Layout parse_layout(std::span<const std::uint8_t> bytes, bool need_data) {
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw DataError("wav: not a RIFF/WAVE file");
  }
  Layout layout;
  bool have_fmt = false;
  bool have_data = false;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint8_t* chunk = bytes.data() + pos;
    std::size_t size = le32(chunk + 4);
    std::size_t body = pos + 8;
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16 || body + 16 > bytes.size()) {
        throw DataError("wav: truncated fmt chunk");
      }
      int format = le16(bytes.data() + body);
      layout.info.channels = le16(bytes.data() + body + 2);
      layout.info.sample_rate = static_cast<int>(le32(bytes.data() + body + 4));
      layout.info.bits_per_sample = le16(bytes.data() + body + 14);
      if (format == kExtensibleFormat && size >= 40 && body + 26 <= bytes.size()) {
        format = le16(bytes.data() + body + 24);
      }
      if (format != kPcmFormat) {
        throw DataError("wav: unsupported format tag " + std::to_string(format) +
                        " (PCM only)");
      }
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      if (!have_fmt) throw DataError("wav: data chunk before fmt chunk");
      layout.data_offset = body;
      // Tolerate writers that leave a bogus size on the last chunk.
      layout.data_size = std::min(size, bytes.size() - body);
      have_data = true;
      break;
    }
    pos = body + size + (size & 1);
  }
  if (!have_fmt) throw DataError("wav: missing fmt chunk");
  if (layout.info.bits_per_sample != 16) {
    throw DataError("wav: unsupported bit depth " +
                    std::to_string(layout.info.bits_per_sample) +
                    " (16-bit PCM only)");
  }
  if (layout.info.channels <= 0) throw DataError("wav: zero channels");
  if (layout.info.sample_rate <= 0) throw DataError("wav: zero sample rate");
  if (need_data && !have_data) throw DataError("wav: missing data chunk");
  std::size_t frame_bytes = 2 * static_cast<std::size_t>(layout.info.channels);
  layout.info.frames = layout.data_size / frame_bytes;
  return layout;
}

std::vector<std::uint8_t> slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

AudioBuffer decode_wav(std::span<const std::uint8_t> bytes) {
  Layout layout = parse_layout(bytes, true);
  if (layout.info.frames == 0) throw DataError("wav: empty data chunk");
  const int channels = layout.info.channels;
  AudioBuffer out;
  out.sample_rate = layout.info.sample_rate;
  out.samples.resize(layout.info.frames);
  const std::uint8_t* p = bytes.data() + layout.data_offset;
  for (std::size_t f = 0; f < layout.info.frames; ++f) {
    double sum = 0.0;
    for (int ch = 0; ch < channels; ++ch) {
      sum += static_cast<std::int16_t>(le16(p)) / kScale;
      p += 2;
    }
    out.samples[f] = static_cast<float>(sum / channels);
  }
  return out;
}

AudioBuffer read_wav(const std::filesystem::path& path) {
  auto bytes = slurp(path);
  try {
    return decode_wav(bytes);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

WavInfo probe_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  // Headers of ordinary files fit well inside the first few KiB; the data
  // size comes from the chunk header, so the payload is never read.
  std::vector<std::uint8_t> head(4096);
  in.read(reinterpret_cast<char*>(head.data()), head.size());
  head.resize(static_cast<std::size_t>(in.gcount()));
  in.clear();
  in.seekg(0, std::ios::end);
  auto file_size = static_cast<std::size_t>(in.tellg());
  try {
    Layout layout = parse_layout(head, true);
    std::size_t declared = le32(head.data() + layout.data_offset - 4);
    std::size_t available = file_size - layout.data_offset;
    layout.info.frames = std::min(declared, available) /
                         (2 * static_cast<std::size_t>(layout.info.channels));
    return layout.info;
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

std::vector<std::uint8_t> encode_wav(const AudioBuffer& buffer) {
  if (buffer.sample_rate <= 0) throw UsageError("wav: sample rate must be > 0");
  const std::uint32_t data_size =
      static_cast<std::uint32_t>(buffer.samples.size() * 2);
  std::vector<std::uint8_t> out;
  out.reserve(44 + data_size);
  out.insert(out.end(), {'R', 'I', 'F', 'F'});
  put32(out, 36 + data_size);
  out.insert(out.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
  put32(out, 16);
  put16(out, kPcmFormat);
  put16(out, 1);
  put32(out, static_cast<std::uint32_t>(buffer.sample_rate));
  put32(out, static_cast<std::uint32_t>(buffer.sample_rate) * 2);
  put16(out, 2);
  put16(out, 16);
  out.insert(out.end(), {'d', 'a', 't', 'a'});
  put32(out, data_size);
  for (float s : buffer.samples) {
    double v = std::nearbyint(static_cast<double>(s) * kScale);
    v = std::clamp(v, -32767.0, 32767.0);
    put16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(v)));
  }
  return out;
}

void write_wav(const AudioBuffer& buffer, const std::filesystem::path& path) {
  auto bytes = encode_wav(buffer);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("write failed: " + path.string());
}

}  // namespace aaceval
