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

#ifndef AACEVAL_WAV_H_
#define AACEVAL_WAV_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace aaceval {

// Mono audio, amplitudes in [-1, 1].
struct AudioBuffer {
  std::vector<float> samples;
  int sample_rate = 0;

  double duration_s() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate
                           : 0.0;
  }
  bool operator==(const AudioBuffer&) const = default;
};

struct WavInfo {
  int sample_rate = 0;
  int channels = 0;
  int bits_per_sample = 0;
  std::uint64_t frames = 0;
};

// 16-bit PCM little-endian RIFF/WAVE only. Samples are scaled by 1/32768;
// multi-channel input is downmixed by the per-frame mean. Throws DataError
// on malformed headers, other bit depths or formats, and empty payloads.
AudioBuffer decode_wav(std::span<const std::uint8_t> bytes);
AudioBuffer read_wav(const std::filesystem::path& path);

// Header-only inspection, used to fill clip metadata without loading audio.
WavInfo probe_wav(const std::filesystem::path& path);

// Mono 16-bit PCM. Samples are scaled by 32768, rounded to nearest and
// saturated at +-32767.
std::vector<std::uint8_t> encode_wav(const AudioBuffer& buffer);
void write_wav(const AudioBuffer& buffer, const std::filesystem::path& path);

}  // namespace aaceval

#endif  // AACEVAL_WAV_H_
