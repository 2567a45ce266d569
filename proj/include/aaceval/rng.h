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

#ifndef AACEVAL_RNG_H_
#define AACEVAL_RNG_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace aaceval {

// Stable 64-bit FNV-1a hash. Used for per-item seeds and file digests, so it
// must not depend on the standard library's std::hash.
std::uint64_t fnv1a64(std::string_view bytes);

// Per-item seed derivation: the result depends only on (seed, key), never on
// iteration order or worker count.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view key);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// Portable random source. std::mt19937_64 is fully specified by the
// standard; the bounded draws below are implemented here because the
// standard distributions are not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, n). n must be positive.
  std::size_t uniform_index(std::size_t n);

  // Fair coin.
  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace aaceval

#endif  // AACEVAL_RNG_H_
