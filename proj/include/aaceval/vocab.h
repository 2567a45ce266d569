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

#ifndef AACEVAL_VOCAB_H_
#define AACEVAL_VOCAB_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "aaceval/corpus.h"

namespace aaceval {

struct VocabStats {
  std::map<std::string, std::int64_t> counts;
  std::int64_t total_tokens = 0;
  // Descending count, ties broken lexicographically.
  std::vector<std::string> ranked;
};

// Throws DataError on an empty corpus.
VocabStats vocab_stats(const Corpus& corpus);
// Counts tokenize() output; an empty list yields empty stats.
VocabStats vocab_stats(std::span<const std::string> captions);
VocabStats vocab_stats_from_counts(std::map<std::string, std::int64_t> counts);

// Entry i is the share of tokens covered by the top i+1 ranked words. The
// final entry is exactly 1.0. Throws UsageError when total_tokens == 0.
std::vector<double> vocab_cdf(const VocabStats& stats);

}  // namespace aaceval

#endif  // AACEVAL_VOCAB_H_
