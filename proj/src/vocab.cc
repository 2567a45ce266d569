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

#include "aaceval/vocab.h"

#include <algorithm>

#include "aaceval/error.h"

namespace aaceval {

VocabStats vocab_stats_from_counts(std::map<std::string, std::int64_t> counts) {
  VocabStats stats;
  stats.counts = std::move(counts);
  stats.ranked.reserve(stats.counts.size());
  for (const auto& [word, n] : stats.counts) {
    stats.total_tokens += n;
    stats.ranked.push_back(word);
  }
  // counts is already in lexicographic order, so a stable sort on count
  // alone breaks ties lexicographically.
  std::stable_sort(stats.ranked.begin(), stats.ranked.end(),
                   [&](const std::string& a, const std::string& b) {
                     return stats.counts.at(a) > stats.counts.at(b);
                   });
  return stats;
}

VocabStats vocab_stats(std::span<const std::string> captions) {
  std::map<std::string, std::int64_t> counts;
  for (const auto& caption : captions) {
    for (auto& token : tokenize(caption)) ++counts[token];
  }
  return vocab_stats_from_counts(std::move(counts));
}

VocabStats vocab_stats(const Corpus& corpus) {
  if (corpus.empty()) throw DataError("vocab_stats: empty corpus");
  std::map<std::string, std::int64_t> counts;
  for (const auto& clip : corpus.items()) {
    for (const auto& caption : clip.captions) {
      for (const auto& token : caption.tokens()) ++counts[token];
    }
  }
  return vocab_stats_from_counts(std::move(counts));
}

std::vector<double> vocab_cdf(const VocabStats& stats) {
  if (stats.total_tokens <= 0) throw UsageError("vocab_cdf: no tokens");
  std::vector<double> cdf;
  cdf.reserve(stats.ranked.size());
  std::int64_t running = 0;
  for (const auto& word : stats.ranked) {
    running += stats.counts.at(word);
    cdf.push_back(static_cast<double>(running) /
                  static_cast<double>(stats.total_tokens));
  }
  if (!cdf.empty()) cdf.back() = 1.0;
  return cdf;
}

}  // namespace aaceval
