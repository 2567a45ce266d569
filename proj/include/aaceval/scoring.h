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

#ifndef AACEVAL_SCORING_H_
#define AACEVAL_SCORING_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aaceval/backends.h"
#include "aaceval/metrics.h"

namespace aaceval {

enum class Metric { kBleu4, kRougeL, kMeteor, kCiderD, kFenseStar, kFense };

// Names: bleu4, rougel, meteor, ciderd, fense_star, fense.
std::string_view metric_name(Metric metric);
// Throws UsageError for unknown names.
Metric parse_metric(std::string_view name);
std::vector<Metric> parse_metric_list(std::string_view comma_separated);

// Everything a metric may need beyond the captions. Pointers are borrowed.
struct ScoringContext {
  const SimilarityBackend* similarity = nullptr;
  const FluencyBackend* fluency = nullptr;
  const CorpusNgramStats* stats = nullptr;
  FenseConfig fense;
  std::size_t jobs = 1;
};

// Throws UsageError when the context lacks what the metric needs.
void check_context(Metric metric, const ScoringContext& context);

MetricScore score_one(Metric metric, const std::string& hypothesis,
                      std::span<const std::string> references,
                      const ScoringContext& context);

struct ScoringItem {
  std::string hypothesis;
  std::vector<std::string> references;
};

struct ScoredBatch {
  std::vector<MetricScore> scores;  // input order
  double mean = 0.0;
};

// Scores items in parallel (context.jobs workers), merging by index. Throws
// UsageError on an empty list; an item failure is rethrown with its index in
// the message, preserving the error class.
ScoredBatch score_pairs(Metric metric, std::span<const ScoringItem> items,
                        const ScoringContext& context);

}  // namespace aaceval

#endif  // AACEVAL_SCORING_H_
