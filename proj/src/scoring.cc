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

#include "aaceval/scoring.h"

#include <exception>

#include "aaceval/error.h"
#include "aaceval/parallel.h"
#include "aaceval/text.h"

namespace aaceval {
namespace {

struct MetricEntry {
  Metric metric;
  std::string_view name;
};

constexpr MetricEntry kMetrics[] = {
    {Metric::kBleu4, "bleu4"},   {Metric::kRougeL, "rougel"},
    {Metric::kMeteor, "meteor"}, {Metric::kCiderD, "ciderd"},
    {Metric::kFenseStar, "fense_star"}, {Metric::kFense, "fense"}};

std::vector<Tokens> tokenize_all(std::span<const std::string> texts) {
  std::vector<Tokens> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(tokenize(t));
  return out;
}

// Rethrows the active exception with an item index prefix, keeping its class.
[[noreturn]] void rethrow_with_index(std::size_t index) {
  const std::string prefix = "item " + std::to_string(index) + ": ";
  try {
    throw;
  } catch (const UsageError& e) {
    throw UsageError(prefix + e.what());
  } catch (const DataError& e) {
    throw DataError(prefix + e.what());
  } catch (const BackendError& e) {
    throw BackendError(prefix + e.what());
  }
}

}  // namespace

std::string_view metric_name(Metric metric) {
  for (const auto& e : kMetrics) {
    if (e.metric == metric) return e.name;
  }
  return "unknown";
}

Metric parse_metric(std::string_view name) {
  for (const auto& e : kMetrics) {
    if (e.name == name) return e.metric;
  }
  throw UsageError("unknown metric '" + std::string(name) +
                   "' (expected bleu4, rougel, meteor, ciderd, fense_star, fense)");
}

std::vector<Metric> parse_metric_list(std::string_view comma_separated) {
  std::vector<Metric> out;
  std::size_t start = 0;
  while (start <= comma_separated.size()) {
    std::size_t end = comma_separated.find(',', start);
    if (end == std::string_view::npos) end = comma_separated.size();
    std::string_view item = comma_separated.substr(start, end - start);
    if (!item.empty()) out.push_back(parse_metric(item));
    start = end + 1;
  }
  if (out.empty()) throw UsageError("empty metric list");
  return out;
}

void check_context(Metric metric, const ScoringContext& context) {
  switch (metric) {
    case Metric::kFenseStar:
      if (!context.similarity) {
        throw UsageError("fense_star needs a similarity backend");
      }
      break;
    case Metric::kFense:
      if (!context.similarity || !context.fluency) {
        throw UsageError(
            "fense needs a fluency-capable backend (use --backend remote:URL)");
      }
      break;
    case Metric::kCiderD:
      if (!context.stats) throw UsageError("ciderd needs corpus n-gram stats");
      break;
    default:
      break;
  }
}

MetricScore score_one(Metric metric, const std::string& hypothesis,
                      std::span<const std::string> references,
                      const ScoringContext& context) {
  check_context(metric, context);
  switch (metric) {
    case Metric::kBleu4:
      return bleu(tokenize(hypothesis), tokenize_all(references), 4);
    case Metric::kRougeL:
      return rouge_l(tokenize(hypothesis), tokenize_all(references));
    case Metric::kMeteor:
      return meteor_lite(tokenize(hypothesis), tokenize_all(references));
    case Metric::kCiderD:
      return cider_d(tokenize(hypothesis), tokenize_all(references),
                     *context.stats);
    case Metric::kFenseStar:
      return fense_star(hypothesis, references, *context.similarity,
                        context.fense);
    case Metric::kFense:
      return fense(hypothesis, references, *context.similarity,
                   *context.fluency, context.fense);
  }
  throw UsageError("unknown metric");
}

ScoredBatch score_pairs(Metric metric, std::span<const ScoringItem> items,
                        const ScoringContext& context) {
  if (items.empty()) throw UsageError("score_pairs: empty item list");
  check_context(metric, context);
  ScoredBatch batch;
  batch.scores.resize(items.size());
  parallel_for(items.size(), context.jobs, [&](std::size_t i) {
    try {
      batch.scores[i] =
          score_one(metric, items[i].hypothesis, items[i].references, context);
    } catch (...) {
      rethrow_with_index(i);
    }
  });
  double sum = 0.0;
  for (const auto& s : batch.scores) sum += s.value;
  batch.mean = sum / static_cast<double>(items.size());
  return batch;
}

}  // namespace aaceval
