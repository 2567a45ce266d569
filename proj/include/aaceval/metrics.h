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

#ifndef AACEVAL_METRICS_H_
#define AACEVAL_METRICS_H_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "aaceval/text.h"

namespace aaceval {

struct MetricScore {
  double value = 0.0;
  // Per-order precisions, penalties, per-reference scores and the like.
  std::map<std::string, double> components;
};

// Classic sentence BLEU without smoothing. Precisions are clipped against
// the per-n-gram maximum count over references; the brevity penalty uses the
// reference length closest to the hypothesis length (ties go to the shorter
// one). An order the hypothesis is too short to instantiate has p_n = 0.
// Components: p1..pN, bp, ref_len, hyp_len.
MetricScore bleu(std::span<const std::string> hyp, std::span<const Tokens> refs,
                 std::size_t max_order = 4);

std::size_t lcs_length(std::span<const std::string> a,
                       std::span<const std::string> b);

// ROUGE-L F-measure, max over references. Components: lcs, precision,
// recall of the best reference.
MetricScore rouge_l(std::span<const std::string> hyp,
                    std::span<const Tokens> refs, double beta = 1.2);

struct MeteorParams {
  double alpha = 0.9;
  double beta = 3.0;
  double gamma = 0.5;
};

// METEOR restricted to exact and Porter-stem matching. Alignment is greedy,
// leftmost-first, exact stage before stem stage. Max over references.
MetricScore meteor_lite(std::span<const std::string> hyp,
                        std::span<const Tokens> refs, MeteorParams params = {});

inline constexpr std::size_t kCiderMaxOrder = 4;

// Document frequencies per n-gram order over a reference pool; each caption
// is one document.
class CorpusNgramStats {
 public:
  CorpusNgramStats() = default;

  std::size_t num_docs() const { return num_docs_; }
  std::size_t doc_freq(const std::string& ngram, std::size_t order) const;
  // ln(num_docs / doc_freq); unseen n-grams use doc_freq = 1.
  double idf(const std::string& ngram, std::size_t order) const;

 private:
  friend CorpusNgramStats build_corpus_stats(std::span<const Tokens>);

  std::size_t num_docs_ = 0;
  std::vector<std::map<std::string, std::size_t>> doc_freq_;  // [order - 1]
};

// Throws UsageError on an empty pool.
CorpusNgramStats build_corpus_stats(std::span<const Tokens> references);

struct CiderParams {
  std::size_t max_order = kCiderMaxOrder;
  double sigma = 6.0;
  double scale = 10.0;
};

// CIDEr-D: clipped TF-IDF cosine per order, Gaussian length penalty, mean
// over orders (empty orders count as 0) of the mean over references, times
// the scale. Components: sim_n (mean over references of the per-order
// similarity, before the length penalty) and cider_n (with the penalty).
MetricScore cider_d(std::span<const std::string> hyp,
                    std::span<const Tokens> refs, const CorpusNgramStats& stats,
                    CiderParams params = {});

}  // namespace aaceval

#endif  // AACEVAL_METRICS_H_
