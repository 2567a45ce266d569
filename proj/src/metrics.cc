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

#include "aaceval/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>

#include "aaceval/error.h"

namespace aaceval {
namespace {

void require_inputs(std::string_view metric, std::span<const std::string> hyp,
                    std::span<const Tokens> refs) {
  if (hyp.empty()) throw UsageError(std::string(metric) + ": empty hypothesis");
  if (refs.empty()) throw UsageError(std::string(metric) + ": no references");
  for (const auto& r : refs) {
    if (r.empty()) throw UsageError(std::string(metric) + ": empty reference");
  }
}

std::string order_key(std::string_view prefix, std::size_t n) {
  return std::string(prefix) + std::to_string(n);
}

}  // namespace

MetricScore bleu(std::span<const std::string> hyp, std::span<const Tokens> refs,
                 std::size_t max_order) {
  require_inputs("bleu", hyp, refs);
  if (max_order == 0) throw UsageError("bleu: max order must be >= 1");
  MetricScore score;
  const double c = static_cast<double>(hyp.size());
  double r = static_cast<double>(refs[0].size());
  for (const auto& ref : refs) {
    double len = static_cast<double>(ref.size());
    double d = std::abs(len - c), best = std::abs(r - c);
    if (d < best || (d == best && len < r)) r = len;
  }
  bool any_zero = false;
  double log_sum = 0.0;
  for (std::size_t n = 1; n <= max_order; ++n) {
    NgramCounts hyp_counts = ngrams(hyp, n);
    NgramCounts max_ref;
    for (const auto& ref : refs) {
      for (const auto& [g, k] : ngrams(ref, n)) {
        max_ref[g] = std::max(max_ref[g], k);
      }
    }
    int total = 0, clipped = 0;
    for (const auto& [g, k] : hyp_counts) {
      total += k;
      auto it = max_ref.find(g);
      if (it != max_ref.end()) clipped += std::min(k, it->second);
    }
    double p = total > 0 ? static_cast<double>(clipped) / total : 0.0;
    score.components[order_key("p", n)] = p;
    if (p == 0.0) {
      any_zero = true;
    } else {
      log_sum += std::log(p);
    }
  }
  const double bp = c >= r ? 1.0 : std::exp(1.0 - r / c);
  score.components["bp"] = bp;
  score.components["hyp_len"] = c;
  score.components["ref_len"] = r;
  score.value = any_zero ? 0.0
                         : bp * std::exp(log_sum / static_cast<double>(max_order));
  return score;
}

std::size_t lcs_length(std::span<const std::string> a,
                       std::span<const std::string> b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1
                                    : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

MetricScore rouge_l(std::span<const std::string> hyp,
                    std::span<const Tokens> refs, double beta) {
  require_inputs("rouge_l", hyp, refs);
  MetricScore best;
  best.value = -1.0;
  const double b2 = beta * beta;
  for (const auto& ref : refs) {
    const std::size_t lcs = lcs_length(hyp, ref);
    const double p = static_cast<double>(lcs) / hyp.size();
    const double r = static_cast<double>(lcs) / ref.size();
    const double f = lcs == 0 ? 0.0 : (1.0 + b2) * p * r / (r + b2 * p);
    if (f > best.value) {
      best.value = f;
      best.components = {{"lcs", static_cast<double>(lcs)},
                         {"precision", p},
                         {"recall", r}};
    }
  }
  return best;
}

namespace {

struct Alignment {
  std::size_t matches = 0;
  std::size_t chunks = 0;
};

Alignment align(std::span<const std::string> hyp, const Tokens& ref) {
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> hyp_to_ref(hyp.size(), kNone);
  std::vector<bool> ref_used(ref.size(), false);
  // Stage 1: exact; stage 2: stems. Each pass goes left to right over the
  // hypothesis and takes the leftmost free reference token.
  for (std::size_t i = 0; i < hyp.size(); ++i) {
    for (std::size_t j = 0; j < ref.size(); ++j) {
      if (!ref_used[j] && hyp[i] == ref[j]) {
        hyp_to_ref[i] = j;
        ref_used[j] = true;
        break;
      }
    }
  }
  std::vector<std::string> ref_stems(ref.size());
  for (std::size_t j = 0; j < ref.size(); ++j) ref_stems[j] = stem(ref[j]);
  for (std::size_t i = 0; i < hyp.size(); ++i) {
    if (hyp_to_ref[i] != kNone) continue;
    const std::string s = stem(hyp[i]);
    for (std::size_t j = 0; j < ref.size(); ++j) {
      if (!ref_used[j] && s == ref_stems[j]) {
        hyp_to_ref[i] = j;
        ref_used[j] = true;
        break;
      }
    }
  }
  Alignment a;
  std::size_t prev_i = kNone, prev_j = kNone;
  for (std::size_t i = 0; i < hyp.size(); ++i) {
    const std::size_t j = hyp_to_ref[i];
    if (j == kNone) continue;
    ++a.matches;
    const bool continues = prev_i != kNone && i == prev_i + 1 && j == prev_j + 1;
    if (!continues) ++a.chunks;
    prev_i = i;
    prev_j = j;
  }
  return a;
}

}  // namespace

MetricScore meteor_lite(std::span<const std::string> hyp,
                        std::span<const Tokens> refs, MeteorParams params) {
  require_inputs("meteor_lite", hyp, refs);
  MetricScore best;
  best.value = -1.0;
  for (const auto& ref : refs) {
    Alignment a = align(hyp, ref);
    double value = 0.0, p = 0.0, r = 0.0, penalty = 0.0, fmean = 0.0;
    if (a.matches > 0) {
      const double m = static_cast<double>(a.matches);
      p = m / hyp.size();
      r = m / ref.size();
      fmean = p * r / (params.alpha * p + (1.0 - params.alpha) * r);
      penalty = params.gamma * std::pow(a.chunks / m, params.beta);
      value = fmean * (1.0 - penalty);
    }
    if (value > best.value) {
      best.value = value;
      best.components = {{"matches", static_cast<double>(a.matches)},
                         {"chunks", static_cast<double>(a.chunks)},
                         {"precision", p},
                         {"recall", r},
                         {"fmean", fmean},
                         {"penalty", penalty}};
    }
  }
  return best;
}

std::size_t CorpusNgramStats::doc_freq(const std::string& ngram,
                                       std::size_t order) const {
  if (order == 0 || order > doc_freq_.size()) return 0;
  const auto& table = doc_freq_[order - 1];
  auto it = table.find(ngram);
  return it == table.end() ? 0 : it->second;
}

double CorpusNgramStats::idf(const std::string& ngram, std::size_t order) const {
  const std::size_t df = std::max<std::size_t>(1, doc_freq(ngram, order));
  return std::log(static_cast<double>(num_docs_) / static_cast<double>(df));
}

CorpusNgramStats build_corpus_stats(std::span<const Tokens> references) {
  if (references.empty()) throw UsageError("build_corpus_stats: empty corpus");
  CorpusNgramStats stats;
  stats.num_docs_ = references.size();
  stats.doc_freq_.resize(kCiderMaxOrder);
  for (const auto& doc : references) {
    for (std::size_t n = 1; n <= kCiderMaxOrder; ++n) {
      for (const auto& [g, k] : ngrams(doc, n)) ++stats.doc_freq_[n - 1][g];
    }
  }
  return stats;
}

namespace {

using TfIdf = std::map<std::string, double>;

TfIdf tfidf(std::span<const std::string> tokens, std::size_t n,
            const CorpusNgramStats& stats) {
  TfIdf vec;
  for (const auto& [g, k] : ngrams(tokens, n)) vec[g] = k * stats.idf(g, n);
  return vec;
}

double squared_norm(const TfIdf& v) {
  double s = 0.0;
  for (const auto& [g, x] : v) s += x * x;
  return s;
}

}  // namespace

MetricScore cider_d(std::span<const std::string> hyp,
                    std::span<const Tokens> refs, const CorpusNgramStats& stats,
                    CiderParams params) {
  require_inputs("cider_d", hyp, refs);
  if (stats.num_docs() == 0) throw UsageError("cider_d: stats have no documents");
  if (params.max_order == 0 || params.max_order > kCiderMaxOrder) {
    throw UsageError("cider_d: max order must be in [1, 4]");
  }
  MetricScore score;
  double total = 0.0;
  for (std::size_t n = 1; n <= params.max_order; ++n) {
    const TfIdf h = tfidf(hyp, n, stats);
    const double nh2 = squared_norm(h);
    double sim_sum = 0.0, cider_sum = 0.0;
    for (const auto& ref : refs) {
      const TfIdf r = tfidf(ref, n, stats);
      const double nr2 = squared_norm(r);
      double sim = 0.0;
      if (nh2 > 0.0 && nr2 > 0.0) {
        double dot = 0.0;
        for (const auto& [g, hv] : h) {
          auto it = r.find(g);
          if (it != r.end()) dot += std::min(hv, it->second) * it->second;
        }
        // sqrt(x * x) == x in IEEE arithmetic, so identity gives exactly 1.
        sim = dot / std::sqrt(nh2 * nr2);
      }
      const double delta =
          static_cast<double>(hyp.size()) - static_cast<double>(ref.size());
      const double penalty =
          std::exp(-(delta * delta) / (2.0 * params.sigma * params.sigma));
      sim_sum += sim;
      cider_sum += sim * penalty;
    }
    const double k = static_cast<double>(refs.size());
    score.components[order_key("sim_", n)] = sim_sum / k;
    score.components[order_key("cider_", n)] = cider_sum / k;
    total += cider_sum / k;
  }
  score.value = params.scale * total / static_cast<double>(params.max_order);
  return score;
}

}  // namespace aaceval
