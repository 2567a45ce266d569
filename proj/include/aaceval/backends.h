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

#ifndef AACEVAL_BACKENDS_H_
#define AACEVAL_BACKENDS_H_

#include <chrono>
#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "aaceval/metrics.h"

namespace aaceval {

enum class Aggregation { kMean, kMax };

// Sentence similarity in [-1, 1]. Implementations must be deterministic and
// safe to call concurrently.
class SimilarityBackend {
 public:
  virtual ~SimilarityBackend() = default;
  virtual double similarity(std::string_view hypothesis,
                            std::span<const std::string> references) const = 0;
};

// Probability in [0, 1] that a sentence contains fluency errors.
class FluencyBackend {
 public:
  virtual ~FluencyBackend() = default;
  virtual double error_probability(std::string_view sentence) const = 0;
};

// Cosine between stemmed-unigram term-frequency vectors. Deterministic
// stand-in for a sentence-embedding model; it has no fluency half.
class LexicalCosineBackend : public SimilarityBackend {
 public:
  explicit LexicalCosineBackend(Aggregation aggregation = Aggregation::kMean)
      : aggregation_(aggregation) {}

  double similarity(std::string_view hypothesis,
                    std::span<const std::string> references) const override;

 private:
  Aggregation aggregation_;
};

double lexical_cosine(std::string_view a, std::string_view b);

// HTTP client for the remote scorer protocol:
//   POST /similarity {"hypothesis", "references"} -> {"score"}
//   POST /fluency {"sentence"} -> {"error_probability"}
//   GET /healthz -> 200
// Timeouts, connection failures, non-200 statuses and malformed bodies throw
// BackendError.
class RemoteScorer : public SimilarityBackend, public FluencyBackend {
 public:
  // url: http://host[:port][/prefix]
  explicit RemoteScorer(std::string url,
                        std::chrono::milliseconds timeout =
                            std::chrono::milliseconds(10000));

  double similarity(std::string_view hypothesis,
                    std::span<const std::string> references) const override;
  double error_probability(std::string_view sentence) const override;
  void check_health() const;

  const std::string& url() const { return url_; }

 private:
  std::string post(const std::string& endpoint, const std::string& body) const;

  std::string url_;
  std::string host_;
  int port_ = 80;
  std::string prefix_;
  std::chrono::milliseconds timeout_;
};

struct FenseConfig {
  double error_threshold = 0.9;
  double penalty_fraction = 0.9;
  Aggregation reference_aggregation = Aggregation::kMean;

  // Throws UsageError when a field is out of range.
  void validate() const;
};

// Aggregated per-reference similarity; no fluency term. Components: sim_<i>.
MetricScore fense_star(std::string_view hyp, std::span<const std::string> refs,
                       const SimilarityBackend& backend,
                       const FenseConfig& config = {});

// fense_star scaled by (1 - penalty_fraction) when the fluency error
// probability is strictly above the threshold. Components: fense_star,
// error_probability, penalized.
MetricScore fense(std::string_view hyp, std::span<const std::string> refs,
                  const SimilarityBackend& similarity,
                  const FluencyBackend& fluency, const FenseConfig& config = {});

}  // namespace aaceval

#endif  // AACEVAL_BACKENDS_H_
