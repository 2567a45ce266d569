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

#ifndef AACEVAL_LOSSFN_H_
#define AACEVAL_LOSSFN_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "aaceval/corpus.h"
#include "aaceval/vocab.h"

namespace aaceval {

// Class priors with the words they belong to, in vocabulary rank order.
struct PriorDistribution {
  std::vector<std::string> words;
  std::vector<std::int64_t> counts;
  std::vector<double> p;
};

// Word-level priors count / total over the corpus captions. Throws
// DataError on an empty corpus.
PriorDistribution token_prior(const Corpus& corpus);
// Classes with a zero count are dropped. Throws DataError if nothing is left.
PriorDistribution token_prior(const std::map<std::string, std::int64_t>& counts);

// CSV token,count.
std::map<std::string, std::int64_t> read_token_counts(
    const std::filesystem::path& path);

inline constexpr double kDefaultMaxWeight = 4.0;

struct BalancedWeights {
  std::vector<double> omega;
  double scale = 0.0;  // a
  double max_weight = kDefaultMaxWeight;
};

// omega_c = a * -ln(p_c) with a = max_weight / max_c(-ln p_c), so the rarest
// class gets exactly max_weight. Throws UsageError when no class has p < 1
// or a prior is not positive.
BalancedWeights balanced_weights(std::span<const double> prior,
                                 double max_weight = kDefaultMaxWeight);

// CSV word,count,prior,weight by descending weight, ties by word.
void write_weights_csv(const PriorDistribution& prior,
                       const BalancedWeights& weights,
                       const std::filesystem::path& path);

// Predicted class probabilities. Throws UsageError unless every entry is in
// (0, 1] and the sum is 1 within 1e-9.
class PosteriorVector {
 public:
  explicit PosteriorVector(std::vector<double> alpha);
  double operator[](std::size_t c) const { return alpha_.at(c); }
  std::size_t size() const { return alpha_.size(); }

 private:
  std::vector<double> alpha_;
};

struct FocalConfig {
  double gamma = 10.0;
};

// Scalar forms take the ground-truth posterior directly and throw UsageError
// unless it is in (0, 1].
double cross_entropy(double alpha_target);
double balanced_ce(double alpha_target, double weight);
double focal(double alpha_target, double gamma);

double cross_entropy(const PosteriorVector& alpha, std::size_t target);
double balanced_ce(const PosteriorVector& alpha, std::size_t target,
                   const BalancedWeights& weights);
double focal(const PosteriorVector& alpha, std::size_t target,
             const FocalConfig& config);

// d/d(alpha) of -(1 - alpha)^gamma ln(alpha). Throws UsageError for alpha
// outside (0, 1], and at alpha = 1 when gamma < 1.
double focal_grad(double alpha_target, double gamma);

// Distinct normalized tokens across the captions.
std::size_t output_vocab_size(std::span<const std::string> captions);

struct SweepRow {
  double alpha;
  double gamma;
  double focal_loss;
  double cross_entropy;
  double focal_grad;
};

// Rows ordered gamma-major. Throws UsageError on an empty gamma list.
std::vector<SweepRow> gamma_sweep_table(std::span<const double> alphas,
                                        std::span<const double> gammas);
void write_sweep_csv(std::span<const SweepRow> rows,
                     const std::filesystem::path& path);

}  // namespace aaceval

#endif  // AACEVAL_LOSSFN_H_
