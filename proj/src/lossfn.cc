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

#include "aaceval/lossfn.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "aaceval/csv.h"
#include "aaceval/error.h"
#include "aaceval/report.h"

namespace aaceval {
namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw UsageError("posterior of the target class must be in (0, 1], got " +
                     format_double(alpha));
  }
}

}  // namespace

PriorDistribution token_prior(const std::map<std::string, std::int64_t>& counts) {
  std::map<std::string, std::int64_t> positive;
  for (const auto& [w, n] : counts) {
    if (n < 0) throw DataError("negative count for '" + w + "'");
    if (n > 0) positive.emplace(w, n);
  }
  if (positive.empty()) throw DataError("token_prior: no counted tokens");
  VocabStats stats = vocab_stats_from_counts(std::move(positive));
  PriorDistribution prior;
  for (const auto& w : stats.ranked) {
    const std::int64_t n = stats.counts.at(w);
    prior.words.push_back(w);
    prior.counts.push_back(n);
    prior.p.push_back(static_cast<double>(n) /
                      static_cast<double>(stats.total_tokens));
  }
  return prior;
}

PriorDistribution token_prior(const Corpus& corpus) {
  if (corpus.empty()) throw DataError("token_prior: empty corpus");
  return token_prior(vocab_stats(corpus).counts);
}

std::map<std::string, std::int64_t> read_token_counts(
    const std::filesystem::path& path) {
  static constexpr std::string_view kColumns[] = {"token", "count"};
  auto rows = read_csv(path);
  if (rows.empty()) throw DataError(path.string() + ": empty counts file");
  CsvHeader header(rows[0], kColumns, path.string());
  std::map<std::string, std::int64_t> counts;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::string where = path.string() + ":" + std::to_string(r + 1);
    if (row.size() < 2) throw DataError(where + ": expected token,count");
    const std::string& token = row[header["token"]];
    if (token.empty()) throw DataError(where + ": empty token");
    std::int64_t n = 0;
    try {
      std::size_t used = 0;
      n = std::stoll(row[header["count"]], &used);
      if (used != row[header["count"]].size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw DataError(where + ": bad count '" + row[header["count"]] + "'");
    }
    if (n < 0) throw DataError(where + ": negative count");
    if (!counts.emplace(token, n).second) {
      throw DataError(where + ": duplicate token '" + token + "'");
    }
  }
  return counts;
}

BalancedWeights balanced_weights(std::span<const double> prior,
                                 double max_weight) {
  if (prior.empty()) throw UsageError("balanced_weights: empty prior");
  if (!(max_weight > 0.0) || !std::isfinite(max_weight)) {
    throw UsageError("balanced_weights: max weight must be positive");
  }
  std::vector<double> info(prior.size());
  double max_info = 0.0;
  for (std::size_t c = 0; c < prior.size(); ++c) {
    if (!(prior[c] > 0.0 && prior[c] <= 1.0)) {
      throw UsageError("balanced_weights: priors must be in (0, 1]");
    }
    info[c] = -std::log(prior[c]);
    max_info = std::max(max_info, info[c]);
  }
  if (max_info <= 0.0) {
    throw UsageError("balanced_weights: degenerate prior (a class has p = 1)");
  }
  BalancedWeights w;
  w.max_weight = max_weight;
  w.scale = max_weight / max_info;
  w.omega.resize(prior.size());
  // max_weight * (info / max_info) is exactly max_weight at the rarest class.
  for (std::size_t c = 0; c < prior.size(); ++c) {
    w.omega[c] = max_weight * (info[c] / max_info);
  }
  return w;
}

void write_weights_csv(const PriorDistribution& prior,
                       const BalancedWeights& weights,
                       const std::filesystem::path& path) {
  if (prior.p.size() != weights.omega.size()) {
    throw UsageError("write_weights_csv: prior and weights differ in size");
  }
  std::vector<std::size_t> order(prior.p.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (weights.omega[a] != weights.omega[b]) {
      return weights.omega[a] > weights.omega[b];
    }
    return prior.words[a] < prior.words[b];
  });
  std::ostringstream out;
  write_csv_row(out, std::vector<std::string>{"word", "count", "prior", "weight"});
  for (std::size_t c : order) {
    write_csv_row(out, std::vector<std::string>{
                           prior.words[c], std::to_string(prior.counts[c]),
                           format_double(prior.p[c]),
                           format_double(weights.omega[c])});
  }
  write_text_file(path, out.str());
}

PosteriorVector::PosteriorVector(std::vector<double> alpha)
    : alpha_(std::move(alpha)) {
  if (alpha_.empty()) throw UsageError("posterior vector is empty");
  double sum = 0.0;
  for (double a : alpha_) {
    if (!(a > 0.0 && a <= 1.0)) {
      throw UsageError("posterior entries must be in (0, 1]");
    }
    sum += a;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw UsageError("posterior entries must sum to 1");
  }
}

double cross_entropy(double alpha_target) {
  check_alpha(alpha_target);
  return -std::log(alpha_target);
}

double balanced_ce(double alpha_target, double weight) {
  check_alpha(alpha_target);
  if (!(weight >= 0.0)) throw UsageError("class weight must be >= 0");
  return -weight * std::log(alpha_target);
}

double focal(double alpha_target, double gamma) {
  check_alpha(alpha_target);
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw UsageError("focal gamma must be finite and >= 0");
  }
  return -std::pow(1.0 - alpha_target, gamma) * std::log(alpha_target);
}

double cross_entropy(const PosteriorVector& alpha, std::size_t target) {
  if (target >= alpha.size()) throw UsageError("target index out of range");
  return cross_entropy(alpha[target]);
}

double balanced_ce(const PosteriorVector& alpha, std::size_t target,
                   const BalancedWeights& weights) {
  if (target >= alpha.size() || target >= weights.omega.size()) {
    throw UsageError("target index out of range");
  }
  return balanced_ce(alpha[target], weights.omega[target]);
}

double focal(const PosteriorVector& alpha, std::size_t target,
             const FocalConfig& config) {
  if (target >= alpha.size()) throw UsageError("target index out of range");
  return focal(alpha[target], config.gamma);
}

double focal_grad(double alpha_target, double gamma) {
  check_alpha(alpha_target);
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw UsageError("focal gamma must be finite and >= 0");
  }
  if (alpha_target == 1.0) {
    if (gamma < 1.0) {
      throw UsageError("focal_grad is singular at alpha = 1 for gamma < 1");
    }
    return 0.0;
  }
  const double q = 1.0 - alpha_target;
  const double first =
      gamma == 0.0 ? 0.0 : gamma * std::pow(q, gamma - 1.0) * std::log(alpha_target);
  return first - std::pow(q, gamma) / alpha_target;
}

std::size_t output_vocab_size(std::span<const std::string> captions) {
  std::set<std::string> words;
  for (const auto& c : captions) {
    for (auto& t : tokenize(c)) words.insert(std::move(t));
  }
  return words.size();
}

std::vector<SweepRow> gamma_sweep_table(std::span<const double> alphas,
                                        std::span<const double> gammas) {
  if (gammas.empty()) throw UsageError("gamma_sweep_table: empty gamma list");
  std::vector<SweepRow> rows;
  rows.reserve(alphas.size() * gammas.size());
  for (double g : gammas) {
    for (double a : alphas) {
      const bool grad_defined = a < 1.0 || g >= 1.0;
      rows.push_back({a, g, focal(a, g), cross_entropy(a),
                      grad_defined ? focal_grad(a, g) : std::nan("")});
    }
  }
  return rows;
}

void write_sweep_csv(std::span<const SweepRow> rows,
                     const std::filesystem::path& path) {
  std::ostringstream out;
  write_csv_row(out, std::vector<std::string>{"alpha", "gamma", "focal_loss",
                                              "cross_entropy", "focal_grad"});
  for (const auto& r : rows) {
    write_csv_row(out, std::vector<std::string>{
                           format_double(r.alpha), format_double(r.gamma),
                           format_double(r.focal_loss),
                           format_double(r.cross_entropy),
                           std::isnan(r.focal_grad) ? std::string()
                                                    : format_double(r.focal_grad)});
  }
  write_text_file(path, out.str());
}

}  // namespace aaceval
