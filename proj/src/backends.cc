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

#include "aaceval/backends.h"

#include <algorithm>
#include <cmath>
#include <map>

#include <httplib.h>
#include <json.hpp>

#include "aaceval/error.h"
#include "aaceval/text.h"

namespace aaceval {

using nlohmann::json;

double lexical_cosine(std::string_view a, std::string_view b) {
  std::map<std::string, double> va, vb;
  for (const auto& t : tokenize(a)) va[stem(t)] += 1.0;
  for (const auto& t : tokenize(b)) vb[stem(t)] += 1.0;
  if (va.empty() || vb.empty()) return 0.0;
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (const auto& [w, x] : va) {
    na += x * x;
    auto it = vb.find(w);
    if (it != vb.end()) dot += x * it->second;
  }
  for (const auto& [w, x] : vb) nb += x * x;
  if (dot == 0.0) return 0.0;
  // Exact 1.0 for identical vectors regardless of rounding in the norms.
  if (va == vb) return 1.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

namespace {

double aggregate(std::span<const double> values, Aggregation aggregation) {
  if (values.empty()) return 0.0;
  if (aggregation == Aggregation::kMax) {
    return *std::max_element(values.begin(), values.end());
  }
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

}  // namespace

double LexicalCosineBackend::similarity(
    std::string_view hypothesis, std::span<const std::string> references) const {
  std::vector<double> sims;
  sims.reserve(references.size());
  for (const auto& r : references) sims.push_back(lexical_cosine(hypothesis, r));
  return aggregate(sims, aggregation_);
}

RemoteScorer::RemoteScorer(std::string url, std::chrono::milliseconds timeout)
    : url_(std::move(url)), timeout_(timeout) {
  std::string_view rest = url_;
  constexpr std::string_view kScheme = "http://";
  if (rest.substr(0, kScheme.size()) != kScheme) {
    throw UsageError("remote backend: only http:// URLs are supported: " + url_);
  }
  rest.remove_prefix(kScheme.size());
  const std::size_t slash = rest.find('/');
  std::string_view authority = rest.substr(0, slash);
  if (slash != std::string_view::npos) {
    prefix_ = std::string(rest.substr(slash));
    while (!prefix_.empty() && prefix_.back() == '/') prefix_.pop_back();
  }
  const std::size_t colon = authority.rfind(':');
  if (colon != std::string_view::npos) {
    host_ = std::string(authority.substr(0, colon));
    try {
      port_ = std::stoi(std::string(authority.substr(colon + 1)));
    } catch (const std::exception&) {
      throw UsageError("remote backend: bad port in " + url_);
    }
  } else {
    host_ = std::string(authority);
  }
  if (host_.empty()) throw UsageError("remote backend: missing host in " + url_);
}

std::string RemoteScorer::post(const std::string& endpoint,
                               const std::string& body) const {
  httplib::Client client(host_, port_);
  client.set_connection_timeout(timeout_);
  client.set_read_timeout(timeout_);
  client.set_write_timeout(timeout_);
  auto res = client.Post(prefix_ + endpoint, body, "application/json");
  if (!res) {
    throw BackendError("remote backend " + url_ + endpoint + ": " +
                       httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw BackendError("remote backend " + url_ + endpoint + ": HTTP " +
                       std::to_string(res->status));
  }
  return res->body;
}

namespace {

double read_number(const std::string& body, const char* field,
                   const std::string& where) {
  try {
    json j = json::parse(body);
    const json& v = j.at(field);
    if (!v.is_number()) throw BackendError(where + ": '" + field + "' is not a number");
    double x = v.get<double>();
    if (!std::isfinite(x)) throw BackendError(where + ": non-finite score");
    return x;
  } catch (const json::exception& e) {
    throw BackendError(where + ": malformed response: " + e.what());
  }
}

}  // namespace

double RemoteScorer::similarity(std::string_view hypothesis,
                                std::span<const std::string> references) const {
  json body = {{"hypothesis", std::string(hypothesis)},
               {"references", std::vector<std::string>(references.begin(),
                                                       references.end())}};
  const std::string where = url_ + "/similarity";
  double score = read_number(post("/similarity", body.dump()), "score", where);
  if (score < -1.0 || score > 1.0) {
    throw BackendError(where + ": score outside [-1, 1]");
  }
  return score;
}

double RemoteScorer::error_probability(std::string_view sentence) const {
  json body = {{"sentence", std::string(sentence)}};
  const std::string where = url_ + "/fluency";
  double p = read_number(post("/fluency", body.dump()), "error_probability", where);
  if (p < 0.0 || p > 1.0) {
    throw BackendError(where + ": error_probability outside [0, 1]");
  }
  return p;
}

void RemoteScorer::check_health() const {
  httplib::Client client(host_, port_);
  client.set_connection_timeout(timeout_);
  client.set_read_timeout(timeout_);
  auto res = client.Get(prefix_ + "/healthz");
  if (!res) {
    throw BackendError("remote backend " + url_ + "/healthz: " +
                       httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw BackendError("remote backend " + url_ + "/healthz: HTTP " +
                       std::to_string(res->status));
  }
}

void FenseConfig::validate() const {
  if (!(error_threshold >= 0.0 && error_threshold <= 1.0)) {
    throw UsageError("fense: error_threshold must be in [0, 1]");
  }
  if (!(penalty_fraction >= 0.0 && penalty_fraction <= 1.0)) {
    throw UsageError("fense: penalty_fraction must be in [0, 1]");
  }
}

MetricScore fense_star(std::string_view hyp, std::span<const std::string> refs,
                       const SimilarityBackend& backend,
                       const FenseConfig& config) {
  config.validate();
  if (refs.empty()) throw UsageError("fense_star: no references");
  MetricScore score;
  std::vector<double> sims;
  sims.reserve(refs.size());
  for (std::size_t i = 0; i < refs.size(); ++i) {
    double s = backend.similarity(hyp, std::span<const std::string>(&refs[i], 1));
    score.components["sim_" + std::to_string(i)] = s;
    sims.push_back(s);
  }
  score.value = aggregate(sims, config.reference_aggregation);
  return score;
}

MetricScore fense(std::string_view hyp, std::span<const std::string> refs,
                  const SimilarityBackend& similarity,
                  const FluencyBackend& fluency, const FenseConfig& config) {
  MetricScore star = fense_star(hyp, refs, similarity, config);
  const double p_err = fluency.error_probability(hyp);
  const bool penalized = p_err > config.error_threshold;
  MetricScore score;
  score.value = penalized ? star.value * (1.0 - config.penalty_fraction)
                          : star.value;
  score.components = std::move(star.components);
  score.components["fense_star"] = star.value;
  score.components["error_probability"] = p_err;
  score.components["penalized"] = penalized ? 1.0 : 0.0;
  return score;
}

}  // namespace aaceval
