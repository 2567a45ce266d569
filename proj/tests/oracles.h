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

#ifndef AACEVAL_TESTS_ORACLES_H_
#define AACEVAL_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "aaceval/text.h"

namespace aaceval::testing {

// Exhaustive LCS: the longest subsequence of `a` that is also a subsequence
// of `b`, found by enumerating all 2^|a| subsets.
inline std::size_t brute_force_lcs(const Tokens& a, const Tokens& b) {
  std::size_t best = 0;
  const std::size_t n = a.size();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    Tokens sub;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) sub.push_back(a[i]);
    }
    std::size_t j = 0;
    for (const auto& w : b) {
      if (j < sub.size() && sub[j] == w) ++j;
    }
    if (j == sub.size()) best = std::max(best, sub.size());
  }
  return best;
}

// Straight-line CIDEr-D with n-grams kept as token vectors.
inline double oracle_cider(const Tokens& hyp, const std::vector<Tokens>& refs,
                    const std::vector<Tokens>& docs, std::size_t max_n,
                    double sigma) {
  using Gram = std::vector<std::string>;
  auto grams = [](const Tokens& t, std::size_t n) {
    std::map<Gram, double> out;
    for (std::size_t i = 0; i + n <= t.size(); ++i) {
      out[Gram(t.begin() + i, t.begin() + i + n)] += 1.0;
    }
    return out;
  };
  double total = 0.0;
  for (std::size_t n = 1; n <= max_n; ++n) {
    std::map<Gram, double> df;
    for (const auto& d : docs) {
      for (const auto& [g, c] : grams(d, n)) df[g] += 1.0;
    }
    auto weigh = [&](std::map<Gram, double> v) {
      for (auto& [g, c] : v) {
        double d = df.count(g) ? df[g] : 1.0;
        c *= std::log(static_cast<double>(docs.size())) - std::log(d);
      }
      return v;
    };
    auto h = weigh(grams(hyp, n));
    double hn = 0.0;
    for (auto& [g, c] : h) hn += c * c;
    hn = std::sqrt(hn);
    double acc = 0.0;
    for (const auto& ref : refs) {
      auto r = weigh(grams(ref, n));
      double rn = 0.0;
      for (auto& [g, c] : r) rn += c * c;
      rn = std::sqrt(rn);
      double dot = 0.0;
      for (auto& [g, c] : h) {
        if (r.count(g)) dot += std::min(c, r[g]) * r[g];
      }
      double sim = (hn == 0.0 || rn == 0.0) ? 0.0 : dot / (hn * rn);
      double delta = static_cast<double>(hyp.size()) - static_cast<double>(ref.size());
      acc += sim * std::exp(-delta * delta / (2 * sigma * sigma));
    }
    total += acc / refs.size();
  }
  return 10.0 * total / max_n;
}

}  // namespace aaceval::testing

#endif  // AACEVAL_TESTS_ORACLES_H_
