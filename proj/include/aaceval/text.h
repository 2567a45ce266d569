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

#ifndef AACEVAL_TEXT_H_
#define AACEVAL_TEXT_H_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace aaceval {

using Tokens = std::vector<std::string>;

// n-gram multiset; keys are the n tokens joined by single spaces.
using NgramCounts = std::map<std::string, int>;

// Lowercases (ASCII), strips the characters . , ! ? ; : " ' ( ) - and splits
// on whitespace. Empty tokens are dropped. Non-ASCII bytes pass through.
Tokens tokenize(std::string_view text);

// Joins tokens with single spaces.
std::string join_tokens(std::span<const std::string> tokens);
std::string join_tokens(std::span<const std::string> tokens,
                        std::size_t begin, std::size_t end);

// All contiguous windows of length n, with multiplicity. Throws UsageError
// when n == 0.
NgramCounts ngrams(std::span<const std::string> tokens, std::size_t n);

// Porter stemmer, original published algorithm (steps 1a through 5b).
// Expects a lowercase word; words of length <= 2 are returned unchanged.
std::string stem(std::string_view token);

}  // namespace aaceval

#endif  // AACEVAL_TEXT_H_
