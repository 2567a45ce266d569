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

#ifndef AACEVAL_PERTURB_H_
#define AACEVAL_PERTURB_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aaceval/corpus.h"
#include "aaceval/rng.h"
#include "aaceval/scoring.h"

namespace aaceval {

enum class ErrorKind { kSemantic, kTemporal, kSpatial };

std::string_view to_string(ErrorKind kind);
// Throws UsageError for unknown names.
ErrorKind parse_error_kind(std::string_view name);

class VerbLexicon {
 public:
  // Throws UsageError if empty or if an entry is not a single lowercase word.
  explicit VerbLexicon(std::set<std::string> verbs);

  // Newline-delimited words; blank lines and '#' comments are skipped.
  static VerbLexicon load(const std::filesystem::path& path);
  // A few hundred verbs common in sound descriptions.
  static VerbLexicon builtin();

  bool contains(const std::string& word) const { return verbs_.count(word); }
  const std::set<std::string>& verbs() const { return verbs_; }

 private:
  std::set<std::string> verbs_;
};

// Index of the first lexicon word in the clause; failing that, the first
// token longer than 3 characters ending in "ing" or "s". Passing no lexicon
// applies the suffix rule alone.
std::optional<std::size_t> detect_verb(std::span<const std::string> clause,
                                       const VerbLexicon* lexicon);

// A caption selected for one error kind, with the structural split already
// located on its token stream.
struct Candidate {
  std::string id;  // "<clip id>#<caption index>"
  Tokens tokens;
  ErrorKind kind;
};

// Structural match on the token stream. Returns nullopt when the caption does
// not fit the kind. The lexicon is consulted for semantic verb detection.
std::optional<Candidate> match_candidate(std::string id, const Tokens& tokens,
                                         ErrorKind kind,
                                         const VerbLexicon* lexicon);

std::vector<Candidate> find_candidates(const Corpus& corpus, ErrorKind kind,
                                       const VerbLexicon* lexicon);

struct PerturbationPair {
  std::string id;
  ErrorKind kind = ErrorKind::kSemantic;
  std::string original;
  std::string type1;
  std::string type2;
  // Keyword, split index, replaced and replacement verbs, item seed.
  std::map<std::string, std::string> meta;

  bool operator==(const PerturbationPair&) const = default;
};

// "A and B" -> type-1 "B and A"; type-2 replaces the detected verb of a
// uniformly chosen verb-bearing clause with a uniform draw from the lexicon
// minus that verb. Throws DataError when the caption has no verb or the
// lexicon has no alternative.
PerturbationPair perturb_semantic(const Candidate& candidate,
                                  const VerbLexicon& lexicon, Rng& rng);
// "X K Y" -> type-1 "X and Y", type-2 "Y K X".
PerturbationPair perturb_temporal(const Candidate& candidate);
// Marker dropped and connector normalized for type-1; clause contents
// swapped around a marker that keeps its slot for type-2.
PerturbationPair perturb_spatial(const Candidate& candidate);

PerturbationPair perturb(const Candidate& candidate, const VerbLexicon& lexicon,
                         std::uint64_t item_seed);

inline constexpr std::size_t kDefaultSampleSize = 1500;

// Uniform sample without replacement: candidates are ranked by
// derive_seed(seed, id) and the first n kept, so the choice is independent
// of corpus order. Each pair is generated from its own item seed. Output is
// sorted by id. Throws DataError when there are no candidates; a shortfall
// produces a warning.
std::vector<PerturbationPair> sample_pairs(const Corpus& corpus, ErrorKind kind,
                                           std::size_t n, std::uint64_t seed,
                                           const VerbLexicon& lexicon,
                                           std::size_t jobs = 1,
                                           Warnings* warnings = nullptr);
std::vector<PerturbationPair> sample_pairs(std::span<const Candidate> candidates,
                                           std::size_t n, std::uint64_t seed,
                                           const VerbLexicon& lexicon,
                                           std::size_t jobs = 1,
                                           Warnings* warnings = nullptr);

// CSV id,kind,original,type1,type2,meta_json.
void write_pairs(std::span<const PerturbationPair> pairs,
                 const std::filesystem::path& path);
std::string pairs_csv(std::span<const PerturbationPair> pairs);
std::vector<PerturbationPair> read_pairs(const std::filesystem::path& path);

struct SuitabilityResult {
  std::string metric;
  ErrorKind kind = ErrorKind::kSemantic;
  std::size_t n_pairs = 0;
  std::size_t n_ties = 0;
  double pct_type1_higher = 0.0;

  bool operator==(const SuitabilityResult&) const = default;
};

// Scores type-1 and type-2 against the single original. A pair succeeds when
// type-1 scores strictly higher; ties are counted and are not successes.
// For CIDEr-D, document frequencies are built over the pair originals unless
// the context carries stats. Errors are rethrown with the failing pair index.
SuitabilityResult run_suitability(Metric metric,
                                  std::span<const PerturbationPair> pairs,
                                  const ScoringContext& context);

// One result per (metric, kind present in pairs), metrics outermost, kinds
// in semantic, temporal, spatial order.
std::vector<SuitabilityResult> run_suitability_grid(
    std::span<const Metric> metrics, std::span<const PerturbationPair> pairs,
    const ScoringContext& context);

// CSV metric,kind,n_pairs,n_ties,pct_type1_higher, optional grouped bar SVG.
void emit_report(std::span<const SuitabilityResult> results,
                 const std::filesystem::path& csv_path,
                 const std::optional<std::filesystem::path>& svg_path = {});
std::vector<SuitabilityResult> read_report(const std::filesystem::path& path);

}  // namespace aaceval

#endif  // AACEVAL_PERTURB_H_
