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

#include "aaceval/perturb.h"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "aaceval/csv.h"
#include "aaceval/error.h"
#include "aaceval/parallel.h"
#include "aaceval/report.h"
#include "builtin_verbs.h"

namespace aaceval {
namespace {

using Phrase = std::vector<std::string_view>;

const Phrase kFollowedBy = {"followed", "by"};
const Phrase kAndThen = {"and", "then"};
const Phrase kInTheBackground = {"in", "the", "background"};
const Phrase kInTheForeground = {"in", "the", "foreground"};
constexpr std::string_view kSpatialConnectors[] = {"and", "while", "as"};

std::vector<std::size_t> find_phrase(const Tokens& tokens, const Phrase& phrase) {
  std::vector<std::size_t> hits;
  if (tokens.size() < phrase.size()) return hits;
  for (std::size_t i = 0; i + phrase.size() <= tokens.size(); ++i) {
    bool match = true;
    for (std::size_t k = 0; k < phrase.size() && match; ++k) {
      match = tokens[i + k] == phrase[k];
    }
    if (match) hits.push_back(i);
  }
  return hits;
}

std::string phrase_text(const Phrase& phrase) {
  std::string out;
  for (auto w : phrase) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

Tokens slice(const Tokens& t, std::size_t begin, std::size_t end) {
  return Tokens(t.begin() + static_cast<std::ptrdiff_t>(begin),
                t.begin() + static_cast<std::ptrdiff_t>(end));
}

Tokens concat(std::initializer_list<const Tokens*> parts) {
  Tokens out;
  for (const Tokens* p : parts) out.insert(out.end(), p->begin(), p->end());
  return out;
}

const Tokens kAnd = {"and"};

// Structural description of a caption for one kind. Positions index the
// token stream.
struct Structure {
  std::size_t split = 0;        // first token of the connector / keyword
  std::size_t keyword_len = 0;  // tokens in the connector / keyword
  std::string keyword;
  std::size_t marker = 0;  // spatial: first token of the marker
  std::string marker_text;
};

std::optional<Structure> analyze_semantic(const Tokens& t,
                                          const VerbLexicon* lexicon) {
  std::vector<std::size_t> ands;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] == "and") ands.push_back(i);
  }
  if (ands.size() != 1) return std::nullopt;
  for (const Phrase* p :
       {&kFollowedBy, &kAndThen, &kInTheBackground, &kInTheForeground}) {
    if (!find_phrase(t, *p).empty()) return std::nullopt;
  }
  const std::size_t k = ands[0];
  Tokens a = slice(t, 0, k), b = slice(t, k + 1, t.size());
  if (a.size() < 2 || b.size() < 2 || a == b) return std::nullopt;
  if (!detect_verb(a, lexicon) && !detect_verb(b, lexicon)) return std::nullopt;
  return Structure{k, 1, "and", 0, ""};
}

std::optional<Structure> analyze_temporal(const Tokens& t) {
  auto fb = find_phrase(t, kFollowedBy);
  auto at = find_phrase(t, kAndThen);
  if (fb.size() + at.size() != 1) return std::nullopt;
  const Phrase& phrase = fb.empty() ? kAndThen : kFollowedBy;
  const std::size_t k = fb.empty() ? at[0] : fb[0];
  const std::size_t y = k + phrase.size();
  if (k == 0 || y >= t.size()) return std::nullopt;
  if (slice(t, 0, k) == slice(t, y, t.size())) return std::nullopt;
  return Structure{k, phrase.size(), phrase_text(phrase), 0, ""};
}

std::optional<Structure> analyze_spatial(const Tokens& t) {
  auto bg = find_phrase(t, kInTheBackground);
  auto fg = find_phrase(t, kInTheForeground);
  if (bg.size() + fg.size() != 1) return std::nullopt;
  const Phrase& marker = bg.empty() ? kInTheForeground : kInTheBackground;
  const std::size_t m = bg.empty() ? fg[0] : bg[0];
  std::vector<std::size_t> conns;
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (auto c : kSpatialConnectors) {
      if (t[i] == c) conns.push_back(i);
    }
  }
  if (conns.size() != 1) return std::nullopt;
  const std::size_t c = conns[0];
  const std::size_t m_end = m + marker.size();
  const bool in_first = m_end == c;
  const bool in_second = m_end == t.size() && m > c;
  if (!in_first && !in_second) return std::nullopt;
  Tokens e1 = in_first ? slice(t, 0, m) : slice(t, 0, c);
  Tokens e2 = in_first ? slice(t, c + 1, t.size()) : slice(t, c + 1, m);
  if (e1.empty() || e2.empty() || e1 == e2) return std::nullopt;
  return Structure{c, 1, t[c], m, phrase_text(marker)};
}

std::optional<Structure> analyze(const Tokens& tokens, ErrorKind kind,
                                 const VerbLexicon* lexicon) {
  switch (kind) {
    case ErrorKind::kSemantic:
      return analyze_semantic(tokens, lexicon);
    case ErrorKind::kTemporal:
      return analyze_temporal(tokens);
    case ErrorKind::kSpatial:
      return analyze_spatial(tokens);
  }
  return std::nullopt;
}

Structure require_structure(const Candidate& c, const VerbLexicon* lexicon) {
  auto s = analyze(c.tokens, c.kind, lexicon);
  if (!s) {
    throw DataError("caption '" + join_tokens(c.tokens) + "' is not a " +
                    std::string(to_string(c.kind)) + " candidate");
  }
  return *s;
}

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kSemantic:
      return "semantic";
    case ErrorKind::kTemporal:
      return "temporal";
    case ErrorKind::kSpatial:
      return "spatial";
  }
  return "unknown";
}

ErrorKind parse_error_kind(std::string_view name) {
  if (name == "semantic") return ErrorKind::kSemantic;
  if (name == "temporal") return ErrorKind::kTemporal;
  if (name == "spatial") return ErrorKind::kSpatial;
  throw UsageError("unknown error kind '" + std::string(name) +
                   "' (expected semantic, temporal or spatial)");
}

VerbLexicon::VerbLexicon(std::set<std::string> verbs) : verbs_(std::move(verbs)) {
  if (verbs_.empty()) throw UsageError("verb lexicon is empty");
  for (const auto& v : verbs_) {
    Tokens t = tokenize(v);
    if (t.size() != 1 || t[0] != v) {
      throw UsageError("verb lexicon entry '" + v +
                       "' is not a single lowercase word");
    }
  }
}

namespace {

std::set<std::string> parse_word_list(std::istream& in) {
  std::set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    auto last = line.find_last_not_of(" \t");
    words.insert(line.substr(first, last - first + 1));
  }
  return words;
}

}  // namespace

VerbLexicon VerbLexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open lexicon " + path.string());
  return VerbLexicon(parse_word_list(in));
}

VerbLexicon VerbLexicon::builtin() {
  std::istringstream in(kBuiltinVerbs);
  return VerbLexicon(parse_word_list(in));
}

std::optional<std::size_t> detect_verb(std::span<const std::string> clause,
                                       const VerbLexicon* lexicon) {
  if (lexicon) {
    for (std::size_t i = 0; i < clause.size(); ++i) {
      if (lexicon->contains(clause[i])) return i;
    }
  }
  for (std::size_t i = 0; i < clause.size(); ++i) {
    const std::string& w = clause[i];
    if (w.size() > 3 && (ends_with(w, "ing") || ends_with(w, "s"))) return i;
  }
  return std::nullopt;
}

std::optional<Candidate> match_candidate(std::string id, const Tokens& tokens,
                                         ErrorKind kind,
                                         const VerbLexicon* lexicon) {
  if (!analyze(tokens, kind, lexicon)) return std::nullopt;
  return Candidate{std::move(id), tokens, kind};
}

std::vector<Candidate> find_candidates(const Corpus& corpus, ErrorKind kind,
                                       const VerbLexicon* lexicon) {
  std::vector<Candidate> out;
  for (const auto& clip : corpus.items()) {
    for (std::size_t i = 0; i < clip.captions.size(); ++i) {
      auto c = match_candidate(clip.id + "#" + std::to_string(i),
                               clip.captions[i].tokens(), kind, lexicon);
      if (c) out.push_back(std::move(*c));
    }
  }
  return out;
}

PerturbationPair perturb_semantic(const Candidate& candidate,
                                  const VerbLexicon& lexicon, Rng& rng) {
  const Structure s = require_structure(candidate, &lexicon);
  const Tokens& t = candidate.tokens;
  const Tokens a = slice(t, 0, s.split);
  const Tokens b = slice(t, s.split + 1, t.size());

  PerturbationPair pair;
  pair.id = candidate.id;
  pair.kind = ErrorKind::kSemantic;
  pair.original = join_tokens(t);
  pair.type1 = join_tokens(concat({&b, &kAnd, &a}));

  const auto verb_a = detect_verb(a, &lexicon);
  const auto verb_b = detect_verb(b, &lexicon);
  std::vector<std::size_t> positions;  // token positions in the original
  std::vector<int> clause_numbers;
  if (verb_a) {
    positions.push_back(*verb_a);
    clause_numbers.push_back(1);
  }
  if (verb_b) {
    positions.push_back(s.split + 1 + *verb_b);
    clause_numbers.push_back(2);
  }
  if (positions.empty()) {
    throw DataError("no detectable verb in '" + pair.original + "'");
  }
  const std::size_t pick =
      positions.size() == 1 ? 0 : rng.uniform_index(positions.size());
  const std::size_t pos = positions[pick];
  const std::string& verb = t[pos];
  std::vector<std::string> choices;
  for (const auto& v : lexicon.verbs()) {
    if (v != verb) choices.push_back(v);
  }
  if (choices.empty()) {
    throw DataError("verb lexicon has no replacement for '" + verb + "'");
  }
  const std::string& replacement = choices[rng.uniform_index(choices.size())];
  Tokens replaced = t;
  replaced[pos] = replacement;
  pair.type2 = join_tokens(replaced);

  pair.meta["keyword"] = "and";
  pair.meta["split_index"] = std::to_string(s.split);
  pair.meta["clause"] = std::to_string(clause_numbers[pick]);
  pair.meta["verb_index"] = std::to_string(pos);
  pair.meta["replaced_verb"] = verb;
  pair.meta["replacement_verb"] = replacement;
  return pair;
}

PerturbationPair perturb_temporal(const Candidate& candidate) {
  const Structure s = require_structure(candidate, nullptr);
  const Tokens& t = candidate.tokens;
  const Tokens x = slice(t, 0, s.split);
  const Tokens keyword = slice(t, s.split, s.split + s.keyword_len);
  const Tokens y = slice(t, s.split + s.keyword_len, t.size());
  PerturbationPair pair;
  pair.id = candidate.id;
  pair.kind = ErrorKind::kTemporal;
  pair.original = join_tokens(t);
  pair.type1 = join_tokens(concat({&x, &kAnd, &y}));
  pair.type2 = join_tokens(concat({&y, &keyword, &x}));
  pair.meta["keyword"] = s.keyword;
  pair.meta["split_index"] = std::to_string(s.split);
  return pair;
}

PerturbationPair perturb_spatial(const Candidate& candidate) {
  const Structure s = require_structure(candidate, nullptr);
  const Tokens& t = candidate.tokens;
  const std::size_t c = s.split;
  const bool in_first = s.marker < c;
  const Tokens marker = slice(t, s.marker, s.marker + 3);
  const Tokens conn = {t[c]};
  const Tokens e1 = in_first ? slice(t, 0, s.marker) : slice(t, 0, c);
  const Tokens e2 =
      in_first ? slice(t, c + 1, t.size()) : slice(t, c + 1, s.marker);
  PerturbationPair pair;
  pair.id = candidate.id;
  pair.kind = ErrorKind::kSpatial;
  pair.original = join_tokens(t);
  pair.type1 = join_tokens(concat({&e1, &kAnd, &e2}));
  pair.type2 = in_first ? join_tokens(concat({&e2, &marker, &conn, &e1}))
                        : join_tokens(concat({&e2, &conn, &e1, &marker}));
  pair.meta["keyword"] = s.marker_text;
  pair.meta["connector"] = t[c];
  pair.meta["split_index"] = std::to_string(c);
  pair.meta["marker_slot"] = in_first ? "1" : "2";
  return pair;
}

PerturbationPair perturb(const Candidate& candidate, const VerbLexicon& lexicon,
                         std::uint64_t item_seed) {
  PerturbationPair pair;
  switch (candidate.kind) {
    case ErrorKind::kSemantic: {
      Rng rng(item_seed);
      pair = perturb_semantic(candidate, lexicon, rng);
      break;
    }
    case ErrorKind::kTemporal:
      pair = perturb_temporal(candidate);
      break;
    case ErrorKind::kSpatial:
      pair = perturb_spatial(candidate);
      break;
  }
  pair.meta["item_seed"] = std::to_string(item_seed);
  return pair;
}

std::vector<PerturbationPair> sample_pairs(std::span<const Candidate> candidates,
                                           std::size_t n, std::uint64_t seed,
                                           const VerbLexicon& lexicon,
                                           std::size_t jobs, Warnings* warnings) {
  if (candidates.empty()) throw DataError("no candidates to sample from");
  if (n == 0) throw UsageError("sample size must be >= 1");
  struct Ranked {
    std::uint64_t key;
    const Candidate* candidate;
  };
  std::vector<Ranked> ranked;
  ranked.reserve(candidates.size());
  for (const auto& c : candidates) ranked.push_back({derive_seed(seed, c.id), &c});
  std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
    return a.key != b.key ? a.key < b.key : a.candidate->id < b.candidate->id;
  });
  if (ranked.size() < n) {
    std::string msg = "only " + std::to_string(ranked.size()) +
                      " candidates for a requested sample of " +
                      std::to_string(n);
    if (warnings) {
      warnings->push_back(msg);
    } else {
      std::cerr << "warning: " << msg << '\n';
    }
  }
  ranked.resize(std::min(n, ranked.size()));
  std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
    return a.candidate->id < b.candidate->id;
  });
  std::vector<PerturbationPair> pairs(ranked.size());
  parallel_for(ranked.size(), jobs, [&](std::size_t i) {
    pairs[i] = perturb(*ranked[i].candidate, lexicon, ranked[i].key);
  });
  return pairs;
}

std::vector<PerturbationPair> sample_pairs(const Corpus& corpus, ErrorKind kind,
                                           std::size_t n, std::uint64_t seed,
                                           const VerbLexicon& lexicon,
                                           std::size_t jobs, Warnings* warnings) {
  auto candidates = find_candidates(corpus, kind, &lexicon);
  if (candidates.empty()) {
    throw DataError("no " + std::string(to_string(kind)) +
                    " candidates in corpus");
  }
  return sample_pairs(candidates, n, seed, lexicon, jobs, warnings);
}

std::string pairs_csv(std::span<const PerturbationPair> pairs) {
  std::ostringstream out;
  const std::vector<std::string> header = {"id",    "kind",  "original",
                                           "type1", "type2", "meta_json"};
  write_csv_row(out, header);
  for (const auto& p : pairs) {
    nlohmann::json meta(p.meta);
    write_csv_row(out, std::vector<std::string>{p.id, std::string(to_string(p.kind)),
                                                p.original, p.type1, p.type2,
                                                meta.dump()});
  }
  return out.str();
}

void write_pairs(std::span<const PerturbationPair> pairs,
                 const std::filesystem::path& path) {
  write_text_file(path, pairs_csv(pairs));
}

std::vector<PerturbationPair> read_pairs(const std::filesystem::path& path) {
  static constexpr std::string_view kColumns[] = {"id",    "kind",  "original",
                                                  "type1", "type2", "meta_json"};
  auto rows = read_csv(path);
  if (rows.empty()) throw DataError(path.string() + ": empty pairs file");
  CsvHeader header(rows[0], kColumns, path.string());
  std::vector<PerturbationPair> pairs;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::string where = path.string() + ":" + std::to_string(r + 1);
    if (row.size() < std::size(kColumns)) {
      throw DataError(where + ": expected 6 fields");
    }
    PerturbationPair p;
    p.id = row[header["id"]];
    try {
      p.kind = parse_error_kind(row[header["kind"]]);
    } catch (const UsageError& e) {
      throw DataError(where + ": " + e.what());
    }
    p.original = row[header["original"]];
    p.type1 = row[header["type1"]];
    p.type2 = row[header["type2"]];
    if (p.original.empty() || p.type1.empty() || p.type2.empty()) {
      throw DataError(where + ": empty caption field");
    }
    try {
      p.meta = nlohmann::json::parse(row[header["meta_json"]])
                   .get<std::map<std::string, std::string>>();
    } catch (const nlohmann::json::exception& e) {
      throw DataError(where + ": bad meta_json: " + e.what());
    }
    pairs.push_back(std::move(p));
  }
  return pairs;
}

SuitabilityResult run_suitability(Metric metric,
                                  std::span<const PerturbationPair> pairs,
                                  const ScoringContext& context) {
  if (pairs.empty()) throw UsageError("run_suitability: no pairs");
  ScoringContext ctx = context;
  CorpusNgramStats local_stats;
  if (metric == Metric::kCiderD && !ctx.stats) {
    std::vector<Tokens> originals;
    originals.reserve(pairs.size());
    for (const auto& p : pairs) originals.push_back(tokenize(p.original));
    local_stats = build_corpus_stats(originals);
    ctx.stats = &local_stats;
  }
  check_context(metric, ctx);
  std::vector<int> outcome(pairs.size());  // 1 success, 0 tie, -1 failure
  parallel_for(pairs.size(), ctx.jobs, [&](std::size_t i) {
    const std::vector<std::string> refs = {pairs[i].original};
    try {
      const double s1 = score_one(metric, pairs[i].type1, refs, ctx).value;
      const double s2 = score_one(metric, pairs[i].type2, refs, ctx).value;
      outcome[i] = s1 > s2 ? 1 : (s1 == s2 ? 0 : -1);
    } catch (const BackendError& e) {
      throw BackendError("pair " + std::to_string(i) + " (" + pairs[i].id +
                         "): " + e.what());
    } catch (const UsageError& e) {
      throw UsageError("pair " + std::to_string(i) + " (" + pairs[i].id +
                       "): " + e.what());
    } catch (const DataError& e) {
      throw DataError("pair " + std::to_string(i) + " (" + pairs[i].id +
                      "): " + e.what());
    }
  });
  SuitabilityResult result;
  result.metric = std::string(metric_name(metric));
  result.kind = pairs[0].kind;
  result.n_pairs = pairs.size();
  std::size_t wins = 0;
  for (int o : outcome) {
    wins += o == 1;
    result.n_ties += o == 0;
  }
  result.pct_type1_higher =
      100.0 * static_cast<double>(wins) / static_cast<double>(pairs.size());
  return result;
}

std::vector<SuitabilityResult> run_suitability_grid(
    std::span<const Metric> metrics, std::span<const PerturbationPair> pairs,
    const ScoringContext& context) {
  if (pairs.empty()) throw UsageError("run_suitability: no pairs");
  std::vector<SuitabilityResult> results;
  for (Metric m : metrics) {
    for (ErrorKind kind :
         {ErrorKind::kSemantic, ErrorKind::kTemporal, ErrorKind::kSpatial}) {
      std::vector<PerturbationPair> subset;
      for (const auto& p : pairs) {
        if (p.kind == kind) subset.push_back(p);
      }
      if (subset.empty()) continue;
      results.push_back(run_suitability(m, subset, context));
    }
  }
  return results;
}

void emit_report(std::span<const SuitabilityResult> results,
                 const std::filesystem::path& csv_path,
                 const std::optional<std::filesystem::path>& svg_path) {
  if (results.empty()) throw UsageError("emit_report: no results");
  std::ostringstream out;
  write_csv_row(out, std::vector<std::string>{"metric", "kind", "n_pairs",
                                              "n_ties", "pct_type1_higher"});
  for (const auto& r : results) {
    write_csv_row(out, std::vector<std::string>{
                           r.metric, std::string(to_string(r.kind)),
                           std::to_string(r.n_pairs), std::to_string(r.n_ties),
                           format_double(r.pct_type1_higher)});
  }
  write_text_file(csv_path, out.str());
  if (!svg_path) return;
  BarTable table;
  table.title = "Share of pairs scoring type-1 above type-2";
  table.y_label = "% pairs";
  table.y_max = 100.0;
  for (const auto& r : results) {
    if (std::find(table.groups.begin(), table.groups.end(), r.metric) ==
        table.groups.end()) {
      table.groups.push_back(r.metric);
    }
    const std::string kind(to_string(r.kind));
    if (std::find(table.series.begin(), table.series.end(), kind) ==
        table.series.end()) {
      table.series.push_back(kind);
    }
  }
  table.values.assign(table.series.size(),
                      std::vector<double>(table.groups.size(), 0.0));
  for (const auto& r : results) {
    const std::string kind(to_string(r.kind));
    auto s = std::find(table.series.begin(), table.series.end(), kind) -
             table.series.begin();
    auto g = std::find(table.groups.begin(), table.groups.end(), r.metric) -
             table.groups.begin();
    table.values[static_cast<std::size_t>(s)][static_cast<std::size_t>(g)] =
        r.pct_type1_higher;
  }
  write_text_file(*svg_path, svg_bars(table));
}

std::vector<SuitabilityResult> read_report(const std::filesystem::path& path) {
  static constexpr std::string_view kColumns[] = {
      "metric", "kind", "n_pairs", "n_ties", "pct_type1_higher"};
  auto rows = read_csv(path);
  if (rows.empty()) throw DataError(path.string() + ": empty report");
  CsvHeader header(rows[0], kColumns, path.string());
  std::vector<SuitabilityResult> results;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() < std::size(kColumns)) {
      throw DataError(path.string() + ": short row " + std::to_string(r + 1));
    }
    SuitabilityResult res;
    res.metric = row[header["metric"]];
    try {
      res.kind = parse_error_kind(row[header["kind"]]);
      res.n_pairs = std::stoull(row[header["n_pairs"]]);
      res.n_ties = std::stoull(row[header["n_ties"]]);
      res.pct_type1_higher = parse_double(row[header["pct_type1_higher"]]);
    } catch (const std::exception& e) {
      throw DataError(path.string() + ": row " + std::to_string(r + 1) + ": " +
                      e.what());
    }
    results.push_back(std::move(res));
  }
  return results;
}

}  // namespace aaceval
