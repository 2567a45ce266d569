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

// Command-line entry point: ingestion, perturbation benchmarking, scoring,
// augmentation and loss analysis.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aaceval/augment.h"
#include "aaceval/backends.h"
#include "aaceval/corpus.h"
#include "aaceval/csv.h"
#include "aaceval/error.h"
#include "aaceval/lossfn.h"
#include "aaceval/manifest.h"
#include "aaceval/parallel.h"
#include "aaceval/perturb.h"
#include "aaceval/report.h"
#include "aaceval/rng.h"
#include "aaceval/scoring.h"
#include "aaceval/vocab.h"

namespace fs = std::filesystem;

namespace aaceval {
namespace {

constexpr std::uint64_t kDefaultSeed = 42;

// Removes every registered output unless the run completes.
class OutputGuard {
 public:
  ~OutputGuard() {
    if (committed_) return;
    std::error_code ec;
    for (auto it = paths_.rbegin(); it != paths_.rend(); ++it) {
      fs::remove(*it, ec);
    }
    for (const auto& dir : created_dirs_) {
      if (fs::is_empty(dir, ec)) fs::remove(dir, ec);
    }
  }
  const fs::path& add(const fs::path& path) {
    paths_.push_back(path);
    return path;
  }
  void add_created_dir(const fs::path& dir) { created_dirs_.push_back(dir); }
  void commit() { committed_ = true; }

 private:
  std::vector<fs::path> paths_;
  std::vector<fs::path> created_dirs_;
  bool committed_ = false;
};

// Accumulates the key=value fields of the one-line run summary.
class Summary {
 public:
  explicit Summary(std::string command) { line_ << "aaceval " << command; }
  template <typename T>
  Summary& field(const std::string& key, const T& value) {
    line_ << ' ' << key << '=' << value;
    return *this;
  }
  Summary& input(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::string bytes((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    return field("input", path.string() + "@fnv1a64:" + hex);
  }
  void print() const { std::cout << line_.str() << std::endl; }

 private:
  std::ostringstream line_;
};

void require_file(const fs::path& path) {
  if (!fs::is_regular_file(path)) {
    throw DataError("input file not found: " + path.string());
  }
}

void warn_all(const Warnings& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

std::vector<std::string> read_lines(const fs::path& path) {
  std::istringstream in(read_text_file(path));
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

std::vector<double> parse_number_list(const std::string& text,
                                      const std::string& flag) {
  std::vector<double> out;
  try {
    const auto colon = split(text, ':');
    if (colon.size() == 3) {
      const double start = parse_double(colon[0]);
      const double stop = parse_double(colon[1]);
      const double step = parse_double(colon[2]);
      if (!(step > 0) || stop < start) throw UsageError("bad range");
      const auto n = static_cast<std::size_t>((stop - start) / step + 1e-9);
      for (std::size_t i = 0; i <= n; ++i) out.push_back(start + i * step);
    } else {
      for (const auto& part : split(text, ',')) out.push_back(parse_double(part));
    }
  } catch (const Error&) {
    throw UsageError(flag + ": expected a comma list or start:stop:step, got '" +
                     text + "'");
  }
  if (out.empty()) throw UsageError(flag + ": empty list");
  return out;
}

std::string csv_line(const std::vector<std::string>& fields) {
  std::ostringstream out;
  write_csv_row(out, fields);
  return out.str();
}

// Backend selection shared by score and suitability.
struct BackendFlags {
  std::string backend = "lexical";
  std::string aggregation = "mean";
  double error_threshold = 0.9;
  double penalty = 0.9;
  int timeout_ms = 10000;
};

void add_backend_flags(CLI::App* cmd, BackendFlags& flags) {
  cmd->add_option("--backend", flags.backend,
                  "Similarity backend: lexical or remote:http://host:port");
  cmd->add_option("--aggregation", flags.aggregation,
                  "Reference aggregation for fense metrics: mean or max");
  cmd->add_option("--error-threshold", flags.error_threshold,
                  "Fluency error probability above which fense penalizes");
  cmd->add_option("--penalty", flags.penalty,
                  "Fraction of the score removed by the fluency penalty");
  cmd->add_option("--timeout-ms", flags.timeout_ms, "Remote backend timeout");
}

struct Backends {
  std::unique_ptr<LexicalCosineBackend> lexical;
  std::unique_ptr<RemoteScorer> remote;
  ScoringContext context;
};

// Validates flags and metric requirements before any input is read; the
// remote health check comes last so usage errors win.
Backends make_backends(const BackendFlags& flags,
                       const std::vector<Metric>& metrics, std::size_t jobs) {
  Backends b;
  b.context.jobs = jobs;
  if (flags.aggregation == "mean") {
    b.context.fense.reference_aggregation = Aggregation::kMean;
  } else if (flags.aggregation == "max") {
    b.context.fense.reference_aggregation = Aggregation::kMax;
  } else {
    throw UsageError("--aggregation must be mean or max");
  }
  b.context.fense.error_threshold = flags.error_threshold;
  b.context.fense.penalty_fraction = flags.penalty;
  b.context.fense.validate();
  const std::string kRemote = "remote:";
  bool remote = false;
  if (flags.backend == "lexical") {
    b.lexical = std::make_unique<LexicalCosineBackend>(
        b.context.fense.reference_aggregation);
    b.context.similarity = b.lexical.get();
  } else if (flags.backend.rfind(kRemote, 0) == 0) {
    if (flags.timeout_ms <= 0) throw UsageError("--timeout-ms must be positive");
    b.remote = std::make_unique<RemoteScorer>(
        flags.backend.substr(kRemote.size()),
        std::chrono::milliseconds(flags.timeout_ms));
    b.context.similarity = b.remote.get();
    b.context.fluency = b.remote.get();
    remote = true;
  } else {
    throw UsageError("--backend must be 'lexical' or 'remote:URL', got '" +
                     flags.backend + "'");
  }
  for (Metric m : metrics) {
    if (m == Metric::kFense && !b.context.fluency) {
      throw UsageError(
          "metric fense needs a fluency-capable backend; use --backend "
          "remote:URL or fense_star");
    }
  }
  if (remote) {
    bool needed = false;
    for (Metric m : metrics) {
      needed |= m == Metric::kFense || m == Metric::kFenseStar;
    }
    if (needed) b.remote->check_health();
  }
  return b;
}

// ---------------------------------------------------------------------------

struct IngestFlags {
  std::string format;
  fs::path csv;
  std::optional<fs::path> audio_dir;
  std::size_t max_words = 0;
  fs::path out;
};

void run_ingest(const IngestFlags& f, OutputGuard& guard) {
  if (f.format != "clotho" && f.format != "audiocaps" && f.format != "manifest") {
    throw UsageError("--format must be clotho, audiocaps or manifest");
  }
  require_file(f.csv);
  const fs::path audio_dir = f.audio_dir.value_or(f.csv.parent_path());
  Warnings warnings;
  Corpus corpus;
  if (f.format == "clotho") {
    corpus = load_clotho_csv(f.csv, audio_dir, &warnings);
  } else if (f.format == "audiocaps") {
    corpus = load_audiocaps_csv(f.csv, audio_dir, &warnings);
  } else {
    corpus = load_manifest(f.csv);
  }
  warn_all(warnings);
  const std::size_t loaded = corpus.size();
  if (f.max_words > 0) corpus = filter_max_words(corpus, f.max_words);
  write_manifest(corpus, guard.add(f.out));
  Summary("ingest")
      .field("format", f.format)
      .input(f.csv)
      .field("items", corpus.size())
      .field("dropped", loaded - corpus.size())
      .field("warnings", warnings.size())
      .field("out", f.out.string())
      .print();
}

struct VocabFlags {
  fs::path manifest;
  fs::path out_csv;
  std::optional<fs::path> svg;
};

void run_vocab(const VocabFlags& f, OutputGuard& guard) {
  require_file(f.manifest);
  Corpus corpus = load_manifest(f.manifest);
  VocabStats stats = vocab_stats(corpus);
  std::vector<double> cdf = vocab_cdf(stats);
  std::string csv = csv_line({"rank", "word", "count", "cdf"});
  for (std::size_t i = 0; i < stats.ranked.size(); ++i) {
    const auto& w = stats.ranked[i];
    csv += csv_line({std::to_string(i + 1), w, std::to_string(stats.counts.at(w)),
                     format_double(cdf[i])});
  }
  write_text_file(guard.add(f.out_csv), csv);
  if (f.svg) write_text_file(guard.add(*f.svg), svg_cdf(cdf, "Vocabulary CDF"));
  const std::size_t at = std::min<std::size_t>(1000, cdf.size());
  Summary("vocab")
      .input(f.manifest)
      .field("distinct", stats.ranked.size())
      .field("tokens", stats.total_tokens)
      .field("cdf_at_" + std::to_string(at), format_double(cdf[at - 1]))
      .field("out", f.out_csv.string())
      .print();
}

struct PerturbFlags {
  fs::path manifest;
  std::string kind;
  std::size_t n = kDefaultSampleSize;
  std::uint64_t seed = kDefaultSeed;
  std::optional<fs::path> lexicon;
  fs::path out;
};

void run_perturb(const PerturbFlags& f, std::size_t jobs, OutputGuard& guard) {
  std::vector<ErrorKind> kinds;
  if (f.kind == "all") {
    kinds = {ErrorKind::kSemantic, ErrorKind::kTemporal, ErrorKind::kSpatial};
  } else {
    kinds = {parse_error_kind(f.kind)};
  }
  if (f.n == 0) throw UsageError("--n must be at least 1");
  require_file(f.manifest);
  if (f.lexicon) require_file(*f.lexicon);
  Corpus corpus = load_manifest(f.manifest);
  VerbLexicon lexicon = f.lexicon ? VerbLexicon::load(*f.lexicon)
                                  : VerbLexicon::builtin();
  std::vector<PerturbationPair> pairs;
  Summary summary("perturb");
  summary.input(f.manifest);
  if (f.lexicon) summary.input(*f.lexicon);
  for (ErrorKind kind : kinds) {
    auto candidates = find_candidates(corpus, kind, &lexicon);
    if (candidates.empty()) {
      if (kinds.size() == 1) {
        throw DataError("no " + std::string(to_string(kind)) +
                        " candidates in corpus");
      }
      std::cerr << "warning: no " << to_string(kind) << " candidates\n";
      continue;
    }
    Warnings warnings;
    auto sampled = sample_pairs(candidates, f.n, f.seed, lexicon, jobs, &warnings);
    warn_all(warnings);
    summary.field(std::string(to_string(kind)), sampled.size());
    pairs.insert(pairs.end(), sampled.begin(), sampled.end());
  }
  if (pairs.empty()) throw DataError("no candidates of any kind in corpus");
  write_pairs(pairs, guard.add(f.out));
  summary.field("seed", f.seed).field("out", f.out.string()).print();
}

struct ScoreFlags {
  std::optional<fs::path> pairs;
  std::optional<fs::path> hyp;
  std::optional<fs::path> refs;
  std::string metrics = "bleu4,rougel,meteor,ciderd,fense_star";
  BackendFlags backend;
  fs::path out;
};

// Hypotheses one per line; references tab-separated on the matching line.
std::vector<ScoringItem> read_hyp_refs(const fs::path& hyp_path,
                                       const fs::path& refs_path) {
  auto hyps = read_lines(hyp_path);
  auto refs = read_lines(refs_path);
  while (!hyps.empty() && hyps.back().empty()) hyps.pop_back();
  while (!refs.empty() && refs.back().empty()) refs.pop_back();
  if (hyps.empty()) throw DataError(hyp_path.string() + ": no hypotheses");
  if (hyps.size() != refs.size()) {
    throw DataError("--hyp has " + std::to_string(hyps.size()) +
                    " lines but --refs has " + std::to_string(refs.size()));
  }
  std::vector<ScoringItem> items(hyps.size());
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    const std::string line = std::to_string(i + 1);
    if (tokenize(hyps[i]).empty()) {
      throw DataError(hyp_path.string() + ":" + line + ": empty hypothesis");
    }
    items[i].hypothesis = hyps[i];
    for (auto& r : split(refs[i], '\t')) {
      if (tokenize(r).empty()) {
        throw DataError(refs_path.string() + ":" + line + ": empty reference");
      }
      items[i].references.push_back(std::move(r));
    }
  }
  return items;
}

CorpusNgramStats stats_over_references(std::span<const ScoringItem> items) {
  std::vector<Tokens> docs;
  for (const auto& item : items) {
    for (const auto& r : item.references) docs.push_back(tokenize(r));
  }
  return build_corpus_stats(docs);
}

void run_score(const ScoreFlags& f, std::size_t jobs, OutputGuard& guard) {
  if (f.pairs.has_value() == (f.hyp.has_value() || f.refs.has_value())) {
    throw UsageError("give either --pairs or both --hyp and --refs");
  }
  if (f.hyp.has_value() != f.refs.has_value()) {
    throw UsageError("--hyp and --refs go together");
  }
  const auto metrics = parse_metric_list(f.metrics);
  Backends backends = make_backends(f.backend, metrics, jobs);
  Summary summary("score");

  // Each scored row: a label block plus one column per metric.
  std::vector<std::vector<std::string>> labels;
  std::vector<ScoringItem> items;
  std::vector<std::string> header;
  if (f.pairs) {
    require_file(*f.pairs);
    summary.input(*f.pairs);
    auto pairs = read_pairs(*f.pairs);
    if (pairs.empty()) throw DataError(f.pairs->string() + ": no pairs");
    header = {"id", "kind", "variant"};
    for (const auto& p : pairs) {
      items.push_back({p.type1, {p.original}});
      labels.push_back({p.id, std::string(to_string(p.kind)), "type1"});
      items.push_back({p.type2, {p.original}});
      labels.push_back({p.id, std::string(to_string(p.kind)), "type2"});
    }
  } else {
    require_file(*f.hyp);
    require_file(*f.refs);
    summary.input(*f.hyp).input(*f.refs);
    items = read_hyp_refs(*f.hyp, *f.refs);
    header = {"item"};
    for (std::size_t i = 0; i < items.size(); ++i) {
      labels.push_back({std::to_string(i + 1)});
    }
  }
  CorpusNgramStats stats;
  if (std::find(metrics.begin(), metrics.end(), Metric::kCiderD) != metrics.end()) {
    std::vector<ScoringItem> unique_refs;
    if (f.pairs) {
      // Each original appears once as a document.
      for (std::size_t i = 0; i < items.size(); i += 2) unique_refs.push_back(items[i]);
    } else {
      unique_refs = items;
    }
    stats = stats_over_references(unique_refs);
    backends.context.stats = &stats;
  }
  std::vector<ScoredBatch> batches;
  for (Metric m : metrics) {
    header.emplace_back(metric_name(m));
    batches.push_back(score_pairs(m, items, backends.context));
    summary.field("mean_" + std::string(metric_name(m)),
                  format_double(batches.back().mean));
  }
  std::string csv = csv_line(header);
  for (std::size_t i = 0; i < items.size(); ++i) {
    std::vector<std::string> row = labels[i];
    for (const auto& b : batches) row.push_back(format_double(b.scores[i].value));
    csv += csv_line(row);
  }
  write_text_file(guard.add(f.out), csv);
  summary.field("items", items.size())
      .field("backend", f.backend.backend)
      .field("out", f.out.string())
      .print();
}

struct SuitabilityFlags {
  fs::path pairs;
  std::string metrics = "bleu4,rougel,meteor,ciderd,fense_star";
  BackendFlags backend;
  fs::path out_csv;
  std::optional<fs::path> svg;
};

void run_suitability_cmd(const SuitabilityFlags& f, std::size_t jobs,
                         OutputGuard& guard) {
  const auto metrics = parse_metric_list(f.metrics);
  Backends backends = make_backends(f.backend, metrics, jobs);
  require_file(f.pairs);
  auto pairs = read_pairs(f.pairs);
  if (pairs.empty()) throw DataError(f.pairs.string() + ": no pairs");
  auto results = run_suitability_grid(metrics, pairs, backends.context);
  guard.add(f.out_csv);
  if (f.svg) guard.add(*f.svg);
  emit_report(results, f.out_csv, f.svg);
  Summary summary("suitability");
  summary.input(f.pairs);
  for (const auto& r : results) {
    summary.field(r.metric + "/" + std::string(to_string(r.kind)),
                  format_double(r.pct_type1_higher));
  }
  summary.field("backend", f.backend.backend)
      .field("out", f.out_csv.string())
      .print();
}

struct AugmentFlags {
  std::string method;
  fs::path clotho;
  fs::path audiocaps;
  std::size_t count = 0;
  std::uint64_t seed = kDefaultSeed;
  std::size_t max_words = kDefaultMaxWords;
  fs::path out_dir;
  MixTemplates templates;
};

// Relative audio paths resolve against the working directory first, then
// the manifests' own directories.
AudioLoader manifest_loader(std::vector<fs::path> bases) {
  return [bases = std::move(bases)](const CaptionedClip& clip) {
    fs::path p = clip.audio_path;
    if (p.is_relative() && !fs::exists(p)) {
      for (const auto& base : bases) {
        if (fs::exists(base / p)) {
          p = base / p;
          break;
        }
      }
    }
    return read_wav(p);
  };
}

void run_augment(const AugmentFlags& f, std::size_t jobs, OutputGuard& guard) {
  AugmentOptions options;
  options.method = parse_augment_method(f.method);
  if (f.count == 0) throw UsageError("--count must be at least 1");
  options.count = f.count;
  options.seed = f.seed;
  options.jobs = jobs;
  options.templates = f.templates;
  for (const std::string* t : {&f.templates.balanced, &f.templates.secondary_louder,
                               &f.templates.primary_louder}) {
    if (t->find("{A}") == std::string::npos || t->find("{B}") == std::string::npos) {
      throw UsageError("caption templates must contain {A} and {B}: " + *t);
    }
  }
  require_file(f.clotho);
  require_file(f.audiocaps);
  Corpus clotho = load_manifest(f.clotho);
  Corpus audiocaps = load_manifest(f.audiocaps);
  if (f.max_words > 0) audiocaps = filter_max_words(audiocaps, f.max_words);
  options.loader =
      manifest_loader({f.clotho.parent_path(), f.audiocaps.parent_path()});
  auto items = generate_augmented(clotho, audiocaps, options);
  if (!fs::exists(f.out_dir)) {
    fs::create_directories(f.out_dir);
    guard.add_created_dir(f.out_dir);
  }
  for (std::size_t i = 0; i < items.size(); ++i) {
    guard.add(f.out_dir / augmented_file_name(options.method, i));
  }
  guard.add(f.out_dir / "manifest.jsonl");
  write_augmented(items, f.out_dir);
  Summary("augment")
      .field("method", f.method)
      .input(f.clotho)
      .input(f.audiocaps)
      .field("audiocaps_kept", audiocaps.size())
      .field("items", items.size())
      .field("seed", f.seed)
      .field("out_dir", f.out_dir.string())
      .print();
}

struct LossWeightsFlags {
  std::optional<fs::path> counts;
  std::optional<fs::path> manifest;
  double max_weight = kDefaultMaxWeight;
  fs::path out_csv;
};

void run_loss_weights(const LossWeightsFlags& f, OutputGuard& guard) {
  if (f.counts.has_value() == f.manifest.has_value()) {
    throw UsageError("give exactly one of --counts or --manifest");
  }
  if (!(f.max_weight > 0)) throw UsageError("--max-weight must be positive");
  Summary summary("loss-weights");
  PriorDistribution prior;
  if (f.counts) {
    require_file(*f.counts);
    summary.input(*f.counts);
    prior = token_prior(read_token_counts(*f.counts));
  } else {
    require_file(*f.manifest);
    summary.input(*f.manifest);
    prior = token_prior(load_manifest(*f.manifest));
  }
  BalancedWeights weights = balanced_weights(prior.p, f.max_weight);
  write_weights_csv(prior, weights, guard.add(f.out_csv));
  summary.field("classes", prior.p.size())
      .field("scale", format_double(weights.scale))
      .field("max_weight", format_double(weights.max_weight))
      .field("out", f.out_csv.string())
      .print();
}

struct LossEvalFlags {
  std::string gamma_list = "0,1,2,5,10";
  std::string alpha_grid = "0.01:0.99:0.01";
  fs::path out_csv;
};

void run_loss_eval(const LossEvalFlags& f, OutputGuard& guard) {
  auto gammas = parse_number_list(f.gamma_list, "--gamma-list");
  auto alphas = parse_number_list(f.alpha_grid, "--alpha-grid");
  auto rows = gamma_sweep_table(alphas, gammas);
  write_sweep_csv(rows, guard.add(f.out_csv));
  Summary("loss-eval")
      .field("gammas", gammas.size())
      .field("alphas", alphas.size())
      .field("rows", rows.size())
      .field("out", f.out_csv.string())
      .print();
}

int run(int argc, char** argv) {
  CLI::App app{"aaceval: audio captioning evaluation toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  std::size_t jobs = default_jobs();
  app.add_option("--jobs", jobs, "Worker threads (default: processor count)")
      ->check(CLI::PositiveNumber);

  IngestFlags ingest;
  auto* c_ingest = app.add_subcommand("ingest", "Load a corpus into a manifest");
  c_ingest->add_option("--format", ingest.format, "clotho, audiocaps or manifest")
      ->required();
  c_ingest->add_option("--csv", ingest.csv, "Caption CSV (or manifest)")->required();
  c_ingest->add_option("--audio-dir", ingest.audio_dir,
                       "Audio directory (default: the CSV's directory)");
  c_ingest->add_option("--max-words", ingest.max_words,
                       "Keep items whose captions have at most this many words");
  c_ingest->add_option("--out", ingest.out, "Output manifest (JSONL)")->required();

  VocabFlags vocab;
  auto* c_vocab = app.add_subcommand("vocab", "Word frequency statistics");
  c_vocab->add_option("--manifest", vocab.manifest)->required();
  c_vocab->add_option("--out-csv", vocab.out_csv)->required();
  c_vocab->add_option("--svg", vocab.svg, "Optional CDF plot");

  PerturbFlags perturb;
  auto* c_perturb = app.add_subcommand("perturb", "Generate perturbation pairs");
  c_perturb->add_option("--manifest", perturb.manifest)->required();
  c_perturb->add_option("--kind", perturb.kind,
                        "semantic, temporal, spatial or all")
      ->required();
  c_perturb->add_option("--n", perturb.n, "Pairs per kind")->capture_default_str();
  c_perturb->add_option("--seed", perturb.seed)->capture_default_str();
  c_perturb->add_option("--lexicon", perturb.lexicon,
                        "Verb list (default: builtin)");
  c_perturb->add_option("--out", perturb.out, "Pairs CSV")->required();

  ScoreFlags score;
  auto* c_score = app.add_subcommand("score", "Score captions with metrics");
  c_score->add_option("--pairs", score.pairs, "Pairs CSV");
  c_score->add_option("--hyp", score.hyp, "Hypotheses, one per line");
  c_score->add_option("--refs", score.refs,
                      "References, tab-separated on the matching line");
  c_score->add_option("--metrics", score.metrics)->capture_default_str();
  add_backend_flags(c_score, score.backend);
  c_score->add_option("--out", score.out, "Scores CSV")->required();

  SuitabilityFlags suit;
  auto* c_suit = app.add_subcommand("suitability",
                                    "Percent of pairs where type-1 beats type-2");
  c_suit->add_option("--pairs", suit.pairs)->required();
  c_suit->add_option("--metrics", suit.metrics)->capture_default_str();
  add_backend_flags(c_suit, suit.backend);
  c_suit->add_option("--out-csv", suit.out_csv)->required();
  c_suit->add_option("--svg", suit.svg, "Optional grouped bar chart");

  AugmentFlags augment;
  auto* c_aug = app.add_subcommand("augment", "Concatenate or mix clip pairs");
  c_aug->add_option("--method", augment.method, "concat or mixing")->required();
  c_aug->add_option("--clotho", augment.clotho, "Clotho-side manifest")->required();
  c_aug->add_option("--audiocaps", augment.audiocaps, "AudioCaps-side manifest")
      ->required();
  c_aug->add_option("--count", augment.count)->required();
  c_aug->add_option("--seed", augment.seed)->capture_default_str();
  c_aug->add_option("--max-words", augment.max_words,
                    "AudioCaps caption word limit (0 disables)")
      ->capture_default_str();
  c_aug->add_option("--out-dir", augment.out_dir)->required();
  c_aug->add_option("--template-balanced", augment.templates.balanced)
      ->capture_default_str();
  c_aug->add_option("--template-secondary-louder",
                    augment.templates.secondary_louder)
      ->capture_default_str();
  c_aug->add_option("--template-primary-louder", augment.templates.primary_louder)
      ->capture_default_str();

  LossWeightsFlags lw;
  auto* c_lw = app.add_subcommand("loss-weights", "Balanced cross-entropy weights");
  c_lw->add_option("--counts", lw.counts, "CSV token,count");
  c_lw->add_option("--manifest", lw.manifest);
  c_lw->add_option("--max-weight", lw.max_weight)->capture_default_str();
  c_lw->add_option("--out-csv", lw.out_csv)->required();

  LossEvalFlags le;
  auto* c_le = app.add_subcommand("loss-eval", "Focal loss sweep over gamma");
  c_le->add_option("--gamma-list", le.gamma_list)->capture_default_str();
  c_le->add_option("--alpha-grid", le.alpha_grid,
                   "Comma list or start:stop:step")
      ->capture_default_str();
  c_le->add_option("--out-csv", le.out_csv)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  OutputGuard guard;
  try {
    if (c_ingest->parsed()) run_ingest(ingest, guard);
    if (c_vocab->parsed()) run_vocab(vocab, guard);
    if (c_perturb->parsed()) run_perturb(perturb, jobs, guard);
    if (c_score->parsed()) run_score(score, jobs, guard);
    if (c_suit->parsed()) run_suitability_cmd(suit, jobs, guard);
    if (c_aug->parsed()) run_augment(augment, jobs, guard);
    if (c_lw->parsed()) run_loss_weights(lw, guard);
    if (c_le->parsed()) run_loss_eval(le, guard);
    guard.commit();
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const BackendError& e) {
    std::cerr << "backend error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace
}  // namespace aaceval

int main(int argc, char** argv) { return aaceval::run(argc, argv); }
