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

// Python bindings for the aaceval core.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "aaceval/augment.h"
#include "aaceval/backends.h"
#include "aaceval/corpus.h"
#include "aaceval/error.h"
#include "aaceval/lossfn.h"
#include "aaceval/manifest.h"
#include "aaceval/metrics.h"
#include "aaceval/perturb.h"
#include "aaceval/scoring.h"
#include "aaceval/text.h"
#include "aaceval/vocab.h"
#include "aaceval/wav.h"

namespace py = pybind11;
using namespace aaceval;

namespace {

std::vector<Tokens> tokenize_all(const std::vector<std::string>& texts) {
  std::vector<Tokens> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(tokenize(t));
  return out;
}

Aggregation parse_aggregation(const std::string& name) {
  if (name == "mean") return Aggregation::kMean;
  if (name == "max") return Aggregation::kMax;
  throw UsageError("aggregation must be 'mean' or 'max'");
}

// Owns whichever backend a Python call asked for.
struct BackendHandle {
  std::unique_ptr<LexicalCosineBackend> lexical;
  std::unique_ptr<RemoteScorer> remote;

  BackendHandle(const std::string& spec, Aggregation aggregation,
                int timeout_ms) {
    if (spec == "lexical") {
      lexical = std::make_unique<LexicalCosineBackend>(aggregation);
    } else if (spec.rfind("remote:", 0) == 0) {
      remote = std::make_unique<RemoteScorer>(
          spec.substr(7), std::chrono::milliseconds(timeout_ms));
    } else {
      throw UsageError("backend must be 'lexical' or 'remote:URL'");
    }
  }
  const SimilarityBackend* similarity() const {
    return lexical ? static_cast<const SimilarityBackend*>(lexical.get())
                   : remote.get();
  }
  const FluencyBackend* fluency() const { return remote.get(); }
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Audio captioning evaluation toolkit (C++ core)";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<UsageError>(m, "UsageError", base.ptr());
  py::register_exception<DataError>(m, "DataError", base.ptr());
  py::register_exception<BackendError>(m, "BackendError", base.ptr());

  // Text.
  m.def("tokenize", [](const std::string& s) { return tokenize(s); });
  m.def("stem", [](const std::string& s) { return stem(s); });
  m.def(
      "ngrams",
      [](const std::vector<std::string>& tokens, std::size_t n) {
        return ngrams(tokens, n);
      },
      py::arg("tokens"), py::arg("n"));

  // Metrics.
  py::class_<MetricScore>(m, "MetricScore")
      .def_readonly("value", &MetricScore::value)
      .def_readonly("components", &MetricScore::components)
      .def("__repr__", [](const MetricScore& s) {
        return "MetricScore(value=" + std::to_string(s.value) + ")";
      });

  py::class_<CorpusNgramStats>(m, "CorpusNgramStats")
      .def_property_readonly("num_docs", &CorpusNgramStats::num_docs)
      .def("doc_freq", &CorpusNgramStats::doc_freq, py::arg("ngram"),
           py::arg("order"))
      .def("idf", &CorpusNgramStats::idf, py::arg("ngram"), py::arg("order"));

  m.def(
      "build_corpus_stats",
      [](const std::vector<std::string>& captions) {
        return build_corpus_stats(tokenize_all(captions));
      },
      py::arg("captions"));
  m.def(
      "bleu",
      [](const std::string& hyp, const std::vector<std::string>& refs,
         std::size_t max_order) {
        return bleu(tokenize(hyp), tokenize_all(refs), max_order);
      },
      py::arg("hyp"), py::arg("refs"), py::arg("max_order") = 4);
  m.def(
      "rouge_l",
      [](const std::string& hyp, const std::vector<std::string>& refs,
         double beta) { return rouge_l(tokenize(hyp), tokenize_all(refs), beta); },
      py::arg("hyp"), py::arg("refs"), py::arg("beta") = 1.2);
  m.def(
      "meteor_lite",
      [](const std::string& hyp, const std::vector<std::string>& refs,
         double alpha, double beta, double gamma) {
        return meteor_lite(tokenize(hyp), tokenize_all(refs),
                           MeteorParams{alpha, beta, gamma});
      },
      py::arg("hyp"), py::arg("refs"), py::arg("alpha") = 0.9,
      py::arg("beta") = 3.0, py::arg("gamma") = 0.5);
  m.def(
      "cider_d",
      [](const std::string& hyp, const std::vector<std::string>& refs,
         const CorpusNgramStats& stats, std::size_t max_order, double sigma,
         double scale) {
        return cider_d(tokenize(hyp), tokenize_all(refs), stats,
                       CiderParams{max_order, sigma, scale});
      },
      py::arg("hyp"), py::arg("refs"), py::arg("stats"), py::arg("max_order") = 4,
      py::arg("sigma") = 6.0, py::arg("scale") = 10.0);
  m.def("lexical_cosine", &lexical_cosine, py::arg("a"), py::arg("b"));
  m.def(
      "fense_star",
      [](const std::string& hyp, const std::vector<std::string>& refs,
         const std::string& backend, const std::string& aggregation,
         int timeout_ms) {
        FenseConfig cfg;
        cfg.reference_aggregation = parse_aggregation(aggregation);
        BackendHandle h(backend, cfg.reference_aggregation, timeout_ms);
        py::gil_scoped_release release;
        return fense_star(hyp, refs, *h.similarity(), cfg);
      },
      py::arg("hyp"), py::arg("refs"), py::arg("backend") = "lexical",
      py::arg("aggregation") = "mean", py::arg("timeout_ms") = 10000);
  m.def(
      "fense",
      [](const std::string& hyp, const std::vector<std::string>& refs,
         const std::string& backend, double error_threshold,
         double penalty_fraction, const std::string& aggregation,
         int timeout_ms) {
        FenseConfig cfg;
        cfg.error_threshold = error_threshold;
        cfg.penalty_fraction = penalty_fraction;
        cfg.reference_aggregation = parse_aggregation(aggregation);
        BackendHandle h(backend, cfg.reference_aggregation, timeout_ms);
        if (!h.fluency()) {
          throw UsageError("fense needs a fluency-capable remote backend");
        }
        py::gil_scoped_release release;
        return fense(hyp, refs, *h.similarity(), *h.fluency(), cfg);
      },
      py::arg("hyp"), py::arg("refs"), py::arg("backend"),
      py::arg("error_threshold") = 0.9, py::arg("penalty_fraction") = 0.9,
      py::arg("aggregation") = "mean", py::arg("timeout_ms") = 10000);

  // Corpus and audio.
  py::class_<AudioBuffer>(m, "AudioBuffer")
      .def(py::init([](std::vector<float> samples, int sample_rate) {
             return AudioBuffer{std::move(samples), sample_rate};
           }),
           py::arg("samples"), py::arg("sample_rate"))
      .def_readwrite("samples", &AudioBuffer::samples)
      .def_readwrite("sample_rate", &AudioBuffer::sample_rate)
      .def_property_readonly("duration_s", &AudioBuffer::duration_s);
  m.def("read_wav", &read_wav, py::arg("path"));
  m.def("write_wav", &write_wav, py::arg("audio"), py::arg("path"));

  py::class_<CaptionedClip>(m, "CaptionedClip")
      .def_readonly("id", &CaptionedClip::id)
      .def_readonly("audio_path", &CaptionedClip::audio_path)
      .def_property_readonly("captions",
                             [](const CaptionedClip& c) {
                               std::vector<std::string> out;
                               for (const auto& cap : c.captions) {
                                 out.push_back(cap.text());
                               }
                               return out;
                             })
      .def_property_readonly(
          "source", [](const CaptionedClip& c) { return std::string(to_string(c.source)); })
      .def_readonly("sample_rate", &CaptionedClip::sample_rate)
      .def_readonly("duration_s", &CaptionedClip::duration_s)
      .def_readonly("provenance", &CaptionedClip::provenance);

  py::class_<Corpus>(m, "Corpus")
      .def("__len__", &Corpus::size)
      .def_property_readonly("items", &Corpus::items);
  m.def(
      "load_clotho_csv",
      [](const std::filesystem::path& csv, const std::filesystem::path& audio_dir) {
        Warnings w;
        return load_clotho_csv(csv, audio_dir, &w);
      },
      py::arg("csv_path"), py::arg("audio_dir"));
  m.def(
      "load_audiocaps_csv",
      [](const std::filesystem::path& csv, const std::filesystem::path& audio_dir) {
        Warnings w;
        return load_audiocaps_csv(csv, audio_dir, &w);
      },
      py::arg("csv_path"), py::arg("audio_dir"));
  m.def("load_manifest", &load_manifest, py::arg("path"));
  m.def(
      "write_manifest",
      [](const Corpus& c, const std::filesystem::path& p) { write_manifest(c, p); },
      py::arg("corpus"), py::arg("path"));
  m.def("filter_max_words", &filter_max_words, py::arg("corpus"),
        py::arg("max_words") = kDefaultMaxWords);
  m.def(
      "vocab_stats",
      [](const std::vector<std::string>& captions) {
        VocabStats s = vocab_stats(std::span<const std::string>(captions));
        return py::make_tuple(s.ranked, s.counts, vocab_cdf(s));
      },
      py::arg("captions"),
      "Returns (ranked words, counts, cumulative distribution by rank).");

  // Perturbation benchmark.
  py::class_<PerturbationPair>(m, "PerturbationPair")
      .def_readonly("id", &PerturbationPair::id)
      .def_property_readonly(
          "kind", [](const PerturbationPair& p) { return std::string(to_string(p.kind)); })
      .def_readonly("original", &PerturbationPair::original)
      .def_readonly("type1", &PerturbationPair::type1)
      .def_readonly("type2", &PerturbationPair::type2)
      .def_readonly("meta", &PerturbationPair::meta);
  m.def(
      "sample_pairs",
      [](const std::vector<std::pair<std::string, std::string>>& captions,
         const std::string& kind, std::size_t n, std::uint64_t seed,
         std::optional<std::vector<std::string>> lexicon, std::size_t jobs) {
        const ErrorKind k = parse_error_kind(kind);
        VerbLexicon lex = lexicon ? VerbLexicon(std::set<std::string>(
                                        lexicon->begin(), lexicon->end()))
                                  : VerbLexicon::builtin();
        std::vector<Candidate> cands;
        for (const auto& [id, text] : captions) {
          if (auto c = match_candidate(id, tokenize(text), k, &lex)) {
            cands.push_back(std::move(*c));
          }
        }
        if (cands.empty()) throw DataError("no " + kind + " candidates");
        Warnings w;
        py::gil_scoped_release release;
        return sample_pairs(cands, n, seed, lex, jobs, &w);
      },
      py::arg("captions"), py::arg("kind"), py::arg("n") = kDefaultSampleSize,
      py::arg("seed") = 42, py::arg("lexicon") = py::none(), py::arg("jobs") = 1,
      "captions: list of (id, text). Returns pairs sorted by id.");
  m.def(
      "run_suitability",
      [](const std::string& metric, const std::vector<PerturbationPair>& pairs,
         const std::string& backend, std::size_t jobs) {
        BackendHandle h(backend, Aggregation::kMean, 10000);
        ScoringContext ctx;
        ctx.similarity = h.similarity();
        ctx.fluency = h.fluency();
        ctx.jobs = jobs;
        py::gil_scoped_release release;
        SuitabilityResult r = run_suitability(parse_metric(metric), pairs, ctx);
        py::gil_scoped_acquire acquire;
        py::dict out;
        out["metric"] = r.metric;
        out["kind"] = std::string(to_string(r.kind));
        out["n_pairs"] = r.n_pairs;
        out["n_ties"] = r.n_ties;
        out["pct_type1_higher"] = r.pct_type1_higher;
        return out;
      },
      py::arg("metric"), py::arg("pairs"), py::arg("backend") = "lexical",
      py::arg("jobs") = 1);

  // Augmentation.
  py::class_<AugmentedItem>(m, "AugmentedItem")
      .def_readonly("audio", &AugmentedItem::audio)
      .def_readonly("caption", &AugmentedItem::caption)
      .def_property_readonly("provenance", [](const AugmentedItem& it) {
        return provenance_json(it.provenance);
      });
  m.def(
      "augment_pair",
      [](const std::string& method, const std::string& clotho_caption,
         const AudioBuffer& clotho_audio, const std::string& audiocaps_caption,
         const AudioBuffer& audiocaps_audio, std::uint64_t seed) {
        AugmentSource a{"clotho", clotho_audio, {clotho_caption}};
        AugmentSource b{"audiocaps", audiocaps_audio, {audiocaps_caption}};
        Rng rng(seed);
        return parse_augment_method(method) == AugmentMethod::kConcat
                   ? concat_pair(a, b, rng)
                   : mix_pair(a, b, rng);
      },
      py::arg("method"), py::arg("clotho_caption"), py::arg("clotho_audio"),
      py::arg("audiocaps_caption"), py::arg("audiocaps_audio"),
      py::arg("seed") = 42);

  // Losses.
  m.def(
      "balanced_weights",
      [](const std::vector<double>& prior, double max_weight) {
        BalancedWeights w = balanced_weights(prior, max_weight);
        return py::make_tuple(w.omega, w.scale);
      },
      py::arg("prior"), py::arg("max_weight") = kDefaultMaxWeight,
      "Returns (omega, scale).");
  m.def(
      "token_prior",
      [](const std::map<std::string, std::int64_t>& counts) {
        PriorDistribution p = token_prior(counts);
        return py::make_tuple(p.words, p.p);
      },
      py::arg("counts"), "Returns (words, priors) in rank order.");
  m.def("cross_entropy", py::overload_cast<double>(&cross_entropy),
        py::arg("alpha"));
  m.def("balanced_ce", py::overload_cast<double, double>(&balanced_ce),
        py::arg("alpha"), py::arg("weight"));
  m.def("focal", py::overload_cast<double, double>(&focal), py::arg("alpha"),
        py::arg("gamma"));
  m.def("focal_grad", &focal_grad, py::arg("alpha"), py::arg("gamma"));
  m.def(
      "output_vocab_size",
      [](const std::vector<std::string>& captions) {
        return output_vocab_size(std::span<const std::string>(captions));
      },
      py::arg("captions"));
}
