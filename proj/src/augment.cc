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

#include "aaceval/augment.h"

#include <algorithm>
#include <cstdio>

#include <json.hpp>

#include "aaceval/error.h"
#include "aaceval/manifest.h"
#include "aaceval/parallel.h"

namespace aaceval {
namespace {

void check_sources(const AugmentSource& a, const AugmentSource& b) {
  if (a.audio.samples.empty() || b.audio.samples.empty()) {
    throw DataError("augment: empty audio (" + a.id + ", " + b.id + ")");
  }
  if (a.audio.sample_rate != b.audio.sample_rate) {
    throw DataError("augment: sample-rate mismatch (" + a.id + " at " +
                    std::to_string(a.audio.sample_rate) + " Hz, " + b.id +
                    " at " + std::to_string(b.audio.sample_rate) + " Hz)");
  }
  if (a.captions.empty() || b.captions.empty()) {
    throw DataError("augment: source without captions");
  }
}

const std::string& clotho_caption(const AugmentSource& clotho,
                                  const AugmentDraws& draws) {
  if (draws.clotho_caption >= clotho.captions.size()) {
    throw DataError("augment: caption index " +
                    std::to_string(draws.clotho_caption) + " out of range for " +
                    clotho.id);
  }
  return clotho.captions[draws.clotho_caption];
}

std::string fill_template(const std::string& tmpl, const std::string& a,
                          const std::string& b) {
  std::string out;
  for (std::size_t i = 0; i < tmpl.size();) {
    if (tmpl.compare(i, 3, "{A}") == 0) {
      out += a;
      i += 3;
    } else if (tmpl.compare(i, 3, "{B}") == 0) {
      out += b;
      i += 3;
    } else {
      out.push_back(tmpl[i++]);
    }
  }
  return out;
}

const CaptionedClip& find_clip(const Corpus& corpus, const std::string& id) {
  for (const auto& clip : corpus.items()) {
    if (clip.id == id) return clip;
  }
  throw DataError("augment: no clip with id '" + id + "'");
}

AugmentSource make_source(const CaptionedClip& clip, const AudioLoader& loader) {
  AugmentSource src;
  src.id = clip.id;
  src.audio = loader(clip);
  for (const auto& c : clip.captions) src.captions.push_back(c.text());
  return src;
}

AugmentedItem build(AugmentMethod method, const AugmentSource& clotho,
                    const AugmentSource& audiocaps, const AugmentDraws& draws,
                    const MixTemplates& templates) {
  return method == AugmentMethod::kConcat
             ? concat_pair(clotho, audiocaps, draws)
             : mix_pair(clotho, audiocaps, draws, templates);
}

}  // namespace

std::string_view to_string(AugmentMethod method) {
  return method == AugmentMethod::kConcat ? "concat" : "mixing";
}

AugmentMethod parse_augment_method(std::string_view name) {
  if (name == "concat") return AugmentMethod::kConcat;
  if (name == "mixing") return AugmentMethod::kMixing;
  throw UsageError("unknown augmentation method '" + std::string(name) +
                   "' (expected concat or mixing)");
}

const std::string& MixTemplates::for_weights(std::size_t weight_index) const {
  switch (weight_index) {
    case 0:
      return balanced;
    case 1:
      return secondary_louder;
    case 2:
      return primary_louder;
  }
  throw UsageError("mix weight index out of range");
}

AugmentDraws draw_augment(AugmentMethod method, std::size_t clotho_captions,
                          Rng& rng) {
  AugmentDraws d;
  d.clotho_caption = rng.uniform_index(clotho_captions);
  if (method == AugmentMethod::kConcat) {
    d.audiocaps_first = rng.coin();
    d.conjunction = rng.coin() ? 1 : 0;
  } else {
    d.weights = rng.uniform_index(kMixWeightOptions.size());
  }
  return d;
}

std::string provenance_json(const Provenance& p) {
  nlohmann::ordered_json j;
  j["clotho_id"] = p.clotho_id;
  j["audiocaps_id"] = p.audiocaps_id;
  j["method"] = std::string(to_string(p.method));
  j["clotho_caption"] = p.draws.clotho_caption;
  if (p.method == AugmentMethod::kConcat) {
    j["order"] = p.draws.audiocaps_first ? "audiocaps_first" : "clotho_first";
    j["conjunction"] = std::string(kConcatConjunctions.at(p.draws.conjunction));
  } else {
    const MixWeights& w = kMixWeightOptions.at(p.draws.weights);
    j["weights"] = {w.primary, w.secondary};
  }
  j["item_seed"] = std::to_string(p.item_seed);
  return j.dump();
}

Provenance parse_provenance(std::string_view text) {
  Provenance p;
  try {
    auto j = nlohmann::json::parse(text);
    p.clotho_id = j.at("clotho_id").get<std::string>();
    p.audiocaps_id = j.at("audiocaps_id").get<std::string>();
    p.method = parse_augment_method(j.at("method").get<std::string>());
    p.draws.clotho_caption = j.at("clotho_caption").get<std::size_t>();
    if (p.method == AugmentMethod::kConcat) {
      const auto order = j.at("order").get<std::string>();
      if (order != "audiocaps_first" && order != "clotho_first") {
        throw DataError("provenance: bad order '" + order + "'");
      }
      p.draws.audiocaps_first = order == "audiocaps_first";
      const auto conj = j.at("conjunction").get<std::string>();
      auto it = std::find(kConcatConjunctions.begin(), kConcatConjunctions.end(),
                          conj);
      if (it == kConcatConjunctions.end()) {
        throw DataError("provenance: bad conjunction '" + conj + "'");
      }
      p.draws.conjunction =
          static_cast<std::size_t>(it - kConcatConjunctions.begin());
    } else {
      const auto w = j.at("weights").get<std::vector<double>>();
      if (w.size() != 2) throw DataError("provenance: weights need 2 entries");
      auto it = std::find(kMixWeightOptions.begin(), kMixWeightOptions.end(),
                          MixWeights{w[0], w[1]});
      if (it == kMixWeightOptions.end()) {
        throw DataError("provenance: unsupported mix weights");
      }
      p.draws.weights = static_cast<std::size_t>(it - kMixWeightOptions.begin());
    }
    p.item_seed = std::stoull(j.at("item_seed").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("provenance: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw DataError("provenance: bad item_seed");
  } catch (const std::out_of_range&) {
    throw DataError("provenance: item_seed out of range");
  }
  return p;
}

AugmentedItem concat_pair(const AugmentSource& clotho,
                          const AugmentSource& audiocaps,
                          const AugmentDraws& draws) {
  check_sources(clotho, audiocaps);
  const std::string& cap_a = clotho_caption(clotho, draws);
  const std::string& cap_b = audiocaps.captions.front();
  const auto& first = draws.audiocaps_first ? audiocaps : clotho;
  const auto& second = draws.audiocaps_first ? clotho : audiocaps;
  AugmentedItem item;
  item.audio.sample_rate = clotho.audio.sample_rate;
  item.audio.samples.reserve(first.audio.samples.size() +
                             second.audio.samples.size());
  item.audio.samples = first.audio.samples;
  item.audio.samples.insert(item.audio.samples.end(),
                            second.audio.samples.begin(),
                            second.audio.samples.end());
  const std::string conj(kConcatConjunctions.at(draws.conjunction));
  item.caption = draws.audiocaps_first ? cap_b + " " + conj + " " + cap_a
                                       : cap_a + " " + conj + " " + cap_b;
  item.provenance = {clotho.id, audiocaps.id, AugmentMethod::kConcat, draws, 0};
  return item;
}

AugmentedItem concat_pair(const AugmentSource& clotho,
                          const AugmentSource& audiocaps, Rng& rng) {
  return concat_pair(
      clotho, audiocaps,
      draw_augment(AugmentMethod::kConcat, clotho.captions.size(), rng));
}

AugmentedItem mix_pair(const AugmentSource& clotho,
                       const AugmentSource& audiocaps,
                       const AugmentDraws& draws, const MixTemplates& templates) {
  check_sources(clotho, audiocaps);
  const MixWeights& w = kMixWeightOptions.at(draws.weights);
  const auto& a = clotho.audio.samples;
  const auto& b = audiocaps.audio.samples;
  AugmentedItem item;
  item.audio.sample_rate = clotho.audio.sample_rate;
  item.audio.samples.resize(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < item.audio.samples.size(); ++i) {
    const double x = i < a.size() ? a[i] : 0.0;
    const double y = i < b.size() ? b[i] : 0.0;
    item.audio.samples[i] = static_cast<float>(w.primary * x + w.secondary * y);
  }
  item.caption = fill_template(templates.for_weights(draws.weights),
                               clotho_caption(clotho, draws),
                               audiocaps.captions.front());
  item.provenance = {clotho.id, audiocaps.id, AugmentMethod::kMixing, draws, 0};
  return item;
}

AugmentedItem mix_pair(const AugmentSource& clotho,
                       const AugmentSource& audiocaps, Rng& rng,
                       const MixTemplates& templates) {
  return mix_pair(
      clotho, audiocaps,
      draw_augment(AugmentMethod::kMixing, clotho.captions.size(), rng),
      templates);
}

AudioBuffer load_clip_audio(const CaptionedClip& clip) {
  return read_wav(clip.audio_path);
}

std::vector<AugmentedItem> generate_augmented(const Corpus& clotho,
                                              const Corpus& audiocaps,
                                              const AugmentOptions& options) {
  if (clotho.empty()) throw DataError("augment: clotho corpus is empty");
  if (audiocaps.empty()) throw DataError("augment: audiocaps corpus is empty");
  if (options.count == 0) throw UsageError("augment: count must be >= 1");
  std::vector<AugmentedItem> items(options.count);
  parallel_for(options.count, options.jobs, [&](std::size_t i) {
    const std::uint64_t item_seed = derive_seed(options.seed, std::uint64_t{i});
    Rng rng(item_seed);
    const auto& c = clotho.items()[rng.uniform_index(clotho.size())];
    const auto& a = audiocaps.items()[rng.uniform_index(audiocaps.size())];
    const AugmentDraws draws =
        draw_augment(options.method, c.captions.size(), rng);
    items[i] = build(options.method, make_source(c, options.loader),
                     make_source(a, options.loader), draws, options.templates);
    items[i].provenance.item_seed = item_seed;
  });
  return items;
}

AugmentedItem regenerate(const Provenance& provenance, const Corpus& clotho,
                         const Corpus& audiocaps, const MixTemplates& templates,
                         const AudioLoader& loader) {
  const auto& c = find_clip(clotho, provenance.clotho_id);
  const auto& a = find_clip(audiocaps, provenance.audiocaps_id);
  AugmentedItem item = build(provenance.method, make_source(c, loader),
                             make_source(a, loader), provenance.draws, templates);
  item.provenance.item_seed = provenance.item_seed;
  return item;
}

std::string augmented_file_name(AugmentMethod method, std::size_t index) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s_%06zu.wav",
                std::string(to_string(method)).c_str(), index);
  return buf;
}

Corpus write_augmented(std::span<const AugmentedItem> items,
                       const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw DataError("cannot create " + out_dir.string() + ": " + ec.message());
  std::vector<CaptionedClip> clips;
  clips.reserve(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& item = items[i];
    const std::string name = augmented_file_name(item.provenance.method, i);
    const auto path = out_dir / name;
    write_wav(item.audio, path);
    CaptionedClip clip;
    clip.id = name.substr(0, name.size() - 4);
    clip.audio_path = name;  // relative to the manifest
    clip.captions.emplace_back(item.caption);
    clip.source = Source::kAugmented;
    clip.sample_rate = item.audio.sample_rate;
    clip.duration_s = item.audio.duration_s();
    clip.provenance = provenance_json(item.provenance);
    clips.push_back(std::move(clip));
  }
  Corpus corpus(std::move(clips));
  write_manifest(corpus, out_dir / "manifest.jsonl");
  return corpus;
}

}  // namespace aaceval
