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

#ifndef AACEVAL_AUGMENT_H_
#define AACEVAL_AUGMENT_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "aaceval/corpus.h"
#include "aaceval/rng.h"
#include "aaceval/wav.h"

namespace aaceval {

enum class AugmentMethod { kConcat, kMixing };

std::string_view to_string(AugmentMethod method);
AugmentMethod parse_augment_method(std::string_view name);

// Weights applied to the Clotho-side and AudioCaps-side audio.
struct MixWeights {
  double primary;
  double secondary;
  bool operator==(const MixWeights&) const = default;
};

inline constexpr std::array<MixWeights, 3> kMixWeightOptions = {
    MixWeights{0.5, 0.5}, MixWeights{0.25, 0.75}, MixWeights{0.75, 0.25}};

inline constexpr std::array<std::string_view, 2> kConcatConjunctions = {
    "and", "followed by"};

// Caption templates per weight option, with {A} for the Clotho caption and
// {B} for the AudioCaps caption. The louder clip is the foreground.
struct MixTemplates {
  std::string balanced = "{A} and {B}";                      // (0.5, 0.5)
  std::string secondary_louder = "{A} in the background and {B}";  // (0.25, 0.75)
  std::string primary_louder = "{A} and {B} in the background";    // (0.75, 0.25)

  const std::string& for_weights(std::size_t weight_index) const;
};

// The random choices behind one augmented item. Regenerating from recorded
// draws reproduces the item exactly.
struct AugmentDraws {
  std::size_t clotho_caption = 0;   // which of the clip's captions is used
  bool audiocaps_first = false;     // concat only
  std::size_t conjunction = 0;      // concat only, index into kConcatConjunctions
  std::size_t weights = 0;          // mixing only, index into kMixWeightOptions

  bool operator==(const AugmentDraws&) const = default;
};

// Draw order: caption index, then order and conjunction (concat) or the
// weight option (mixing).
AugmentDraws draw_augment(AugmentMethod method, std::size_t clotho_captions,
                          Rng& rng);

struct Provenance {
  std::string clotho_id;
  std::string audiocaps_id;
  AugmentMethod method = AugmentMethod::kConcat;
  AugmentDraws draws;
  std::uint64_t item_seed = 0;

  bool operator==(const Provenance&) const = default;
};

std::string provenance_json(const Provenance& provenance);
Provenance parse_provenance(std::string_view json);

struct AugmentedItem {
  AudioBuffer audio;
  std::string caption;
  Provenance provenance;
};

// One side of an augmentation pair: the clip's audio plus its caption texts.
struct AugmentSource {
  std::string id;
  AudioBuffer audio;
  std::vector<std::string> captions;
};

// Joins the audio end-to-end (AudioCaps first when draws say so) and the
// captions in the same order around the drawn conjunction. Throws DataError
// on sample-rate mismatch or empty audio.
AugmentedItem concat_pair(const AugmentSource& clotho,
                          const AugmentSource& audiocaps,
                          const AugmentDraws& draws);
AugmentedItem concat_pair(const AugmentSource& clotho,
                          const AugmentSource& audiocaps, Rng& rng);

// Zero-pads the shorter buffer at its end and overlays with the drawn
// weights; the caption comes from the matching template.
AugmentedItem mix_pair(const AugmentSource& clotho,
                       const AugmentSource& audiocaps,
                       const AugmentDraws& draws,
                       const MixTemplates& templates = {});
AugmentedItem mix_pair(const AugmentSource& clotho,
                       const AugmentSource& audiocaps, Rng& rng,
                       const MixTemplates& templates = {});

// Resolves a clip to its audio. The default reads clip.audio_path.
using AudioLoader = std::function<AudioBuffer(const CaptionedClip&)>;
AudioBuffer load_clip_audio(const CaptionedClip& clip);

struct AugmentOptions {
  AugmentMethod method = AugmentMethod::kConcat;
  std::size_t count = 1;
  std::uint64_t seed = 42;
  std::size_t jobs = 1;
  MixTemplates templates;
  AudioLoader loader = load_clip_audio;
};

// Item i uses derive_seed(seed, i) to draw a Clotho clip, an AudioCaps clip
// (both with replacement) and the method's draws. Throws DataError when
// either corpus is empty.
std::vector<AugmentedItem> generate_augmented(const Corpus& clotho,
                                              const Corpus& audiocaps,
                                              const AugmentOptions& options);

// Rebuilds an item from its provenance alone.
AugmentedItem regenerate(const Provenance& provenance, const Corpus& clotho,
                         const Corpus& audiocaps,
                         const MixTemplates& templates = {},
                         const AudioLoader& loader = load_clip_audio);

std::string augmented_file_name(AugmentMethod method, std::size_t index);

// Writes {method}_{index:06}.wav per item plus manifest.jsonl, ordered by
// index, into out_dir. Manifest audio paths are file names relative to
// out_dir. Returns the manifest corpus.
Corpus write_augmented(std::span<const AugmentedItem> items,
                       const std::filesystem::path& out_dir);

}  // namespace aaceval

#endif  // AACEVAL_AUGMENT_H_
