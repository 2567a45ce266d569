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

#ifndef AACEVAL_CORPUS_H_
#define AACEVAL_CORPUS_H_

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aaceval/text.h"

namespace aaceval {

// A caption and its normalized tokens. Construction fails with DataError if
// the text is empty or normalizes to no tokens.
class Caption {
 public:
  explicit Caption(std::string text);

  const std::string& text() const { return text_; }
  const Tokens& tokens() const { return tokens_; }

  bool operator==(const Caption& other) const { return text_ == other.text_; }

 private:
  std::string text_;
  Tokens tokens_;
};

enum class Source { kClotho, kAudioCaps, kAugmented };

std::string_view to_string(Source source);
// Throws DataError for unknown tags.
Source parse_source(std::string_view tag);

struct CaptionedClip {
  std::string id;
  std::filesystem::path audio_path;
  std::vector<Caption> captions;
  Source source = Source::kClotho;
  int sample_rate = 0;  // 0 when the audio file was not available
  double duration_s = 0.0;
  // Raw JSON object text carried through manifests for augmented items.
  std::optional<std::string> provenance;

  bool operator==(const CaptionedClip&) const = default;
};

// Checks caption-count invariants: 1..5 captions, exactly 5 for clotho,
// exactly 1 for audiocaps. Throws DataError.
void validate_clip(const CaptionedClip& clip);

class Corpus {
 public:
  Corpus() = default;
  // Validates every clip and id uniqueness; throws DataError.
  explicit Corpus(std::vector<CaptionedClip> items);

  const std::vector<CaptionedClip>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

  bool operator==(const Corpus&) const = default;

 private:
  std::vector<CaptionedClip> items_;
};

// Non-fatal findings from loaders (split sizes, durations). When the sink is
// null, warnings are printed to stderr.
using Warnings = std::vector<std::string>;

// Clotho split sizes used for the split-size sanity warning.
inline constexpr std::size_t kClothoSplitSizes[] = {3839, 1045, 1045};
inline constexpr double kClothoMinDurationS = 15.0;
inline constexpr double kClothoMaxDurationS = 30.0;

// Header: file_name,caption_1,...,caption_5. Audio is referenced as
// audio_dir/file_name and only its header is probed.
Corpus load_clotho_csv(const std::filesystem::path& csv_path,
                       const std::filesystem::path& audio_dir,
                       Warnings* warnings = nullptr);

// Header: audiocap_id,youtube_id,start_time,caption. Audio is referenced as
// audio_dir/<audiocap_id>.wav.
Corpus load_audiocaps_csv(const std::filesystem::path& csv_path,
                          const std::filesystem::path& audio_dir,
                          Warnings* warnings = nullptr);

inline constexpr std::size_t kDefaultMaxWords = 8;

// Keeps the items whose every caption has at most max_words tokens.
// Throws UsageError when max_words == 0.
Corpus filter_max_words(const Corpus& corpus,
                        std::size_t max_words = kDefaultMaxWords);

}  // namespace aaceval

#endif  // AACEVAL_CORPUS_H_
