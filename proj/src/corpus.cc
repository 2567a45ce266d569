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

#include "aaceval/corpus.h"

#include <charconv>
#include <iostream>
#include <set>

#include "aaceval/csv.h"
#include "aaceval/error.h"
#include "aaceval/wav.h"

namespace aaceval {
namespace {

void warn(Warnings* sink, std::string message) {
  if (sink) {
    sink->push_back(std::move(message));
  } else {
    std::cerr << "warning: " << message << '\n';
  }
}

bool is_number(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (s.empty()) return false;
  double value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  return ec == std::errc() && ptr == s.data() + s.size();
}

// Fills sample rate and duration from the WAV header when the file exists.
void probe_audio(CaptionedClip& clip, Warnings* warnings) {
  std::error_code ec;
  if (!std::filesystem::exists(clip.audio_path, ec)) return;
  try {
    WavInfo info = probe_wav(clip.audio_path);
    clip.sample_rate = info.sample_rate;
    clip.duration_s = static_cast<double>(info.frames) / info.sample_rate;
  } catch (const DataError& e) {
    warn(warnings, e.what());
  }
}

std::string location(const std::filesystem::path& path, std::size_t row) {
  return path.string() + ":" + std::to_string(row + 1);
}

}  // namespace

Caption::Caption(std::string text) : text_(std::move(text)) {
  if (text_.empty()) throw DataError("empty caption");
  tokens_ = tokenize(text_);
  if (tokens_.empty()) {
    throw DataError("caption has no tokens after normalization: '" + text_ +
                    "'");
  }
}

std::string_view to_string(Source source) {
  switch (source) {
    case Source::kClotho:
      return "clotho";
    case Source::kAudioCaps:
      return "audiocaps";
    case Source::kAugmented:
      return "augmented";
  }
  return "unknown";
}

Source parse_source(std::string_view tag) {
  if (tag == "clotho") return Source::kClotho;
  if (tag == "audiocaps") return Source::kAudioCaps;
  if (tag == "augmented") return Source::kAugmented;
  throw DataError("unknown source tag '" + std::string(tag) + "'");
}

void validate_clip(const CaptionedClip& clip) {
  if (clip.id.empty()) throw DataError("clip with empty id");
  const std::size_t n = clip.captions.size();
  if (n < 1 || n > 5) {
    throw DataError("clip " + clip.id + ": expected 1..5 captions, got " +
                    std::to_string(n));
  }
  if (clip.source == Source::kClotho && n != 5) {
    throw DataError("clip " + clip.id + ": clotho items carry 5 captions");
  }
  if (clip.source == Source::kAudioCaps && n != 1) {
    throw DataError("clip " + clip.id + ": audiocaps items carry 1 caption");
  }
  if (clip.sample_rate < 0 || clip.duration_s < 0) {
    throw DataError("clip " + clip.id + ": negative sample rate or duration");
  }
}

Corpus::Corpus(std::vector<CaptionedClip> items) : items_(std::move(items)) {
  std::set<std::string_view> seen;
  for (const auto& clip : items_) {
    validate_clip(clip);
    if (!seen.insert(clip.id).second) {
      throw DataError("duplicate id '" + clip.id + "'");
    }
  }
}

Corpus load_clotho_csv(const std::filesystem::path& csv_path,
                       const std::filesystem::path& audio_dir,
                       Warnings* warnings) {
  static constexpr std::string_view kColumns[] = {
      "file_name", "caption_1", "caption_2", "caption_3", "caption_4",
      "caption_5"};
  auto rows = read_csv(csv_path);
  if (rows.empty()) throw DataError(csv_path.string() + ": empty file");
  CsvHeader header(rows[0], kColumns, csv_path.string());
  std::vector<CaptionedClip> items;
  std::set<std::string> seen;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    auto cell = [&](std::string_view column) -> const std::string& {
      std::size_t i = header[column];
      if (i >= row.size()) {
        throw DataError(location(csv_path, r) + ": missing field " +
                        std::string(column));
      }
      return row[i];
    };
    CaptionedClip clip;
    clip.id = cell("file_name");
    if (clip.id.empty()) {
      throw DataError(location(csv_path, r) + ": empty file_name");
    }
    if (!seen.insert(clip.id).second) {
      throw DataError(location(csv_path, r) + ": duplicate file_name '" +
                      clip.id + "'");
    }
    clip.source = Source::kClotho;
    clip.audio_path = audio_dir / clip.id;
    for (std::size_t c = 1; c < std::size(kColumns); ++c) {
      const std::string& text = cell(kColumns[c]);
      try {
        clip.captions.emplace_back(text);
      } catch (const DataError& e) {
        throw DataError(location(csv_path, r) + ": " +
                        std::string(kColumns[c]) + ": " + e.what());
      }
    }
    probe_audio(clip, warnings);
    if (clip.sample_rate > 0 && (clip.duration_s < kClothoMinDurationS ||
                                 clip.duration_s > kClothoMaxDurationS)) {
      warn(warnings, clip.id + ": duration " + std::to_string(clip.duration_s) +
                         "s outside [15, 30]");
    }
    items.push_back(std::move(clip));
  }
  bool known_split = false;
  for (std::size_t n : kClothoSplitSizes) known_split = known_split || n == items.size();
  if (!known_split) {
    warn(warnings, csv_path.string() + ": " + std::to_string(items.size()) +
                       " rows; Clotho splits have 3839 / 1045 / 1045");
  }
  return Corpus(std::move(items));
}

Corpus load_audiocaps_csv(const std::filesystem::path& csv_path,
                          const std::filesystem::path& audio_dir,
                          Warnings* warnings) {
  static constexpr std::string_view kColumns[] = {"audiocap_id", "youtube_id",
                                                  "start_time", "caption"};
  auto rows = read_csv(csv_path);
  if (rows.empty()) throw DataError(csv_path.string() + ": empty file");
  CsvHeader header(rows[0], kColumns, csv_path.string());
  std::vector<CaptionedClip> items;
  std::set<std::string> seen;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    auto cell = [&](std::string_view column) -> const std::string& {
      std::size_t i = header[column];
      if (i >= row.size()) {
        throw DataError(location(csv_path, r) + ": missing field " +
                        std::string(column));
      }
      return row[i];
    };
    CaptionedClip clip;
    clip.id = cell("audiocap_id");
    if (clip.id.empty()) {
      throw DataError(location(csv_path, r) + ": empty audiocap_id");
    }
    if (!seen.insert(clip.id).second) {
      throw DataError(location(csv_path, r) + ": duplicate audiocap_id '" +
                      clip.id + "'");
    }
    if (!is_number(cell("start_time"))) {
      throw DataError(location(csv_path, r) + ": non-numeric start_time '" +
                      cell("start_time") + "'");
    }
    clip.source = Source::kAudioCaps;
    clip.audio_path = audio_dir / (clip.id + ".wav");
    try {
      clip.captions.emplace_back(cell("caption"));
    } catch (const DataError& e) {
      throw DataError(location(csv_path, r) + ": caption: " + e.what());
    }
    probe_audio(clip, warnings);
    items.push_back(std::move(clip));
  }
  return Corpus(std::move(items));
}

Corpus filter_max_words(const Corpus& corpus, std::size_t max_words) {
  if (max_words == 0) throw UsageError("filter_max_words: limit must be >= 1");
  std::vector<CaptionedClip> kept;
  for (const auto& clip : corpus.items()) {
    bool ok = true;
    for (const auto& caption : clip.captions) {
      ok = ok && caption.tokens().size() <= max_words;
    }
    if (ok) kept.push_back(clip);
  }
  return Corpus(std::move(kept));
}

}  // namespace aaceval
