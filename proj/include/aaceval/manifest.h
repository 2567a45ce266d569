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

#ifndef AACEVAL_MANIFEST_H_
#define AACEVAL_MANIFEST_H_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "aaceval/corpus.h"

namespace aaceval {

// One JSON object per line with fields id, audio_path, captions, source,
// sample_rate, duration_s and, for augmented items, provenance.
std::string manifest_record(const CaptionedClip& clip);
CaptionedClip parse_manifest_record(std::string_view line);

void write_manifest(const Corpus& corpus, std::ostream& out);
void write_manifest(const Corpus& corpus, const std::filesystem::path& path);
// Throws DataError naming the offending line.
Corpus load_manifest(const std::filesystem::path& path);

}  // namespace aaceval

#endif  // AACEVAL_MANIFEST_H_
