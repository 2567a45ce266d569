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

#include "aaceval/manifest.h"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "aaceval/error.h"

namespace aaceval {

using nlohmann::json;

std::string manifest_record(const CaptionedClip& clip) {
  // ordered_json keeps the field order stable in the written file.
  nlohmann::ordered_json record;
  record["id"] = clip.id;
  record["audio_path"] = clip.audio_path.generic_string();
  auto& captions = record["captions"] = nlohmann::ordered_json::array();
  for (const auto& c : clip.captions) captions.push_back(c.text());
  record["source"] = std::string(to_string(clip.source));
  record["sample_rate"] = clip.sample_rate;
  record["duration_s"] = clip.duration_s;
  if (clip.provenance) {
    record["provenance"] = nlohmann::ordered_json::parse(*clip.provenance);
  }
  return record.dump();
}

CaptionedClip parse_manifest_record(std::string_view line) {
  nlohmann::ordered_json record;
  try {
    record = nlohmann::ordered_json::parse(line);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("malformed record: ") + e.what());
  }
  if (!record.is_object()) throw DataError("record is not a JSON object");
  static constexpr const char* kFields[] = {"id",     "audio_path",  "captions",
                                            "source", "sample_rate", "duration_s"};
  for (const char* field : kFields) {
    if (!record.contains(field)) {
      throw DataError(std::string("record missing field '") + field + "'");
    }
  }
  if (!record.at("captions").is_array()) {
    throw DataError("record field 'captions' is not an array");
  }
  CaptionedClip clip;
  try {
    clip.id = record.at("id").get<std::string>();
    clip.audio_path = record.at("audio_path").get<std::string>();
    for (const auto& c : record.at("captions")) {
      clip.captions.emplace_back(c.get<std::string>());
    }
    clip.source = parse_source(record.at("source").get<std::string>());
    clip.sample_rate = record.at("sample_rate").get<int>();
    clip.duration_s = record.at("duration_s").get<double>();
    if (record.contains("provenance")) {
      clip.provenance = record.at("provenance").dump();
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed record: ") + e.what());
  }
  validate_clip(clip);
  return clip;
}

void write_manifest(const Corpus& corpus, std::ostream& out) {
  for (const auto& clip : corpus.items()) out << manifest_record(clip) << '\n';
}

void write_manifest(const Corpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  write_manifest(corpus, out);
  if (!out) throw DataError("write failed: " + path.string());
}

Corpus load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::vector<CaptionedClip> items;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      items.push_back(parse_manifest_record(line));
    } catch (const DataError& e) {
      throw DataError(path.string() + ":" + std::to_string(lineno) + ": " +
                      e.what());
    }
  }
  try {
    return Corpus(std::move(items));
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

}  // namespace aaceval
