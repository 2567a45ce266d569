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

#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "aaceval/error.h"
#include "aaceval/manifest.h"
#include "aaceval/vocab.h"
#include "aaceval/wav.h"
#include "test_util.h"

namespace aaceval {
namespace {

using testing::TempDir;
using testing::write_file;

const char* kClothoHeader =
    "file_name,caption_1,caption_2,caption_3,caption_4,caption_5\n";

CaptionedClip clip(std::string id, std::vector<std::string> captions,
                   Source source = Source::kAudioCaps) {
  CaptionedClip c;
  c.id = std::move(id);
  c.audio_path = c.id + ".wav";
  for (auto& t : captions) c.captions.emplace_back(t);
  c.source = source;
  return c;
}

TEST(CaptionTest, Invariants) {
  Caption c("A Dog barks.");
  EXPECT_EQ(c.tokens(), (Tokens{"a", "dog", "barks"}));
  EXPECT_THROW(Caption(""), DataError);
  EXPECT_THROW(Caption(" ... "), DataError);
}

TEST(CorpusTest, CaptionCountInvariants) {
  EXPECT_THROW(Corpus({clip("x", {"a", "b"}, Source::kAudioCaps)}), DataError);
  EXPECT_THROW(Corpus({clip("x", {"a"}, Source::kClotho)}), DataError);
  EXPECT_THROW(Corpus({clip("x", {"a", "b", "c", "d", "e", "f"},
                            Source::kAugmented)}),
               DataError);
  EXPECT_NO_THROW(Corpus({clip("x", {"a", "b"}, Source::kAugmented)}));
}

TEST(CorpusTest, DuplicateIdsRejected) {
  EXPECT_THROW(Corpus({clip("x", {"a"}), clip("x", {"b"})}), DataError);
}

TEST(ClothoLoaderTest, LoadsFiveCaptionsPerRow) {
  TempDir dir;
  write_file(dir / "c.csv",
             std::string(kClothoHeader) +
                 "a.wav,One dog.,Two dogs.,\"Three, dogs\",Four.,Five.\n"
                 "b.wav,x y,y z,z w,w v,v u\n");
  Warnings warnings;
  Corpus c = load_clotho_csv(dir / "c.csv", dir.path(), &warnings);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c.items()[0].captions.size(), 5u);
  EXPECT_EQ(c.items()[0].captions[2].text(), "Three, dogs");
  EXPECT_EQ(c.items()[0].source, Source::kClotho);
  EXPECT_EQ(c.items()[0].audio_path, dir.path() / "a.wav");
  // Two rows matches no Clotho split.
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("3839"), std::string::npos);
}

TEST(ClothoLoaderTest, ProbesAudioAndWarnsOnDuration) {
  TempDir dir;
  write_wav(AudioBuffer{std::vector<float>(16000, 0.0f), 16000}, dir / "a.wav");
  write_file(dir / "c.csv", std::string(kClothoHeader) + "a.wav,a,b,c,d,e\n");
  Warnings warnings;
  Corpus c = load_clotho_csv(dir / "c.csv", dir.path(), &warnings);
  EXPECT_EQ(c.items()[0].sample_rate, 16000);
  EXPECT_DOUBLE_EQ(c.items()[0].duration_s, 1.0);
  EXPECT_EQ(warnings.size(), 2u);  // 1 s duration and split size
}

TEST(ClothoLoaderTest, Errors) {
  TempDir dir;
  write_file(dir / "missing.csv", "file_name,caption_1,caption_2\na,b,c\n");
  EXPECT_THROW(load_clotho_csv(dir / "missing.csv", dir.path()), DataError);
  write_file(dir / "empty.csv",
             std::string(kClothoHeader) + "a.wav,one,two,,four,five\n");
  EXPECT_THROW(load_clotho_csv(dir / "empty.csv", dir.path()), DataError);
  write_file(dir / "dup.csv", std::string(kClothoHeader) +
                                  "a.wav,a,b,c,d,e\na.wav,a,b,c,d,e\n");
  EXPECT_THROW(load_clotho_csv(dir / "dup.csv", dir.path()), DataError);
  EXPECT_THROW(load_clotho_csv(dir / "nope.csv", dir.path()), DataError);
}

TEST(AudioCapsLoaderTest, LoadsOneCaption) {
  TempDir dir;
  write_file(dir / "a.csv",
             "audiocap_id,youtube_id,start_time,caption\n"
             "91139,r1nicOVtvkQ,130,A woman talks nearby as water pours\n");
  Warnings w;
  Corpus c = load_audiocaps_csv(dir / "a.csv", dir.path(), &w);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c.items()[0].id, "91139");
  EXPECT_EQ(c.items()[0].captions.size(), 1u);
  EXPECT_EQ(c.items()[0].source, Source::kAudioCaps);
  EXPECT_EQ(c.items()[0].audio_path, dir.path() / "91139.wav");
}

TEST(AudioCapsLoaderTest, Errors) {
  TempDir dir;
  write_file(dir / "empty.csv",
             "audiocap_id,youtube_id,start_time,caption\n1,yt,30,\n");
  EXPECT_THROW(load_audiocaps_csv(dir / "empty.csv", dir.path()), DataError);
  write_file(dir / "nan.csv",
             "audiocap_id,youtube_id,start_time,caption\n1,yt,abc,a dog\n");
  EXPECT_THROW(load_audiocaps_csv(dir / "nan.csv", dir.path()), DataError);
  write_file(dir / "cols.csv", "audiocap_id,caption\n1,a dog\n");
  EXPECT_THROW(load_audiocaps_csv(dir / "cols.csv", dir.path()), DataError);
}

TEST(FilterTest, KeepsShortCaptions) {
  Corpus c({clip("short", {"a man speaks"}),
            clip("long", {"one two three four five six seven eight nine"}),
            clip("edge", {"one two three four five six seven eight"})});
  Corpus f = filter_max_words(c, 8);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f.items()[0].id, "short");
  EXPECT_EQ(f.items()[1].id, "edge");
  EXPECT_THROW(filter_max_words(c, 0), UsageError);
}

TEST(FilterTest, EveryCaptionMustFit) {
  Corpus c({clip("mixed", {"short one", "one two three four five six seven eight nine"},
                 Source::kAugmented)});
  EXPECT_TRUE(filter_max_words(c, 8).empty());
}

TEST(VocabTest, Counts) {
  Corpus c({clip("1", {"a dog"}), clip("2", {"a cat"})});
  VocabStats s = vocab_stats(c);
  EXPECT_EQ(s.counts, (std::map<std::string, std::int64_t>{
                          {"a", 2}, {"dog", 1}, {"cat", 1}}));
  EXPECT_EQ(s.total_tokens, 4);
  EXPECT_EQ(s.ranked, (std::vector<std::string>{"a", "cat", "dog"}));
  VocabStats single = vocab_stats(Corpus({clip("1", {"a a"})}));
  EXPECT_EQ(single.counts.at("a"), 2);
  EXPECT_THROW(vocab_stats(Corpus{}), DataError);
}

TEST(VocabTest, Cdf) {
  VocabStats s = vocab_stats_from_counts({{"the", 5}, {"dog", 3}, {"barks", 2}});
  auto cdf = vocab_cdf(s);
  ASSERT_EQ(cdf.size(), 3u);
  EXPECT_DOUBLE_EQ(cdf[0], 0.5);
  EXPECT_DOUBLE_EQ(cdf[1], 0.8);
  EXPECT_EQ(cdf[2], 1.0);
  EXPECT_EQ(vocab_cdf(vocab_stats_from_counts({{"x", 7}})),
            std::vector<double>{1.0});
  EXPECT_THROW(vocab_cdf(VocabStats{}), UsageError);
}

// Random captions over a small alphabet so that ties in counts are common.
std::vector<std::string> random_captions(std::mt19937& rng, int n) {
  static const char* kWords[] = {"a", "dog", "barks", "rain", "falls", "the",
                                 "car", "passes", "bird", "sings", "loudly"};
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) {
    std::string s;
    int len = 1 + static_cast<int>(rng() % 8);
    for (int k = 0; k < len; ++k) {
      if (k) s += ' ';
      s += kWords[rng() % std::size(kWords)];
    }
    if (rng() % 3 == 0) s += ".";
    if (rng() % 4 == 0) s[0] = static_cast<char>(std::toupper(s[0]));
    out.push_back(s);
  }
  return out;
}

TEST(VocabTest, CdfProperties) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto captions = random_captions(rng, 1 + static_cast<int>(rng() % 20));
    VocabStats s = vocab_stats(captions);
    std::int64_t sum = 0;
    for (const auto& [w, n] : s.counts) sum += n;
    EXPECT_EQ(sum, s.total_tokens);
    auto cdf = vocab_cdf(s);
    EXPECT_EQ(cdf.size(), s.counts.size());
    EXPECT_EQ(cdf.size(), s.ranked.size());
    EXPECT_EQ(cdf.back(), 1.0);
    for (std::size_t i = 1; i < cdf.size(); ++i) EXPECT_LE(cdf[i - 1], cdf[i]);
    for (std::size_t i = 1; i < s.ranked.size(); ++i) {
      const auto& a = s.ranked[i - 1];
      const auto& b = s.ranked[i];
      EXPECT_TRUE(s.counts.at(a) > s.counts.at(b) ||
                  (s.counts.at(a) == s.counts.at(b) && a < b));
    }
  }
}

Corpus random_corpus(std::mt19937& rng) {
  std::vector<CaptionedClip> items;
  const int n = static_cast<int>(rng() % 12);
  for (int i = 0; i < n; ++i) {
    CaptionedClip c;
    c.id = "clip \"" + std::to_string(i) + "\"";
    c.audio_path = "audio/dir with space/" + std::to_string(i) + ".wav";
    const int kind = static_cast<int>(rng() % 3);
    c.source = kind == 0 ? Source::kClotho
                         : (kind == 1 ? Source::kAudioCaps : Source::kAugmented);
    const int ncap = kind == 0 ? 5 : (kind == 1 ? 1 : 1 + static_cast<int>(rng() % 5));
    for (auto& t : random_captions(rng, ncap)) c.captions.emplace_back(t);
    c.sample_rate = (rng() % 2) ? 16000 : 44100;
    c.duration_s = std::uniform_real_distribution<double>(0.0, 30.0)(rng);
    if (kind == 2 && rng() % 2) {
      c.provenance = R"({"clotho_id":"a","audiocaps_id":"b","method":"concat","item_seed":"9"})";
    }
    items.push_back(std::move(c));
  }
  return Corpus(std::move(items));
}

TEST(ManifestTest, RoundTripProperty) {
  std::mt19937 rng(5);
  TempDir dir;
  for (int trial = 0; trial < 100; ++trial) {
    Corpus c = random_corpus(rng);
    write_manifest(c, dir / "m.jsonl");
    EXPECT_EQ(load_manifest(dir / "m.jsonl"), c);
  }
}

TEST(ManifestTest, FieldOrder) {
  Corpus c({clip("x", {"a dog"})});
  std::ostringstream out;
  write_manifest(c, out);
  EXPECT_EQ(out.str(),
            "{\"id\":\"x\",\"audio_path\":\"x.wav\",\"captions\":[\"a dog\"],"
            "\"source\":\"audiocaps\",\"sample_rate\":0,\"duration_s\":0.0}\n");
}

TEST(ManifestTest, Errors) {
  TempDir dir;
  write_file(dir / "nocap.jsonl",
             R"({"id":"x","audio_path":"x.wav","source":"audiocaps","sample_rate":0,"duration_s":0})"
             "\n");
  EXPECT_THROW(load_manifest(dir / "nocap.jsonl"), DataError);
  write_file(dir / "foo.jsonl",
             R"({"id":"x","audio_path":"x.wav","captions":["a"],"source":"foo","sample_rate":0,"duration_s":0})"
             "\n");
  EXPECT_THROW(load_manifest(dir / "foo.jsonl"), DataError);
  write_file(dir / "bad.jsonl", "{not json\n");
  EXPECT_THROW(load_manifest(dir / "bad.jsonl"), DataError);
  write_file(dir / "str.jsonl",
             R"({"id":"x","audio_path":"x.wav","captions":"a","source":"audiocaps","sample_rate":0,"duration_s":0})"
             "\n");
  EXPECT_THROW(load_manifest(dir / "str.jsonl"), DataError);
}

}  // namespace
}  // namespace aaceval
