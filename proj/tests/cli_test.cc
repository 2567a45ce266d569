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

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <httplib.h>

#include "aaceval/csv.h"
#include "aaceval/manifest.h"
#include "aaceval/report.h"
#include "aaceval/wav.h"
#include "synthetic.h"
#include "test_util.h"

namespace aaceval {
namespace {

namespace fs = std::filesystem;
using testing::TempDir;

struct RunResult {
  int code = -1;
  std::string out;
};

// Runs the CLI with stderr discarded; returns the exit code and stdout.
RunResult run(const std::string& args) {
  const std::string cmd = std::string(AACEVAL_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    manifest_ = dir_.path() / "corpus.jsonl";
    write_manifest(testing::synthetic_corpus(600, 13), manifest_);
  }

  TempDir dir_;
  fs::path manifest_;
};

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);
  EXPECT_EQ(run("perturb --manifest x").code, 1);
  EXPECT_EQ(run("--help").code, 0);
  auto out = dir_.path() / "s.csv";
  EXPECT_EQ(run("score --metrics fense --backend lexical --hyp " + q(manifest_) +
                " --refs " + q(manifest_) + " --out " + q(out))
                .code,
            1);
  EXPECT_FALSE(fs::exists(out));
  EXPECT_EQ(run("perturb --kind sideways --manifest " + q(manifest_) + " --out " +
                q(out))
                .code,
            1);
}

TEST_F(CliTest, MissingInputIsDataErrorWithoutOutputs) {
  auto out = dir_.path() / "pairs.csv";
  EXPECT_EQ(run("perturb --kind temporal --manifest " + q(dir_.path() / "none") +
                " --out " + q(out))
                .code,
            2);
  EXPECT_FALSE(fs::exists(out));
}

TEST_F(CliTest, PerturbIsDeterministic) {
  auto a = dir_.path() / "a.csv", b = dir_.path() / "b.csv", c = dir_.path() / "c.csv";
  const std::string base = "perturb --kind temporal --seed 7 --n 50 --manifest " +
                           q(manifest_) + " --out ";
  RunResult ra = run(base + q(a) + " --jobs 1");
  ASSERT_EQ(ra.code, 0);
  ASSERT_EQ(run(base + q(b) + " --jobs 1").code, 0);
  ASSERT_EQ(run("--jobs 6 " + base + q(c)).code, 0);
  EXPECT_EQ(read_text_file(a), read_text_file(b));
  EXPECT_EQ(read_text_file(a), read_text_file(c));
  EXPECT_NE(ra.out.find("seed=7"), std::string::npos) << ra.out;
  EXPECT_NE(ra.out.find("fnv1a64:"), std::string::npos) << ra.out;
  EXPECT_EQ(std::count(ra.out.begin(), ra.out.end(), '\n'), 1);
  RunResult rd = run("perturb --kind temporal --n 5 --manifest " + q(manifest_) +
                     " --out " + q(dir_.path() / "d.csv"));
  EXPECT_NE(rd.out.find("seed=42"), std::string::npos) << rd.out;
}

TEST_F(CliTest, SuitabilityGrid) {
  auto pairs = dir_.path() / "pairs.csv";
  ASSERT_EQ(run("perturb --kind all --n 40 --manifest " + q(manifest_) + " --out " +
                q(pairs))
                .code,
            0);
  auto report = dir_.path() / "report.csv";
  auto svg = dir_.path() / "report.svg";
  RunResult r = run("suitability --metrics rougel,fense_star --pairs " + q(pairs) +
                    " --out-csv " + q(report) + " --svg " + q(svg));
  ASSERT_EQ(r.code, 0);
  auto rows = read_csv(report);
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_EQ(rows[0],
            (CsvRow{"metric", "kind", "n_pairs", "n_ties", "pct_type1_higher"}));
  EXPECT_TRUE(fs::exists(svg));
  auto svg2 = dir_.path() / "report2.svg";
  ASSERT_EQ(run("suitability --metrics rougel,fense_star --pairs " + q(pairs) +
                " --out-csv " + q(dir_.path() / "r2.csv") + " --svg " + q(svg2))
                .code,
            0);
  EXPECT_EQ(read_text_file(svg), read_text_file(svg2));
}

TEST_F(CliTest, ScoreHypRefsAndPairs) {
  auto hyp = dir_.path() / "hyp.txt", refs = dir_.path() / "refs.txt";
  testing::write_file(hyp, "a dog barks\nrain falls on a roof\n");
  testing::write_file(refs, "a dog barks\ta dog barks loudly\nwind blows\n");
  auto out = dir_.path() / "scores.csv";
  RunResult r = run("score --metrics rougel,fense_star --hyp " + q(hyp) +
                    " --refs " + q(refs) + " --out " + q(out));
  ASSERT_EQ(r.code, 0);
  auto rows = read_csv(out);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], (CsvRow{"item", "rougel", "fense_star"}));
  EXPECT_EQ(rows[1][1], "1");
  EXPECT_EQ(rows[2][1], "0");
  EXPECT_NE(r.out.find("mean_rougel=0.5"), std::string::npos) << r.out;

  testing::write_file(refs, "a dog barks\n");
  auto bad = dir_.path() / "bad.csv";
  EXPECT_EQ(run("score --metrics rougel --hyp " + q(hyp) + " --refs " + q(refs) +
                " --out " + q(bad))
                .code,
            2);
  EXPECT_FALSE(fs::exists(bad));

  auto pairs = dir_.path() / "pairs.csv";
  ASSERT_EQ(run("perturb --kind spatial --n 10 --manifest " + q(manifest_) +
                " --out " + q(pairs))
                .code,
            0);
  ASSERT_EQ(run("score --metrics bleu4,ciderd --pairs " + q(pairs) + " --out " +
                q(out))
                .code,
            0);
  EXPECT_EQ(read_csv(out).size(), 21u);
}

TEST_F(CliTest, UnreachableRemoteIsBackendError) {
  int port;
  {
    httplib::Server probe;
    port = probe.bind_to_any_port("127.0.0.1");
  }
  auto pairs = dir_.path() / "pairs.csv";
  ASSERT_EQ(run("perturb --kind temporal --n 5 --manifest " + q(manifest_) +
                " --out " + q(pairs))
                .code,
            0);
  auto out = dir_.path() / "r.csv";
  EXPECT_EQ(run("suitability --metrics fense --timeout-ms 500 --backend "
                "remote:http://127.0.0.1:" +
                std::to_string(port) + " --pairs " + q(pairs) + " --out-csv " +
                q(out))
                .code,
            3);
  EXPECT_FALSE(fs::exists(out));
}

TEST_F(CliTest, IngestVocabAndLossWeights) {
  auto csv = dir_.path() / "captions.csv";
  testing::write_file(csv,
                      "file_name,caption_1,caption_2,caption_3,caption_4,caption_5\n"
                      "a.wav,a dog barks,a dog barks loudly,dogs bark,the dog,a dog\n"
                      "b.wav,rain falls,rain,heavy rain,rain on a roof,wet rain\n");
  auto manifest = dir_.path() / "clotho.jsonl";
  RunResult r = run("ingest --format clotho --csv " + q(csv) + " --out " + q(manifest));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(load_manifest(manifest).size(), 2u);
  auto vocab = dir_.path() / "vocab.csv";
  auto svg = dir_.path() / "vocab.svg";
  ASSERT_EQ(run("vocab --manifest " + q(manifest) + " --out-csv " + q(vocab) +
                " --svg " + q(svg))
                .code,
            0);
  auto rows = read_csv(vocab);
  EXPECT_EQ(rows[0], (CsvRow{"rank", "word", "count", "cdf"}));
  EXPECT_EQ(rows.back()[3], "1");
  auto weights = dir_.path() / "w.csv";
  ASSERT_EQ(run("loss-weights --manifest " + q(manifest) + " --out-csv " + q(weights))
                .code,
            0);
  EXPECT_EQ(read_csv(weights)[1][3], "4");
  auto counts = dir_.path() / "counts.csv";
  testing::write_file(counts, "token,count\na,90\nb,9\nc,1\n");
  ASSERT_EQ(run("loss-weights --max-weight 4 --counts " + q(counts) + " --out-csv " +
                q(weights))
                .code,
            0);
  EXPECT_EQ(read_csv(weights)[1][0], "c");
  EXPECT_EQ(run("loss-weights --out-csv " + q(weights)).code, 1);
}

TEST_F(CliTest, LossEval) {
  auto out = dir_.path() / "sweep.csv";
  ASSERT_EQ(run("loss-eval --gamma-list 0,2 --alpha-grid 0.1:0.9:0.1 --out-csv " +
                q(out))
                .code,
            0);
  EXPECT_EQ(read_csv(out).size(), 1u + 2u * 9u);
  EXPECT_EQ(run("loss-eval --gamma-list x --out-csv " + q(out)).code, 1);
}

TEST_F(CliTest, AugmentWritesWavsAndManifest) {
  auto audio = dir_.path() / "audio";
  fs::create_directories(audio);
  std::vector<CaptionedClip> clotho, audiocaps;
  for (int i = 0; i < 3; ++i) {
    std::vector<float> s(100 + 10 * i, 0.25f * (i + 1) / 3.0f);
    write_wav(AudioBuffer{s, 16000}, audio / ("c" + std::to_string(i) + ".wav"));
    write_wav(AudioBuffer{s, 16000}, audio / ("a" + std::to_string(i) + ".wav"));
    CaptionedClip c;
    c.id = "c" + std::to_string(i);
    c.audio_path = fs::path("audio") / (c.id + ".wav");
    c.source = Source::kClotho;
    for (int k = 0; k < 5; ++k) c.captions.emplace_back("clotho caption " + std::to_string(k));
    clotho.push_back(c);
    CaptionedClip a;
    a.id = "a" + std::to_string(i);
    a.audio_path = fs::path("audio") / (a.id + ".wav");
    a.source = Source::kAudioCaps;
    a.captions.emplace_back(i == 2 ? "a very long caption with far too many words in it"
                                   : "short sound " + std::to_string(i));
    audiocaps.push_back(a);
  }
  write_manifest(Corpus(clotho), dir_.path() / "clotho.jsonl");
  write_manifest(Corpus(audiocaps), dir_.path() / "audiocaps.jsonl");
  auto out1 = dir_.path() / "out1", out2 = dir_.path() / "out2";
  const std::string base = "augment --method mixing --count 5 --clotho " +
                           q(dir_.path() / "clotho.jsonl") + " --audiocaps " +
                           q(dir_.path() / "audiocaps.jsonl") + " --out-dir ";
  RunResult r = run(base + q(out1));
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("audiocaps_kept=2"), std::string::npos) << r.out;
  ASSERT_EQ(run(base + q(out2) + " --jobs 3").code, 0);
  for (int i = 0; i < 5; ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "mixing_%06d.wav", i);
    ASSERT_TRUE(fs::exists(out1 / name));
    EXPECT_EQ(read_text_file(out1 / name), read_text_file(out2 / name));
  }
  EXPECT_EQ(read_text_file(out1 / "manifest.jsonl"),
            read_text_file(out2 / "manifest.jsonl"));
  EXPECT_EQ(load_manifest(out1 / "manifest.jsonl").size(), 5u);

  auto out3 = dir_.path() / "out3";
  EXPECT_EQ(run(base + q(out3) + " --template-balanced '{A} with no b'").code, 1);
  EXPECT_FALSE(fs::exists(out3));
}

}  // namespace
}  // namespace aaceval
