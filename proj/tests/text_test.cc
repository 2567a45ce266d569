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

#include "aaceval/text.h"

#include <random>
#include <string>
#include <utility>
#include <vector>

#include <gtest/gtest.h>

#include "aaceval/error.h"

namespace aaceval {
namespace {

TEST(TokenizeTest, StripsPunctuationAndLowercases) {
  EXPECT_EQ(tokenize("A dog, barks!"), (Tokens{"a", "dog", "barks"}));
  EXPECT_EQ(tokenize("rain falls followed by thunder"),
            (Tokens{"rain", "falls", "followed", "by", "thunder"}));
  EXPECT_EQ(tokenize("(Someone) says: \"hi\"; ok? yes."),
            (Tokens{"someone", "says", "hi", "ok", "yes"}));
}

TEST(TokenizeTest, EmptyAndWhitespaceOnly) {
  EXPECT_TRUE(tokenize("").empty());
  EXPECT_TRUE(tokenize("  \t\n ").empty());
  EXPECT_TRUE(tokenize(" - , . ").empty());
}

TEST(TokenizeTest, HyphenJoinsWords) {
  EXPECT_EQ(tokenize("a high-pitched beep"), (Tokens{"a", "highpitched", "beep"}));
}

TEST(TokenizeTest, NonAsciiBytesPassThrough) {
  EXPECT_EQ(tokenize("Café NOISE"), (Tokens{"café", "noise"}));
}

TEST(TokenizeTest, IdempotentOnJoinedOutput) {
  std::mt19937 rng(7);
  const std::string alphabet = "abcXYZ .,!?;:\"'()-  \t";
  for (int trial = 0; trial < 2000; ++trial) {
    std::string text;
    const int len = static_cast<int>(rng() % 40);
    for (int i = 0; i < len; ++i) text.push_back(alphabet[rng() % alphabet.size()]);
    const Tokens once = tokenize(text);
    EXPECT_EQ(tokenize(join_tokens(once)), once) << "input: " << text;
  }
}

TEST(NgramsTest, Bigrams) {
  const Tokens t = {"a", "dog", "barks"};
  EXPECT_EQ(ngrams(t, 2), (NgramCounts{{"a dog", 1}, {"dog barks", 1}}));
}

TEST(NgramsTest, TooShortIsEmpty) {
  EXPECT_TRUE(ngrams(Tokens{"a", "dog", "barks"}, 4).empty());
  EXPECT_TRUE(ngrams(Tokens{}, 1).empty());
}

TEST(NgramsTest, KeepsMultiplicity) {
  EXPECT_EQ(ngrams(Tokens{"a", "a", "a"}, 1), (NgramCounts{{"a", 3}}));
}

TEST(NgramsTest, ZeroOrderRejected) {
  EXPECT_THROW(ngrams(Tokens{"a"}, 0), UsageError);
}

TEST(StemTest, SpecExamples) {
  EXPECT_EQ(stem("caresses"), "caress");
  EXPECT_EQ(stem("running"), "run");
  EXPECT_EQ(stem("ponies"), "poni");
}

TEST(StemTest, ShortWordsUnchanged) {
  EXPECT_EQ(stem("is"), "is");
  EXPECT_EQ(stem("as"), "as");
  EXPECT_EQ(stem("a"), "a");
  EXPECT_EQ(stem(""), "");
}

// Expected stems produced by the reference implementation of the original
// algorithm (NLTK PorterStemmer, ORIGINAL_ALGORITHM mode).
TEST(StemTest, MatchesReferenceVocabulary) {
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"caresses", "caress"},
      {"ponies", "poni"},
      {"ties", "ti"},
      {"caress", "caress"},
      {"cats", "cat"},
      {"feed", "feed"},
      {"agreed", "agre"},
      {"plastered", "plaster"},
      {"bled", "bled"},
      {"motoring", "motor"},
      {"sing", "sing"},
      {"conflated", "conflat"},
      {"troubled", "troubl"},
      {"sized", "size"},
      {"hopping", "hop"},
      {"tanned", "tan"},
      {"falling", "fall"},
      {"hissing", "hiss"},
      {"fizzed", "fizz"},
      {"failing", "fail"},
      {"filing", "file"},
      {"happy", "happi"},
      {"sky", "sky"},
      {"relational", "relat"},
      {"conditional", "condit"},
      {"rational", "ration"},
      {"valenci", "valenc"},
      {"hesitanci", "hesit"},
      {"digitizer", "digit"},
      {"conformabli", "conform"},
      {"radicalli", "radic"},
      {"differentli", "differ"},
      {"vileli", "vile"},
      {"analogousli", "analog"},
      {"vietnamization", "vietnam"},
      {"predication", "predic"},
      {"operator", "oper"},
      {"feudalism", "feudal"},
      {"decisiveness", "decis"},
      {"hopefulness", "hope"},
      {"callousness", "callous"},
      {"formaliti", "formal"},
      {"sensitiviti", "sensit"},
      {"sensibiliti", "sensibl"},
      {"triplicate", "triplic"},
      {"formative", "form"},
      {"formalize", "formal"},
      {"electriciti", "electr"},
      {"electrical", "electr"},
      {"hopeful", "hope"},
      {"goodness", "good"},
      {"revival", "reviv"},
      {"allowance", "allow"},
      {"inference", "infer"},
      {"airliner", "airlin"},
      {"gyroscopic", "gyroscop"},
      {"adjustable", "adjust"},
      {"defensible", "defens"},
      {"irritant", "irrit"},
      {"replacement", "replac"},
      {"adjustment", "adjust"},
      {"dependent", "depend"},
      {"adoption", "adopt"},
      {"homologous", "homolog"},
      {"communism", "commun"},
      {"activate", "activ"},
      {"angulariti", "angular"},
      {"effective", "effect"},
      {"bowdlerize", "bowdler"},
      {"probate", "probat"},
      {"rate", "rate"},
      {"cease", "ceas"},
      {"controll", "control"},
      {"roll", "roll"},
      {"running", "run"},
      {"dogs", "dog"},
      {"barking", "bark"},
      {"barks", "bark"},
      {"generalization", "gener"},
      {"oscillators", "oscil"},
      {"whistles", "whistl"},
      {"chirping", "chirp"},
      {"birds", "bird"},
      {"engine", "engin"},
      {"idling", "idl"},
      {"footsteps", "footstep"},
      {"crowd", "crowd"},
      {"cheering", "cheer"},
      {"rain", "rain"},
      {"falls", "fall"},
      {"thunder", "thunder"},
      {"rumbles", "rumbl"},
      {"loudly", "loudli"},
      {"background", "background"},
      {"foreground", "foreground"},
      {"passing", "pass"},
      {"vehicles", "vehicl"},
      {"water", "water"},
      {"flowing", "flow"},
      {"people", "peopl"},
      {"talking", "talk"},
      {"continuously", "continu"},
      {"machinery", "machineri"},
      {"humming", "hum"},
      {"wind", "wind"},
      {"blowing", "blow"},
      {"leaves", "leav"},
      {"rustling", "rustl"},
      {"squeaky", "squeaki"},
      {"door", "door"},
      {"creaking", "creak"},
      {"repeatedly", "repeatedli"},
      {"metallic", "metal"},
      {"clanging", "clang"},
      {"distance", "distanc"},
      {"quietly", "quietli"},
      {"a", "a"},
      {"by", "by"},
  };
  for (const auto& [word, expected] : cases) {
    EXPECT_EQ(stem(word), expected) << word;
  }
}

}  // namespace
}  // namespace aaceval
