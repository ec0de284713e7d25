// Copyright 2026 The HIVA Kiosk Authors.
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

#include "hiva/text.h"

#include <gtest/gtest.h>

#include <random>

#include "hiva/errors.h"

namespace hiva {
namespace {

TEST(NormalizeTest, Examples) {
  EXPECT_EQ(normalize("Salam!"), "salam");
  EXPECT_EQ(normalize(""), "");
  EXPECT_EQ(normalize("  How   ARE you?? "), "how are you");
}

TEST(NormalizeTest, CyrillicAndMixedScripts) {
  EXPECT_EQ(normalize("Привет, HIVA!"), "привет hiva");
  EXPECT_EQ(normalize("Студенческий\tГОРОДОК"), "студенческий городок");
  EXPECT_EQ(normalize("AIU-2021"), "aiu 2021");
}

TEST(NormalizeTest, InvalidUtf8BytesAreSeparators) {
  EXPECT_EQ(normalize("ab\xff\xfe" "cd"), "ab cd");
}

TEST(TokenizeTest, Examples) {
  EXPECT_EQ(tokenize("studencheskiy gorodok"),
            (TokenList{"studencheskiy", "gorodok"}));
  EXPECT_EQ(tokenize("How are you?"), (TokenList{"how", "are", "you"}));
  EXPECT_TRUE(tokenize("!!!").empty());
}

TEST(TokenizeTest, StopWordsAreDropped) {
  const StopWords stop = StopWords::parse("# comment\nthe\nare\n\n");
  EXPECT_EQ(stop.size(), 2u);
  EXPECT_EQ(tokenize("The books are new", &stop), (TokenList{"books", "new"}));
  EXPECT_EQ(tokenize("The books", nullptr), (TokenList{"the", "books"}));
}

TEST(TokenizeTest, StopWordCommentLinesIgnored) {
  const StopWords stop = StopWords::parse("#the\nand");
  EXPECT_FALSE(stop.contains("the"));
  EXPECT_TRUE(stop.contains("and"));
}

TEST(IsTokenTest, Basics) {
  EXPECT_TRUE(is_token("hello"));
  EXPECT_TRUE(is_token("88"));
  EXPECT_FALSE(is_token("Hello"));
  EXPECT_FALSE(is_token("two words"));
  EXPECT_FALSE(is_token(""));
}

TEST(NgramsTest, Examples) {
  const TokenList abcd{"a", "b", "c", "d"};
  EXPECT_EQ(ngrams(abcd, 3),
            (std::vector<TokenList>{{"a", "b", "c"}, {"b", "c", "d"}}));
  EXPECT_TRUE(ngrams(TokenList{"a", "b"}, 3).empty());
  EXPECT_EQ(ngrams(TokenList{"a"}, 1), (std::vector<TokenList>{{"a"}}));
}

TEST(NgramsTest, ZeroIsInvalid) {
  EXPECT_THROW(ngrams(TokenList{"a"}, 0), InvalidArgument);
}

TEST(VocabularyTest, BuildExamples) {
  const std::vector<TokenList> docs{{"a", "b"}, {"b", "c"}};
  EXPECT_EQ(build_vocabulary(docs, 1).terms(), (TokenList{"a", "b", "c"}));
  EXPECT_EQ(build_vocabulary(docs, 2).terms(), (TokenList{"b"}));
  EXPECT_TRUE(build_vocabulary({}, 1).empty());
  // min_count 0 behaves as 1.
  EXPECT_EQ(build_vocabulary(docs, 0).terms(), (TokenList{"a", "b", "c"}));
}

TEST(VocabularyTest, IndexIsBijection) {
  const auto vocab = build_vocabulary(
      std::vector<TokenList>{{"x", "y", "x", "z"}, {"w", "y"}}, 1);
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    EXPECT_EQ(vocab.index_of(vocab.terms()[i]), i);
  }
  EXPECT_FALSE(vocab.index_of("missing").has_value());
}

TEST(VocabularyTest, RejectsDuplicatesAndNonTokens) {
  EXPECT_THROW(Vocabulary::from_terms({"a", "a"}), ValidationError);
  EXPECT_THROW(Vocabulary::from_terms({"A"}), ValidationError);
  EXPECT_THROW(Vocabulary::from_terms({"a b"}), ValidationError);
}

TEST(VectorizeTest, Examples) {
  const auto vocab = Vocabulary::from_terms({"a", "b"});
  EXPECT_EQ(vectorize(TokenList{"a", "a", "c"}, vocab).counts,
            (std::map<std::size_t, std::uint32_t>{{0, 2}}));
  EXPECT_TRUE(vectorize(TokenList{}, vocab).counts.empty());
  EXPECT_EQ(vectorize(TokenList{"b", "a", "b"}, vocab).counts,
            (std::map<std::size_t, std::uint32_t>{{0, 1}, {1, 2}}));
}

TEST(ContainsRunTest, Basics) {
  const TokenList hay{"what", "is", "the", "weather", "today"};
  EXPECT_TRUE(contains_run(hay, TokenList{"the", "weather"}));
  EXPECT_FALSE(contains_run(hay, TokenList{"weather", "the"}));
  EXPECT_FALSE(contains_run(hay, TokenList{}));
}

// Random strings over a small alphabet mixing letters, Cyrillic, digits,
// punctuation and whitespace.
std::string random_text(std::mt19937& rng) {
  static const std::vector<std::string> pieces = {
      "a", "B", "z", "Ж", "я", "7", " ", "  ", "\t", "!", "?", ",", "-",
      "Hello", "МИР", "\n", ".", "é"};
  std::uniform_int_distribution<std::size_t> len(0, 20);
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
  std::string s;
  for (std::size_t i = 0, n = len(rng); i < n; ++i) s += pieces[pick(rng)];
  return s;
}

TEST(TextPropertyTest, NormalizeIsIdempotent) {
  std::mt19937 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const std::string x = random_text(rng);
    const std::string once = normalize(x);
    EXPECT_EQ(normalize(once), once) << x;
  }
}

TEST(TextPropertyTest, TokenizeJoinRoundTrip) {
  std::mt19937 rng(11);
  for (int i = 0; i < 2000; ++i) {
    const std::string x = random_text(rng);
    const TokenList t = tokenize(x);
    EXPECT_EQ(tokenize(join(t)), t) << x;
    for (const auto& token : t) EXPECT_TRUE(is_token(token)) << token;
  }
}

TEST(TextPropertyTest, CountConservationAndNgramLength) {
  std::mt19937 rng(13);
  const auto vocab = Vocabulary::from_terms({"a", "b", "hello", "ж"});
  for (int i = 0; i < 2000; ++i) {
    const TokenList t = tokenize(random_text(rng));
    std::uint64_t in_vocab = 0;
    for (const auto& token : t) in_vocab += vocab.index_of(token).has_value();
    EXPECT_EQ(vectorize(t, vocab).total(), in_vocab);
    for (std::size_t n = 1; n <= 4; ++n) {
      const std::size_t expected = t.size() >= n ? t.size() - n + 1 : 0;
      EXPECT_EQ(ngrams(t, n).size(), expected);
    }
  }
}

}  // namespace
}  // namespace hiva
