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

// Answering: FAQ ranking with the lexical overlap score, and short-answer
// extraction from documents.
//
// The overlap score of an FAQ entry for a request is
//
//   score = |L ∩ set(a)| / |L|  +  |set(a) ∩ L| / |a|
//           \_ recall term _/      \_ precision term _/
//
// where L is the deduplicated, stop-word-filtered token set of the request
// and a is the token list of the entry's question and answer. |a| counts
// repeated tokens, so the precision term penalizes long or repetitive
// entries. Each term is 0 when its denominator is 0; the score lies in
// [0, 2] and reaches 2 exactly when set(a) == L with no repeats in a.

#ifndef HIVA_QA_H_
#define HIVA_QA_H_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hiva/classify.h"
#include "hiva/text.h"

namespace hiva {

struct Query {
  std::string raw;
  std::set<Token> lemmas;
};

Query make_query(std::string_view raw, const StopWords* stop_words = nullptr);

class FaqEntry {
 public:
  // Throws ValidationError when question or answer is empty.
  FaqEntry(std::string id, std::string question, std::string answer,
           std::string category);

  const std::string& id() const { return id_; }
  const std::string& question() const { return question_; }
  const std::string& answer() const { return answer_; }
  const std::string& category() const { return category_; }
  // tokenize(question + " " + answer)
  const TokenList& answer_tokens() const { return answer_tokens_; }

 private:
  std::string id_;
  std::string question_;
  std::string answer_;
  std::string category_;
  TokenList answer_tokens_;
};

// KB file: JSON array of {id, question, answer, category}. Ids must be
// unique.
std::vector<FaqEntry> parse_kb(std::string_view json);
std::vector<FaqEntry> load_kb(const std::filesystem::path& path);

struct OverlapScore {
  double score = 0.0;
  double recall_term = 0.0;
  double precision_term = 0.0;
};

OverlapScore overlap_score(const std::set<Token>& lemmas,
                           std::span<const Token> candidate);

struct RankedEntry {
  std::reference_wrapper<const FaqEntry> entry;
  OverlapScore score;
};

// Every entry, by score descending and then id ascending.
std::vector<RankedEntry> rank_faq(const Query& query,
                                  std::span<const FaqEntry> entries);

struct AnswerOptions {
  double threshold = 0.5;
  bool category_filter = true;
  std::string fallback_text =
      "Sorry, I do not know the answer to that yet. Please ask the admissions "
      "office.";
  const StopWords* stop_words = nullptr;
};

struct AnswerResult {
  std::optional<std::string> entry_id;
  std::string answer_text;
  // Category of the chosen entry, or the predicted category on fallback.
  std::optional<std::string> category;
  double score = 0.0;
  double recall_term = 0.0;
  double precision_term = 0.0;
  bool fallback = true;
};

// Ranks the KB for `query_text`. With a model and category_filter set, only
// entries of the predicted category compete (all entries when that category
// has none). The best entry is returned when its score >= threshold;
// otherwise the result is a fallback carrying the best score observed.
// Throws InvalidArgument when threshold < 0.
AnswerResult answer(std::string_view query_text, std::span<const FaqEntry> kb,
                    const MnbModel* model, const AnswerOptions& options);

// Splits after '.', '!' or '?' when followed by whitespace or the end of
// text. The terminator is dropped; pieces are trimmed; empty pieces vanish.
std::vector<std::string> split_sentences(std::string_view document);

// Minimal tag remover: drops <script>/<style> elements with their contents,
// replaces other tags with a space, decodes &amp; &lt; &gt; &quot; &apos;
// and collapses whitespace.
std::string strip_markup(std::string_view page);

struct ShortAnswer {
  std::string sentence;
  std::optional<std::string> extracted;
  double score = 0.0;
};

struct ShortAnswerOptions {
  // Phrases marking a quantitative question; matched as contiguous token
  // runs of the normalized question.
  std::vector<std::string> quantity_markers = {"how many", "how much",
                                               "skolko", "сколько"};
  const StopWords* stop_words = nullptr;
};

bool is_quantitative(std::string_view question,
                     std::span<const std::string> markers);

// Picks the sentence of strip_markup(document) with the highest overlap
// score against the question (earliest wins ties). For quantitative
// questions `extracted` is the first number in that sentence. Throws
// NoAnswerError when the document has no sentences.
ShortAnswer extract_short_answer(std::string_view question,
                                 std::string_view document,
                                 const ShortAnswerOptions& options = {});

}  // namespace hiva

#endif  // HIVA_QA_H_
