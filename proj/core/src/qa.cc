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

#include "hiva/qa.h"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "hiva/errors.h"
#include "hiva/io.h"
#include "json.hpp"

namespace hiva {
namespace {

using nlohmann::json;

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : s) {
    if (is_space(c)) {
      pending_space = true;
      continue;
    }
    if (pending_space && !out.empty()) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

bool iequals_prefix(std::string_view text, std::size_t pos,
                    std::string_view prefix) {
  if (text.size() - pos < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(text[pos + i])) != prefix[i]) {
      return false;
    }
  }
  return true;
}

// Position just past the closing tag `</name ...>` at or after `from`, or
// npos when the element is never closed.
std::size_t skip_element(std::string_view page, std::size_t from,
                         std::string_view name) {
  const std::string close = "</" + std::string(name);
  for (std::size_t pos = page.find('<', from); pos != std::string_view::npos;
       pos = page.find('<', pos + 1)) {
    if (iequals_prefix(page, pos, close)) {
      std::size_t end = page.find('>', pos);
      return end == std::string_view::npos ? page.size() : end + 1;
    }
  }
  return std::string_view::npos;
}

std::string decode_entities(std::string_view s) {
  static constexpr std::pair<std::string_view, char> kEntities[] = {
      {"&amp;", '&'}, {"&lt;", '<'},   {"&gt;", '>'},
      {"&quot;", '"'}, {"&apos;", '\''},
  };
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    bool matched = false;
    if (s[i] == '&') {
      for (const auto& [entity, ch] : kEntities) {
        if (s.substr(i, entity.size()) == entity) {
          out.push_back(ch);
          i += entity.size();
          matched = true;
          break;
        }
      }
    }
    if (!matched) out.push_back(s[i++]);
  }
  return out;
}

// First run of ASCII digits, keeping '.'/',' separators that sit between
// digits ("3.5", "1,200").
std::optional<std::string> first_number(std::string_view sentence) {
  for (std::size_t i = 0; i < sentence.size(); ++i) {
    if (!is_digit(sentence[i])) continue;
    std::size_t end = i;
    while (end < sentence.size()) {
      if (is_digit(sentence[end])) {
        ++end;
      } else if ((sentence[end] == '.' || sentence[end] == ',') &&
                 end + 1 < sentence.size() && is_digit(sentence[end + 1])) {
        end += 2;
      } else {
        break;
      }
    }
    return std::string(sentence.substr(i, end - i));
  }
  return std::nullopt;
}

}  // namespace

Query make_query(std::string_view raw, const StopWords* stop_words) {
  Query query;
  query.raw = std::string(raw);
  for (auto& token : tokenize(raw, stop_words)) {
    query.lemmas.insert(std::move(token));
  }
  return query;
}

FaqEntry::FaqEntry(std::string id, std::string question, std::string answer,
                   std::string category)
    : id_(std::move(id)),
      question_(std::move(question)),
      answer_(std::move(answer)),
      category_(std::move(category)) {
  if (question_.empty() || answer_.empty()) {
    throw ValidationError("faq entry '" + id_ +
                          "' needs a non-empty question and answer");
  }
  answer_tokens_ = tokenize(question_ + " " + answer_);
}

std::vector<FaqEntry> parse_kb(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("kb: ") + e.what(), e.byte);
  }
  if (!doc.is_array()) throw ValidationError("kb: expected a JSON array");
  std::vector<FaqEntry> entries;
  std::unordered_set<std::string> ids;
  try {
    for (const auto& item : doc) {
      entries.emplace_back(item.at("id").get<std::string>(),
                           item.at("question").get<std::string>(),
                           item.at("answer").get<std::string>(),
                           item.value("category", std::string()));
      if (!ids.insert(entries.back().id()).second) {
        throw ValidationError("kb: duplicate id '" + entries.back().id() + "'");
      }
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("kb: ") + e.what());
  }
  return entries;
}

std::vector<FaqEntry> load_kb(const std::filesystem::path& path) {
  return parse_kb(read_file(path));
}

OverlapScore overlap_score(const std::set<Token>& lemmas,
                           std::span<const Token> candidate) {
  OverlapScore out;
  if (lemmas.empty() || candidate.empty()) return out;
  std::set<std::string_view> distinct(candidate.begin(), candidate.end());
  std::size_t shared = 0;
  for (std::string_view term : distinct) {
    if (lemmas.contains(std::string(term))) ++shared;
  }
  out.recall_term =
      static_cast<double>(shared) / static_cast<double>(lemmas.size());
  out.precision_term =
      static_cast<double>(shared) / static_cast<double>(candidate.size());
  out.score = out.recall_term + out.precision_term;
  return out;
}

std::vector<RankedEntry> rank_faq(const Query& query,
                                  std::span<const FaqEntry> entries) {
  std::vector<RankedEntry> ranked;
  ranked.reserve(entries.size());
  for (const auto& entry : entries) {
    ranked.push_back({std::cref(entry),
                      overlap_score(query.lemmas, entry.answer_tokens())});
  }
  std::sort(ranked.begin(), ranked.end(),
            [](const RankedEntry& a, const RankedEntry& b) {
              if (a.score.score != b.score.score) {
                return a.score.score > b.score.score;
              }
              return a.entry.get().id() < b.entry.get().id();
            });
  return ranked;
}

AnswerResult answer(std::string_view query_text, std::span<const FaqEntry> kb,
                    const MnbModel* model, const AnswerOptions& options) {
  if (!(options.threshold >= 0.0)) {
    throw InvalidArgument("answer: threshold must be >= 0");
  }
  AnswerResult result;
  result.answer_text = options.fallback_text;

  std::vector<FaqEntry> filtered;
  std::span<const FaqEntry> candidates = kb;
  if (model != nullptr && options.category_filter && !kb.empty()) {
    const std::string predicted =
        predict(*model, query_text, options.stop_words).label;
    result.category = predicted;
    for (const auto& entry : kb) {
      if (entry.category() == predicted) filtered.push_back(entry);
    }
    if (!filtered.empty()) candidates = filtered;
  }
  if (candidates.empty()) return result;

  const auto ranked = rank_faq(make_query(query_text, options.stop_words),
                               candidates);
  const auto& best = ranked.front();
  result.score = best.score.score;
  result.recall_term = best.score.recall_term;
  result.precision_term = best.score.precision_term;
  if (result.score >= options.threshold) {
    result.fallback = false;
    result.entry_id = best.entry.get().id();
    result.answer_text = best.entry.get().answer();
    result.category = best.entry.get().category();
  }
  return result;
}

std::vector<std::string> split_sentences(std::string_view document) {
  std::vector<std::string> sentences;
  auto flush = [&sentences](std::string_view piece) {
    std::size_t b = 0;
    std::size_t e = piece.size();
    while (b < e && is_space(piece[b])) ++b;
    while (e > b && is_space(piece[e - 1])) --e;
    if (e > b) sentences.emplace_back(piece.substr(b, e - b));
  };
  std::size_t start = 0;
  for (std::size_t i = 0; i < document.size(); ++i) {
    const char c = document[i];
    if (c != '.' && c != '!' && c != '?') continue;
    if (i + 1 == document.size() || is_space(document[i + 1])) {
      flush(document.substr(start, i - start));
      start = i + 1;
    }
  }
  if (start < document.size()) flush(document.substr(start));
  return sentences;
}

std::string strip_markup(std::string_view page) {
  std::string text;
  text.reserve(page.size());
  std::size_t i = 0;
  while (i < page.size()) {
    if (page[i] != '<') {
      text.push_back(page[i++]);
      continue;
    }
    const std::size_t close = page.find('>', i);
    if (close == std::string_view::npos) {
      // Unterminated tag: the rest is markup.
      break;
    }
    for (std::string_view name : {"script", "style"}) {
      const std::string open = "<" + std::string(name);
      if (iequals_prefix(page, i, open) &&
          (i + open.size() == close || !std::isalnum(static_cast<unsigned char>(
                                           page[i + open.size()])))) {
        const std::size_t after = skip_element(page, close + 1, name);
        i = after == std::string_view::npos ? page.size() : after - 1;
        break;
      }
    }
    text.push_back(' ');
    i = std::max(i, close) + 1;
  }
  return collapse_whitespace(decode_entities(text));
}

bool is_quantitative(std::string_view question,
                     std::span<const std::string> markers) {
  const TokenList tokens = tokenize(question);
  for (const auto& marker : markers) {
    if (contains_run(tokens, tokenize(marker))) return true;
  }
  return false;
}

ShortAnswer extract_short_answer(std::string_view question,
                                 std::string_view document,
                                 const ShortAnswerOptions& options) {
  const auto sentences = split_sentences(strip_markup(document));
  if (sentences.empty()) {
    throw NoAnswerError("extract_short_answer: document has no sentences");
  }
  const Query query = make_query(question, options.stop_words);
  std::size_t best = 0;
  double best_score = -1.0;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    const double score = overlap_score(query.lemmas, tokenize(sentences[i])).score;
    if (score > best_score) {
      best_score = score;
      best = i;
    }
  }
  ShortAnswer out;
  out.sentence = sentences[best];
  out.score = best_score;
  if (is_quantitative(question, options.quantity_markers)) {
    out.extracted = first_number(out.sentence);
  }
  return out;
}

}  // namespace hiva
