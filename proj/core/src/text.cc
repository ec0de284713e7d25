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

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <utility>

#include "hiva/errors.h"
#include "hiva/io.h"

namespace hiva {
namespace {

bool is_word_char(UChar32 c) { return u_isalpha(c) || u_isdigit(c); }

bool is_mark(UChar32 c) { return (U_GET_GC_MASK(c) & U_GC_M_MASK) != 0; }

void append_utf8(std::string& out, UChar32 c) {
  char buf[U8_MAX_LENGTH];
  int32_t len = 0;
  U8_APPEND_UNSAFE(buf, len, c);
  out.append(buf, static_cast<std::size_t>(len));
}

// Calls `emit(token)` for every token of `text`, in order.
template <typename Emit>
void for_each_token(std::string_view text, Emit&& emit) {
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  std::string current;
  int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(s, i, length, c);
    const bool keep =
        c >= 0 && (is_word_char(c) || (!current.empty() && is_mark(c)));
    if (keep) {
      append_utf8(current, u_tolower(c));
    } else if (!current.empty()) {
      emit(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) emit(std::move(current));
}

}  // namespace

std::string normalize(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for_each_token(text, [&out](std::string&& token) {
    if (!out.empty()) out.push_back(' ');
    out += token;
  });
  return out;
}

TokenList tokenize(std::string_view text) {
  TokenList tokens;
  for_each_token(text, [&tokens](std::string&& token) {
    tokens.push_back(std::move(token));
  });
  return tokens;
}

TokenList tokenize(std::string_view text, const StopWords* stop_words) {
  TokenList tokens = tokenize(text);
  if (stop_words != nullptr) tokens = stop_words->filter(std::move(tokens));
  return tokens;
}

bool is_token(std::string_view s) {
  const TokenList tokens = tokenize(s);
  return tokens.size() == 1 && tokens.front() == s;
}

std::string join(std::span<const Token> tokens, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += sep;
    out += tokens[i];
  }
  return out;
}

bool contains_run(std::span<const Token> haystack,
                  std::span<const Token> needle) {
  if (needle.empty() || needle.size() > haystack.size()) return false;
  return std::search(haystack.begin(), haystack.end(), needle.begin(),
                     needle.end()) != haystack.end();
}

std::vector<TokenList> ngrams(std::span<const Token> tokens, std::size_t n) {
  if (n == 0) throw InvalidArgument("ngrams: n must be >= 1");
  std::vector<TokenList> windows;
  if (tokens.size() < n) return windows;
  windows.reserve(tokens.size() - n + 1);
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    windows.emplace_back(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                         tokens.begin() + static_cast<std::ptrdiff_t>(i + n));
  }
  return windows;
}

Vocabulary Vocabulary::from_terms(std::vector<Token> terms) {
  Vocabulary vocab;
  vocab.index_.reserve(terms.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (!is_token(terms[i])) {
      throw ValidationError("vocabulary term is not a normalized token: '" +
                            terms[i] + "'");
    }
    if (!vocab.index_.emplace(terms[i], i).second) {
      throw ValidationError("duplicate vocabulary term: '" + terms[i] + "'");
    }
  }
  vocab.terms_ = std::move(terms);
  return vocab;
}

std::optional<std::size_t> Vocabulary::index_of(std::string_view term) const {
  auto it = index_.find(term);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Vocabulary build_vocabulary(std::span<const TokenList> docs,
                            std::size_t min_count) {
  const std::size_t floor = std::max<std::size_t>(min_count, 1);
  std::vector<Token> order;
  std::unordered_map<Token, std::size_t> counts;
  for (const auto& doc : docs) {
    for (const auto& token : doc) {
      auto [it, inserted] = counts.try_emplace(token, 0);
      if (inserted) order.push_back(token);
      ++it->second;
    }
  }
  std::vector<Token> kept;
  for (auto& token : order) {
    if (counts[token] >= floor) kept.push_back(std::move(token));
  }
  return Vocabulary::from_terms(std::move(kept));
}

std::uint64_t BowVector::total() const {
  std::uint64_t sum = 0;
  for (const auto& [index, count] : counts) sum += count;
  return sum;
}

BowVector vectorize(std::span<const Token> tokens, const Vocabulary& vocab) {
  BowVector bow;
  for (const auto& token : tokens) {
    if (auto index = vocab.index_of(token)) ++bow.counts[*index];
  }
  return bow;
}

StopWords StopWords::parse(std::string_view contents) {
  WordSet words;
  std::size_t start = 0;
  while (start <= contents.size()) {
    std::size_t end = contents.find('\n', start);
    if (end == std::string_view::npos) end = contents.size();
    std::string_view line = contents.substr(start, end - start);
    start = end + 1;
    if (!line.empty() && line.front() == '#') continue;
    for (auto& token : tokenize(line)) words.insert(std::move(token));
  }
  return StopWords(std::move(words));
}

StopWords StopWords::load(const std::filesystem::path& path) {
  return parse(read_file(path));
}

bool StopWords::contains(std::string_view token) const {
  return words_.contains(token);
}

TokenList StopWords::filter(TokenList tokens) const {
  if (words_.empty()) return tokens;
  std::erase_if(tokens,
                [this](const Token& token) { return words_.contains(token); });
  return tokens;
}

}  // namespace hiva
