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

// Text preprocessing shared by every other module: normalization,
// tokenization, n-gram windows, vocabularies and bag-of-words vectors.
//
// A token is a maximal run of Unicode letters and decimal digits (combining
// marks attached to a letter stay in the token), lowercased with the simple
// Unicode case mapping. Every other code point is a separator. This handles
// mixed Cyrillic/Latin input without a morphology dependency.

#ifndef HIVA_TEXT_H_
#define HIVA_TEXT_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace hiva {

// Transparent hash so string-keyed maps accept string_view lookups.
struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept {
    return std::hash<std::string_view>{}(s);
  }
};

using Token = std::string;
using TokenList = std::vector<Token>;

// Lowercases, turns every non-token code point into a separator, collapses
// runs of separators into one space and trims. Invalid UTF-8 bytes count as
// separators.
std::string normalize(std::string_view text);

TokenList tokenize(std::string_view text);

// True when `s` is non-empty and is exactly one token in normalized form.
bool is_token(std::string_view s);

std::string join(std::span<const Token> tokens, std::string_view sep = " ");

// True when `needle` is non-empty and appears in `haystack` as a contiguous
// run.
bool contains_run(std::span<const Token> haystack,
                  std::span<const Token> needle);

// All |tokens|-n+1 contiguous windows, in order. Throws InvalidArgument
// when n == 0.
std::vector<TokenList> ngrams(std::span<const Token> tokens, std::size_t n);

// Ordered set of unique terms with a term -> position index.
class Vocabulary {
 public:
  Vocabulary() = default;

  // Throws ValidationError on duplicate or non-token terms.
  static Vocabulary from_terms(std::vector<Token> terms);

  const std::vector<Token>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  std::optional<std::size_t> index_of(std::string_view term) const;

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.terms_ == b.terms_;
  }

 private:
  std::vector<Token> terms_;
  std::unordered_map<Token, std::size_t, StringHash, std::equal_to<>> index_;
};

// Terms whose total corpus count is >= max(min_count, 1), in first-occurrence
// order.
Vocabulary build_vocabulary(std::span<const TokenList> docs,
                            std::size_t min_count);

struct BowVector {
  std::map<std::size_t, std::uint32_t> counts;

  std::uint64_t total() const;
  friend bool operator==(const BowVector&, const BowVector&) = default;
};

// Out-of-vocabulary tokens are dropped.
BowVector vectorize(std::span<const Token> tokens, const Vocabulary& vocab);

// Optional stop-word filter. The file form is UTF-8 with one token per
// line; blank lines and lines starting with '#' are ignored.
class StopWords {
 public:
  StopWords() = default;
  using WordSet = std::unordered_set<Token, StringHash, std::equal_to<>>;

  explicit StopWords(WordSet words) : words_(std::move(words)) {}

  static StopWords parse(std::string_view contents);
  static StopWords load(const std::filesystem::path& path);

  bool contains(std::string_view token) const;
  bool empty() const { return words_.empty(); }
  std::size_t size() const { return words_.size(); }

  TokenList filter(TokenList tokens) const;

 private:
  WordSet words_;
};

// Tokenizes and drops stop-words when a list is supplied.
TokenList tokenize(std::string_view text, const StopWords* stop_words);

}  // namespace hiva

#endif  // HIVA_TEXT_H_
