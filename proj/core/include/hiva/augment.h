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

// Corpus growth by lexicon term substitution, and frequent n-gram mining.

#ifndef HIVA_AUGMENT_H_
#define HIVA_AUGMENT_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hiva/classify.h"
#include "hiva/text.h"

namespace hiva {

// category -> groups of interchangeable tokens. Every group has at least two
// distinct members and every member is a normalized token.
class CategoryLexicon {
 public:
  using Group = std::vector<Token>;

  CategoryLexicon() = default;
  // Throws ValidationError on a malformed group.
  explicit CategoryLexicon(std::map<std::string, std::vector<Group>> groups);

  const std::vector<Group>* groups_for(std::string_view category) const;
  bool empty() const { return groups_.empty(); }

 private:
  std::map<std::string, std::vector<Group>, std::less<>> groups_;
};

// Lexicon file: JSON {category: [[term, term, ...], ...]}.
CategoryLexicon parse_lexicon(std::string_view json);
CategoryLexicon load_lexicon(const std::filesystem::path& path);

// Single-substitution variants of `record`: for every token position, in
// order, and every group of the record's category containing that token,
// one variant per other group member (in group order). Variants are
// deduplicated, exclude the original text and are cut to `cap`. Variant ids
// are "<parent id>#<k>" with k counting from 1. Returns an empty list when
// the label is not in the lexicon.
std::vector<DocumentRecord> expand_sentence(const DocumentRecord& record,
                                            const CategoryLexicon& lexicon,
                                            std::size_t cap);

// All originals first, then generated variants taken round-robin across the
// originals (first variant of every original, then the second, ...) until
// `target_size` records exist or no variants remain. A variant whose
// (label, normalized text) already exists in the output is skipped. Throws
// InvalidArgument when target_size < |corpus|.
LabeledCorpus augment_corpus(const LabeledCorpus& corpus,
                             const CategoryLexicon& lexicon,
                             std::size_t target_size,
                             std::size_t cap_per_sentence);

struct NgramCount {
  TokenList ngram;
  std::uint64_t count = 0;

  friend bool operator==(const NgramCount&, const NgramCount&) = default;
};

// Sorted by count descending, then by token tuple ascending.
struct NgramTable {
  std::size_t n = 0;
  std::vector<NgramCount> entries;
};

// Counts contiguous n-grams inside each document (never across documents)
// and keeps the top_k. Throws InvalidArgument when n or top_k is 0.
NgramTable mine_frequent_ngrams(std::span<const TokenList> docs, std::size_t n,
                                std::size_t top_k);

// CSV with header "ngram,count"; tokens of an n-gram are space-joined.
std::string ngram_table_to_csv(const NgramTable& table);

}  // namespace hiva

#endif  // HIVA_AUGMENT_H_
