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

#include "hiva/augment.h"

#include <algorithm>
#include <set>
#include <unordered_set>
#include <utility>

#include "hiva/errors.h"
#include "hiva/io.h"
#include "json.hpp"

namespace hiva {

using nlohmann::json;

CategoryLexicon::CategoryLexicon(
    std::map<std::string, std::vector<Group>> groups) {
  for (auto& [category, category_groups] : groups) {
    for (const auto& group : category_groups) {
      std::set<Token> distinct;
      for (const auto& member : group) {
        if (!is_token(member)) {
          throw ValidationError("lexicon: '" + member + "' in category '" +
                                category + "' is not a normalized token");
        }
        distinct.insert(member);
      }
      if (distinct.size() < 2 || distinct.size() != group.size()) {
        throw ValidationError("lexicon: every group in '" + category +
                              "' needs at least two distinct members");
      }
    }
    groups_.emplace(category, std::move(category_groups));
  }
}

const std::vector<CategoryLexicon::Group>* CategoryLexicon::groups_for(
    std::string_view category) const {
  auto it = groups_.find(category);
  return it == groups_.end() ? nullptr : &it->second;
}

CategoryLexicon parse_lexicon(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("lexicon: ") + e.what(), e.byte);
  }
  if (!doc.is_object()) throw ValidationError("lexicon: expected an object");
  try {
    return CategoryLexicon(
        doc.get<std::map<std::string, std::vector<CategoryLexicon::Group>>>());
  } catch (const json::type_error& e) {
    throw ValidationError(std::string("lexicon: ") + e.what());
  }
}

CategoryLexicon load_lexicon(const std::filesystem::path& path) {
  return parse_lexicon(read_file(path));
}

std::vector<DocumentRecord> expand_sentence(const DocumentRecord& record,
                                            const CategoryLexicon& lexicon,
                                            std::size_t cap) {
  std::vector<DocumentRecord> variants;
  const auto* groups = lexicon.groups_for(record.label);
  if (groups == nullptr || cap == 0) return variants;

  TokenList tokens = tokenize(record.text);
  std::unordered_set<std::string> seen{join(tokens)};
  for (std::size_t pos = 0; pos < tokens.size(); ++pos) {
    const Token original = tokens[pos];
    for (const auto& group : *groups) {
      if (std::find(group.begin(), group.end(), original) == group.end()) {
        continue;
      }
      for (const auto& member : group) {
        if (member == original) continue;
        tokens[pos] = member;
        std::string text = join(tokens);
        if (seen.insert(text).second) {
          variants.push_back({record.id + "#" + std::to_string(variants.size() + 1),
                              std::move(text), record.label});
          if (variants.size() == cap) return variants;
        }
      }
      tokens[pos] = original;
    }
  }
  return variants;
}

LabeledCorpus augment_corpus(const LabeledCorpus& corpus,
                             const CategoryLexicon& lexicon,
                             std::size_t target_size,
                             std::size_t cap_per_sentence) {
  if (target_size < corpus.size()) {
    throw InvalidArgument("augment_corpus: target_size " +
                          std::to_string(target_size) +
                          " is smaller than the corpus (" +
                          std::to_string(corpus.size()) + ")");
  }
  std::vector<DocumentRecord> out = corpus.records();
  std::set<std::pair<std::string, std::string>> present;
  std::unordered_set<std::string> ids;
  for (const auto& r : out) {
    present.emplace(r.label, normalize(r.text));
    ids.insert(r.id);
  }

  std::vector<std::vector<DocumentRecord>> pending;
  pending.reserve(corpus.size());
  for (const auto& record : corpus.records()) {
    pending.push_back(expand_sentence(record, lexicon, cap_per_sentence));
  }

  for (std::size_t round = 0; out.size() < target_size; ++round) {
    bool any_left = false;
    for (auto& variants : pending) {
      if (round >= variants.size()) continue;
      any_left = true;
      auto& candidate = variants[round];
      if (ids.contains(candidate.id)) continue;
      if (!present.emplace(candidate.label, candidate.text).second) continue;
      ids.insert(candidate.id);
      out.push_back(std::move(candidate));
      if (out.size() == target_size) break;
    }
    if (!any_left) break;
  }
  return LabeledCorpus(std::move(out));
}

NgramTable mine_frequent_ngrams(std::span<const TokenList> docs, std::size_t n,
                                std::size_t top_k) {
  if (n == 0) throw InvalidArgument("mine_frequent_ngrams: n must be >= 1");
  if (top_k == 0) {
    throw InvalidArgument("mine_frequent_ngrams: top_k must be >= 1");
  }
  std::map<TokenList, std::uint64_t> counts;
  for (const auto& doc : docs) {
    for (auto& gram : ngrams(doc, n)) ++counts[std::move(gram)];
  }
  NgramTable table;
  table.n = n;
  table.entries.reserve(counts.size());
  for (auto& [gram, count] : counts) table.entries.push_back({gram, count});
  // counts is already in tuple order, so a stable sort by count suffices.
  std::stable_sort(table.entries.begin(), table.entries.end(),
                   [](const NgramCount& a, const NgramCount& b) {
                     return a.count > b.count;
                   });
  if (table.entries.size() > top_k) table.entries.resize(top_k);
  return table;
}

std::string ngram_table_to_csv(const NgramTable& table) {
  std::string out = "ngram,count\n";
  for (const auto& entry : table.entries) {
    out += join(entry.ngram);
    out += ',';
    out += std::to_string(entry.count);
    out += '\n';
  }
  return out;
}

}  // namespace hiva
