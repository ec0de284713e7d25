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

// Brute-force reference implementations used by the unit and acceptance
// tests. They deliberately avoid the library's code paths (except
// tokenization, which they take as given) so agreement is meaningful.

#ifndef HIVA_TESTS_ORACLES_H_
#define HIVA_TESTS_ORACLES_H_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

namespace hiva::oracle {

// Overlap score by linear scans over plain vectors.
struct Overlap {
  double score, recall, precision;
};

inline Overlap overlap(const std::vector<std::string>& lemma_list,
                       const std::vector<std::string>& a) {
  std::vector<std::string> lemmas;
  for (const auto& t : lemma_list) {
    if (std::find(lemmas.begin(), lemmas.end(), t) == lemmas.end()) {
      lemmas.push_back(t);
    }
  }
  std::vector<std::string> distinct_a;
  for (const auto& t : a) {
    if (std::find(distinct_a.begin(), distinct_a.end(), t) == distinct_a.end()) {
      distinct_a.push_back(t);
    }
  }
  int shared = 0;
  for (const auto& l : lemmas) {
    for (const auto& t : distinct_a) {
      if (l == t) ++shared;
    }
  }
  const double recall = lemmas.empty() ? 0.0 : double(shared) / double(lemmas.size());
  const double precision = a.empty() ? 0.0 : double(shared) / double(a.size());
  return {recall + precision, recall, precision};
}

// Multinomial naive Bayes evaluated straight from the definition, in linear
// probability space: P(c | d) ∝ P(c) * prod_t P(t | c)^count(t, d).
struct ToyDoc {
  std::vector<std::string> tokens;
  std::string label;
};

inline std::map<std::string, double> bayes_posteriors(
    const std::vector<ToyDoc>& train, double alpha,
    const std::vector<std::string>& query) {
  std::vector<std::string> vocab;
  for (const auto& d : train) {
    for (const auto& t : d.tokens) {
      if (std::find(vocab.begin(), vocab.end(), t) == vocab.end()) vocab.push_back(t);
    }
  }
  std::map<std::string, int> docs_in;
  std::map<std::string, std::map<std::string, int>> term_count;
  std::map<std::string, int> token_total;
  for (const auto& d : train) {
    ++docs_in[d.label];
    for (const auto& t : d.tokens) {
      ++term_count[d.label][t];
      ++token_total[d.label];
    }
  }
  std::map<std::string, double> joint;
  double evidence = 0.0;
  for (const auto& [label, n] : docs_in) {
    double p = double(n) / double(train.size());
    for (const auto& q : query) {
      if (std::find(vocab.begin(), vocab.end(), q) == vocab.end()) continue;
      p *= (term_count[label][q] + alpha) /
           (token_total[label] + alpha * double(vocab.size()));
    }
    joint[label] = p;
    evidence += p;
  }
  for (auto& [label, p] : joint) p /= evidence;
  return joint;
}

// N-gram counts with a joined-string key, sorted count desc then tuple asc.
inline std::vector<std::pair<std::vector<std::string>, std::uint64_t>>
ngram_counts(const std::vector<std::vector<std::string>>& docs, std::size_t n) {
  std::unordered_map<std::string, std::pair<std::vector<std::string>, std::uint64_t>>
      table;
  for (const auto& doc : docs) {
    for (std::size_t i = 0; i + n <= doc.size(); ++i) {
      std::vector<std::string> gram(doc.begin() + long(i), doc.begin() + long(i + n));
      std::string key;
      for (const auto& t : gram) key += t + '\x1f';
      auto& slot = table[key];
      slot.first = gram;
      ++slot.second;
    }
  }
  std::vector<std::pair<std::vector<std::string>, std::uint64_t>> out;
  for (auto& [key, v] : table) out.push_back(v);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return out;
}

// Day of week with Sakamoto's method: 0 = Monday.
inline int weekday_monday0(int y, int m, int d) {
  static const int t[] = {0, 3, 2, 5, 0, 3, 5, 1, 4, 6, 2, 4};
  if (m < 3) y -= 1;
  const int sunday0 = (y + y / 4 - y / 100 + y / 400 + t[m - 1] + d) % 7;
  return (sunday0 + 6) % 7;
}

inline bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

inline int days_in_month(int y, int m) {
  static const int days[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  return m == 2 && is_leap(y) ? 29 : days[m - 1];
}

using Date = std::tuple<int, int, int>;

inline Date next_day(Date date) {
  auto [y, m, d] = date;
  if (++d > days_in_month(y, m)) {
    d = 1;
    if (++m > 12) {
      m = 1;
      ++y;
    }
  }
  return {y, m, d};
}

// Inclusive count of calendar days between two dates by walking forward.
inline std::uint64_t span_days(Date first, Date last) {
  std::uint64_t n = 1;
  for (Date d = first; d != last; d = next_day(d)) ++n;
  return n;
}

}  // namespace hiva::oracle

#endif  // HIVA_TESTS_ORACLES_H_
