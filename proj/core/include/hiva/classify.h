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

// Multinomial naive Bayes over bag-of-words features, used to assign a
// category to each user request.

#ifndef HIVA_CLASSIFY_H_
#define HIVA_CLASSIFY_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hiva/text.h"

namespace hiva {

struct DocumentRecord {
  std::string id;
  std::string text;
  std::string label;

  friend bool operator==(const DocumentRecord&,
                         const DocumentRecord&) = default;
};

// Supervised training or evaluation set. Construction validates that ids
// are unique and labels non-empty.
class LabeledCorpus {
 public:
  LabeledCorpus() = default;
  explicit LabeledCorpus(std::vector<DocumentRecord> records);

  const std::vector<DocumentRecord>& records() const { return records_; }
  const std::set<std::string>& categories() const { return categories_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  // Deterministic holdout: records whose position (in file order) satisfies
  // position % every == every - 1 go to the second corpus.
  std::pair<LabeledCorpus, LabeledCorpus> split_every(std::size_t every) const;

 private:
  std::vector<DocumentRecord> records_;
  std::set<std::string> categories_;
};

// Corpus file: JSON array of {id, text, label}.
LabeledCorpus parse_corpus(std::string_view json);
LabeledCorpus load_corpus(const std::filesystem::path& path);
std::string corpus_to_json(const LabeledCorpus& corpus);

struct ClassParams {
  std::string label;
  double log_prior = 0.0;
  std::vector<double> log_likelihoods;  // parallel to the vocabulary

  friend bool operator==(const ClassParams&, const ClassParams&) = default;
};

class MnbModel {
 public:
  // Throws ValidationError when any model invariant fails.
  MnbModel(Vocabulary vocabulary, double alpha, std::vector<ClassParams> classes);

  const Vocabulary& vocabulary() const { return vocabulary_; }
  double alpha() const { return alpha_; }
  const std::vector<ClassParams>& classes() const { return classes_; }
  std::vector<std::string> labels() const;
  bool has_label(std::string_view label) const;

  friend bool operator==(const MnbModel&, const MnbModel&) = default;

 private:
  Vocabulary vocabulary_;
  double alpha_;
  std::vector<ClassParams> classes_;
};

inline constexpr double kDefaultAlpha = 1.0;

// Laplace-smoothed estimate:
//   log_prior(c)  = ln(docs in c / total docs)
//   P(t | c)      = (count(t, c) + alpha) / (tokens in c + alpha * |V|)
// Classes are ordered lexicographically by label. Throws InvalidArgument on
// an empty corpus, an empty vocabulary or alpha <= 0.
MnbModel train_mnb(const LabeledCorpus& corpus, double alpha = kDefaultAlpha,
                   std::size_t min_count = 1,
                   const StopWords* stop_words = nullptr);

struct Prediction {
  std::string label;
  // (label, posterior) in model class order; sums to 1.
  std::vector<std::pair<std::string, double>> posteriors;

  double posterior(std::string_view label) const;
};

// Posteriors are the softmax of log_prior + sum count * log_likelihood over
// in-vocabulary tokens. Ties go to the lexicographically smallest label.
Prediction predict(const MnbModel& model, std::string_view text,
                   const StopWords* stop_words = nullptr);

struct ClassMetrics {
  std::string label;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;
};

struct EvalReport {
  double accuracy = 0.0;
  double macro_f1 = 0.0;
  std::vector<std::string> labels;  // row/column order of `confusion`
  std::vector<ClassMetrics> per_class;
  // confusion[truth][predicted]
  std::vector<std::vector<std::uint64_t>> confusion;
  std::uint64_t total = 0;
};

// Macro-F1 averages over classes that occur either as truth or as a
// prediction in `held_out`. Throws InvalidArgument when held_out is empty or
// carries a label the model does not know.
EvalReport evaluate(const MnbModel& model, const LabeledCorpus& held_out,
                    const StopWords* stop_words = nullptr);

// Model file: JSON {format_version: 1, alpha, vocabulary: [...],
// classes: [{label, log_prior, log_likelihoods: [...]}]}. Doubles are written
// in shortest round-trip form so load(save(m)) == m bit for bit.
std::string save_model(const MnbModel& model);
// Throws ParseError (byte position) or ValidationError.
MnbModel load_model(std::string_view json);
MnbModel load_model_file(const std::filesystem::path& path);

}  // namespace hiva

#endif  // HIVA_CLASSIFY_H_
