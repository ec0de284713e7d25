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

#include "hiva/classify.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_set>

#include "hiva/errors.h"
#include "hiva/io.h"
#include "json.hpp"

namespace hiva {
namespace {

using nlohmann::json;

constexpr int kModelFormatVersion = 1;
constexpr double kSumTolerance = 1e-9;

double log_sum_exp(const std::vector<double>& values) {
  double peak = -std::numeric_limits<double>::infinity();
  for (double v : values) peak = std::max(peak, v);
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - peak);
  return peak + std::log(sum);
}

const json& require(const json& object, const char* key) {
  auto it = object.find(key);
  if (it == object.end()) {
    throw ValidationError(std::string("missing field '") + key + "'");
  }
  return *it;
}

}  // namespace

LabeledCorpus::LabeledCorpus(std::vector<DocumentRecord> records)
    : records_(std::move(records)) {
  std::unordered_set<std::string> ids;
  for (const auto& record : records_) {
    if (record.label.empty()) {
      throw ValidationError("record '" + record.id + "' has an empty label");
    }
    if (!ids.insert(record.id).second) {
      throw ValidationError("duplicate record id '" + record.id + "'");
    }
    categories_.insert(record.label);
  }
}

std::pair<LabeledCorpus, LabeledCorpus> LabeledCorpus::split_every(
    std::size_t every) const {
  if (every < 2) throw InvalidArgument("split_every: every must be >= 2");
  std::vector<DocumentRecord> train;
  std::vector<DocumentRecord> test;
  for (std::size_t i = 0; i < records_.size(); ++i) {
    (i % every == every - 1 ? test : train).push_back(records_[i]);
  }
  return {LabeledCorpus(std::move(train)), LabeledCorpus(std::move(test))};
}

LabeledCorpus parse_corpus(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("corpus: ") + e.what(), e.byte);
  }
  if (!doc.is_array()) throw ValidationError("corpus: expected a JSON array");
  std::vector<DocumentRecord> records;
  records.reserve(doc.size());
  try {
    for (const auto& item : doc) {
      records.push_back({require(item, "id").get<std::string>(),
                         require(item, "text").get<std::string>(),
                         require(item, "label").get<std::string>()});
    }
  } catch (const json::type_error& e) {
    throw ValidationError(std::string("corpus: ") + e.what());
  }
  return LabeledCorpus(std::move(records));
}

LabeledCorpus load_corpus(const std::filesystem::path& path) {
  return parse_corpus(read_file(path));
}

std::string corpus_to_json(const LabeledCorpus& corpus) {
  json doc = json::array();
  for (const auto& r : corpus.records()) {
    doc.push_back({{"id", r.id}, {"text", r.text}, {"label", r.label}});
  }
  return doc.dump(2) + "\n";
}

MnbModel::MnbModel(Vocabulary vocabulary, double alpha,
                   std::vector<ClassParams> classes)
    : vocabulary_(std::move(vocabulary)),
      alpha_(alpha),
      classes_(std::move(classes)) {
  if (!(alpha_ > 0.0) || !std::isfinite(alpha_)) {
    throw ValidationError("model: alpha must be a positive finite number");
  }
  if (vocabulary_.empty()) throw ValidationError("model: empty vocabulary");
  if (classes_.empty()) throw ValidationError("model: no classes");
  std::vector<double> priors;
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    const auto& cls = classes_[c];
    if (cls.label.empty()) throw ValidationError("model: empty class label");
    if (c > 0 && !(classes_[c - 1].label < cls.label)) {
      throw ValidationError("model: classes must be sorted by unique label");
    }
    if (cls.log_likelihoods.size() != vocabulary_.size()) {
      throw ValidationError("model: class '" + cls.label +
                            "' likelihood count differs from vocabulary size");
    }
    if (!std::isfinite(cls.log_prior)) {
      throw ValidationError("model: non-finite prior for '" + cls.label + "'");
    }
    double mass = 0.0;
    for (double v : cls.log_likelihoods) {
      if (!std::isfinite(v)) {
        throw ValidationError("model: non-finite likelihood in '" +
                              cls.label + "'");
      }
      mass += std::exp(v);
    }
    if (std::abs(mass - 1.0) > kSumTolerance) {
      throw ValidationError("model: likelihoods of '" + cls.label +
                            "' do not sum to 1");
    }
    priors.push_back(cls.log_prior);
  }
  double prior_mass = 0.0;
  for (double p : priors) prior_mass += std::exp(p);
  if (std::abs(prior_mass - 1.0) > kSumTolerance) {
    throw ValidationError("model: class priors do not sum to 1");
  }
}

std::vector<std::string> MnbModel::labels() const {
  std::vector<std::string> out;
  out.reserve(classes_.size());
  for (const auto& c : classes_) out.push_back(c.label);
  return out;
}

bool MnbModel::has_label(std::string_view label) const {
  return std::any_of(classes_.begin(), classes_.end(),
                     [label](const ClassParams& c) { return c.label == label; });
}

MnbModel train_mnb(const LabeledCorpus& corpus, double alpha,
                   std::size_t min_count, const StopWords* stop_words) {
  if (corpus.empty()) throw InvalidArgument("train_mnb: empty corpus");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw InvalidArgument("train_mnb: alpha must be positive");
  }
  std::vector<TokenList> docs;
  docs.reserve(corpus.size());
  for (const auto& record : corpus.records()) {
    docs.push_back(tokenize(record.text, stop_words));
  }
  Vocabulary vocab = build_vocabulary(docs, min_count);
  if (vocab.empty()) throw InvalidArgument("train_mnb: empty vocabulary");

  struct Tally {
    std::size_t docs = 0;
    std::uint64_t tokens = 0;
    std::vector<std::uint64_t> counts;
  };
  // std::map keeps labels in lexicographic order.
  std::map<std::string, Tally> tallies;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    auto& tally = tallies[corpus.records()[i].label];
    if (tally.counts.empty()) tally.counts.assign(vocab.size(), 0);
    ++tally.docs;
    for (const auto& [index, count] : vectorize(docs[i], vocab).counts) {
      tally.counts[index] += count;
      tally.tokens += count;
    }
  }

  const auto total_docs = static_cast<double>(corpus.size());
  const double vocab_mass = alpha * static_cast<double>(vocab.size());
  std::vector<ClassParams> classes;
  classes.reserve(tallies.size());
  for (const auto& [label, tally] : tallies) {
    ClassParams params;
    params.label = label;
    params.log_prior = std::log(static_cast<double>(tally.docs) / total_docs);
    const double denom = std::log(static_cast<double>(tally.tokens) + vocab_mass);
    params.log_likelihoods.reserve(vocab.size());
    for (std::uint64_t count : tally.counts) {
      params.log_likelihoods.push_back(
          std::log(static_cast<double>(count) + alpha) - denom);
    }
    classes.push_back(std::move(params));
  }
  return MnbModel(std::move(vocab), alpha, std::move(classes));
}

double Prediction::posterior(std::string_view label) const {
  for (const auto& [name, p] : posteriors) {
    if (name == label) return p;
  }
  return 0.0;
}

Prediction predict(const MnbModel& model, std::string_view text,
                   const StopWords* stop_words) {
  const BowVector bow =
      vectorize(tokenize(text, stop_words), model.vocabulary());
  const auto& classes = model.classes();
  std::vector<double> scores;
  scores.reserve(classes.size());
  for (const auto& cls : classes) {
    double score = cls.log_prior;
    for (const auto& [index, count] : bow.counts) {
      score += static_cast<double>(count) * cls.log_likelihoods[index];
    }
    scores.push_back(score);
  }
  // Classes are sorted, so the first strict maximum is the lexicographic
  // tie-break winner.
  std::size_t best = 0;
  for (std::size_t c = 1; c < scores.size(); ++c) {
    if (scores[c] > scores[best]) best = c;
  }
  const double norm = log_sum_exp(scores);
  Prediction out;
  out.label = classes[best].label;
  out.posteriors.reserve(classes.size());
  for (std::size_t c = 0; c < classes.size(); ++c) {
    out.posteriors.emplace_back(classes[c].label, std::exp(scores[c] - norm));
  }
  return out;
}

EvalReport evaluate(const MnbModel& model, const LabeledCorpus& held_out,
                    const StopWords* stop_words) {
  if (held_out.empty()) throw InvalidArgument("evaluate: empty held-out set");
  EvalReport report;
  report.labels = model.labels();
  const std::size_t k = report.labels.size();
  auto index_of = [&report](std::string_view label) -> std::size_t {
    auto it = std::lower_bound(report.labels.begin(), report.labels.end(), label);
    if (it == report.labels.end() || *it != label) {
      throw InvalidArgument("evaluate: unknown label '" + std::string(label) +
                            "'");
    }
    return static_cast<std::size_t>(it - report.labels.begin());
  };
  report.confusion.assign(k, std::vector<std::uint64_t>(k, 0));
  for (const auto& record : held_out.records()) {
    const std::size_t truth = index_of(record.label);
    const std::size_t guess = index_of(predict(model, record.text, stop_words).label);
    ++report.confusion[truth][guess];
    ++report.total;
  }

  std::uint64_t correct = 0;
  for (std::size_t c = 0; c < k; ++c) correct += report.confusion[c][c];
  report.accuracy =
      static_cast<double>(correct) / static_cast<double>(report.total);

  double f1_sum = 0.0;
  std::size_t active = 0;
  for (std::size_t c = 0; c < k; ++c) {
    std::uint64_t row = 0;
    std::uint64_t col = 0;
    for (std::size_t j = 0; j < k; ++j) {
      row += report.confusion[c][j];
      col += report.confusion[j][c];
    }
    ClassMetrics m;
    m.label = report.labels[c];
    m.support = row;
    const auto tp = static_cast<double>(report.confusion[c][c]);
    if (col > 0) m.precision = tp / static_cast<double>(col);
    if (row > 0) m.recall = tp / static_cast<double>(row);
    if (m.precision + m.recall > 0.0) {
      m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
    }
    if (row > 0 || col > 0) {
      f1_sum += m.f1;
      ++active;
    }
    report.per_class.push_back(std::move(m));
  }
  report.macro_f1 = active > 0 ? f1_sum / static_cast<double>(active) : 0.0;
  return report;
}

std::string save_model(const MnbModel& model) {
  json classes = json::array();
  for (const auto& cls : model.classes()) {
    classes.push_back({{"label", cls.label},
                       {"log_prior", cls.log_prior},
                       {"log_likelihoods", cls.log_likelihoods}});
  }
  json doc = {{"format_version", kModelFormatVersion},
              {"alpha", model.alpha()},
              {"vocabulary", model.vocabulary().terms()},
              {"classes", std::move(classes)}};
  return doc.dump() + "\n";
}

MnbModel load_model(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("model: ") + e.what(), e.byte);
  }
  try {
    if (!doc.is_object()) throw ValidationError("model: expected an object");
    if (require(doc, "format_version").get<int>() != kModelFormatVersion) {
      throw ValidationError("model: unsupported format_version");
    }
    const double alpha = require(doc, "alpha").get<double>();
    auto vocab =
        Vocabulary::from_terms(require(doc, "vocabulary").get<std::vector<Token>>());
    std::vector<ClassParams> classes;
    for (const auto& item : require(doc, "classes")) {
      classes.push_back(
          {require(item, "label").get<std::string>(),
           require(item, "log_prior").get<double>(),
           require(item, "log_likelihoods").get<std::vector<double>>()});
    }
    return MnbModel(std::move(vocab), alpha, std::move(classes));
  } catch (const json::exception& e) {
    throw ValidationError(std::string("model: ") + e.what());
  }
}

MnbModel load_model_file(const std::filesystem::path& path) {
  return load_model(read_file(path));
}

}  // namespace hiva
