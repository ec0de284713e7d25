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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "hiva/errors.h"
#include "oracles.h"

namespace hiva {
namespace {

LabeledCorpus two_class_corpus() {
  return LabeledCorpus({{"1", "a a b", "X"}, {"2", "b c c", "Y"}});
}

double likelihood(const MnbModel& m, std::size_t cls, std::string_view term) {
  return std::exp(m.classes()[cls].log_likelihoods[*m.vocabulary().index_of(term)]);
}

TEST(TrainMnbTest, HandWorkedTwoClassExample) {
  const MnbModel m = train_mnb(two_class_corpus(), 1.0);
  ASSERT_EQ(m.labels(), (std::vector<std::string>{"X", "Y"}));
  EXPECT_NEAR(likelihood(m, 0, "a"), 0.5, 1e-12);
  EXPECT_NEAR(likelihood(m, 0, "b"), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(likelihood(m, 0, "c"), 1.0 / 6.0, 1e-12);
  EXPECT_NEAR(likelihood(m, 1, "a"), 1.0 / 6.0, 1e-12);
  EXPECT_NEAR(likelihood(m, 1, "b"), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(likelihood(m, 1, "c"), 0.5, 1e-12);
  EXPECT_NEAR(std::exp(m.classes()[0].log_prior), 0.5, 1e-12);
  EXPECT_NEAR(std::exp(m.classes()[1].log_prior), 0.5, 1e-12);
}

TEST(TrainMnbTest, SingleClassHasZeroLogPrior) {
  const MnbModel m = train_mnb(LabeledCorpus({{"1", "hello there", "greet"},
                                              {"2", "hi", "greet"}}));
  ASSERT_EQ(m.classes().size(), 1u);
  EXPECT_EQ(m.classes()[0].log_prior, 0.0);
}

TEST(TrainMnbTest, Errors) {
  EXPECT_THROW(train_mnb(LabeledCorpus{}), InvalidArgument);
  EXPECT_THROW(train_mnb(LabeledCorpus({{"1", "!!!", "X"}})), InvalidArgument);
  EXPECT_THROW(train_mnb(two_class_corpus(), 0.0), InvalidArgument);
  EXPECT_THROW(train_mnb(two_class_corpus(), -1.0), InvalidArgument);
}

TEST(TrainMnbTest, MinCountShrinksVocabulary) {
  const MnbModel m =
      train_mnb(LabeledCorpus({{"1", "a a b", "X"}, {"2", "b c", "Y"}}), 1.0, 2);
  EXPECT_EQ(m.vocabulary().terms(), (TokenList{"a", "b"}));
  EXPECT_THROW(train_mnb(two_class_corpus(), 1.0, 3), InvalidArgument);
}

TEST(LabeledCorpusTest, RejectsDuplicateIdsAndEmptyLabels) {
  EXPECT_THROW(LabeledCorpus({{"1", "a", "X"}, {"1", "b", "Y"}}), ValidationError);
  EXPECT_THROW(LabeledCorpus({{"1", "a", ""}}), ValidationError);
}

TEST(PredictTest, HandWorkedPosterior) {
  const MnbModel m = train_mnb(two_class_corpus(), 1.0);
  const Prediction p = predict(m, "a b");
  EXPECT_EQ(p.label, "X");
  EXPECT_NEAR(p.posterior("X"), 0.75, 1e-12);
  EXPECT_NEAR(p.posterior("Y"), 0.25, 1e-12);
}

TEST(PredictTest, OutOfVocabularyFallsBackToPriorsAndTieBreak) {
  const MnbModel m = train_mnb(two_class_corpus(), 1.0);
  const Prediction p = predict(m, "zzz");
  EXPECT_EQ(p.label, "X");
  EXPECT_NEAR(p.posterior("X"), 0.5, 1e-12);
  EXPECT_NEAR(p.posterior("Y"), 0.5, 1e-12);
}

TEST(PredictTest, SingleClassIsCertain) {
  const MnbModel m = train_mnb(LabeledCorpus({{"1", "hello", "greet"}}));
  const Prediction p = predict(m, "anything at all");
  EXPECT_EQ(p.label, "greet");
  EXPECT_DOUBLE_EQ(p.posterior("greet"), 1.0);
}

TEST(PredictTest, LongInputsStayFinite) {
  const MnbModel m = train_mnb(two_class_corpus(), 1.0);
  std::string text;
  for (int i = 0; i < 20000; ++i) text += "c ";
  const Prediction p = predict(m, text);
  EXPECT_EQ(p.label, "Y");
  EXPECT_TRUE(std::isfinite(p.posterior("X")));
  EXPECT_NEAR(p.posterior("X") + p.posterior("Y"), 1.0, 1e-9);
}

// Random corpora with at most 3 classes, 6 documents and 4 distinct terms.
struct ToyCase {
  std::vector<oracle::ToyDoc> docs;
  LabeledCorpus corpus;
};

ToyCase random_toy(std::mt19937& rng) {
  static const std::vector<std::string> terms = {"a", "b", "c", "d"};
  static const std::vector<std::string> labels = {"X", "Y", "Z"};
  std::uniform_int_distribution<int> ndocs(1, 6), nclass(1, 3), len(1, 5);
  std::uniform_int_distribution<int> term(0, 3);
  const int k = nclass(rng);
  std::uniform_int_distribution<int> cls(0, k - 1);
  ToyCase out;
  std::vector<DocumentRecord> records;
  const int n = ndocs(rng);
  for (int i = 0; i < n; ++i) {
    oracle::ToyDoc doc;
    for (int j = len(rng); j > 0; --j) doc.tokens.push_back(terms[term(rng)]);
    doc.label = labels[cls(rng)];
    std::string text;
    for (const auto& t : doc.tokens) text += t + " ";
    records.push_back({std::to_string(i), text, doc.label});
    out.docs.push_back(std::move(doc));
  }
  out.corpus = LabeledCorpus(std::move(records));
  return out;
}

TEST(MnbPropertyTest, MatchesBruteForceBayes) {
  std::mt19937 rng(2023);
  std::uniform_int_distribution<int> qlen(0, 6), qterm(0, 4);
  static const std::vector<std::string> query_terms = {"a", "b", "c", "d", "q"};
  for (int trial = 0; trial < 3000; ++trial) {
    const ToyCase toy = random_toy(rng);
    const double alpha = trial % 3 == 0 ? 0.5 : 1.0;
    const MnbModel m = train_mnb(toy.corpus, alpha);
    std::vector<std::string> query;
    for (int j = qlen(rng); j > 0; --j) query.push_back(query_terms[qterm(rng)]);
    std::string text;
    for (const auto& t : query) text += t + " ";
    const auto expected = oracle::bayes_posteriors(toy.docs, alpha, query);
    const Prediction p = predict(m, text);
    ASSERT_EQ(p.posteriors.size(), expected.size());
    for (const auto& [label, value] : expected) {
      ASSERT_NEAR(p.posterior(label), value, 1e-9) << "trial " << trial;
    }
  }
}

TEST(MnbPropertyTest, NormalizationAndPositivity) {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 500; ++trial) {
    const MnbModel m = train_mnb(random_toy(rng).corpus);
    double prior_mass = 0.0;
    for (const auto& cls : m.classes()) {
      prior_mass += std::exp(cls.log_prior);
      double mass = 0.0;
      for (double v : cls.log_likelihoods) {
        EXPECT_TRUE(std::isfinite(v));
        mass += std::exp(v);
      }
      EXPECT_NEAR(mass, 1.0, 1e-9);
    }
    EXPECT_NEAR(prior_mass, 1.0, 1e-9);
    const Prediction p = predict(m, "a b c d a");
    double total = 0.0;
    for (const auto& [label, value] : p.posteriors) total += value;
    EXPECT_NEAR(total, 1.0, 1e-9);
  }
}

TEST(MnbPropertyTest, PermutationInvariance) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const ToyCase toy = random_toy(rng);
    std::vector<DocumentRecord> shuffled = toy.corpus.records();
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const MnbModel a = train_mnb(toy.corpus);
    const MnbModel b = train_mnb(LabeledCorpus(shuffled));
    // Vocabulary order follows first occurrence, so compare per term.
    ASSERT_EQ(a.labels(), b.labels());
    for (std::size_t c = 0; c < a.classes().size(); ++c) {
      EXPECT_EQ(a.classes()[c].log_prior, b.classes()[c].log_prior);
      for (const auto& term : a.vocabulary().terms()) {
        EXPECT_NEAR(a.classes()[c].log_likelihoods[*a.vocabulary().index_of(term)],
                    b.classes()[c].log_likelihoods[*b.vocabulary().index_of(term)],
                    1e-15);
      }
    }
    const Prediction p1 = predict(a, "a b c d d");
    const Prediction p2 = predict(a, "d b d a c");
    for (const auto& [label, value] : p1.posteriors) {
      EXPECT_NEAR(p2.posterior(label), value, 1e-12);
    }
    EXPECT_EQ(p1.label, p2.label);
  }
}

TEST(EvaluateTest, PerfectlySeparable) {
  const MnbModel m = train_mnb(two_class_corpus());
  const EvalReport r = evaluate(m, LabeledCorpus({{"1", "a a", "X"}, {"2", "c c", "Y"}}));
  EXPECT_DOUBLE_EQ(r.accuracy, 1.0);
  EXPECT_DOUBLE_EQ(r.macro_f1, 1.0);
}

TEST(EvaluateTest, ThreeOfFourCorrect) {
  const MnbModel m = train_mnb(two_class_corpus());
  const LabeledCorpus held({{"1", "a a", "X"},
                            {"2", "c c", "Y"},
                            {"3", "a", "X"},
                            {"4", "c", "X"}});
  // Brute-force count of correct predictions.
  int correct = 0;
  for (const auto& rec : held.records()) correct += predict(m, rec.text).label == rec.label;
  ASSERT_EQ(correct, 3);
  const EvalReport r = evaluate(m, held);
  EXPECT_DOUBLE_EQ(r.accuracy, 0.75);
  std::uint64_t total = 0;
  for (const auto& row : r.confusion) {
    for (auto v : row) total += v;
  }
  EXPECT_EQ(total, 4u);
  EXPECT_EQ(r.confusion[0][1], 1u);  // truth X predicted Y
  // X: precision 2/2, recall 2/3; Y: precision 1/2, recall 1/1.
  EXPECT_NEAR(r.per_class[0].f1, 0.8, 1e-12);
  EXPECT_NEAR(r.per_class[1].f1, 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(r.macro_f1, (0.8 + 2.0 / 3.0) / 2.0, 1e-12);
}

TEST(EvaluateTest, Errors) {
  const MnbModel m = train_mnb(two_class_corpus());
  EXPECT_THROW(evaluate(m, LabeledCorpus{}), InvalidArgument);
  EXPECT_THROW(evaluate(m, LabeledCorpus({{"1", "a", "W"}})), InvalidArgument);
}

TEST(ModelIoTest, RoundTripIsBitIdentical) {
  const MnbModel m = train_mnb(two_class_corpus(), 0.37);
  const MnbModel back = load_model(save_model(m));
  EXPECT_EQ(back, m);
  std::mt19937 rng(1);
  std::uniform_int_distribution<int> len(0, 8), ch(0, 5);
  const char* alphabet[] = {"a ", "b ", "c ", "zz ", "! ", "A"};
  for (int i = 0; i < 100; ++i) {
    std::string s;
    for (int j = len(rng); j > 0; --j) s += alphabet[ch(rng)];
    const Prediction p1 = predict(m, s);
    const Prediction p2 = predict(back, s);
    EXPECT_EQ(p1.label, p2.label);
    EXPECT_EQ(p1.posteriors, p2.posteriors);
  }
}

TEST(ModelIoTest, TruncatedFileIsParseError) {
  const std::string text = save_model(train_mnb(two_class_corpus()));
  try {
    load_model(text.substr(0, text.size() / 2));
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_GT(e.position(), 0u);
  }
}

TEST(ModelIoTest, InvariantViolationsAreValidationErrors) {
  const std::string good = save_model(train_mnb(two_class_corpus()));
  auto doc_with = [&good](const std::string& from, const std::string& to) {
    std::string s = good;
    s.replace(s.find(from), from.size(), to);
    return s;
  };
  EXPECT_THROW(load_model(doc_with("\"alpha\":1.0", "\"alpha\":0")), ValidationError);
  EXPECT_THROW(load_model(doc_with("\"format_version\":1", "\"format_version\":2")),
               ValidationError);
  EXPECT_THROW(load_model(doc_with("\"label\":\"X\"", "\"label\":\"Z\"")),
               ValidationError);  // classes out of order
  EXPECT_THROW(load_model("{}"), ValidationError);
  EXPECT_THROW(load_model("[1,2]"), ValidationError);
}

TEST(ModelIoTest, UnnormalizedLikelihoodsRejected) {
  EXPECT_THROW(MnbModel(Vocabulary::from_terms({"a", "b"}), 1.0,
                        {{"X", 0.0, {std::log(0.5), std::log(0.6)}}}),
               ValidationError);
  EXPECT_THROW(MnbModel(Vocabulary::from_terms({"a", "b"}), 1.0,
                        {{"X", std::log(0.7), {std::log(0.5), std::log(0.5)}}}),
               ValidationError);
}

TEST(CorpusIoTest, ParseAndSplit) {
  const LabeledCorpus c = parse_corpus(
      R"([{"id":"1","text":"a","label":"X"},{"id":"2","text":"b","label":"Y"},
          {"id":"3","text":"c","label":"X"}])");
  EXPECT_EQ(c.size(), 3u);
  EXPECT_EQ(c.categories(), (std::set<std::string>{"X", "Y"}));
  auto [train, test] = c.split_every(3);
  EXPECT_EQ(train.size(), 2u);
  ASSERT_EQ(test.size(), 1u);
  EXPECT_EQ(test.records()[0].id, "3");
  EXPECT_EQ(parse_corpus(corpus_to_json(c)).records(), c.records());
  EXPECT_THROW(parse_corpus("[{\"id\":\"1\"}]"), ValidationError);
  EXPECT_THROW(parse_corpus("[{"), ParseError);
}

}  // namespace
}  // namespace hiva
