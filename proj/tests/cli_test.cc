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

#include "cli.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "hiva/analytics.h"
#include "hiva/io.h"
#include "json.hpp"

namespace hiva::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const std::string kData = HIVA_TEST_DATA_DIR;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("hiva_cli_" +
            std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& contents) {
    const auto p = dir_ / name;
    write_file(p, contents);
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, TrainThenClassifyToyCorpus) {
  const auto corpus = file("c.json", R"([{"id":"1","text":"a a b","label":"X"},
                                         {"id":"2","text":"b c c","label":"Y"}])");
  const auto model = path("m.json");
  auto r = invoke({"train", "--data", corpus, "--out", model, "--alpha", "1.0"});
  ASSERT_EQ(r.code, kOk) << r.err;
  r = invoke({"classify", "--model", model, "--text", "a b", "--json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["label"], "X");
  EXPECT_NEAR(j["posteriors"]["X"].get<double>(), 0.75, 1e-9);
  r = invoke({"classify", "--model", model, "--text", "a b"});
  EXPECT_EQ(r.out.substr(0, 2), "X\n");
}

TEST_F(CliTest, TrainWithHoldoutReportsEvaluation) {
  const auto model = path("m.json");
  auto r = invoke({"--json", "train", "--data", kData + "/corpus_synthetic.json", "--out",
                   model, "--holdout-every", "5"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["documents"], 800);
  EXPECT_GE(j["evaluation"]["accuracy"].get<double>(), 0.9);
  r = invoke({"evaluate", "--model", model, "--data", kData + "/corpus_synthetic.json"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("macro_f1"), std::string::npos);
}

TEST_F(CliTest, MineTrigrams) {
  const auto corpus = file("c.json", R"([{"id":"1","text":"a b c a b c","label":"X"},
                                         {"id":"2","text":"a b d","label":"Y"}])");
  auto r = invoke({"mine-ngrams", "--corpus", corpus, "--n", "3", "--top", "1"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(r.out, "ngram,count\na b c,2\n");
  r = invoke({"mine-ngrams", "--corpus", corpus, "--n", "2", "--label", "Y", "--json"});
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["entries"].size(), 2u);
  EXPECT_EQ(j["entries"][0]["ngram"], "a b");
}

TEST_F(CliTest, AskGibberishFallsBack) {
  auto r = invoke({"ask", "--kb", kData + "/kb.json", "--text", "qwxz vvbn plorf",
                   "--json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["fallback"], true);
  EXPECT_EQ(j["intent"], "fallback");
}

TEST_F(CliTest, AskRoutesCommandsFirst) {
  auto r = invoke({"ask", "--kb", kData + "/kb.json", "--text", "studencheskiy gorodok",
                   "--json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["events"][0]["kind"], "display_panel");
  r = invoke({"ask", "--kb", kData + "/kb.json", "--text", "studencheskiy gorodok",
              "--no-rules", "--json"});
  EXPECT_FALSE(json::parse(r.out).contains("events"));
}

TEST_F(CliTest, AskOutputIsDeterministic) {
  const std::vector<std::string> args{"ask", "--kb", kData + "/kb.json", "--text",
                                      "what time is it", "--json"};
  EXPECT_EQ(invoke(args).out, invoke(args).out);
}

TEST_F(CliTest, AugmentToOneThousand) {
  const auto out = path("grown.json");
  auto r = invoke({"augment", "--data", kData + "/corpus_seed200.json", "--lexicon",
                   kData + "/lexicon.json", "--target", "1000", "--out", out, "--json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(json::parse(r.out)["output"], 1000);
  EXPECT_EQ(json::parse(read_file(out)).size(), 1000u);
}

TEST_F(CliTest, ExtractPianoKeys) {
  auto r = invoke({"extract", "--question", "how many buttons does the piano have?",
                   "--page", kData + "/qa_pages/piano.html", "--stopwords",
                   kData + "/stopwords.txt", "--json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(json::parse(r.out)["extracted"], "88");
}

TEST_F(CliTest, StatsOverLog) {
  std::string rows;
  for (const char* ts : {"2021-05-03T10:00:00Z", "2021-05-03T11:00:00Z",
                         "2021-05-05T09:00:00Z"}) {
    rows += record_to_jsonl({parse_rfc3339(ts), "hello", "command:hello", 2.0}) + "\n";
  }
  const auto log = file("log.jsonl", rows);
  auto r = invoke({"stats", "--log", log, "--json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["by_weekday"], json::array({2, 0, 1, 0, 0, 0, 0}));
  EXPECT_EQ(j["days"], 3);
  r = invoke({"stats", "--log", log, "--active-days", "--json"});
  EXPECT_EQ(json::parse(r.out)["days"], 2);
  r = invoke({"stats", "--log", log});
  EXPECT_NE(r.out.find("total requests  3"), std::string::npos);
}

TEST_F(CliTest, MissingFileIsDomainError) {
  const auto missing = path("nope.json");
  auto r = invoke({"classify", "--model", missing, "--text", "x"});
  EXPECT_EQ(r.code, kDomainError);
  EXPECT_NE(r.err.find(missing), std::string::npos);
  r = invoke({"stats", "--log", missing});
  EXPECT_EQ(r.code, kDomainError);
}

TEST_F(CliTest, BadFlagsAreUsageErrors) {
  EXPECT_EQ(invoke({}).code, kUsageError);
  EXPECT_EQ(invoke({"frobnicate"}).code, kUsageError);
  auto r = invoke({"train", "--data", "x.json"});
  EXPECT_EQ(r.code, kUsageError);
  EXPECT_NE(r.err.find("--out"), std::string::npos);
  EXPECT_EQ(invoke({"train", "--data", "x", "--out", "y", "--alpha", "0"}).code,
            kUsageError);
  EXPECT_EQ(invoke({"ask", "--kb", "k", "--text", "t", "--threshold", "-1"}).code,
            kUsageError);
}

TEST_F(CliTest, HelpExitsZero) {
  auto r = invoke({"--help"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("mine-ngrams"), std::string::npos);
  r = invoke({"ask", "--help"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("--threshold"), std::string::npos);
}

}  // namespace
}  // namespace hiva::cli
