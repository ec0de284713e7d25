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

#include <atomic>
#include <chrono>
#include <csignal>
#include <iomanip>
#include <iostream>
#include <optional>
#include <thread>

#include "CLI11.hpp"
#include "hiva/analytics.h"
#include "hiva/augment.h"
#include "hiva/classify.h"
#include "hiva/errors.h"
#include "hiva/events.h"
#include "hiva/io.h"
#include "hiva/qa.h"
#include "hiva/server.h"
#include "json.hpp"

namespace hiva::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::atomic<bool> g_interrupted{false};

extern "C" void on_signal(int) { g_interrupted = true; }

std::optional<StopWords> maybe_stop_words(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return StopWords::load(path);
}

const StopWords* ptr(const std::optional<StopWords>& s) {
  return s ? &*s : nullptr;
}

json posteriors_json(const Prediction& p) {
  json out = json::object();
  for (const auto& [label, value] : p.posteriors) out[label] = value;
  return out;
}

json eval_json(const EvalReport& r) {
  json per_class = json::array();
  for (const auto& m : r.per_class) {
    per_class.push_back({{"label", m.label},
                         {"precision", m.precision},
                         {"recall", m.recall},
                         {"f1", m.f1},
                         {"support", m.support}});
  }
  return {{"accuracy", r.accuracy},
          {"macro_f1", r.macro_f1},
          {"total", r.total},
          {"labels", r.labels},
          {"per_class", std::move(per_class)},
          {"confusion", r.confusion}};
}

void print_eval(std::ostream& out, const EvalReport& r) {
  out << std::fixed << std::setprecision(4);
  out << "accuracy  " << r.accuracy << "\nmacro_f1  " << r.macro_f1
      << "\nexamples  " << r.total << "\n\n";
  out << std::left << std::setw(16) << "label" << std::right << std::setw(10)
      << "precision" << std::setw(10) << "recall" << std::setw(10) << "f1"
      << std::setw(9) << "support" << "\n";
  for (const auto& m : r.per_class) {
    out << std::left << std::setw(16) << m.label << std::right << std::setw(10)
        << m.precision << std::setw(10) << m.recall << std::setw(10) << m.f1
        << std::setw(9) << m.support << "\n";
  }
  out.unsetf(std::ios::floatfield);
}

struct TrainArgs {
  std::string data, out, stop_words;
  double alpha = kDefaultAlpha;
  std::size_t min_count = 1;
  std::size_t holdout_every = 0;
};

int do_train(const TrainArgs& a, bool as_json, std::ostream& out) {
  const auto stop_words = maybe_stop_words(a.stop_words);
  LabeledCorpus corpus = load_corpus(a.data);
  std::optional<LabeledCorpus> held_out;
  if (a.holdout_every > 0) {
    auto [train, test] = corpus.split_every(a.holdout_every);
    corpus = std::move(train);
    held_out = std::move(test);
  }
  const MnbModel model = train_mnb(corpus, a.alpha, a.min_count, ptr(stop_words));
  write_file(a.out, save_model(model));
  std::optional<EvalReport> report;
  if (held_out && !held_out->empty()) {
    report = evaluate(model, *held_out, ptr(stop_words));
  }
  if (as_json) {
    json doc = {{"model", a.out},
                {"documents", corpus.size()},
                {"classes", model.labels()},
                {"vocabulary_size", model.vocabulary().size()},
                {"alpha", model.alpha()}};
    if (report) doc["evaluation"] = eval_json(*report);
    out << doc.dump(2) << "\n";
  } else {
    out << "trained on " << corpus.size() << " documents, "
        << model.classes().size() << " classes, "
        << model.vocabulary().size() << " terms -> " << a.out << "\n";
    if (report) {
      out << "\nheld-out evaluation (" << held_out->size() << " documents)\n";
      print_eval(out, *report);
    }
  }
  return kOk;
}

int do_evaluate(const std::string& model_path, const std::string& data,
                const std::string& stop_path, bool as_json, std::ostream& out) {
  const auto stop_words = maybe_stop_words(stop_path);
  const MnbModel model = load_model_file(model_path);
  const EvalReport report = evaluate(model, load_corpus(data), ptr(stop_words));
  if (as_json) {
    out << eval_json(report).dump(2) << "\n";
  } else {
    print_eval(out, report);
  }
  return kOk;
}

int do_classify(const std::string& model_path, const std::string& text,
                const std::string& stop_path, bool as_json, std::ostream& out) {
  const auto stop_words = maybe_stop_words(stop_path);
  const MnbModel model = load_model_file(model_path);
  const Prediction p = predict(model, text, ptr(stop_words));
  if (as_json) {
    out << json{{"label", p.label}, {"posteriors", posteriors_json(p)}}.dump(2)
        << "\n";
  } else {
    out << p.label << "\n";
    for (const auto& [label, value] : p.posteriors) {
      out << "  " << std::left << std::setw(16) << label << std::fixed
          << std::setprecision(6) << value << "\n";
    }
    out.unsetf(std::ios::floatfield);
  }
  return kOk;
}

struct AskArgs {
  std::string kb, model, rules, stop_words, text, fallback_text;
  double threshold = 0.5;
  bool no_filter = false;
  bool no_rules = false;
};

int do_ask(const AskArgs& a, bool as_json, std::ostream& out) {
  const auto stop_words = maybe_stop_words(a.stop_words);
  const auto kb = load_kb(a.kb);
  std::optional<MnbModel> model;
  if (!a.model.empty()) model = load_model_file(a.model);
  std::vector<CommandRule> rules;
  if (!a.no_rules) rules = a.rules.empty() ? default_rules() : load_rules(a.rules);

  json doc;
  if (auto match = route(a.text, rules)) {
    json events = json::array();
    for (const auto& e : match->rule->events()) {
      events.push_back(
          {{"kind", to_string(e.kind)}, {"name", e.name}, {"payload", e.payload}});
    }
    doc = {{"answer_text", match->rule->response_text()},
           {"intent", match->rule->intent()},
           {"score", kCommandScore},
           {"fallback", false},
           {"entry_id", nullptr},
           {"events", std::move(events)}};
  } else {
    AnswerOptions options;
    options.threshold = a.threshold;
    options.category_filter = !a.no_filter;
    options.stop_words = ptr(stop_words);
    if (!a.fallback_text.empty()) options.fallback_text = a.fallback_text;
    const AnswerResult r = answer(a.text, kb, model ? &*model : nullptr, options);
    doc = {{"answer_text", r.answer_text},
           {"intent", r.fallback ? std::string(kFallbackIntent)
                                 : r.category.value_or("faq")},
           {"score", r.score},
           {"recall_term", r.recall_term},
           {"precision_term", r.precision_term},
           {"fallback", r.fallback},
           {"entry_id", nullptr},
           {"category", nullptr}};
    if (r.entry_id) doc["entry_id"] = *r.entry_id;
    if (r.category) doc["category"] = *r.category;
  }
  if (as_json) {
    out << doc.dump(2) << "\n";
  } else {
    out << doc["answer_text"].get<std::string>() << "\n";
    out << "  intent=" << doc["intent"].get<std::string>()
        << " score=" << doc["score"].get<double>()
        << " fallback=" << (doc["fallback"].get<bool>() ? "yes" : "no") << "\n";
  }
  return kOk;
}

struct AugmentArgs {
  std::string data, lexicon, out;
  std::size_t target = 1000;
  std::size_t cap = 10;
};

int do_augment(const AugmentArgs& a, bool as_json, std::ostream& out) {
  const LabeledCorpus corpus = load_corpus(a.data);
  const CategoryLexicon lexicon = load_lexicon(a.lexicon);
  const LabeledCorpus grown = augment_corpus(corpus, lexicon, a.target, a.cap);
  const std::string serialized = corpus_to_json(grown);
  if (a.out.empty() || a.out == "-") {
    out << serialized;
    return kOk;
  }
  write_file(a.out, serialized);
  std::map<std::string, std::size_t> per_label;
  for (const auto& r : grown.records()) ++per_label[r.label];
  if (as_json) {
    out << json{{"input", corpus.size()},
                {"output", grown.size()},
                {"generated", grown.size() - corpus.size()},
                {"per_label", per_label},
                {"path", a.out}}
               .dump(2)
        << "\n";
  } else {
    out << corpus.size() << " -> " << grown.size() << " records ("
        << grown.size() - corpus.size() << " generated) -> " << a.out << "\n";
    for (const auto& [label, n] : per_label) {
      out << "  " << std::left << std::setw(16) << label << n << "\n";
    }
  }
  return kOk;
}

struct MineArgs {
  std::string corpus, label, out, stop_words;
  std::size_t n = 3;
  std::size_t top = 50;
};

int do_mine(const MineArgs& a, bool as_json, std::ostream& out) {
  const auto stop_words = maybe_stop_words(a.stop_words);
  const LabeledCorpus corpus = load_corpus(a.corpus);
  std::vector<TokenList> docs;
  for (const auto& r : corpus.records()) {
    if (a.label.empty() || r.label == a.label) {
      docs.push_back(tokenize(r.text, ptr(stop_words)));
    }
  }
  const NgramTable table = mine_frequent_ngrams(docs, a.n, a.top);
  if (!a.out.empty()) write_file(a.out, ngram_table_to_csv(table));
  if (as_json) {
    json entries = json::array();
    for (const auto& e : table.entries) {
      entries.push_back({{"ngram", join(e.ngram)}, {"count", e.count}});
    }
    out << json{{"n", table.n}, {"entries", std::move(entries)}}.dump(2) << "\n";
  } else {
    out << ngram_table_to_csv(table);
  }
  return kOk;
}

struct ExtractArgs {
  std::string question, page, stop_words;
  std::vector<std::string> markers;
};

int do_extract(const ExtractArgs& a, bool as_json, std::ostream& out) {
  ShortAnswerOptions options;
  const auto stop_words = maybe_stop_words(a.stop_words);
  options.stop_words = ptr(stop_words);
  if (!a.markers.empty()) options.quantity_markers = a.markers;
  const ShortAnswer r =
      extract_short_answer(a.question, read_file(a.page), options);
  if (as_json) {
    json doc = {{"sentence", r.sentence}, {"score", r.score}, {"extracted", nullptr}};
    if (r.extracted) doc["extracted"] = *r.extracted;
    out << doc.dump(2) << "\n";
  } else {
    out << (r.extracted ? *r.extracted : r.sentence) << "\n";
    if (r.extracted) out << "  from: " << r.sentence << "\n";
  }
  return kOk;
}

int do_stats(const std::string& log_path, std::size_t top, bool active_days,
             bool as_json, std::ostream& out) {
  if (!fs::exists(log_path)) throw IoError("log file '" + log_path + "' not found");
  const auto records = read_log(log_path);
  const UsageStats s = compute_stats(
      records, top, active_days ? DayCount::kActiveDays : DayCount::kCalendarSpan);
  if (as_json) {
    out << json::parse(stats_to_json(s)).dump(2) << "\n";
    return kOk;
  }
  static constexpr const char* kDays[] = {"Mon", "Tue", "Wed", "Thu",
                                          "Fri", "Sat", "Sun"};
  out << "total requests  " << s.total << "\ndays            " << s.days
      << "\nmean per day    " << std::fixed << std::setprecision(2)
      << s.mean_daily << "\n\n";
  out.unsetf(std::ios::floatfield);
  for (std::size_t d = 0; d < 7; ++d) {
    out << "  " << d << " " << kDays[d] << "  " << std::setw(6) << s.by_weekday[d]
        << "\n";
  }
  if (!s.top_requests.empty()) out << "\ntop requests\n";
  for (const auto& [text, count] : s.top_requests) {
    out << "  " << std::setw(6) << count << "  " << text << "\n";
  }
  return kOk;
}

struct ServeArgs {
  std::string host = "0.0.0.0";
  int port = 8080;
  std::string kb, model, rules, log, stop_words, ui_dir;
  double threshold = 0.5;
  bool no_filter = false;
  bool active_days = false;
};

int do_serve(const ServeArgs& a, std::ostream& out, std::ostream& err) {
  EngineConfig config;
  if (!a.kb.empty()) config.kb = a.kb;
  if (!a.model.empty()) config.model = a.model;
  if (!a.rules.empty()) config.rules = a.rules;
  if (!a.stop_words.empty()) config.stop_words = a.stop_words;
  config.answer.threshold = a.threshold;
  config.answer.category_filter = !a.no_filter;

  std::shared_ptr<const Engine> engine;
  try {
    engine = Engine::load(config);
  } catch (const Error& e) {
    err << "hiva serve: failed to load artifacts: " << e.what() << "\n";
    return kDomainError;
  }
  auto log = a.log.empty() ? std::make_shared<RequestLog>()
                           : std::make_shared<RequestLog>(fs::path(a.log));
  ServerOptions options;
  options.host = a.host;
  options.port = a.port;
  if (!a.ui_dir.empty()) options.ui_dir = a.ui_dir;
  options.day_count = a.active_days ? DayCount::kActiveDays : DayCount::kCalendarSpan;

  Server server(engine, Broadcaster::create(), log, options);
  const int port = server.bind();
  out << "hiva: serving on http://" << a.host << ":" << port << " (kb "
      << engine->kb().size() << " entries, model "
      << (engine->model() ? "loaded" : "none") << ", " << engine->rules().size()
      << " command rules)" << std::endl;

  g_interrupted = false;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::thread watcher([&server] {
    while (!g_interrupted) std::this_thread::sleep_for(std::chrono::milliseconds(100));
    server.stop();
  });
  server.run();
  g_interrupted = true;
  watcher.join();
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"hiva: offline kiosk assistant engine", "hiva"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Machine-readable JSON output");

  TrainArgs train_args;
  auto* train = app.add_subcommand("train", "Train a naive Bayes request classifier");
  train->add_option("--data", train_args.data, "Labeled corpus JSON")->required();
  train->add_option("--out", train_args.out, "Model file to write")->required();
  train->add_option("--alpha", train_args.alpha, "Laplace smoothing constant")
      ->check(CLI::PositiveNumber);
  train->add_option("--min-count", train_args.min_count, "Minimum term frequency");
  train->add_option("--holdout-every", train_args.holdout_every,
                    "Hold out every N-th record for evaluation (0 = none)");
  train->add_option("--stopwords", train_args.stop_words, "Stop-word file");
  train->add_flag("--json", as_json);

  std::string model_path, data_path, text, stop_path;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Evaluate a model on a labeled corpus");
  evaluate_cmd->add_option("--model", model_path)->required();
  evaluate_cmd->add_option("--data", data_path)->required();
  evaluate_cmd->add_option("--stopwords", stop_path);
  evaluate_cmd->add_flag("--json", as_json);

  auto* classify = app.add_subcommand("classify", "Classify one request");
  classify->add_option("--model", model_path)->required();
  classify->add_option("--text", text)->required();
  classify->add_option("--stopwords", stop_path);
  classify->add_flag("--json", as_json);

  AskArgs ask_args;
  auto* ask = app.add_subcommand("ask", "Answer one request from the knowledge base");
  ask->add_option("--kb", ask_args.kb, "Knowledge base JSON")->required();
  ask->add_option("--text", ask_args.text)->required();
  ask->add_option("--model", ask_args.model, "Classifier used for category filtering");
  ask->add_option("--rules", ask_args.rules, "Command rules JSON (default: built-in)");
  ask->add_flag("--no-rules", ask_args.no_rules, "Skip command routing");
  ask->add_option("--stopwords", ask_args.stop_words);
  ask->add_option("--threshold", ask_args.threshold)->check(CLI::NonNegativeNumber);
  ask->add_option("--fallback-text", ask_args.fallback_text);
  ask->add_flag("--no-category-filter", ask_args.no_filter);
  ask->add_flag("--json", as_json);

  AugmentArgs augment_args;
  auto* augment = app.add_subcommand("augment", "Grow a corpus by lexicon substitution");
  augment->add_option("--data", augment_args.data)->required();
  augment->add_option("--lexicon", augment_args.lexicon)->required();
  augment->add_option("--target", augment_args.target)->check(CLI::PositiveNumber);
  augment->add_option("--cap", augment_args.cap, "Variants per sentence")
      ->check(CLI::PositiveNumber);
  augment->add_option("--out", augment_args.out, "Output corpus (default: stdout)");
  augment->add_flag("--json", as_json);

  MineArgs mine_args;
  auto* mine = app.add_subcommand("mine-ngrams", "Most frequent n-grams of a corpus");
  mine->add_option("--corpus", mine_args.corpus)->required();
  mine->add_option("--n", mine_args.n)->check(CLI::PositiveNumber);
  mine->add_option("--top", mine_args.top)->check(CLI::PositiveNumber);
  mine->add_option("--label", mine_args.label, "Only records with this label");
  mine->add_option("--out", mine_args.out, "Also write the CSV table here");
  mine->add_option("--stopwords", mine_args.stop_words);
  mine->add_flag("--json", as_json);

  ExtractArgs extract_args;
  auto* extract = app.add_subcommand("extract", "Extract a short answer from a page");
  extract->add_option("--question", extract_args.question)->required();
  extract->add_option("--page", extract_args.page, "HTML or text file")->required();
  extract->add_option("--marker", extract_args.markers,
                      "Quantitative-question marker (repeatable)");
  extract->add_option("--stopwords", extract_args.stop_words);
  extract->add_flag("--json", as_json);

  std::string log_path;
  std::size_t top = 10;
  bool active_days = false;
  auto* stats = app.add_subcommand("stats", "Usage statistics of a request log");
  stats->add_option("--log", log_path)->required();
  stats->add_option("--top", top);
  stats->add_flag("--active-days", active_days,
                  "Average over active days instead of the calendar span");
  stats->add_flag("--json", as_json);

  ServeArgs serve_args;
  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--host", serve_args.host);
  serve->add_option("--port", serve_args.port)->check(CLI::Range(0, 65535));
  serve->add_option("--kb", serve_args.kb);
  serve->add_option("--model", serve_args.model);
  serve->add_option("--rules", serve_args.rules);
  serve->add_option("--log", serve_args.log);
  serve->add_option("--stopwords", serve_args.stop_words);
  serve->add_option("--threshold", serve_args.threshold)->check(CLI::NonNegativeNumber);
  serve->add_flag("--no-category-filter", serve_args.no_filter);
  serve->add_flag("--active-days", serve_args.active_days);
  serve->add_option("--ui-dir", serve_args.ui_dir, "Static kiosk UI served at /ui");

  std::vector<std::string> argv_storage{"hiva"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.front()->help());
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "hiva: " << e.what() << "\n\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kUsageError;
  }

  try {
    if (train->parsed()) return do_train(train_args, as_json, out);
    if (evaluate_cmd->parsed()) {
      return do_evaluate(model_path, data_path, stop_path, as_json, out);
    }
    if (classify->parsed()) {
      return do_classify(model_path, text, stop_path, as_json, out);
    }
    if (ask->parsed()) return do_ask(ask_args, as_json, out);
    if (augment->parsed()) return do_augment(augment_args, as_json, out);
    if (mine->parsed()) return do_mine(mine_args, as_json, out);
    if (extract->parsed()) return do_extract(extract_args, as_json, out);
    if (stats->parsed()) return do_stats(log_path, top, active_days, as_json, out);
    if (serve->parsed()) return do_serve(serve_args, out, err);
  } catch (const Error& e) {
    err << "hiva: " << e.what() << "\n";
    return kDomainError;
  }
  return kUsageError;
}

}  // namespace hiva::cli
