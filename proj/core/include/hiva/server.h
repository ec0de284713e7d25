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

// The assistant engine and its HTTP front: ask, classify, event stream,
// stats and health endpoints.

#ifndef HIVA_SERVER_H_
#define HIVA_SERVER_H_

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "hiva/analytics.h"
#include "hiva/classify.h"
#include "hiva/events.h"
#include "hiva/qa.h"
#include "hiva/text.h"

namespace httplib {
class Server;
}

namespace hiva {

inline constexpr std::size_t kMaxRequestChars = 2048;
// Score reported for requests answered by a command rule.
inline constexpr double kCommandScore = 2.0;

struct EngineConfig {
  std::optional<std::filesystem::path> kb;
  std::optional<std::filesystem::path> model;
  // Built-in default_rules() when unset.
  std::optional<std::filesystem::path> rules;
  std::optional<std::filesystem::path> stop_words;
  AnswerOptions answer;
};

struct AskResponse {
  std::string answer_text;
  std::string intent;
  double score = 0.0;
  bool fallback = false;
  std::optional<std::string> entry_id;
  std::optional<std::string> category;
  std::vector<KioskEvent> events;
};

std::string ask_response_to_json(const AskResponse& response);

// Immutable after construction; safe to share between request threads.
class Engine {
 public:
  Engine(std::vector<FaqEntry> kb, std::optional<MnbModel> model,
         std::vector<CommandRule> rules, std::optional<StopWords> stop_words,
         AnswerOptions options);

  // Loads every configured artifact or throws; there is no partially loaded
  // engine.
  static std::shared_ptr<const Engine> load(const EngineConfig& config);

  bool has_kb() const { return !kb_.empty(); }
  const MnbModel* model() const { return model_ ? &*model_ : nullptr; }
  const std::vector<FaqEntry>& kb() const { return kb_; }
  const std::vector<CommandRule>& rules() const { return rules_; }
  const StopWords* stop_words() const {
    return stop_words_ ? &*stop_words_ : nullptr;
  }
  const AnswerOptions& options() const { return options_; }

  // Command routing first; otherwise FAQ answering with an avatar "talk"
  // event. Events are published on `events`; the request is appended to
  // `log` when given. A failed log append is reported on stderr and does
  // not fail the request.
  AskResponse ask(std::string_view text, Broadcaster& events,
                  RequestLog* log) const;

  // Throws UnavailableError when no model is loaded.
  Prediction classify(std::string_view text) const;

 private:
  std::vector<FaqEntry> kb_;
  std::optional<MnbModel> model_;
  std::vector<CommandRule> rules_;
  std::optional<StopWords> stop_words_;
  AnswerOptions options_;
};

// Replaces "{time_bishkek}" with the current Kyrgyzstan time (UTC+6, no
// DST) as HH:MM.
std::string expand_placeholders(std::string_view text, Timestamp now);

struct ServerOptions {
  std::string host = "0.0.0.0";
  int port = 8080;
  std::string cors_origin = "*";
  std::optional<std::filesystem::path> ui_dir;
  DayCount day_count = DayCount::kCalendarSpan;
  int worker_threads = 32;
};

class Server {
 public:
  // `engine` may be null, in which case /api/ask and /api/classify answer
  // 503.
  Server(std::shared_ptr<const Engine> engine,
         std::shared_ptr<Broadcaster> events, std::shared_ptr<RequestLog> log,
         ServerOptions options);
  ~Server();

  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Binds options.port (0 picks a free port) and returns the bound port.
  // Throws IoError when binding fails.
  int bind();
  // Serves on a background thread. Call bind() first.
  void start();
  // Serves on the calling thread until stop().
  void run();
  void stop();
  int port() const { return port_; }

 private:
  void install_routes();

  std::shared_ptr<const Engine> engine_;
  std::shared_ptr<Broadcaster> events_;
  std::shared_ptr<RequestLog> log_;
  ServerOptions options_;
  std::unique_ptr<httplib::Server> http_;
  std::thread thread_;
  std::atomic<bool> stopping_{false};
  int port_ = -1;
};

}  // namespace hiva

#endif  // HIVA_SERVER_H_
