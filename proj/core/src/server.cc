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

#include "hiva/server.h"


#include <chrono>
#include <cstdio>
#include <iostream>

#include "hiva/errors.h"
#include "httplib.h"
#include "json.hpp"

namespace hiva {
namespace {

using nlohmann::json;

constexpr std::string_view kTimePlaceholder = "{time_bishkek}";
constexpr auto kBishkekOffset = std::chrono::hours{6};
constexpr auto kStreamPoll = std::chrono::milliseconds{200};
// An idle stream writes a blank line this often so dead clients are noticed.
constexpr auto kStreamHeartbeat = std::chrono::seconds{15};

json event_json(const KioskEvent& e) {
  return json::parse(stream_item_to_json(StreamItem{e}));
}

std::size_t count_code_points(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s) {
    if ((c & 0xC0) != 0x80) ++n;
  }
  return n;
}

void reply_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void reply_error(httplib::Response& res, int status, std::string_view message) {
  reply_json(res, status, json{{"error", message}});
}

// Pulls a non-empty, bounded "text" field out of a JSON body. Writes a 400
// and returns nullopt on failure.
std::optional<std::string> request_text(const httplib::Request& req,
                                        httplib::Response& res) {
  json body;
  try {
    body = json::parse(req.body);
  } catch (const json::parse_error&) {
    reply_error(res, 400, "body must be a JSON object");
    return std::nullopt;
  }
  if (!body.is_object() || !body.contains("text") || !body["text"].is_string()) {
    reply_error(res, 400, "body must contain a string field 'text'");
    return std::nullopt;
  }
  std::string text = body["text"].get<std::string>();
  if (normalize(text).empty()) {
    reply_error(res, 400, "text is empty");
    return std::nullopt;
  }
  if (count_code_points(text) > kMaxRequestChars) {
    reply_error(res, 400, "text exceeds 2048 characters");
    return std::nullopt;
  }
  return text;
}

}  // namespace

std::string ask_response_to_json(const AskResponse& r) {
  json events = json::array();
  for (const auto& e : r.events) events.push_back(event_json(e));
  json out = {{"answer_text", r.answer_text},
              {"intent", r.intent},
              {"score", r.score},
              {"fallback", r.fallback},
              {"entry_id", nullptr},
              {"category", nullptr},
              {"events", std::move(events)}};
  if (r.entry_id) out["entry_id"] = *r.entry_id;
  if (r.category) out["category"] = *r.category;
  return out.dump();
}

std::string expand_placeholders(std::string_view text, Timestamp now) {
  std::string out(text);
  const auto local = now + kBishkekOffset;
  const std::chrono::hh_mm_ss tod{
      local - std::chrono::floor<std::chrono::days>(local)};
  char hhmm[8];
  std::snprintf(hhmm, sizeof hhmm, "%02d:%02d",
                static_cast<int>(tod.hours().count()),
                static_cast<int>(tod.minutes().count()));
  for (auto pos = out.find(kTimePlaceholder); pos != std::string::npos;
       pos = out.find(kTimePlaceholder, pos)) {
    out.replace(pos, kTimePlaceholder.size(), hhmm);
  }
  return out;
}

Engine::Engine(std::vector<FaqEntry> kb, std::optional<MnbModel> model,
               std::vector<CommandRule> rules,
               std::optional<StopWords> stop_words, AnswerOptions options)
    : kb_(std::move(kb)),
      model_(std::move(model)),
      rules_(std::move(rules)),
      stop_words_(std::move(stop_words)),
      options_(std::move(options)) {
  validate_rules(rules_);
  if (!(options_.threshold >= 0.0)) {
    throw InvalidArgument("threshold must be >= 0");
  }
  options_.stop_words = stop_words_ ? &*stop_words_ : nullptr;
}

std::shared_ptr<const Engine> Engine::load(const EngineConfig& config) {
  std::vector<FaqEntry> kb;
  if (config.kb) kb = load_kb(*config.kb);
  std::optional<MnbModel> model;
  if (config.model) model = load_model_file(*config.model);
  std::vector<CommandRule> rules =
      config.rules ? load_rules(*config.rules) : default_rules();
  std::optional<StopWords> stop_words;
  if (config.stop_words) stop_words = StopWords::load(*config.stop_words);
  return std::make_shared<const Engine>(std::move(kb), std::move(model),
                                        std::move(rules), std::move(stop_words),
                                        config.answer);
}

AskResponse Engine::ask(std::string_view text, Broadcaster& events,
                        RequestLog* log) const {
  AskResponse response;
  const Timestamp now = now_utc();
  if (auto match = route(text, rules_)) {
    const CommandRule& rule = *match->rule;
    std::vector<EventTemplate> templates = rule.events();
    for (auto& t : templates) t.payload = expand_placeholders(t.payload, now);
    response.answer_text = expand_placeholders(rule.response_text(), now);
    response.intent = rule.intent();
    response.score = kCommandScore;
    response.fallback = false;
    response.events = events.publish_all(templates);
  } else {
    const AnswerResult result = answer(text, kb_, model(), options_);
    response.answer_text = result.answer_text;
    response.score = result.score;
    response.fallback = result.fallback;
    response.entry_id = result.entry_id;
    response.category = result.category;
    if (result.fallback) {
      response.intent = std::string(kFallbackIntent);
    } else {
      response.intent = result.category && !result.category->empty()
                            ? *result.category
                            : "faq";
    }
    response.events.push_back(events.publish(
        {EventKind::kAvatarAnimation, "talk", result.answer_text}));
  }

  if (log != nullptr) {
    try {
      log->record({now, std::string(text), response.intent, response.score});
    } catch (const Error& e) {
      std::cerr << "warning: request not logged: " << e.what() << "\n";
    }
  }
  return response;
}

Prediction Engine::classify(std::string_view text) const {
  if (!model_) throw UnavailableError("no classifier model loaded");
  return predict(*model_, text, stop_words());
}

Server::Server(std::shared_ptr<const Engine> engine,
               std::shared_ptr<Broadcaster> events,
               std::shared_ptr<RequestLog> log, ServerOptions options)
    : engine_(std::move(engine)),
      events_(std::move(events)),
      log_(std::move(log)),
      options_(std::move(options)),
      http_(std::make_unique<httplib::Server>()) {
  if (!events_) events_ = Broadcaster::create();
  if (!log_) log_ = std::make_shared<RequestLog>();
  const auto threads = static_cast<std::size_t>(std::max(options_.worker_threads, 4));
  http_->new_task_queue = [threads] { return new httplib::ThreadPool(threads); };
  install_routes();
}

Server::~Server() { stop(); }

void Server::install_routes() {
  http_->set_default_headers(
      {{"Access-Control-Allow-Origin", options_.cors_origin},
       {"Access-Control-Allow-Headers", "Content-Type"},
       {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});

  http_->Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
  });

  http_->Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
    reply_json(res, 200, json{{"status", "ok"}});
  });

  http_->Post("/api/ask", [this](const httplib::Request& req,
                                 httplib::Response& res) {
    if (!engine_ || !engine_->has_kb()) {
      reply_error(res, 503, "knowledge base not loaded");
      return;
    }
    auto text = request_text(req, res);
    if (!text) return;
    try {
      const AskResponse response = engine_->ask(*text, *events_, log_.get());
      res.status = 200;
      res.set_content(ask_response_to_json(response), "application/json");
    } catch (const UnavailableError& e) {
      reply_error(res, 503, e.what());
    }
  });

  http_->Post("/api/classify", [this](const httplib::Request& req,
                                      httplib::Response& res) {
    if (!engine_ || engine_->model() == nullptr) {
      reply_error(res, 503, "classifier model not loaded");
      return;
    }
    auto text = request_text(req, res);
    if (!text) return;
    const Prediction p = engine_->classify(*text);
    json posteriors = json::object();
    for (const auto& [label, value] : p.posteriors) posteriors[label] = value;
    reply_json(res, 200, json{{"label", p.label}, {"posteriors", posteriors}});
  });

  http_->Get("/api/stats", [this](const httplib::Request& req,
                                  httplib::Response& res) {
    std::size_t top = 10;
    if (req.has_param("top")) {
      try {
        const long long k = std::stoll(req.get_param_value("top"));
        if (k < 0) throw std::out_of_range("negative");
        top = static_cast<std::size_t>(k);
      } catch (const std::exception&) {
        reply_error(res, 400, "top must be a non-negative integer");
        return;
      }
    }
    const auto records = log_->snapshot();
    res.status = 200;
    res.set_content(stats_to_json(compute_stats(records, top, options_.day_count)),
                    "application/json");
  });

  http_->Get("/api/events", [this](const httplib::Request&,
                                   httplib::Response& res) {
    std::shared_ptr<Subscription> sub;
    try {
      sub = events_->subscribe();
    } catch (const UnavailableError& e) {
      reply_error(res, 503, e.what());
      return;
    }
    res.set_header("Cache-Control", "no-cache");
    res.set_chunked_content_provider(
        "application/x-ndjson",
        [this, sub, idle = std::chrono::steady_clock::duration::zero()](
            std::size_t, httplib::DataSink& sink) mutable {
          if (stopping_) {
            sink.done();
            return true;
          }
          auto item = sub->next(kStreamPoll);
          if (!item) {
            if (sub->closed()) {
              sink.done();
              return true;
            }
            idle += kStreamPoll;
            if (idle >= kStreamHeartbeat) {
              idle = idle.zero();
              return sink.write("\n", 1);
            }
            return true;
          }
          idle = idle.zero();
          const std::string line = stream_item_to_json(*item) + "\n";
          return sink.write(line.data(), line.size());
        });
  });

  if (options_.ui_dir) {
    if (!http_->set_mount_point("/ui", options_.ui_dir->string())) {
      throw IoError("ui directory '" + options_.ui_dir->string() +
                    "' does not exist");
    }
  }
}

int Server::bind() {
  if (options_.port == 0) {
    port_ = http_->bind_to_any_port(options_.host);
  } else if (http_->bind_to_port(options_.host, options_.port)) {
    port_ = options_.port;
  } else {
    port_ = -1;
  }
  if (port_ < 0) {
    throw IoError("cannot bind " + options_.host + ":" +
                  std::to_string(options_.port));
  }
  return port_;
}

void Server::start() {
  if (port_ < 0) bind();
  thread_ = std::thread([this] { http_->listen_after_bind(); });
  http_->wait_until_ready();
}

void Server::run() {
  if (port_ < 0) bind();
  http_->listen_after_bind();
}

void Server::stop() {
  if (stopping_.exchange(true)) return;
  http_->stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace hiva
