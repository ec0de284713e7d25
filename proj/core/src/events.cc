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

#include "hiva/events.h"

#include <algorithm>
#include <set>
#include <utility>

#include "hiva/errors.h"
#include "hiva/io.h"
#include "json.hpp"

namespace hiva {
namespace {

using nlohmann::json;

constexpr std::pair<EventKind, std::string_view> kKindNames[] = {
    {EventKind::kAvatarAnimation, "avatar_animation"},
    {EventKind::kDisplayText, "display_text"},
    {EventKind::kDisplayPanel, "display_panel"},
    {EventKind::kMediaStub, "media_stub"},
};

}  // namespace

std::string_view to_string(EventKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

EventKind parse_event_kind(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  throw ValidationError("unknown event kind '" + std::string(name) + "'");
}

CommandRule::CommandRule(std::vector<std::string> triggers,
                         std::string response_text,
                         std::vector<EventTemplate> events)
    : response_text_(std::move(response_text)), events_(std::move(events)) {
  for (const auto& trigger : triggers) {
    TokenList tokens = tokenize(trigger);
    if (tokens.empty()) {
      throw ValidationError("rule trigger '" + trigger +
                            "' is empty after normalization");
    }
    triggers_.push_back(std::move(tokens));
  }
  if (triggers_.empty()) throw ValidationError("rule has no triggers");
  if (events_.empty() && response_text_.empty()) {
    throw ValidationError("rule '" + join(triggers_.front()) +
                          "' has neither events nor response_text");
  }
}

std::string CommandRule::intent() const {
  return "command:" + join(triggers_.front());
}

void validate_rules(std::span<const CommandRule> rules) {
  std::set<TokenList> seen;
  for (const auto& rule : rules) {
    for (const auto& trigger : rule.triggers()) {
      if (!seen.insert(trigger).second) {
        throw ValidationError("duplicate trigger '" + join(trigger) + "'");
      }
    }
  }
}

std::vector<CommandRule> parse_rules(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("rules: ") + e.what(), e.byte);
  }
  if (!doc.is_array()) throw ValidationError("rules: expected a JSON array");
  std::vector<CommandRule> rules;
  try {
    for (const auto& item : doc) {
      std::vector<EventTemplate> events;
      for (const auto& e : item.value("events", json::array())) {
        events.push_back({parse_event_kind(e.at("kind").get<std::string>()),
                          e.at("name").get<std::string>(),
                          e.value("payload", std::string())});
      }
      rules.emplace_back(item.at("triggers").get<std::vector<std::string>>(),
                         item.value("response_text", std::string()),
                         std::move(events));
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("rules: ") + e.what());
  }
  validate_rules(rules);
  return rules;
}

std::vector<CommandRule> load_rules(const std::filesystem::path& path) {
  return parse_rules(read_file(path));
}

std::string rules_to_json(std::span<const CommandRule> rules) {
  json doc = json::array();
  for (const auto& rule : rules) {
    json triggers = json::array();
    for (const auto& t : rule.triggers()) triggers.push_back(join(t));
    json events = json::array();
    for (const auto& e : rule.events()) {
      events.push_back({{"kind", to_string(e.kind)},
                        {"name", e.name},
                        {"payload", e.payload}});
    }
    doc.push_back({{"triggers", std::move(triggers)},
                   {"response_text", rule.response_text()},
                   {"events", std::move(events)}});
  }
  return doc.dump(2) + "\n";
}

std::vector<CommandRule> default_rules() {
  using K = EventKind;
  std::vector<CommandRule> rules;
  rules.emplace_back(
      std::vector<std::string>{"hello", "salam", "privet", "привет", "салам"},
      "Salam!",
      std::vector<EventTemplate>{{K::kAvatarAnimation, "wave", ""},
                                 {K::kDisplayText, "greeting", "Salam!"}});
  rules.emplace_back(
      std::vector<std::string>{"how are you", "kak dela", "как дела"},
      "I am fine, thank you! How can I help you?",
      std::vector<EventTemplate>{{K::kAvatarAnimation, "talk", ""}});
  rules.emplace_back(
      std::vector<std::string>{"weather", "pogoda", "погода"},
      "Here is the weather in Bishkek.",
      std::vector<EventTemplate>{
          {K::kDisplayText, "weather",
           "Bishkek: +18 C, clear sky (offline forecast)"},
          {K::kAvatarAnimation, "talk", ""}});
  rules.emplace_back(
      std::vector<std::string>{"news", "novosti", "новости"},
      "Here are the latest university news.",
      std::vector<EventTemplate>{
          {K::kDisplayText, "news",
           "Admission campaign is open. Visit the admissions office in the "
           "main building."},
          {K::kAvatarAnimation, "talk", ""}});
  rules.emplace_back(
      std::vector<std::string>{"what time is it", "current time",
                               "time in kyrgyzstan", "time in bishkek",
                               "kotoryi chas", "который час"},
      "Here is the time in Kyrgyzstan.",
      std::vector<EventTemplate>{{K::kDisplayText, "time", "{time_bishkek}"},
                                 {K::kAvatarAnimation, "talk", ""}});
  rules.emplace_back(
      std::vector<std::string>{"music", "play music", "muzyka", "музыка"},
      "Music playback is not available offline, but here is a tune!",
      std::vector<EventTemplate>{{K::kMediaStub, "music", "kiosk playlist"},
                                 {K::kAvatarAnimation, "dance", ""}});
  rules.emplace_back(
      std::vector<std::string>{"studencheskiy gorodok", "campus",
                               "студенческий городок"},
      "This is our campus.",
      std::vector<EventTemplate>{{K::kDisplayPanel, "campus_map", "campus_map"},
                                 {K::kAvatarAnimation, "talk", ""}});
  validate_rules(rules);
  return rules;
}

std::optional<RouteMatch> route(std::string_view utterance,
                                std::span<const CommandRule> rules) {
  const TokenList tokens = tokenize(utterance);
  std::optional<RouteMatch> best;
  for (const auto& rule : rules) {
    for (const auto& trigger : rule.triggers()) {
      if (best && trigger.size() <= best->trigger_tokens) continue;
      if (contains_run(tokens, trigger)) {
        best = RouteMatch{&rule, trigger.size()};
      }
    }
  }
  return best;
}

std::optional<StreamItem> Subscription::pop_locked() {
  if (dropped_ > 0) {
    Gap gap{dropped_};
    dropped_ = 0;
    return gap;
  }
  if (buffer_.empty()) return std::nullopt;
  KioskEvent event = std::move(buffer_.front());
  buffer_.pop_front();
  return event;
}

std::optional<StreamItem> Subscription::next(std::chrono::milliseconds timeout) {
  std::unique_lock lock(mu_);
  cv_.wait_for(lock, timeout, [this] {
    return closed_ || dropped_ > 0 || !buffer_.empty();
  });
  return pop_locked();
}

std::optional<StreamItem> Subscription::try_next() {
  std::lock_guard lock(mu_);
  return pop_locked();
}

std::size_t Subscription::pending() const {
  std::lock_guard lock(mu_);
  return buffer_.size();
}

bool Subscription::closed() const {
  std::lock_guard lock(mu_);
  return closed_;
}

void Subscription::push(const KioskEvent& event) {
  {
    std::lock_guard lock(mu_);
    if (closed_) return;
    buffer_.push_back(event);
    while (buffer_.size() > capacity_) {
      buffer_.pop_front();
      ++dropped_;
    }
  }
  cv_.notify_all();
}

void Subscription::close() {
  {
    std::lock_guard lock(mu_);
    closed_ = true;
  }
  cv_.notify_all();
}

Broadcaster::Broadcaster(std::size_t buffer, Clock clock)
    : buffer_(std::max<std::size_t>(buffer, 1)), clock_(std::move(clock)) {
  if (!clock_) clock_ = now_utc;
}

std::shared_ptr<Broadcaster> Broadcaster::create(std::size_t buffer,
                                                 Clock clock) {
  return std::shared_ptr<Broadcaster>(new Broadcaster(buffer, std::move(clock)));
}

KioskEvent Broadcaster::publish(const EventTemplate& event) {
  std::lock_guard lock(mu_);
  if (shut_down_) throw UnavailableError("broadcaster is shut down");
  KioskEvent stamped{++seq_, event.kind, event.name, event.payload, clock_()};
  std::erase_if(subscribers_, [&stamped](const std::weak_ptr<Subscription>& w) {
    auto sub = w.lock();
    if (!sub) return true;
    sub->push(stamped);
    return false;
  });
  return stamped;
}

std::vector<KioskEvent> Broadcaster::publish_all(
    std::span<const EventTemplate> events) {
  std::vector<KioskEvent> out;
  out.reserve(events.size());
  for (const auto& e : events) out.push_back(publish(e));
  return out;
}

std::shared_ptr<Subscription> Broadcaster::subscribe() {
  std::lock_guard lock(mu_);
  if (shut_down_) throw UnavailableError("broadcaster is shut down");
  std::shared_ptr<Subscription> sub(new Subscription(buffer_));
  subscribers_.push_back(sub);
  return sub;
}

void Broadcaster::shutdown() {
  std::vector<std::shared_ptr<Subscription>> live;
  {
    std::lock_guard lock(mu_);
    if (shut_down_) return;
    shut_down_ = true;
    for (auto& w : subscribers_) {
      if (auto sub = w.lock()) live.push_back(std::move(sub));
    }
    subscribers_.clear();
  }
  for (auto& sub : live) sub->close();
}

bool Broadcaster::is_shut_down() const {
  std::lock_guard lock(mu_);
  return shut_down_;
}

std::size_t Broadcaster::subscriber_count() const {
  std::lock_guard lock(mu_);
  return static_cast<std::size_t>(std::count_if(
      subscribers_.begin(), subscribers_.end(),
      [](const std::weak_ptr<Subscription>& w) { return !w.expired(); }));
}

std::uint64_t Broadcaster::last_seq() const {
  std::lock_guard lock(mu_);
  return seq_;
}

std::string stream_item_to_json(const StreamItem& item) {
  if (const auto* gap = std::get_if<Gap>(&item)) {
    return json{{"kind", "gap"}, {"dropped", gap->dropped}}.dump();
  }
  const auto& e = std::get<KioskEvent>(item);
  return json{{"seq", e.seq},
              {"kind", to_string(e.kind)},
              {"name", e.name},
              {"payload", e.payload},
              {"ts", format_rfc3339(e.ts)}}
      .dump();
}

}  // namespace hiva
