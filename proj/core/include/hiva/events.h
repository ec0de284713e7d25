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

// Kiosk events: command routing and the in-process broadcaster that fans
// events out to frontends.

#ifndef HIVA_EVENTS_H_
#define HIVA_EVENTS_H_

#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hiva/text.h"
#include "hiva/timestamp.h"

namespace hiva {

enum class EventKind { kAvatarAnimation, kDisplayText, kDisplayPanel, kMediaStub };

std::string_view to_string(EventKind kind);
// Throws ValidationError for names outside the closed set.
EventKind parse_event_kind(std::string_view name);

// Unstamped event as written in a rule.
struct EventTemplate {
  EventKind kind = EventKind::kDisplayText;
  std::string name;
  std::string payload;

  friend bool operator==(const EventTemplate&, const EventTemplate&) = default;
};

struct KioskEvent {
  std::uint64_t seq = 0;
  EventKind kind = EventKind::kDisplayText;
  std::string name;
  std::string payload;
  Timestamp ts{};

  friend bool operator==(const KioskEvent&, const KioskEvent&) = default;
};

class CommandRule {
 public:
  // Triggers are normalized here. Throws ValidationError when no trigger
  // survives normalization or the rule has neither events nor a response.
  CommandRule(std::vector<std::string> triggers, std::string response_text,
              std::vector<EventTemplate> events);

  const std::vector<TokenList>& triggers() const { return triggers_; }
  const std::string& response_text() const { return response_text_; }
  const std::vector<EventTemplate>& events() const { return events_; }
  // "command:<first trigger>", used as the analytics intent.
  std::string intent() const;

  friend bool operator==(const CommandRule&, const CommandRule&) = default;

 private:
  std::vector<TokenList> triggers_;
  std::string response_text_;
  std::vector<EventTemplate> events_;
};

// Throws ValidationError when two rules share a trigger.
void validate_rules(std::span<const CommandRule> rules);

// Rules file: JSON array of {triggers: [...], response_text,
// events: [{kind, name, payload}]}. Validated with validate_rules.
std::vector<CommandRule> parse_rules(std::string_view json);
std::vector<CommandRule> load_rules(const std::filesystem::path& path);
std::string rules_to_json(std::span<const CommandRule> rules);

// Greeting, how-are-you, weather, news, time, music and campus commands.
// Weather and news carry canned offline payloads; music is a media stub
// only.
std::vector<CommandRule> default_rules();

struct RouteMatch {
  const CommandRule* rule = nullptr;
  std::size_t trigger_tokens = 0;
};

// Matches when a trigger's tokens occur as a contiguous run in the
// normalized utterance. The longest trigger (in tokens) wins; ties go to the
// earlier rule. Pure: events get their seq and ts when published.
std::optional<RouteMatch> route(std::string_view utterance,
                                std::span<const CommandRule> rules);

// Loss marker delivered to a subscriber that fell behind.
struct Gap {
  std::uint64_t dropped = 0;

  friend bool operator==(const Gap&, const Gap&) = default;
};

using StreamItem = std::variant<KioskEvent, Gap>;

class Broadcaster;

// One consumer's view of the stream. Holds at most `capacity` undelivered
// events; on overflow the oldest are dropped and the next read yields a Gap
// with the number lost.
class Subscription {
 public:
  Subscription(const Subscription&) = delete;
  Subscription& operator=(const Subscription&) = delete;
  ~Subscription() = default;

  // Blocks until an item is available, the broadcaster shuts down (returns
  // nullopt) or `timeout` elapses (returns nullopt).
  std::optional<StreamItem> next(std::chrono::milliseconds timeout);
  // Non-blocking variant.
  std::optional<StreamItem> try_next();

  std::size_t pending() const;
  bool closed() const;

 private:
  friend class Broadcaster;
  explicit Subscription(std::size_t capacity) : capacity_(capacity) {}

  void push(const KioskEvent& event);
  void close();
  std::optional<StreamItem> pop_locked();

  std::size_t capacity_;
  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::deque<KioskEvent> buffer_;
  std::uint64_t dropped_ = 0;
  bool closed_ = false;
};

inline constexpr std::size_t kDefaultSubscriberBuffer = 256;

class Broadcaster : public std::enable_shared_from_this<Broadcaster> {
 public:
  using Clock = std::function<Timestamp()>;

  static std::shared_ptr<Broadcaster> create(
      std::size_t buffer = kDefaultSubscriberBuffer, Clock clock = {});

  Broadcaster(const Broadcaster&) = delete;
  Broadcaster& operator=(const Broadcaster&) = delete;

  // Stamps seq/ts and delivers to every live subscriber. Throws
  // UnavailableError after shutdown.
  KioskEvent publish(const EventTemplate& event);
  std::vector<KioskEvent> publish_all(std::span<const EventTemplate> events);

  // Throws UnavailableError after shutdown.
  std::shared_ptr<Subscription> subscribe();

  // Wakes and closes every subscriber. Idempotent.
  void shutdown();
  bool is_shut_down() const;
  std::size_t subscriber_count() const;
  std::uint64_t last_seq() const;

 private:
  Broadcaster(std::size_t buffer, Clock clock);

  std::size_t buffer_;
  Clock clock_;
  mutable std::mutex mu_;
  std::vector<std::weak_ptr<Subscription>> subscribers_;
  std::uint64_t seq_ = 0;
  bool shut_down_ = false;
};

// Wire form: {"seq", "kind", "name", "payload", "ts"} for events and
// {"kind": "gap", "dropped": N} for gaps; one compact JSON object, no
// trailing newline.
std::string stream_item_to_json(const StreamItem& item);

}  // namespace hiva

#endif  // HIVA_EVENTS_H_
