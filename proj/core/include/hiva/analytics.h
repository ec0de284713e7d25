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

// Request log and usage statistics.

#ifndef HIVA_ANALYTICS_H_
#define HIVA_ANALYTICS_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hiva/timestamp.h"

namespace hiva {

inline constexpr std::string_view kFallbackIntent = "fallback";

struct RequestRecord {
  Timestamp ts{};
  std::string text;
  std::string intent;
  double score = 0.0;

  friend bool operator==(const RequestRecord&, const RequestRecord&) = default;
};

// One JSON Lines row: {"ts", "text", "intent", "score"}, ts in RFC 3339 UTC.
std::string record_to_jsonl(const RequestRecord& record);
// Throws ParseError (position 0 within the line) or ValidationError.
RequestRecord record_from_json(std::string_view line);

// Reads a JSON Lines log. A missing file is an empty log. Malformed rows
// throw ParseError whose position is the 1-based line number.
std::vector<RequestRecord> read_log(const std::filesystem::path& path);

// Append-only request log. Records are kept in memory and, when a path is
// set, appended to a JSON Lines file. Appends are serialized; snapshot()
// returns a consistent copy.
class RequestLog {
 public:
  // In-memory only.
  RequestLog() = default;
  // Loads existing rows from `path` (if present) and appends new ones to it.
  explicit RequestLog(std::filesystem::path path);

  RequestLog(const RequestLog&) = delete;
  RequestLog& operator=(const RequestLog&) = delete;

  // The record always reaches the in-memory log. Throws ValidationError on
  // empty text and IoError when the file append fails.
  void record(RequestRecord req);

  std::vector<RequestRecord> snapshot() const;
  std::size_t size() const;
  const std::optional<std::filesystem::path>& path() const { return path_; }

 private:
  std::optional<std::filesystem::path> path_;
  mutable std::mutex mu_;
  std::vector<RequestRecord> records_;
};

enum class DayCount {
  // Every calendar day from the first to the last record, inclusive.
  kCalendarSpan,
  // Only days with at least one record.
  kActiveDays,
};

struct UsageStats {
  std::uint64_t total = 0;
  std::array<std::uint64_t, 7> by_weekday{};  // 0 = Monday
  std::uint64_t days = 0;                    // mean_daily denominator
  double mean_daily = 0.0;
  std::vector<std::pair<std::string, std::uint64_t>> top_requests;
};

// 0 = Monday ... 6 = Sunday, from the UTC date.
int weekday_index(Timestamp ts);

// Weekdays come from UTC dates. Top requests group by normalized text
// (records that normalize to nothing are not ranked), by count descending
// and then text ascending.
UsageStats compute_stats(std::span<const RequestRecord> log, std::size_t top_k,
                         DayCount days = DayCount::kCalendarSpan);

std::string stats_to_json(const UsageStats& stats);

}  // namespace hiva

#endif  // HIVA_ANALYTICS_H_
