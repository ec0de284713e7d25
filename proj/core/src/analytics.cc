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

#include "hiva/analytics.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>

#include "hiva/errors.h"
#include "hiva/text.h"
#include "json.hpp"

namespace hiva {

using nlohmann::json;

std::string record_to_jsonl(const RequestRecord& record) {
  return json{{"ts", format_rfc3339(record.ts)},
              {"text", record.text},
              {"intent", record.intent},
              {"score", record.score}}
      .dump();
}

RequestRecord record_from_json(std::string_view line) {
  json doc;
  try {
    doc = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("log row: ") + e.what(), e.byte);
  }
  RequestRecord out;
  try {
    out.ts = parse_rfc3339(doc.at("ts").get<std::string>());
    out.text = doc.at("text").get<std::string>();
    out.intent = doc.value("intent", std::string(kFallbackIntent));
    out.score = doc.value("score", 0.0);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("log row: ") + e.what());
  }
  if (out.text.empty()) throw ValidationError("log row: empty text");
  return out;
}

std::vector<RequestRecord> read_log(const std::filesystem::path& path) {
  std::vector<RequestRecord> records;
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return records;
  std::ifstream in(path);
  if (!in) throw IoError("cannot open log '" + path.string() + "'");
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      records.push_back(record_from_json(line));
    } catch (const Error& e) {
      throw ParseError(path.string() + ": " + e.what(), line_no);
    }
  }
  return records;
}

RequestLog::RequestLog(std::filesystem::path path)
    : path_(std::move(path)), records_(read_log(*path_)) {}

void RequestLog::record(RequestRecord req) {
  if (req.text.empty()) throw ValidationError("request text is empty");
  const std::string row = record_to_jsonl(req) + "\n";
  std::lock_guard lock(mu_);
  records_.push_back(std::move(req));
  if (!path_) return;
  std::ofstream out(*path_, std::ios::binary | std::ios::app);
  if (!out) throw IoError("cannot append to log '" + path_->string() + "'");
  out << row;
  out.flush();
  if (!out) throw IoError("failed writing log '" + path_->string() + "'");
}

std::vector<RequestRecord> RequestLog::snapshot() const {
  std::lock_guard lock(mu_);
  return records_;
}

std::size_t RequestLog::size() const {
  std::lock_guard lock(mu_);
  return records_.size();
}

int weekday_index(Timestamp ts) {
  const std::chrono::weekday wd{std::chrono::floor<std::chrono::days>(ts)};
  return static_cast<int>((wd.c_encoding() + 6) % 7);
}

UsageStats compute_stats(std::span<const RequestRecord> log, std::size_t top_k,
                         DayCount days) {
  using std::chrono::floor;
  using std::chrono::sys_days;
  UsageStats stats;
  if (log.empty()) return stats;

  std::set<sys_days> active;
  std::map<std::string, std::uint64_t> groups;
  for (const auto& r : log) {
    ++stats.total;
    ++stats.by_weekday[static_cast<std::size_t>(weekday_index(r.ts))];
    active.insert(floor<std::chrono::days>(r.ts));
    std::string key = normalize(r.text);
    if (!key.empty()) ++groups[std::move(key)];
  }

  if (days == DayCount::kActiveDays) {
    stats.days = active.size();
  } else {
    stats.days = static_cast<std::uint64_t>(
        (*active.rbegin() - *active.begin()).count() + 1);
  }
  stats.mean_daily =
      static_cast<double>(stats.total) / static_cast<double>(stats.days);

  stats.top_requests.assign(groups.begin(), groups.end());
  std::stable_sort(stats.top_requests.begin(), stats.top_requests.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (stats.top_requests.size() > top_k) stats.top_requests.resize(top_k);
  return stats;
}

std::string stats_to_json(const UsageStats& stats) {
  json top = json::array();
  for (const auto& [text, count] : stats.top_requests) {
    top.push_back({{"text", text}, {"count", count}});
  }
  return json{{"total", stats.total},
              {"by_weekday", stats.by_weekday},
              {"days", stats.days},
              {"mean_daily", stats.mean_daily},
              {"top_requests", std::move(top)}}
      .dump();
}

}  // namespace hiva
